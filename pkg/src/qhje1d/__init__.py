"""Bound states from the quantum Hamilton-Jacobi equation in one dimension.

Two synthesis routes for the same stationary state:

* a smooth phase-amplitude construction built on the Milne envelope
  equation inside the classically allowed region, with exponentially
  matched branches in the forbidden regions (``milne``), and
* direct integration of the pole-laden quantum momentum function along
  the real line (``polar``),

both checked against an independent matrix-free Schroedinger oracle
(``oracle``) and closed-form eigenfunctions (``potentials``).
"""

from .classical import ClassicalField, classical_action, classical_momentum
from .milne import (
    ActionField,
    ForbiddenBranch,
    SynthesisResult,
    WaveFunction,
    assemble_wavefunction,
    classical_limit_sweep,
    physical_action,
    quantization_defect,
    solve_allowed,
    solve_forbidden,
    synthesize_state,
)
from .oracle import OracleSolution, find_eigenvalue, numerov_solve
from .polar import (
    PoleEstimate,
    QmfTrace,
    moebius_integrate_qmf,
    qmf_from_wavefunction,
    reconstruct_psi_antithetic,
)
from .potentials import (
    EnergyLevel,
    HarmonicPotential,
    MorsePotential,
    TabulatedPotential,
    TurningPoints,
    UnitsConfig,
    analytic_eigenfunction,
    bound_state_count,
    eigenenergy,
    eigenfunction_with_derivative,
    eval_potential,
    load_tabulated,
    potential_derivative,
    turning_points,
)

__all__ = [
    "ActionField",
    "ClassicalField",
    "EnergyLevel",
    "ForbiddenBranch",
    "HarmonicPotential",
    "MorsePotential",
    "OracleSolution",
    "PoleEstimate",
    "QmfTrace",
    "SynthesisResult",
    "TabulatedPotential",
    "TurningPoints",
    "UnitsConfig",
    "WaveFunction",
    "analytic_eigenfunction",
    "assemble_wavefunction",
    "bound_state_count",
    "classical_action",
    "classical_limit_sweep",
    "classical_momentum",
    "eigenenergy",
    "eigenfunction_with_derivative",
    "eval_potential",
    "find_eigenvalue",
    "load_tabulated",
    "moebius_integrate_qmf",
    "numerov_solve",
    "physical_action",
    "potential_derivative",
    "qmf_from_wavefunction",
    "quantization_defect",
    "reconstruct_psi_antithetic",
    "solve_allowed",
    "solve_forbidden",
    "synthesize_state",
    "turning_points",
]

__version__ = "0.1.0"
