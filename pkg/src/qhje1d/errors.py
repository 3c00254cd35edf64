"""Exception types shared across the solver modules.

The hierarchy mirrors how callers recover: configuration-class errors
(bad grids, unbound quantum numbers, table range violations) are caught
and reported before any integration starts, while solver-class errors
(stiff Riccati runs, degenerate family members, pole isolation failures)
abort a run that is already underway.
"""


class QhjeError(Exception):
    """Base class for every error raised by this package."""


class PotentialRangeError(QhjeError, ValueError):
    """Evaluation outside the range covered by a tabulated potential."""


class UnsupportedPotentialError(QhjeError, TypeError):
    """Operation needs a closed form the given potential does not have."""


class UnboundStateError(QhjeError, ValueError):
    """Quantum number at or above the bound-state count of the well."""


class DomainError(QhjeError, ValueError):
    """Point or grid on the wrong side of a turning point, or no
    classically allowed interval at the requested energy."""


class GridError(QhjeError, ValueError):
    """Malformed grid: wrong ordering, spacing, span, or point count."""


class RiccatiStiffnessError(QhjeError, RuntimeError):
    """Logarithmic-derivative magnitude blew past the stiffness cap."""

    def __init__(self, x, value):
        self.x = float(x)
        self.value = float(value)
        super().__init__(
            f"Riccati integration became stiff at x={self.x:.6g} "
            f"(|s|={self.value:.3g})"
        )


class FamilyDegeneracyError(QhjeError, RuntimeError):
    """Amplitude function collapsed toward zero, so the family member
    degenerates and the phase can no longer be accumulated."""


class NotAnEigenvalueError(QhjeError, RuntimeError):
    """Derivative continuity failed at a turning point: the requested
    energy is not an eigenvalue of the well to working accuracy."""

    def __init__(self, message, defect):
        self.defect = float(defect)
        super().__init__(f"{message} (relative defect {self.defect:.3e})")


class PoleRefinementError(QhjeError, RuntimeError):
    """Grid too coarse to isolate individual quantum-momentum poles."""


class BadNodeEstimateError(QhjeError, ValueError):
    """Supplied node estimate does not sit near any detected pole."""
