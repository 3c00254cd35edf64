"""Synthesize the harmonic n=2 state from the phase-amplitude route.

The one-call pipeline runs both forbidden tails, solves the allowed
region with the two-sided family member, and glues everything into a
normalized wave function.  We check it against the closed-form Hermite
state and print the quantization identity X(x_right) = (n + 1/2) pi.
"""

import math

import numpy as np

from qhje1d import (
    HarmonicPotential,
    UnitsConfig,
    analytic_eigenfunction,
    synthesize_state,
)

units = UnitsConfig()          # hbar = m = 1
model = HarmonicPotential()    # omega = 1
n = 2

grid = np.linspace(-6.0, 6.0, 2001)
res = synthesize_state(model, units, n, grid)

print(f"energy               : {res.energy}")
print(f"norm of psi          : {res.wave.norm:.12f}")

# closed-form comparison on the same nodes
ref = analytic_eigenfunction(model, units, n, res.grid)
sign = math.copysign(1.0, float(np.dot(res.psi, ref)))
print(f"sup |psi - analytic| : {np.max(np.abs(res.psi - sign * ref)):.3e}")

# the phase X accumulates exactly (n + 1/2) pi hbar across the well
target = (n + 0.5) * math.pi * units.hbar
print(f"X(x_right)           : {res.action.X[-1]:.12f}")
print(f"(n + 1/2) pi hbar    : {target:.12f}")
print(f"quantization gap     : {abs(res.action.X[-1] - target):.3e}")

# the envelope never vanishes inside the well, unlike the WKB amplitude
print(f"min X' on allowed    : {np.min(res.action.Xp):.6f}  (> 0)")
