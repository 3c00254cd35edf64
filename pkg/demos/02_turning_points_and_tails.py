"""Behavior at the turning points, where plain WKB breaks down.

The WKB amplitude 1/sqrt(p_C) blows up where the classical momentum
vanishes; the Milne envelope stays finite and the synthesized psi stays
accurate right through both turning points.  The forbidden tails come
from a separate Riccati integration and match on smoothly.
"""

import numpy as np

from qhje1d import (
    HarmonicPotential,
    UnitsConfig,
    classical_momentum,
    numerov_solve,
    synthesize_state,
)
from qhje1d.potentials import turning_points

units = UnitsConfig()
model = HarmonicPotential()
e = 2.5  # n = 2

tp = turning_points(model, e)
print(f"turning points       : {tp.x_left:+.6f}, {tp.x_right:+.6f}")

grid = np.linspace(-6.0, 6.0, 2001)
res = synthesize_state(model, units, 2, grid)

# classical momentum dies at x_t, the envelope does not
for label, x in (("x_left", tp.x_left), ("x_right", tp.x_right)):
    p_c = classical_momentum(model, units, e, x)
    j = int(np.argmin(np.abs(res.grid - x)))
    k = j - res.allowed_slice.start  # action fields live on the allowed subgrid
    print(f"{label}: p_C = {abs(p_c):.1e}   X' = {res.action.Xp[k]:.6f}"
          f"   psi = {res.psi[j]:+.8f}")

# against the independent Numerov oracle, right at the turning points
oracle = numerov_solve(model, units, e, grid)
from scipy.interpolate import CubicSpline
spline = CubicSpline(grid, oracle.psi)
for x in (tp.x_left, tp.x_right):
    j = int(np.argmin(np.abs(res.grid - x)))
    diff = abs(res.psi[j] - float(spline(x)))
    print(f"|psi - oracle| at {x:+.4f} : {diff:.3e}")

# the tails decay with the accumulated forbidden action
print(f"left tail  B exp(-Y1/hbar), B = {res.left.B:+.6f}")
print(f"right tail B exp(-Y3/hbar), B = {res.right.B:+.6f}")
print(f"psi at grid edge     : {res.psi[-1]:.3e}")
