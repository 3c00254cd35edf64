"""The quantum momentum function and its poles at the nodes.

p_L = (hbar/i) psi'/psi is purely imaginary for a real bound state and
has a first-order pole with residue -i hbar at every node.  The Moebius
integrator marches straight through those poles by propagating a linear
pair instead of the Riccati field itself.  Deep in the forbidden region
p_L does NOT approach the classical momentum: the gap below is why
initializing with p_C there starts on the wrong branch.
"""

import numpy as np

from qhje1d import (
    HarmonicPotential,
    UnitsConfig,
    classical_momentum,
    eigenfunction_with_derivative,
    moebius_integrate_qmf,
    qmf_from_wavefunction,
)

units = UnitsConfig()
model = HarmonicPotential()
e = 2.5

grid = np.linspace(-6.0, 6.0, 2401)
psi, dpsi = eigenfunction_with_derivative(model, units, 2, grid)
trace = qmf_from_wavefunction(psi, dpsi, units, grid)

print("poles of p_L for the n=2 state (nodes at +-1/sqrt(2) = +-0.70711):")
for pole in trace.poles:
    print(f"  x0 = {pole.x0:+.10f}   residue = {pole.residue:+.9f}"
          f"   (-i hbar = -1j)")

print()
print("forbidden-region gap |p_L - p_C| (does not close at fixed hbar):")
for x_q in (3.0, 4.0, 5.0):
    j = int(np.argmin(np.abs(grid - x_q)))
    p_c = classical_momentum(model, units, e, grid[j])
    print(f"  x = {x_q:.0f}:  |p_L| = {abs(trace.p_l[j]):.6f}"
          f"   |p_C| = {abs(p_c):.6f}   gap = {abs(trace.p_l[j] - p_c):.6f}")

print()
# the independent route: Moebius integration from the deep left
mtrace = moebius_integrate_qmf(model, units, e, -6.0, grid)
mask = np.abs(psi) > 0.1 * np.max(np.abs(psi))
agree = np.max(np.abs(mtrace.p_l[mask] - trace.p_l[mask]))
print(f"Moebius vs wavefunction route, sup |difference| where |psi| large:"
      f" {agree:.3e}")
print(f"poles seen by the integrator: {[round(p.x0, 4) for p in mtrace.poles]}")
print("(the extra deep-forbidden crossing is the wrong-branch start"
      " relaxing onto the bound solution)")
