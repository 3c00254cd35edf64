"""Shrink hbar and watch the quantum envelope become classical.

At fixed classical energy E* = 2.5 the quantum number re-locks for each
hbar (n = 2, 4, 9, 24).  The member fixed by physical boundary data at
the momentum maximum loses its ripple: sup |X' - p_C| falls roughly
linearly with hbar, and the imaginary part Y' vanishes with it.
"""

from qhje1d import HarmonicPotential
from qhje1d.milne import classical_limit_sweep

model = HarmonicPotential()
hbars = (1.0, 0.5, 0.25, 0.1)

rows = classical_limit_sweep(model, 2, hbars)

print("  hbar   sup|X'-pC|     sup|Y'|    sup|Y'|/hbar")
for hbar, sup_x, sup_y in rows:
    print(f"{hbar:6.2f}   {sup_x:10.6f}  {sup_y:10.6f}   {sup_y / hbar:10.6f}")

print()
ratios = [b / a for (_, a, _), (_, b, _) in zip(rows, rows[1:])]
print("successive sup|X'-pC| ratios:", ", ".join(f"{r:.3f}" for r in ratios))
print("strictly decreasing:", all(a > b for (_, a, _), (_, b, _) in zip(rows, rows[1:])))
