"""Classical momentum and the classical characteristic function.

These are the hbar -> 0 baselines the quantum constructions are compared
against: p_C(x) = sqrt(2m(E - V(x))) on the allowed interval (raised to
i sqrt(2m(V - E)) under the barrier), and the accumulated action
W0(x) = integral of p_C from the left turning point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .numerics import cumulative_integral
from .potentials import eval_potential, turning_points

__all__ = ["ClassicalField", "classical_momentum", "classical_action"]

# grid endpoints may sit this close to a turning point and still count as
# touching it, which switches on the sqrt-substituted end segment
_TP_SNAP = 1e-9


@dataclass(frozen=True)
class ClassicalField:
    """Sampled classical data on the allowed interval.

    grid : x samples, increasing
    p_c  : classical momentum, >= 0, vanishing at the turning points
    w0   : accumulated action with w0[0] = 0, non-decreasing
    """

    grid: np.ndarray
    p_c: np.ndarray
    w0: np.ndarray


def classical_momentum(model, units, energy, x):
    """sqrt(2m(E - V)) as a complex value.

    Real and positive where E > V; purely imaginary with positive
    imaginary part where V > E; zero at turning points.  Accepts scalars
    or arrays.
    """
    x_arr = np.asarray(x, dtype=float)
    gap = 2.0 * units.mass * (energy - eval_potential(model, x_arr))
    p = np.where(
        gap >= 0.0,
        np.sqrt(np.maximum(gap, 0.0)) + 0.0j,
        1.0j * np.sqrt(np.maximum(-gap, 0.0)),
    )
    if np.isscalar(x) or x_arr.ndim == 0:
        return complex(p)
    return p


def classical_action(model, units, energy, grid):
    """W0(x) = integral of p_C from the left turning point along `grid`.

    The grid must lie inside the allowed interval and start at the left
    turning point (W0 is anchored there).  End segments touching a
    turning point are integrated under the u = sqrt substitution since
    p_C has a square-root zero.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or not np.all(np.diff(grid) > 0.0):
        raise ValueError("grid must be increasing with at least 2 points")
    tp = turning_points(model, energy)
    slack = _TP_SNAP * max(1.0, abs(tp.x_left), abs(tp.x_right))
    if grid[0] < tp.x_left - slack or grid[-1] > tp.x_right + slack:
        raise DomainError(
            f"grid [{grid[0]:.6g}, {grid[-1]:.6g}] leaves the allowed interval "
            f"[{tp.x_left:.6g}, {tp.x_right:.6g}]"
        )

    def p_real(t):
        gap = 2.0 * units.mass * (energy - eval_potential(model, t))
        return np.sqrt(np.maximum(gap, 0.0))

    w0 = cumulative_integral(
        p_real,
        grid,
        sqrt_left=abs(grid[0] - tp.x_left) <= slack,
        sqrt_right=abs(grid[-1] - tp.x_right) <= slack,
    )
    return ClassicalField(grid=grid, p_c=p_real(grid), w0=w0)
