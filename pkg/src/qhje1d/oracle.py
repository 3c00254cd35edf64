"""Independent ground truth by Numerov integration.

Nothing from the Hamilton-Jacobi machinery enters here: the stationary
Schroedinger equation psi'' = f psi, f = 2m(V - E)/hbar^2, is integrated
with the Numerov three-term recurrence from both domain edges inward,
seeded with WKB tail values, and glued at a matching point inside the
allowed region.  The logarithmic-derivative jump at the match point
(`tail_mismatch`) is the eigenvalue defect the tests key on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import brentq

from .errors import DomainError, GridError
from .numerics import fd5_first
from .potentials import eval_potential, turning_points

__all__ = ["OracleSolution", "numerov_solve", "find_eigenvalue"]

_SEED = 1e-160
_RESCALE_ABOVE = 1e100
_RESCALE_BY = 1e-200


@dataclass(frozen=True)
class OracleSolution:
    """Glued, normalized Numerov solution at energy E."""

    grid: np.ndarray
    psi: np.ndarray
    E: float
    tail_mismatch: float


def _check_uniform(grid):
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 16:
        raise GridError("grid must be one dimensional with at least 16 points")
    steps = np.diff(grid)
    h = steps[0]
    if h <= 0.0 or np.max(np.abs(steps - h)) > 1e-9 * abs(h):
        raise GridError("grid must be uniform and increasing")
    return grid, float(h)


def _wkb_ratio(f0, f1, h):
    # growth factor of the decaying tail solution over one inward step,
    # kappa^(-1/2) exp(+integral kappa): the seed points must sit in
    # deeply forbidden territory (f > 0)
    k0 = np.sqrt(max(f0, 1e-300))
    k1 = np.sqrt(max(f1, 1e-300))
    return np.sqrt(k0 / k1) * np.exp(0.5 * h * (k0 + k1))


def _numerov_sweep(f, h, n_points, reverse):
    """Inward Numerov sweep over the first `n_points` entries of f
    (or the last, when reverse).  Returns the branch in grid order."""
    fs = f[::-1][:n_points] if reverse else f[:n_points]
    psi = np.empty(n_points)
    psi[0] = _SEED
    psi[1] = _SEED * _wkb_ratio(fs[0], fs[1], h)
    h2 = h * h
    c = 1.0 - (h2 / 12.0) * fs
    b = 2.0 * (1.0 + (5.0 * h2 / 12.0) * fs)
    for i in range(1, n_points - 1):
        psi[i + 1] = (b[i] * psi[i] - c[i - 1] * psi[i - 1]) / c[i + 1]
        if abs(psi[i + 1]) > _RESCALE_ABOVE:
            psi[: i + 2] *= _RESCALE_BY
    return psi[::-1] if reverse else psi


def _match_index(grid, psi_left, tp):
    # pick the largest |psi| sample in the central third of the allowed
    # interval; the nominal midpoint can be a node (odd states)
    center = 0.5 * (tp.x_left + tp.x_right)
    third = tp.width / 6.0
    window = np.nonzero(np.abs(grid - center) <= third)[0]
    window = window[(window >= 4) & (window <= grid.size - 5)]
    if window.size == 0:
        raise DomainError("grid does not cover the middle of the allowed interval")
    return int(window[np.argmax(np.abs(psi_left[window]))])


def _sweep_pair(model, units, E, grid):
    """Both inward sweeps plus the signed log-derivative jump at the match
    point.  The right branch starts two cells before the match index so a
    centered five-point stencil exists on each side."""
    grid, h = _check_uniform(grid)
    E = float(E)
    tp = turning_points(model, E)
    f = 2.0 * units.mass * (eval_potential(model, grid) - E) / units.hbar**2

    psi_left = _numerov_sweep(f, h, grid.size, reverse=False)
    i_m = _match_index(grid, psi_left, tp)
    offset = i_m - 2
    psi_right = _numerov_sweep(f, h, grid.size - offset, reverse=True)

    dl = fd5_first(psi_left[i_m - 2 : i_m + 3], h)[2] / psi_left[i_m]
    dr = fd5_first(psi_right[0:5], h)[2] / psi_right[2]
    return grid, psi_left, psi_right, i_m, offset, float(dl - dr)


def numerov_solve(model, units, E, grid):
    """Integrate psi'' = 2m(V - E) psi / hbar^2 from both edges inward.

    The grid must be uniform and extend well past both turning points so
    the WKB seeds are accurate (deep-tail contamination decays like
    exp(-2 action/hbar)).  Returns the glued unit-norm solution together
    with the log-derivative mismatch at the matching point; the mismatch
    is O(1) off-eigenvalue and drops below 1e-6 on an eigenvalue.
    """
    grid, psi_left, psi_right, i_m, offset, jump = _sweep_pair(
        model, units, E, grid
    )
    scale = psi_left[i_m] / psi_right[2]
    psi = np.empty_like(grid)
    psi[:i_m] = psi_left[:i_m]
    psi[i_m:] = scale * psi_right[i_m - offset :]
    if scale < 0.0:
        psi = -psi  # keep the right tail positive
    psi = psi / np.sqrt(simpson(psi * psi, x=grid))
    return OracleSolution(
        grid=grid, psi=psi, E=float(E), tail_mismatch=abs(jump)
    )


def find_eigenvalue(model, units, e_lo, e_hi, grid, *, rtol=1e-12):
    """Root of the signed log-derivative defect on [e_lo, e_hi].

    Test utility: the bracket must contain exactly one eigenvalue (the
    defect changes sign there).
    """

    def defect(e):
        return _sweep_pair(model, units, e, grid)[-1]

    lo, hi = defect(e_lo), defect(e_hi)
    if lo * hi > 0.0:
        raise DomainError(f"defect does not change sign on [{e_lo:.6g}, {e_hi:.6g}]")
    return float(brentq(defect, e_lo, e_hi, xtol=1e-13, rtol=rtol))
