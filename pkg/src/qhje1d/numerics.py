"""Small numerical kernels shared by the solver modules.

Nothing here knows about potentials or wave functions; these are plain
quadrature and finite-difference helpers.  Momentum-like integrands carry
an inverse-square-root derivative singularity at classical turning points,
so segment quadrature supports the substitution u = sqrt(x - a) on the
segment touching a singular endpoint, which restores spectral accuracy of
the Gauss rule.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=8)
def _gauss_rule(order: int):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, weights


def _plain_segments(fn, lo, hi, order):
    # lo, hi: arrays of segment edges; returns per-segment integrals
    nodes, weights = _gauss_rule(order)
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = mid[:, None] + half[:, None] * nodes[None, :]
    f = fn(x.ravel()).reshape(x.shape)
    return (f @ weights) * half


def _sqrt_segment(fn, a, b, singular_at, order):
    """One segment [a, b] where fn has a sqrt-type kink at `singular_at`
    (= a or b).  Substitutes u = sqrt(|x - singular|)."""
    nodes, weights = _gauss_rule(order)
    span = b - a
    u_hi = np.sqrt(span)
    u = 0.5 * u_hi * (nodes + 1.0)
    w = 0.5 * u_hi * weights
    if singular_at == a:
        x = a + u * u
    else:
        x = b - u * u
    vals = fn(x)
    return float(np.sum(vals * 2.0 * u * w))


def cumulative_integral(fn, grid, *, sqrt_left=False, sqrt_right=False, order=16):
    """Cumulative integral of vectorized `fn` from grid[0] to every node.

    sqrt_left / sqrt_right flag an inverse-square-root derivative
    singularity of fn at the first / last grid point; the adjacent
    segment is then integrated under u = sqrt(distance to the endpoint).
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise ValueError("grid must be one dimensional with at least 2 points")
    lo = grid[:-1].copy()
    hi = grid[1:].copy()
    segs = np.empty(grid.size - 1)
    i0, i1 = 0, grid.size - 1
    if sqrt_left:
        segs[0] = _sqrt_segment(fn, grid[0], grid[1], grid[0], order)
        i0 = 1
    if sqrt_right:
        segs[-1] = _sqrt_segment(fn, grid[-2], grid[-1], grid[-1], order)
        i1 = grid.size - 2
    if i1 > i0:
        segs[i0:i1] = _plain_segments(fn, lo[i0:i1], hi[i0:i1], order)
    out = np.empty_like(grid)
    out[0] = 0.0
    np.cumsum(segs, out=out[1:])
    return out


def integral(fn, a, b, *, sqrt_left=False, sqrt_right=False, order=24, segments=8):
    """Definite integral over [a, b] with optional sqrt endpoint handling."""
    grid = np.linspace(a, b, segments + 1)
    return float(
        cumulative_integral(
            fn, grid, sqrt_left=sqrt_left, sqrt_right=sqrt_right, order=order
        )[-1]
    )


def fd5_first(y, h):
    """Five-point first derivative on a uniform grid.

    Returns an array of the same length; the two points at each edge are
    NaN since the centered stencil does not reach them.
    """
    y = np.asarray(y, dtype=float)
    out = np.full_like(y, np.nan)
    out[2:-2] = (y[:-4] - 8.0 * y[1:-3] + 8.0 * y[3:-1] - y[4:]) / (12.0 * h)
    return out


def fd5_second(y, h):
    """Five-point second derivative on a uniform grid (edges NaN)."""
    y = np.asarray(y, dtype=float)
    out = np.full_like(y, np.nan)
    out[2:-2] = (
        -y[:-4] + 16.0 * y[1:-3] - 30.0 * y[2:-2] + 16.0 * y[3:-1] - y[4:]
    ) / (12.0 * h * h)
    return out


def refine_to_tolerance(run, *, tol=1e-8, start=1, max_doublings=3):
    """Fixed-step refinement ladder.

    `run(substeps)` returns a tuple of arrays sampled at the output nodes.
    The substep count doubles until successive results agree to `tol`
    (absolute plus relative, per component).  Returns the finer result.
    """
    k = start
    coarse = run(k)
    for _ in range(max_doublings):
        fine = run(2 * k)
        worst = 0.0
        for a, b in zip(coarse, fine):
            scale = 1.0 + np.abs(b)
            worst = max(worst, float(np.max(np.abs(a - b) / scale)))
        if worst <= tol:
            return fine
        k *= 2
        coarse = fine
    return coarse
