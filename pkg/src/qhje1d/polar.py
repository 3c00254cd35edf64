"""Pole-laden quantum-momentum-function route to the bound state.

For a real wave function psi the logarithmic field

    p_L = (hbar / i) psi' / psi

is purely imaginary along the whole axis and carries a first-order pole
with residue -i hbar at every node, which is what makes direct Riccati
integration of p_L' fail there.  The integrator below never touches the
Riccati form: across each step it propagates the associated linear pair
(u, v) ~ (psi, psi') with a fourth-order two-node Magnus transfer matrix
and recovers p_L through the fractional-linear map p = (hbar/i) v/u, so
a pole passage is nothing but a sign change of u.

Rebuilding psi = exp(i W_L / hbar) from p_L needs the mirror-set trick:
near a node the quadrature pairs sample points symmetrically about the
refined pole position so the odd divergent parts cancel, and the one-cell
disk around the pole is bridged with the local model -i hbar / (x - x0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson, simpson
from scipy.interpolate import CubicSpline

from .classical import classical_momentum
from .errors import (
    BadNodeEstimateError,
    DomainError,
    GridError,
    PoleRefinementError,
)
from .milne import WaveFunction
from .numerics import _gauss_rule
from .potentials import eval_potential

__all__ = [
    "QmfTrace",
    "PoleEstimate",
    "qmf_from_wavefunction",
    "moebius_integrate_qmf",
    "reconstruct_psi_antithetic",
]

_GAUSS6 = math.sqrt(3.0) / 6.0
_RESCALE_ABOVE = 1e100
_MAX_STEP_PHASE = 3.0  # phase advance per step that could hide a pole pair


@dataclass(frozen=True)
class PoleEstimate:
    """One first-order pole of p_L: a node of the wave function."""

    x0: float
    residue: complex
    refined: bool


@dataclass(frozen=True)
class QmfTrace:
    """Sampled quantum momentum function with its pole annotations.

    regular is False at samples sitting essentially on a node, where
    p_l is not representable; W_l accumulates (hbar/i) d ln psi with
    W_l = 0 at the first sample, so Re W_l jumps by pi hbar at each
    node and Im W_l = -hbar ln |psi / psi_0|.
    """

    grid: np.ndarray
    p_l: np.ndarray
    W_l: np.ndarray
    poles: tuple
    regular: np.ndarray


def _pole_pair_residue(p_of, x0, h):
    # mirror-pair average of (x - x0) p(x) at offsets h and 2h, then one
    # Richardson step to cancel the even regular term
    est = []
    for d in (h, 2.0 * h):
        est.append(0.5 * d * (p_of(x0 + d) - p_of(x0 - d)))
    return (4.0 * est[0] - est[1]) / 3.0


def qmf_from_wavefunction(psi_values, psi_derivative_values, units, grid):
    """Trace p_L = (hbar/i) psi'/psi from sampled psi of any origin.

    Samples with |psi| <= eps * max|psi| (eps = 1e-10) are marked
    non-regular and carry NaN in p_l.  Poles are located at sign changes
    of psi, sharpened by secant iteration on a cubic interpolant, and
    each residue is estimated from mirror pairs of p_L about the pole.
    """
    psi = np.asarray(psi_values, dtype=float)
    dpsi = np.asarray(psi_derivative_values, dtype=float)
    xs = np.asarray(grid, dtype=float)
    if psi.shape != xs.shape or dpsi.shape != xs.shape or xs.ndim != 1:
        raise GridError("psi, psi', and grid must share one 1-d shape")
    if xs.size < 9:
        raise GridError("trace grid needs at least 9 points")
    if not np.all(np.diff(xs) > 0.0):
        raise GridError("trace grid must be strictly increasing")

    hbar = units.hbar
    scale = float(np.max(np.abs(psi)))
    if scale == 0.0:
        raise DomainError("psi vanishes identically")
    regular = np.abs(psi) > 1e-10 * scale
    p_l = np.full(xs.shape, np.nan, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        p_l[regular] = (hbar / 1j) * dpsi[regular] / psi[regular]

    spl_psi = CubicSpline(xs, psi)
    spl_dpsi = CubicSpline(xs, dpsi)

    def p_of(x):
        return (hbar / 1j) * float(spl_dpsi(x)) / float(spl_psi(x))

    h = float(np.median(np.diff(xs)))
    poles = []
    flips = np.nonzero(psi[:-1] * psi[1:] < 0.0)[0]
    for i in flips:
        a, b = float(xs[i]), float(xs[i + 1])
        fa, fb = float(psi[i]), float(psi[i + 1])
        for _ in range(60):
            if fb == fa:
                break
            x_new = b - fb * (b - a) / (fb - fa)
            a, fa, b = b, fb, x_new
            fb = float(spl_psi(x_new))
            if abs(b - a) < 1e-14 * max(1.0, abs(b)):
                break
        x0 = float(b)
        residue = complex(_pole_pair_residue(p_of, x0, h))
        poles.append(PoleEstimate(x0=x0, residue=residue, refined=True))

    counts = np.searchsorted([p.x0 for p in poles], xs, side="left")
    with np.errstate(divide="ignore"):
        log_mag = np.log(np.abs(psi / psi[0]))
    w_l = counts * math.pi * hbar + 1j * (-hbar * log_mag)
    return QmfTrace(
        grid=xs, p_l=p_l, W_l=w_l, poles=tuple(poles), regular=regular
    )


def _magnus_step(model, units, e, xa, xb):
    """Transfer matrix of (u, v)' = (v, G u) over [xa, xb].

    Two-node Gauss collocation of the Magnus series: fourth order in the
    step, and exactly area-preserving, so pole passages cost nothing.
    """
    hstep = xb - xa
    mid = 0.5 * (xa + xb)
    g1 = eval_potential(model, mid - _GAUSS6 * hstep)
    g2 = eval_potential(model, mid + _GAUSS6 * hstep)
    pref = 2.0 * units.mass / units.hbar**2
    g1 = pref * (g1 - e)
    g2 = pref * (g2 - e)
    d = (math.sqrt(3.0) / 12.0) * hstep * hstep * (g2 - g1)
    off_uv = hstep
    off_vu = hstep * 0.5 * (g1 + g2)
    mu_sq = d * d + off_uv * off_vu
    if mu_sq > 1e-12:
        mu = math.sqrt(mu_sq)
        ch = math.cosh(mu)
        sl = math.sinh(mu) / mu
    elif mu_sq < -1e-12:
        nu = math.sqrt(-mu_sq)
        if nu > _MAX_STEP_PHASE:
            raise PoleRefinementError(
                f"step at x={xa:.6g} advances the phase by {nu:.3g}; "
                "a pole pair could hide inside, refine the grid"
            )
        ch = math.cos(nu)
        sl = math.sin(nu) / nu
    else:
        ch = 1.0 + mu_sq / 2.0
        sl = 1.0 + mu_sq / 6.0
    return (
        (ch - sl * d, sl * off_uv),
        (sl * off_vu, ch + sl * d),
    )


def _advance(m, u, v):
    return m[0][0] * u + m[0][1] * v, m[1][0] * u + m[1][1] * v


def moebius_integrate_qmf(model, units, E, x_start, grid, *, p_start=None):
    """March p_L along the grid through its poles.

    x_start must be the first grid point and lie in a forbidden region;
    p_start defaults to the classical momentum there (purely imaginary,
    the decaying branch).  Each step propagates homogeneous coordinates
    (u, v) with v/u = (i/hbar) p and reads p back through the
    fractional-linear map, so a node only flips the sign of u.  W_l
    accumulates (hbar/i) ln u; a sign flip contributes the pi hbar
    real jump.
    """
    e = float(E)
    xs = np.asarray(grid, dtype=float)
    if xs.ndim != 1 or xs.size < 9:
        raise GridError("trace grid needs at least 9 points")
    if not np.all(np.diff(xs) > 0.0):
        raise GridError("trace grid must be strictly increasing")
    if abs(float(x_start) - xs[0]) > 1e-9 * max(1.0, abs(xs[0])):
        raise DomainError(
            f"x_start {float(x_start):.8g} must be the first grid point "
            f"{xs[0]:.8g}"
        )
    if eval_potential(model, xs[0]) <= e:
        raise DomainError(f"x_start {xs[0]:.6g} is not in a forbidden region")
    if p_start is None:
        p_start = classical_momentum(model, units, e, xs[0])

    hbar = units.hbar
    u, v = 1.0 + 0.0j, (1j / hbar) * complex(p_start)
    n_pts = xs.size
    p_l = np.empty(n_pts, dtype=complex)
    w_l = np.empty(n_pts, dtype=complex)
    p_l[0] = complex(p_start)
    w_l[0] = 0.0
    brackets = []
    for k in range(n_pts - 1):
        m = _magnus_step(model, units, e, xs[k], xs[k + 1])
        u_prev = u
        u, v = _advance(m, u, v)
        w_l[k + 1] = w_l[k] + (hbar / 1j) * np.log(u / u_prev)
        p_l[k + 1] = (hbar / 1j) * (v / u)
        if (u_prev.real > 0.0) != (u.real > 0.0):
            brackets.append(k)
        if abs(u) > _RESCALE_ABOVE:
            u, v = u * 1e-200, v * 1e-200

    h = float(np.median(np.diff(xs)))
    poles = []
    for k in brackets:
        poles.append(_refine_pole(model, units, e, xs, p_l, k, h, hbar))

    x0s = [p.x0 for p in poles]
    regular = np.ones(n_pts, dtype=bool)
    for x0 in x0s:
        regular &= np.abs(xs - x0) > h
    return QmfTrace(
        grid=xs, p_l=p_l, W_l=w_l, poles=tuple(poles), regular=regular
    )


def _refine_pole(model, units, e, xs, p_l, k, h, hbar):
    # secant on u(x), re-propagated from the left bracket node each try
    xa, xb = float(xs[k]), float(xs[k + 1])
    u0, v0 = 1.0, float((1j / hbar * p_l[k]).real)  # v/u at the bracket node

    def u_at(x):
        if x == xa:
            return u0
        m = _magnus_step(model, units, e, xa, x)
        return m[0][0] * u0 + m[0][1] * v0

    a, b = xa, xb
    fa, fb = u_at(a), u_at(b)
    for _ in range(60):
        if fb == fa:
            break
        x_new = b - fb * (b - a) / (fb - fa)
        a, fa, b = b, fb, x_new
        fb = u_at(x_new)
        if abs(b - a) < 1e-14 * max(1.0, abs(b)):
            break
    x0 = float(b)

    def p_of(x):
        m = _magnus_step(model, units, e, xa, x)
        uu = m[0][0] * u0 + m[0][1] * v0
        vv = m[1][0] * u0 + m[1][1] * v0
        return (hbar / 1j) * (vv / uu)

    residue = complex(_pole_pair_residue(p_of, x0, h))
    return PoleEstimate(x0=x0, residue=residue, refined=True)


def reconstruct_psi_antithetic(
    trace, units, node_estimates, *, window_cells=10, disk_cells=1
):
    """Rebuild normalized psi = exp(i W_L / hbar) from a QMF trace.

    Away from nodes W_L grows by composite Simpson quadrature of p_l.
    Crossing a node, the quadrature switches to mirror pairs about the
    refined pole: Gauss nodes at x0 +- delta are summed pairwise so the
    -i hbar/(x - x0) parts cancel exactly, the one-cell exclusion disk
    is bridged by Simpson on the regular remainder, and the crossing
    adds the pi hbar jump of ln psi.  Every supplied node estimate must
    sit within 3 cells of a detected pole (and each pole must be
    claimed); estimates are then replaced by the refined positions.
    """
    xs = trace.grid
    p = trace.p_l
    hbar = units.hbar
    h = float(np.median(np.diff(xs)))
    half = window_cells * h
    disk = disk_cells * h

    estimates = sorted(float(x) for x in np.atleast_1d(np.asarray(node_estimates)))
    poles = sorted(trace.poles, key=lambda q: q.x0)
    if len(estimates) != len(poles):
        raise BadNodeEstimateError(
            f"{len(estimates)} node estimates for {len(poles)} detected poles"
        )
    for est, pole in zip(estimates, poles):
        if abs(est - pole.x0) > 3.0 * h:
            raise BadNodeEstimateError(
                f"estimate {est:.6g} is {abs(est - pole.x0) / h:.1f} cells "
                f"from the nearest detected node {pole.x0:.6g}"
            )
    for pole in poles:
        if pole.x0 - half < xs[0] or pole.x0 + half > xs[-1]:
            raise PoleRefinementError(
                f"node window around {pole.x0:.6g} leaves the grid"
            )
    for q, r in zip(poles, poles[1:]):
        if r.x0 - q.x0 < 2.0 * half:
            raise PoleRefinementError(
                f"node windows at {q.x0:.6g} and {r.x0:.6g} overlap; "
                "refine the grid or shrink window_cells"
            )

    w = np.empty(xs.size, dtype=complex)
    w[0] = 0.0
    done = 0  # samples [0, done] already carry W values
    for pole in poles:
        x0 = pole.x0
        i_lo = int(np.searchsorted(xs, x0 - half, side="right")) - 1
        i_hi = int(np.searchsorted(xs, x0 + half, side="left"))
        i_lo = max(i_lo, 0)
        # plain stretch up to the window edge
        if i_lo > done:
            seg = slice(done, i_lo + 1)
            w[seg] = w[done] + _cum_simpson(p[seg], xs[seg])
        # regular remainder of p inside the window, fit away from the disk
        sel = slice(i_lo, i_hi + 1)
        x_win = xs[sel]
        dist = x_win - x0
        with np.errstate(divide="ignore", invalid="ignore"):
            q_win = p[sel] + 1j * hbar / dist
        keep = (np.abs(dist) > 0.5 * h) & np.isfinite(q_win)
        spl_q = CubicSpline(x_win[keep], q_win[keep])

        # mirror-pair Gauss sum over [disk, half] on both sides at once:
        # p(x0 + d) + p(x0 - d) = q(x0 + d) + q(x0 - d), the poles cancel
        nodes, weights = _gauss_rule(16)
        d_nodes = disk + (half - disk) * 0.5 * (nodes + 1.0)
        pair_vals = np.array([_pole_pair_p(spl_q, hbar, x0, d) for d in d_nodes])
        paired = (half - disk) * 0.5 * complex(np.dot(weights, pair_vals))
        # exclusion disk: PV of the pole model vanishes, Simpson bridges q
        qm = complex(spl_q(x0 - disk))
        q0 = complex(spl_q(x0))
        qp = complex(spl_q(x0 + disk))
        bridge = (disk / 3.0) * (qm + 4.0 * q0 + qp)
        w_right_edge = (
            w[i_lo]
            + _edge_partial(spl_q, hbar, float(xs[i_lo]), x0 - half, x0)
            + paired
            + bridge
            + math.pi * hbar
            + _edge_partial(spl_q, hbar, x0 + half, float(xs[i_hi]), x0)
        )
        # per-sample values inside the window: spline quadrature of q plus
        # the analytic principal-value log of the pole model
        for j in range(i_lo + 1, i_hi):
            xj = float(xs[j])
            dq = complex(spl_q.integrate(xs[i_lo], xj))
            gap = abs(xj - x0)
            if gap == 0.0:
                w[j] = w[i_lo] + dq + 1j * np.inf  # exact node: psi = 0
                continue
            log_ratio = math.log(gap) - math.log(abs(xs[i_lo] - x0))
            jump = math.pi * hbar if xj > x0 else 0.0
            w[j] = w[i_lo] + dq - 1j * hbar * log_ratio + jump
        w[i_hi] = w_right_edge
        done = i_hi
    if done < xs.size - 1:
        seg = slice(done, xs.size)
        w[seg] = w[done] + _cum_simpson(p[seg], xs[seg])

    psi_c = np.exp((1j / hbar) * (w - w[0]))
    psi = psi_c.real
    if psi[-1] < 0.0:
        psi = -psi
    norm_raw = float(simpson(psi * psi, x=xs))
    psi = psi / math.sqrt(norm_raw)
    norm = float(simpson(psi * psi, x=xs))
    return WaveFunction(grid=xs, psi=psi, A=1.0 / math.sqrt(norm_raw), norm=norm)


def _pole_pair_p(spl_q, hbar, x0, d):
    # the antithetic pair: both one-sided values carry the full pole term,
    # which cancels to zero in the sum by symmetry
    p_plus = complex(spl_q(x0 + d)) - 1j * hbar / d
    p_minus = complex(spl_q(x0 - d)) + 1j * hbar / d
    return p_plus + p_minus


def _edge_partial(spl_q, hbar, xa, xb, x0):
    # window edges rarely land on samples; integrate p over the sliver
    # [xa, xb] via the regular spline plus the analytic pole model
    if xb <= xa:
        return 0.0 + 0.0j
    dq = complex(spl_q.integrate(xa, xb))
    log_part = math.log(abs(xb - x0)) - math.log(abs(xa - x0))
    return dq - 1j * hbar * log_part


def _cum_simpson(vals, xs):
    out = np.empty(vals.size, dtype=complex)
    out[0] = 0.0
    if vals.size > 1:
        re = cumulative_simpson(vals.real, x=xs, initial=0.0)
        im = cumulative_simpson(vals.imag, x=xs, initial=0.0)
        out[:] = re + 1j * im
    return out
