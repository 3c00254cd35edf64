"""Smooth complex-action route to the bound state.

Inside the allowed interval the complex characteristic function
W_M = X + iY is built from a Milne-type envelope w:

    w'' + (p_C / hbar)^2 w = 1 / w^3,
    X' = hbar / w^2,   Y = (hbar/2) ln X' + const,

so the momentum-like derivative p_m = X' + iY' stays finite and smooth
through the turning points.  Rather than integrating the nonlinear
envelope equation, the solver advances two basis solutions of the
underlying linear oscillator equation y'' + (p_C/hbar)^2 y = 0 and forms
the whole one-parameter family of envelopes algebraically:

    w^2 = t u^2 - 2 u v + (2/t) v^2,   t = w(x_left)^2,

where u carries the matched logarithmic derivative sigma_L at the left
turning point and v vanishes there (unit Wronskian).  Every member
reproduces the same wave function; only the member that also matches
sigma_R on the right (the root of a scalar quadratic in t) makes
X(x_right) land on the quantization value (n + 1/2) pi hbar, so that
member is selected whenever the right-hand branch is supplied.

The turning-point-anchored family carries an O(1) residual oscillation
in X' at any hbar (the anchoring fixes the phase of one basis solution
at the turning point, which is 30 degrees away from the quadrature
needed for a non-oscillating envelope).  The classical-limit statement
p_m -> p_C therefore lives on a different envelope: the member fixed by
WKB data at the interior momentum maximum (`physical_action`), whose
X' hugs the classical momentum and converges as hbar falls.

In the forbidden regions the real logarithmic derivative s = psi'/psi
obeys the Riccati equation s' = -s^2 + 2m(V - E)/hbar^2, integrated
inward from a WKB-seeded start point; psi there is B exp(-Yi/hbar).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .errors import (
    DomainError,
    FamilyDegeneracyError,
    GridError,
    NotAnEigenvalueError,
    RiccatiStiffnessError,
)
from .numerics import refine_to_tolerance
from .potentials import (
    UnitsConfig,
    bound_state_count,
    eigenenergy,
    eval_potential,
    potential_derivative,
    turning_points,
)

__all__ = [
    "ActionField",
    "ForbiddenBranch",
    "WaveFunction",
    "SynthesisResult",
    "solve_forbidden",
    "solve_allowed",
    "physical_action",
    "assemble_wavefunction",
    "quantization_defect",
    "classical_limit_sweep",
    "synthesize_state",
]

_STIFF_LIMIT = 1e8
_SNAP_SLACK = 1e-7


@dataclass(frozen=True)
class ActionField:
    """Sampled smooth action on the allowed interval.

    X is strictly increasing with X(x_left) = 0; Xp = X' stays positive
    through both turning points; Y carries the gauge Y(x_left) = 0;
    p_m = X' + iY'.
    """

    grid: np.ndarray
    X: np.ndarray
    Xp: np.ndarray
    Y: np.ndarray
    p_m: np.ndarray


@dataclass
class ForbiddenBranch:
    """One forbidden-region tail, sampled from the turning point outward.

    s is the real logarithmic derivative psi'/psi; Yi >= 0 grows away
    from the well with Yi(turning point) = 0; B is the matching constant
    of psi = B exp(-Yi/hbar), filled in by assemble_wavefunction.
    """

    side: str
    grid: np.ndarray
    Yi: np.ndarray
    s: np.ndarray
    B: float = 1.0


@dataclass(frozen=True)
class WaveFunction:
    """Assembled normalized state on the glued grid."""

    grid: np.ndarray
    psi: np.ndarray
    A: float
    norm: float


@dataclass(frozen=True)
class SynthesisResult:
    """Full-domain synthesis aligned with the caller's grid.

    psi is zero beyond the deep-tail branch ends, where the true
    magnitude is below exp(-depth_criterion); allowed_slice addresses
    the action-field samples inside the full grid.
    """

    grid: np.ndarray
    psi: np.ndarray
    action: ActionField
    left: ForbiddenBranch
    right: ForbiddenBranch
    wave: WaveFunction
    allowed_slice: slice
    energy: float


def _cell_lattice(edges, substeps):
    # nodes and midpoints of every integration substep, one row per cell
    edges = np.asarray(edges, dtype=float)
    frac = np.arange(2 * substeps + 1) / (2.0 * substeps)
    return edges[:-1, None] + np.diff(edges)[:, None] * frac[None, :]


def _rk4_linear(k2_rows, edges, substeps, y0):
    """Advance (u, u', v, v') through y'' = -k2 y with classical RK4."""
    h_cells = np.diff(np.asarray(edges, dtype=float)) / substeps
    n_cells = k2_rows.shape[0]
    res = np.empty((n_cells + 1, 4))
    u, up, v, vp = (float(c) for c in y0)
    res[0] = (u, up, v, vp)
    for c in range(n_cells):
        h = h_cells[c]
        row = k2_rows[c]
        for j in range(substeps):
            ka = row[2 * j]
            km = row[2 * j + 1]
            kb = row[2 * j + 2]
            a1u, a1up = up, -ka * u
            a1v, a1vp = vp, -ka * v
            u2 = u + 0.5 * h * a1u
            up2 = up + 0.5 * h * a1up
            v2 = v + 0.5 * h * a1v
            vp2 = vp + 0.5 * h * a1vp
            a2u, a2up = up2, -km * u2
            a2v, a2vp = vp2, -km * v2
            u3 = u + 0.5 * h * a2u
            up3 = up + 0.5 * h * a2up
            v3 = v + 0.5 * h * a2v
            vp3 = vp + 0.5 * h * a2vp
            a3u, a3up = up3, -km * u3
            a3v, a3vp = vp3, -km * v3
            u4 = u + h * a3u
            up4 = up + h * a3up
            v4 = v + h * a3v
            vp4 = vp + h * a3vp
            a4u, a4up = up4, -kb * u4
            a4v, a4vp = vp4, -kb * v4
            u += h * (a1u + 2.0 * a2u + 2.0 * a3u + a4u) / 6.0
            up += h * (a1up + 2.0 * a2up + 2.0 * a3up + a4up) / 6.0
            v += h * (a1v + 2.0 * a2v + 2.0 * a3v + a4v) / 6.0
            vp += h * (a1vp + 2.0 * a2vp + 2.0 * a3vp + a4vp) / 6.0
        res[c + 1] = (u, up, v, vp)
    return res


def _rk4_riccati(g_rows, edges, substeps, s0):
    """Advance (s, z) through s' = -s^2 + g, z' = s, guarding stiffness."""
    edges = np.asarray(edges, dtype=float)
    h_cells = np.diff(edges) / substeps
    n_cells = g_rows.shape[0]
    res = np.empty((n_cells + 1, 2))
    s, z = float(s0), 0.0
    res[0] = (s, z)
    for c in range(n_cells):
        h = h_cells[c]
        row = g_rows[c]
        for j in range(substeps):
            ga = row[2 * j]
            gm = row[2 * j + 1]
            gb = row[2 * j + 2]
            a1 = -s * s + ga
            s2 = s + 0.5 * h * a1
            a2 = -s2 * s2 + gm
            s3 = s + 0.5 * h * a2
            a3 = -s3 * s3 + gm
            s4 = s + h * a3
            a4 = -s4 * s4 + gb
            z += h * (s + 2.0 * (s2 + s3) + s4) / 6.0
            s += h * (a1 + 2.0 * a2 + 2.0 * a3 + a4) / 6.0
            if not math.isfinite(s) or abs(s) > _STIFF_LIMIT:
                raise RiccatiStiffnessError(edges[c] + (j + 1) * h, s)
        res[c + 1] = (s, z)
    return res


def _outward_start(model, units, e, tp, side, depth_criterion, x_limit):
    """Walk outward from the turning point until the accumulated WKB
    action reaches depth_criterion (in units of hbar), or the clip
    limit."""
    x_t = tp.x_left if side == "left" else tp.x_right
    sign = -1.0 if side == "left" else 1.0
    span = max(tp.width, 1.0)
    far = x_t + sign * span
    for factor in (1.0, 2.0, 4.0, 8.0, 16.0):
        far = x_t + sign * factor * span
        clipped = False
        if x_limit is not None:
            if side == "left" and far < x_limit:
                far, clipped = x_limit, True
            if side == "right" and far > x_limit:
                far, clipped = x_limit, True
        xs = np.linspace(x_t, far, 4001)
        gap = 2.0 * units.mass * (eval_potential(model, xs) - e)
        kappa = np.sqrt(np.maximum(gap, 0.0)) / units.hbar
        steps = np.abs(np.diff(xs))
        action = np.concatenate(
            ([0.0], np.cumsum(0.5 * (kappa[1:] + kappa[:-1]) * steps))
        )
        hit = np.nonzero(action >= depth_criterion)[0]
        if hit.size:
            return float(xs[hit[0]])
        if clipped:
            return float(x_limit)
    return float(far)


def solve_forbidden(
    model,
    units,
    E,
    side,
    depth_criterion=25.0,
    *,
    grid=None,
    x_limit=None,
    n_points=1001,
):
    """Integrate the real Riccati tail s' = -s^2 + 2m(V - E)/hbar^2.

    The start point sits far enough out that the accumulated WKB action
    exceeds depth_criterion, clipped to x_limit when given; there s is
    seeded with the decaying WKB asymptote -sqrt(2m(V-E))/hbar on the
    right side (+ on the left).  Integration runs inward, the attracting
    direction for the decaying solution, so seed error dies off like
    exp(-2 action).  Returns samples ordered from the turning point
    outward, with Yi = -hbar * integral of s anchored to zero at the
    turning point.  An explicit `grid` (outward order, starting at the
    turning point) overrides the start-point search.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    e = float(E)
    tp = turning_points(model, e)
    x_t = tp.x_left if side == "left" else tp.x_right

    if grid is not None:
        branch = np.asarray(grid, dtype=float).copy()
        if branch.ndim != 1 or branch.size < 9:
            raise GridError("branch grid needs at least 9 points")
        if abs(branch[0] - x_t) > _SNAP_SLACK * max(1.0, abs(x_t)):
            raise DomainError(
                f"branch grid must start at the turning point {x_t:.8g}, "
                f"got {branch[0]:.8g}"
            )
        outward = -1.0 if side == "left" else 1.0
        if not np.all(outward * np.diff(branch) > 0.0):
            raise GridError("branch grid must run outward from the turning point")
        branch[0] = x_t
    else:
        if x_limit is not None:
            inside = x_limit > x_t if side == "left" else x_limit < x_t
            if inside:
                raise DomainError(
                    f"x_limit {x_limit:.6g} lies inside the allowed region"
                )
        x_start = _outward_start(model, units, e, tp, side, depth_criterion, x_limit)
        branch = np.linspace(x_t, x_start, n_points)

    if eval_potential(model, branch[-1]) <= e:
        raise DomainError(f"start point {branch[-1]:.6g} is not in a forbidden region")

    gap_start = 2.0 * units.mass * (eval_potential(model, branch[-1]) - e)
    s0 = math.sqrt(gap_start) / units.hbar
    if side == "right":
        s0 = -s0

    inward = branch[::-1]  # integrate from the deep seed toward the well

    def run(substeps):
        lattice = _cell_lattice(inward, substeps)
        g = 2.0 * units.mass * (eval_potential(model, lattice) - e) / units.hbar**2
        res = _rk4_riccati(g, inward, substeps, s0)
        return res[:, 0], res[:, 1]

    s_in, z_in = refine_to_tolerance(run, tol=1e-8)
    s_out = s_in[::-1].copy()
    z_out = z_in[::-1].copy()
    yi = -units.hbar * (z_out - z_out[0])
    return ForbiddenBranch(side=side, grid=branch, Yi=yi, s=s_out)


def _balanced_t(basis_end, sigma_r):
    """Left parameter t = w(x_left)^2 of the member that also matches
    sigma_R on the right, from the scalar quadratic a t^2 + b t + c = 0."""
    u, up, v, vp = basis_end
    a = u * (up - sigma_r * u)
    b = -(u * vp + up * v) + 2.0 * sigma_r * u * v - 1.0
    c = 2.0 * v * (vp - sigma_r * v)
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        raise FamilyDegeneracyError(
            "no real member matches both turning-point derivatives "
            f"(discriminant {disc:.3e})"
        )
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    # the root c/q stays finite as a -> 0, which is the eigenvalue limit
    t = c / q if q != 0.0 else math.inf
    if not math.isfinite(t) or t <= 0.0:
        raise FamilyDegeneracyError(
            f"balanced family member has non-positive w(x_left)^2 = {t:.3e}"
        )
    return t


def _allowed_grid(model, e, grid):
    # validate a caller grid against the turning points and snap the ends
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 33:
        raise GridError("allowed grid needs at least 33 points")
    if not np.all(np.diff(grid) > 0.0):
        raise GridError("allowed grid must be strictly increasing")
    tp = turning_points(model, e)
    slack = _SNAP_SLACK * max(1.0, abs(tp.x_left), abs(tp.x_right))
    if abs(grid[0] - tp.x_left) > slack or abs(grid[-1] - tp.x_right) > slack:
        raise DomainError(
            f"allowed grid [{grid[0]:.8g}, {grid[-1]:.8g}] must span the "
            f"turning points [{tp.x_left:.8g}, {tp.x_right:.8g}]"
        )
    grid = grid.copy()
    grid[0], grid[-1] = tp.x_left, tp.x_right
    return grid, tp


def solve_allowed(model, units, E, grid, left_branch, right_branch=None, w0=None):
    """Build the smooth action X + iY on the allowed interval.

    The grid must span exactly [x_left, x_right].  left_branch supplies
    the matched logarithmic derivative sigma_L = s(x_left).  The envelope
    member is picked by w0 when given, else by two-sided matching through
    right_branch when given (the member whose X reaches the quantization
    value at an eigenenergy), else w0 = 1.

    All members yield the same assembled wave function; X itself is
    member-dependent.
    """
    e = float(E)
    grid, _ = _allowed_grid(model, e, grid)

    sigma_l = float(left_branch.s[0])

    def run(substeps):
        lattice = _cell_lattice(grid, substeps)
        k2 = 2.0 * units.mass * (e - eval_potential(model, lattice)) / units.hbar**2
        res = _rk4_linear(k2, grid, substeps, (1.0, sigma_l, 0.0, 1.0))
        return res[:, 0], res[:, 1], res[:, 2], res[:, 3]

    u, up, v, vp = refine_to_tolerance(run, tol=1e-8)

    if w0 is not None:
        if not (w0 > 0.0) or not math.isfinite(w0):
            raise FamilyDegeneracyError(f"w0 must be positive and finite, got {w0}")
        t = float(w0) ** 2
    elif right_branch is not None:
        t = _balanced_t((u[-1], up[-1], v[-1], vp[-1]), float(right_branch.s[0]))
    else:
        t = 1.0

    rt = math.sqrt(t)
    alpha = rt * u - v / rt
    beta = v / rt
    w_sq = alpha * alpha + beta * beta
    if np.min(w_sq) < 1e-12:
        raise FamilyDegeneracyError(
            "envelope collapsed toward zero inside the allowed region"
        )
    theta = np.unwrap(np.arctan2(beta, alpha))
    theta -= theta[0]  # beta vanishes at x_left, so this is exactly the gauge
    w = np.sqrt(w_sq)
    wp = (alpha * (rt * up - vp / rt) + beta * (vp / rt)) / w
    x_act = units.hbar * theta
    xp = units.hbar / w_sq
    y_val = -units.hbar * np.log(w / rt)
    yp = -units.hbar * wp / w
    return ActionField(grid=grid, X=x_act, Xp=xp, Y=y_val, p_m=xp + 1j * yp)


def physical_action(model, units, E, grid):
    """Envelope fixed by WKB data at the interior momentum maximum.

    The basis starts at the grid node nearest the potential minimum with
    y1 = sqrt(hbar / p), y1' = d/dx sqrt(hbar / p), y2 = 0,
    y2' = 1 / y1 (unit Wronskian), so w^2 = y1^2 + y2^2 reduces to the
    WKB envelope hbar / p_C wherever that approximation holds.  X' then
    hugs the classical momentum ever closer as hbar shrinks, which the
    turning-point-anchored members of solve_allowed never do: their
    anchoring pins a basis phase 30 degrees off the required quadrature
    and leaves an O(1) ripple in X' at every hbar.

    X and Y keep the solve_allowed gauges (both vanish at x_left).  The
    member generally satisfies neither turning-point matching condition,
    so it feeds classical-limit diagnostics, not eigenfunction assembly.
    """
    e = float(E)
    grid, _ = _allowed_grid(model, e, grid)

    i0 = int(np.argmin(eval_potential(model, grid)))
    if i0 == 0 or i0 == grid.size - 1:
        raise DomainError("momentum maximum must lie inside the allowed interval")
    x0 = float(grid[i0])
    p0 = math.sqrt(2.0 * units.mass * (e - eval_potential(model, x0)))
    dp0 = -units.mass * potential_derivative(model, x0) / p0
    y1_0 = math.sqrt(units.hbar / p0)
    y1p_0 = -0.5 * math.sqrt(units.hbar) * dp0 / p0**1.5

    def run(substeps):
        out = np.empty((grid.size, 4))
        out[i0] = (y1_0, y1p_0, 0.0, 1.0 / y1_0)
        for edges in (grid[i0:], grid[i0::-1]):
            lattice = _cell_lattice(edges, substeps)
            k2 = (
                2.0
                * units.mass
                * (e - eval_potential(model, lattice))
                / units.hbar**2
            )
            res = _rk4_linear(k2, edges, substeps, out[i0])
            if edges[0] < edges[-1]:
                out[i0:] = res
            else:
                out[: i0 + 1] = res[::-1]
        return out[:, 0], out[:, 1], out[:, 2], out[:, 3]

    y1, y1p, y2, y2p = refine_to_tolerance(run, tol=1e-8)

    w_sq = y1 * y1 + y2 * y2
    if np.min(w_sq) < 1e-12:
        raise FamilyDegeneracyError(
            "envelope collapsed toward zero inside the allowed region"
        )
    theta = np.unwrap(np.arctan2(y2, y1))
    theta -= theta[0]
    w = np.sqrt(w_sq)
    wp = (y1 * y1p + y2 * y2p) / w
    x_act = units.hbar * theta
    xp = units.hbar / w_sq
    y_val = -units.hbar * np.log(w / w[0])
    yp = -units.hbar * wp / w
    return ActionField(grid=grid, X=x_act, Xp=xp, Y=y_val, p_m=xp + 1j * yp)


def _log_derivative_allowed(action, units, index):
    # psi'/psi of the allowed-region envelope-times-sine form at one sample,
    # from closed pieces:
    # w'/w = -Y'/hbar and theta' = X'/hbar
    yp = action.p_m[index].imag
    xp = action.Xp[index]
    theta = action.X[index] / units.hbar
    return -yp / units.hbar + (xp / units.hbar) / math.tan(theta + 0.25 * math.pi)


def assemble_wavefunction(action, left, right, units):
    """Glue the three pieces into one normalized wave function.

    Allowed region: psi = A / sqrt(X') * sin(X/hbar + pi/4).  Forbidden
    tails: psi = B exp(-Yi/hbar), each B fixed by value continuity at its
    turning point.  Derivative continuity is not imposed; a relative
    defect above 1e-4 raises NotAnEigenvalueError.  The global sign makes
    the right tail positive; the amplitude A is fixed last by unit
    normalization.
    """
    hbar = units.hbar
    slack = _SNAP_SLACK * max(1.0, abs(action.grid[0]), abs(action.grid[-1]))
    if (
        abs(left.grid[0] - action.grid[0]) > slack
        or abs(right.grid[0] - action.grid[-1]) > slack
    ):
        raise DomainError("branches do not anchor at the action-field endpoints")

    defect_l = abs(_log_derivative_allowed(action, units, 0) - left.s[0]) / abs(
        left.s[0]
    )
    defect_r = abs(_log_derivative_allowed(action, units, -1) - right.s[0]) / abs(
        right.s[0]
    )
    defect = max(float(defect_l), float(defect_r))
    if defect > 1e-4:
        raise NotAnEigenvalueError(
            "logarithmic derivative jumps at a turning point", defect
        )

    psi_allowed = np.sin(action.X / hbar + 0.25 * math.pi) / np.sqrt(action.Xp)
    b_left = float(psi_allowed[0])
    b_right = float(psi_allowed[-1])
    psi_left = b_left * np.exp(-left.Yi / hbar)
    psi_right = b_right * np.exp(-right.Yi / hbar)

    # branches are stored outward; stitch in increasing x
    grid_full = np.concatenate((left.grid[::-1][:-1], action.grid, right.grid[1:]))
    psi_full = np.concatenate((psi_left[::-1][:-1], psi_allowed, psi_right[1:]))

    flip = -1.0 if b_right < 0.0 else 1.0
    psi_full = flip * psi_full
    norm_raw = float(simpson(psi_full * psi_full, x=grid_full))
    scale = flip / math.sqrt(norm_raw)
    psi_full = psi_full / math.sqrt(norm_raw)
    left.B = b_left * scale
    right.B = b_right * scale
    norm_check = float(simpson(psi_full * psi_full, x=grid_full))
    return WaveFunction(grid=grid_full, psi=psi_full, A=scale, norm=norm_check)


def quantization_defect(model, units, n, grid=2001, *, energy=None):
    """X(x_right) - (n + 1/2) pi hbar for the two-sided family member.

    Runs at the closed-form eigenenergy of (model, n) unless `energy`
    overrides it; a near-zero value certifies that energy and member are
    mutually consistent.  `grid` is a point count or an explicit array
    spanning the allowed interval.
    """
    e = eigenenergy(model, units, n).energy if energy is None else float(energy)
    tp = turning_points(model, e)
    if np.isscalar(grid):
        xs = np.linspace(tp.x_left, tp.x_right, int(grid))
    else:
        xs = np.asarray(grid, dtype=float)
    left = solve_forbidden(model, units, e, "left")
    right = solve_forbidden(model, units, e, "right")
    action = solve_allowed(model, units, e, xs, left, right)
    return float(action.X[-1] - (n + 0.5) * math.pi * units.hbar)


def _nearest_level(model, units, e_star):
    count = bound_state_count(model, units)
    if count is None:
        # harmonic ladder: bracket the target and compare the neighbors
        guess = e_star / (units.hbar * model.omega) - 0.5
        lo = max(0, math.floor(guess))
        candidates = (lo, lo + 1)
    else:
        candidates = range(count)
    best = None
    for k in candidates:
        gap = abs(eigenenergy(model, units, k).energy - e_star)
        if best is None or gap < best[0] - 1e-15:
            best = (gap, k)  # strict improvement keeps ties on the smaller n
    return best[1]


def classical_limit_sweep(model, n, hbar_list, *, n_points=2001):
    """Sup-norm distances to the classical fields along an hbar sweep.

    The classical energy target E* is the (model, n) level at hbar = 1;
    for each hbar the quantum number re-locks to the level nearest E*
    (ties resolve to the smaller n).  Each row measures the
    physical_action member, the one whose envelope loses its quantum
    ripple in the limit.  Returns one (hbar, sup|X' - p_C|, sup|Y'|)
    tuple per hbar, sup taken over the interior 80 percent of the
    allowed interval.
    """
    hbars = [float(h) for h in hbar_list]
    if not hbars:
        raise ValueError("hbar_list must not be empty")
    if any(h <= 0.0 for h in hbars):
        raise ValueError("hbar values must be positive")
    mass = getattr(model, "mass", 1.0)
    e_star = eigenenergy(model, UnitsConfig(hbar=1.0, mass=mass), n).energy
    rows = []
    for h in hbars:
        units = UnitsConfig(hbar=h, mass=mass)
        k = _nearest_level(model, units, e_star)
        e = eigenenergy(model, units, k).energy
        tp = turning_points(model, e)
        xs = np.linspace(tp.x_left, tp.x_right, n_points)
        action = physical_action(model, units, e, xs)
        margin = 0.1 * tp.width
        mask = (action.grid >= tp.x_left + margin) & (
            action.grid <= tp.x_right - margin
        )
        gap = 2.0 * mass * (e - eval_potential(model, action.grid[mask]))
        p_c = np.sqrt(np.maximum(gap, 0.0))
        sup_x = float(np.max(np.abs(action.Xp[mask] - p_c)))
        sup_y = float(np.max(np.abs(action.p_m[mask].imag)))
        rows.append((h, sup_x, sup_y))
    return rows


def synthesize_state(model, units, n, grid, *, energy=None, depth_criterion=25.0):
    """One-call pipeline on a full-domain grid.

    Snaps the two grid nodes nearest the turning points onto them, runs
    both forbidden branches on the caller's own nodes out to the WKB
    depth (clipped to the grid ends), solves the allowed region with the
    two-sided member, assembles psi, and scatters it back onto the full
    grid with zeros beyond the branch ends.
    """
    e = eigenenergy(model, units, n).energy if energy is None else float(energy)
    grid = np.asarray(grid, dtype=float).copy()
    if grid.ndim != 1 or grid.size < 101:
        raise GridError("full grid needs at least 101 points")
    if not np.all(np.diff(grid) > 0.0):
        raise GridError("full grid must be strictly increasing")
    tp = turning_points(model, e)
    if grid[0] >= tp.x_left or grid[-1] <= tp.x_right:
        raise DomainError(
            f"grid [{grid[0]:.6g}, {grid[-1]:.6g}] must extend past both "
            f"turning points [{tp.x_left:.6g}, {tp.x_right:.6g}]"
        )
    i_l = int(np.argmin(np.abs(grid - tp.x_left)))
    i_r = int(np.argmin(np.abs(grid - tp.x_right)))
    grid[i_l] = tp.x_left
    grid[i_r] = tp.x_right
    if i_l == 0 or i_r == grid.size - 1 or i_r - i_l < 32:
        raise GridError("grid too coarse around the allowed interval")

    x_start_l = _outward_start(
        model, units, e, tp, "left", depth_criterion, float(grid[0])
    )
    x_start_r = _outward_start(
        model, units, e, tp, "right", depth_criterion, float(grid[-1])
    )
    j0 = int(np.searchsorted(grid, x_start_l, side="left"))
    j1 = int(np.searchsorted(grid, x_start_r, side="right")) - 1
    j0 = min(j0, max(0, i_l - 8))
    j1 = max(j1, min(grid.size - 1, i_r + 8))

    left = solve_forbidden(
        model, units, e, "left", depth_criterion, grid=grid[j0 : i_l + 1][::-1]
    )
    right = solve_forbidden(
        model, units, e, "right", depth_criterion, grid=grid[i_r : j1 + 1]
    )
    action = solve_allowed(model, units, e, grid[i_l : i_r + 1], left, right)
    wave = assemble_wavefunction(action, left, right, units)

    psi = np.zeros_like(grid)
    psi[j0 : j1 + 1] = wave.psi
    return SynthesisResult(
        grid=grid,
        psi=psi,
        action=action,
        left=left,
        right=right,
        wave=wave,
        allowed_slice=slice(i_l, i_r + 1),
        energy=e,
    )
