"""Checks for the smooth-action synthesis route.

Closed-form anchors for the harmonic n=2 state psi ~ (2x^2 - 1)e^{-x^2/2}:
the matched logarithmic derivative at x = sqrt(5) is -5 sqrt(5)/9, and in
the right forbidden region s(x) = -x + 4x/(2x^2 - 1).
"""

import math

import numpy as np
import pytest
from scipy.interpolate import CubicSpline
from scipy.integrate import simpson

from qhje1d import (
    HarmonicPotential,
    MorsePotential,
    UnitsConfig,
    analytic_eigenfunction,
    assemble_wavefunction,
    classical_limit_sweep,
    eigenenergy,
    eval_potential,
    numerov_solve,
    physical_action,
    quantization_defect,
    solve_allowed,
    solve_forbidden,
    synthesize_state,
    turning_points,
)
from qhje1d.errors import (
    DomainError,
    FamilyDegeneracyError,
    GridError,
    NotAnEigenvalueError,
    RiccatiStiffnessError,
)
from qhje1d.milne import _nearest_level, _rk4_riccati
from qhje1d.numerics import fd5_first

UNITS = UnitsConfig()
HARM = HarmonicPotential()
MORSE = MorsePotential()

SIGMA_R = -5.0 * math.sqrt(5.0) / 9.0  # -1.2422599874998832


def harmonic_pieces(n=2, energy=None, n_points=2001):
    e = eigenenergy(HARM, UNITS, n).energy if energy is None else float(energy)
    tp = turning_points(HARM, e)
    xs = np.linspace(tp.x_left, tp.x_right, n_points)
    left = solve_forbidden(HARM, UNITS, e, "left")
    right = solve_forbidden(HARM, UNITS, e, "right")
    return e, xs, left, right


def test_forbidden_tail_matches_closed_form():
    _, _, _, right = harmonic_pieces()
    assert abs(right.s[0] - SIGMA_R) < 1e-9
    s_exact = -right.grid + 4.0 * right.grid / (2.0 * right.grid**2 - 1.0)
    near = right.grid <= 6.0  # beyond that the WKB seed error has not died off yet
    assert np.max(np.abs(right.s[near] - s_exact[near])) < 1e-9
    assert abs(np.interp(5.0, right.grid, right.s) - (-4.591836734693878)) < 1e-6
    assert np.all(right.s < 0.0)


def test_forbidden_left_mirrors_right():
    # symmetric potential: the left tail is the reflection of the right one
    _, _, left, right = harmonic_pieces()
    assert abs(left.s[0] + right.s[0]) < 1e-10
    assert np.max(np.abs(left.Yi - right.Yi)) < 1e-10
    assert left.Yi[0] == 0.0 and np.all(np.diff(left.Yi) > 0.0)


def test_forbidden_tail_approaches_wkb_asymptote():
    e, _, _, right = harmonic_pieces()
    i = int(np.argmin(np.abs(right.grid - 0.9 * right.grid[-1])))
    kappa = math.sqrt(right.grid[i] ** 2 - 2.0 * e)
    assert abs(right.s[i] + kappa) / kappa < 0.02  # observed 0.011


def test_forbidden_grid_mode_and_validation():
    e, _, _, right = harmonic_pieces()
    tp = turning_points(HARM, e)
    xs = np.linspace(tp.x_right, right.grid[-1], 501)  # every second default node
    again = solve_forbidden(HARM, UNITS, e, "right", grid=xs)
    assert np.max(np.abs(right.s[::2] - again.s)) < 1e-6
    with pytest.raises(GridError):
        solve_forbidden(HARM, UNITS, e, "right", grid=xs[:8])
    with pytest.raises(DomainError):
        solve_forbidden(HARM, UNITS, e, "right", grid=xs + 0.5)
    with pytest.raises(DomainError):
        solve_forbidden(HARM, UNITS, e, "right", grid=xs[::-1])
    shuffled = xs.copy()
    shuffled[[5, 6]] = shuffled[[6, 5]]
    with pytest.raises(GridError):
        solve_forbidden(HARM, UNITS, e, "right", grid=shuffled)
    with pytest.raises(DomainError):
        solve_forbidden(HARM, UNITS, e, "right", x_limit=0.0)
    with pytest.raises(ValueError):
        solve_forbidden(HARM, UNITS, e, "top")


def test_quantization_defect_harmonic_ladder():
    for n in range(6):
        assert abs(quantization_defect(HARM, UNITS, n)) < 1e-6


def test_quantization_defect_morse():
    for n in range(3):
        assert abs(quantization_defect(MORSE, UNITS, n)) < 1e-5


def test_quantization_defect_flags_detuned_energy():
    d = quantization_defect(HARM, UNITS, 2, energy=2.51)
    assert d > 1e-3
    assert 0.051 < d < 0.056  # regression baseline 0.053144


def test_balanced_member_reaches_quantization_value():
    e, xs, left, right = harmonic_pieces()
    action = solve_allowed(HARM, UNITS, e, xs, left, right)
    assert action.X[0] == 0.0
    assert abs(action.X[-1] - 2.5 * math.pi) < 1e-6
    assert np.all(np.diff(action.X) > 0.0)
    # X' stays positive and finite through both turning points
    assert np.all(action.Xp > 0.0) and np.all(np.isfinite(action.Xp))


def test_member_parameter_moves_x_but_not_psi():
    e, xs, left, right = harmonic_pieces()
    ref = assemble_wavefunction(
        solve_allowed(HARM, UNITS, e, xs, left, right), left, right, UNITS
    )
    ends = {}
    for w0 in (0.5, 1.0, 2.0):
        action = solve_allowed(HARM, UNITS, e, xs, left, right, w0=w0)
        wave = assemble_wavefunction(action, left, right, UNITS)
        assert np.max(np.abs(wave.psi - ref.psi)) < 1e-9
        ends[w0] = float(action.X[-1])
    # X itself is member-dependent; only the balanced member quantizes
    for w0, frozen in ((0.5, 8.464401), (1.0, 7.654832), (2.0, 6.540037)):
        assert abs(ends[w0] - frozen) < 1e-3
        assert abs(ends[w0] - 2.5 * math.pi) > 0.1


def test_assembled_state_matches_closed_form_harmonic():
    grid = np.linspace(-8.5, 8.5, 2001)
    for n in range(4):
        res = synthesize_state(HARM, UNITS, n, grid)
        ana = analytic_eigenfunction(HARM, UNITS, n, res.grid)
        assert np.max(np.abs(res.psi - ana)) < 1e-8


def test_assembled_state_matches_closed_form_morse():
    grid = np.linspace(-2.5, 16.0, 3001)
    for n in range(3):
        res = synthesize_state(MORSE, UNITS, n, grid)
        ana = analytic_eigenfunction(MORSE, UNITS, n, res.grid)
        assert np.max(np.abs(res.psi - ana)) < 1e-8


@pytest.mark.parametrize(
    "model,n,grid,tol",
    [
        (HARM, 3, np.linspace(-8.5, 8.5, 2001), 1e-6),
        (MORSE, 2, np.linspace(-2.5, 16.0, 3001), 1e-5),
    ],
)
def test_route_agrees_with_oracle(model, n, grid, tol):
    e = eigenenergy(model, UNITS, n).energy
    res = synthesize_state(model, UNITS, n, grid)
    sol = numerov_solve(model, UNITS, e, grid)
    sign = math.copysign(1.0, float(np.dot(res.psi, sol.psi)))
    shared = res.grid == grid  # all nodes except the two snapped onto the TPs
    assert int(grid.size - shared.sum()) == 2
    assert np.max(np.abs(res.psi[shared] - sign * sol.psi[shared])) < tol
    spline = CubicSpline(grid, sign * sol.psi)
    for i in np.nonzero(~shared)[0]:
        assert abs(res.psi[i] - float(spline(res.grid[i]))) < tol


def test_nodes_sit_at_interference_zeros():
    grid = np.linspace(-8.5, 8.5, 2001)
    for n, exact in ((2, (-1.0, 1.0)), (3, (-math.sqrt(3.0), 0.0, math.sqrt(3.0)))):
        res = synthesize_state(HARM, UNITS, n, grid)
        flips = np.nonzero(res.psi[:-1] * res.psi[1:] < 0.0)[0]
        assert flips.size == n
        for i, x_node in zip(flips, np.asarray(exact) / math.sqrt(2.0)):
            x0, x1 = res.grid[i], res.grid[i + 1]
            y0, y1 = res.psi[i], res.psi[i + 1]
            crossing = x0 - y0 * (x1 - x0) / (y1 - y0)
            assert abs(crossing - x_node) < 1e-6


def test_normalization_and_tail_fill():
    grid = np.linspace(-8.5, 8.5, 2001)
    res = synthesize_state(HARM, UNITS, 2, grid)
    assert abs(res.wave.norm - 1.0) < 1e-8
    assert abs(float(simpson(res.psi**2, x=res.grid)) - 1.0) < 1e-8
    assert res.psi[0] == 0.0 and res.psi[-1] == 0.0  # beyond the deep-tail cutoff
    assert np.all(np.isfinite(res.psi))
    assert np.array_equal(res.grid[res.allowed_slice], res.action.grid)
    assert res.energy == 2.5


def test_detuned_energy_raises_on_assembly():
    e, xs, left, right = harmonic_pieces(energy=2.51)
    action = solve_allowed(HARM, UNITS, e, xs, left, right)
    with pytest.raises(NotAnEigenvalueError) as info:
        assemble_wavefunction(action, left, right, UNITS)
    assert 0.10 < info.value.defect < 0.12  # regression baseline 0.1106


def test_imaginary_part_is_half_log_slope():
    # Y = (hbar/2) ln X' + const holds for every member
    e, xs, left, right = harmonic_pieces()
    for action in (
        solve_allowed(HARM, UNITS, e, xs, left, right),
        physical_action(HARM, UNITS, e, xs),
    ):
        drift = action.Y - 0.5 * UNITS.hbar * np.log(action.Xp / action.Xp[0])
        assert np.max(np.abs(drift)) < 1e-10


@pytest.mark.parametrize("model,n", [(HARM, 2), (MORSE, 2)])
def test_momentum_solves_quantum_hamilton_jacobi(model, n):
    e = eigenenergy(model, UNITS, n).energy
    tp = turning_points(model, e)
    xs = np.linspace(tp.x_left, tp.x_right, 2001)
    left = solve_forbidden(model, UNITS, e, "left")
    right = solve_forbidden(model, UNITS, e, "right")
    h = xs[2] - xs[1]
    for action in (
        solve_allowed(model, UNITS, e, xs, left, right),
        physical_action(model, UNITS, e, xs),
    ):
        pm = action.p_m
        dpm = fd5_first(pm.real, h) + 1j * fd5_first(pm.imag, h)
        res = (
            pm**2 / (2.0 * UNITS.mass)
            + UNITS.hbar / (2j * UNITS.mass) * dpm
            - (e - eval_potential(model, action.grid))
        )
        # skip the stencil edge; the snapped end cells are not uniform
        assert np.nanmax(np.abs(res[3:-3])) < 1e-6 * e


def test_physical_member_tracks_classical_momentum():
    e, xs, left, right = harmonic_pieces()
    p_c = np.sqrt(np.maximum(2.0 * (e - eval_potential(HARM, xs)), 0.0))
    inner = (xs >= xs[0] + 0.1 * (xs[-1] - xs[0])) & (
        xs <= xs[-1] - 0.1 * (xs[-1] - xs[0])
    )
    ripple_phys = np.max(
        np.abs(physical_action(HARM, UNITS, e, xs).Xp[inner] - p_c[inner])
    )
    ripple_anch = np.max(
        np.abs(solve_allowed(HARM, UNITS, e, xs, left, right).Xp[inner] - p_c[inner])
    )
    # the turning-point-anchored member keeps an O(1) ripple at any hbar;
    # only the WKB-anchored member hugs p_C
    assert abs(ripple_phys - 0.1615259838696903) < 1e-3
    assert ripple_anch > 1.0
    assert ripple_anch > 5.0 * ripple_phys


def test_hbar_sweep_is_strictly_decreasing():
    rows = classical_limit_sweep(HARM, 2, [1.0, 0.5, 0.25, 0.1])
    frozen = (0.16152598, 0.075491129, 0.027722253, 0.0052371110)
    for (h, sup_x, sup_y), want in zip(rows, frozen):
        assert abs(sup_x - want) / want < 1e-3
        assert sup_y / h < 0.55
    sups = [row[1] for row in rows]
    assert all(a > b for a, b in zip(sups, sups[1:]))
    with pytest.raises(ValueError):
        classical_limit_sweep(HARM, 2, [])
    with pytest.raises(ValueError):
        classical_limit_sweep(HARM, 2, [1.0, -0.5])


def test_sweep_relocks_to_nearest_level():
    # target E* = 2.5; equidistant neighbors resolve to the smaller n
    assert _nearest_level(HARM, UnitsConfig(hbar=0.5), 2.5) == 4
    assert _nearest_level(HARM, UnitsConfig(hbar=0.25), 2.5) == 9
    assert _nearest_level(HARM, UnitsConfig(hbar=0.1), 2.5) == 24
    assert _nearest_level(MORSE, UnitsConfig(), 8.0) == 2


def test_riccati_guard_trips_on_blowup():
    with pytest.raises(RiccatiStiffnessError):
        _rk4_riccati(np.zeros((1, 21)), np.array([0.0, 1.0]), 10, -1e5)


def test_allowed_grid_validation():
    e, xs, left, right = harmonic_pieces()
    with pytest.raises(GridError):
        solve_allowed(HARM, UNITS, e, xs[:20], left)
    with pytest.raises(GridError):
        solve_allowed(HARM, UNITS, e, xs[::-1], left)
    with pytest.raises(DomainError):
        solve_allowed(HARM, UNITS, e, np.linspace(-2.0, 2.0, 101), left)
    with pytest.raises(FamilyDegeneracyError):
        solve_allowed(HARM, UNITS, e, xs, left, w0=0.0)
    with pytest.raises(DomainError):
        physical_action(HARM, UNITS, e, np.linspace(-2.0, 2.0, 101))
