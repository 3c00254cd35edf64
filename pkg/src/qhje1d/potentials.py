"""Potential models, analytic energy levels, and reference eigenfunctions.

Three one-dimensional wells are supported:

* harmonic        V(x) = (1/2) m omega^2 x^2
* Morse           V(x) = D (1 - exp(-a x))^2
* tabulated       natural cubic spline through (x, V) samples

The harmonic and Morse wells carry closed-form bound-state energies and
eigenfunctions, which serve as the independent oracle for every solver in
this package.  Tabulated wells support evaluation and turning points only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq
from scipy.special import eval_genlaguerre, eval_hermite, gammaln

from .errors import (
    DomainError,
    PotentialRangeError,
    UnboundStateError,
    UnsupportedPotentialError,
)

__all__ = [
    "UnitsConfig",
    "HarmonicPotential",
    "MorsePotential",
    "TabulatedPotential",
    "EnergyLevel",
    "TurningPoints",
    "eval_potential",
    "potential_derivative",
    "eigenenergy",
    "bound_state_count",
    "turning_points",
    "analytic_eigenfunction",
    "eigenfunction_with_derivative",
    "load_tabulated",
]


@dataclass(frozen=True)
class UnitsConfig:
    """Problem-wide constants.

    Attributes
    ----------
    hbar : float
        Reduced Planck constant, > 0.
    mass : float
        Particle mass, > 0.
    """

    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0.0) or not math.isfinite(self.hbar):
            raise ValueError(f"hbar must be positive and finite, got {self.hbar}")
        if not (self.mass > 0.0) or not math.isfinite(self.mass):
            raise ValueError(f"mass must be positive and finite, got {self.mass}")


@dataclass(frozen=True)
class HarmonicPotential:
    """V(x) = (1/2) m omega^2 x^2.

    The mass enters the potential itself, so it is stored here; keep it
    equal to ``UnitsConfig.mass`` of the run for a consistent Hamiltonian.
    """

    omega: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if not (self.omega > 0.0):
            raise ValueError(f"omega must be positive, got {self.omega}")
        if not (self.mass > 0.0):
            raise ValueError(f"mass must be positive, got {self.mass}")

    def value(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * self.mass * self.omega**2 * x * x

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        return self.mass * self.omega**2 * x


@dataclass(frozen=True)
class MorsePotential:
    """V(x) = depth * (1 - exp(-rate * x))^2.

    Finite dissociation limit ``depth`` as x -> +inf, steep repulsive wall
    for x < 0.  Only finitely many bound states exist.
    """

    depth: float = 10.0
    rate: float = 1.0

    def __post_init__(self):
        if not (self.depth > 0.0):
            raise ValueError(f"depth must be positive, got {self.depth}")
        if not (self.rate > 0.0):
            raise ValueError(f"rate must be positive, got {self.rate}")

    def value(self, x):
        x = np.asarray(x, dtype=float)
        g = 1.0 - np.exp(-self.rate * x)
        return self.depth * g * g

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        e = np.exp(-self.rate * x)
        return 2.0 * self.depth * self.rate * (1.0 - e) * e


class TabulatedPotential:
    """Natural cubic spline through strictly increasing (x, V) samples.

    Evaluation outside [x[0], x[-1]] raises PotentialRangeError: a spline
    says nothing trustworthy beyond its data.
    """

    def __init__(self, xs, vs):
        xs = np.asarray(xs, dtype=float)
        vs = np.asarray(vs, dtype=float)
        if xs.ndim != 1 or xs.shape != vs.shape or xs.size < 4:
            raise ValueError("need matching 1-d arrays with at least 4 samples")
        if not np.all(np.diff(xs) > 0.0):
            raise ValueError("sample abscissae must be strictly increasing")
        self.xs = xs
        self.vs = vs
        self._spline = CubicSpline(xs, vs, bc_type="natural")
        self._dspline = self._spline.derivative()

    @property
    def x_min(self):
        return float(self.xs[0])

    @property
    def x_max(self):
        return float(self.xs[-1])

    def _check_range(self, x):
        x = np.asarray(x, dtype=float)
        tol = 1e-12 * max(1.0, abs(self.x_min), abs(self.x_max))
        if np.any(x < self.x_min - tol) or np.any(x > self.x_max + tol):
            raise PotentialRangeError(
                f"x outside tabulated range [{self.x_min:.6g}, {self.x_max:.6g}]"
            )
        return np.clip(x, self.x_min, self.x_max)

    def value(self, x):
        return self._spline(self._check_range(x))

    def derivative(self, x):
        return self._dspline(self._check_range(x))

    def __repr__(self):
        return (
            f"TabulatedPotential({self.xs.size} samples on "
            f"[{self.x_min:.6g}, {self.x_max:.6g}])"
        )


@dataclass(frozen=True)
class EnergyLevel:
    """A bound-state level: quantum number and energy."""

    n: int
    energy: float


@dataclass(frozen=True)
class TurningPoints:
    """Classical turning points x_left < x_right at some energy."""

    x_left: float
    x_right: float

    @property
    def width(self):
        return self.x_right - self.x_left


def eval_potential(model, x):
    """Potential value at x (scalar or array)."""
    return model.value(x)


def potential_derivative(model, x):
    """dV/dx at x (scalar or array)."""
    return model.derivative(x)


def _morse_lambda(model, units):
    # lambda = sqrt(2 m D) / (a hbar); bound states need 2*lambda - 2n - 1 > 0
    return math.sqrt(2.0 * units.mass * model.depth) / (model.rate * units.hbar)


def bound_state_count(model, units):
    """Number of bound levels of the well.

    Harmonic wells bind every n; the Morse well binds n with
    2*lambda - 2n - 1 > 0 where lambda = sqrt(2 m D)/(a hbar).
    """
    if isinstance(model, HarmonicPotential):
        return None  # unbounded ladder
    if isinstance(model, MorsePotential):
        lam = _morse_lambda(model, units)
        n_max = math.ceil(lam - 0.5) - 1
        return max(0, n_max + 1)
    raise UnsupportedPotentialError(
        f"no closed-form level count for {type(model).__name__}"
    )


def eigenenergy(model, units, n):
    """Closed-form bound-state energy E_n.

    harmonic: E_n = hbar omega (n + 1/2)
    Morse:    E_n = hbar a sqrt(2D/m) (n + 1/2) - hbar^2 a^2 (n + 1/2)^2 / (2m)

    Raises UnboundStateError for Morse n outside the bound ladder.
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"quantum number must be a non-negative integer, got {n}")
    n = int(n)
    if isinstance(model, HarmonicPotential):
        return EnergyLevel(n, units.hbar * model.omega * (n + 0.5))
    if isinstance(model, MorsePotential):
        count = bound_state_count(model, units)
        if n >= count:
            raise UnboundStateError(
                f"Morse well binds {count} states (n = 0..{count - 1}), got n={n}"
            )
        a = model.rate
        nn = n + 0.5
        omega0 = a * math.sqrt(2.0 * model.depth / units.mass)
        e = units.hbar * omega0 * nn - (units.hbar * a * nn) ** 2 / (2.0 * units.mass)
        return EnergyLevel(n, e)
    raise UnsupportedPotentialError(
        f"no closed-form energies for {type(model).__name__}; "
        "supply the energy explicitly"
    )


def turning_points(model, energy):
    """Classical turning points V(x) = E bracketing the allowed interval.

    Closed forms for harmonic and Morse; bisection on the spline for
    tabulated wells.  Raises DomainError when no allowed interval exists.
    """
    e = float(energy)
    if isinstance(model, HarmonicPotential):
        if e <= 0.0:
            raise DomainError(f"harmonic well has no allowed region at E={e:.6g}")
        amp = math.sqrt(2.0 * e / (model.mass * model.omega**2))
        return TurningPoints(-amp, amp)
    if isinstance(model, MorsePotential):
        if e <= 0.0:
            raise DomainError(f"Morse well has no allowed region at E={e:.6g}")
        if e >= model.depth:
            raise DomainError(
                f"E={e:.6g} is at or above the dissociation limit {model.depth:.6g}"
            )
        r = math.sqrt(e / model.depth)
        a = model.rate
        return TurningPoints(-math.log1p(r) / a, -math.log1p(-r) / a)
    if isinstance(model, TabulatedPotential):
        return _tabulated_turning_points(model, e)
    raise UnsupportedPotentialError(f"unknown potential {type(model).__name__}")


def _tabulated_turning_points(model, e):
    xs = model.xs
    dense = np.linspace(xs[0], xs[-1], max(4097, 8 * xs.size))
    vals = model.value(dense) - e
    i_min = int(np.argmin(vals))
    if vals[i_min] >= 0.0:
        raise DomainError(f"tabulated well has no allowed region at E={e:.6g}")

    def f(x):
        return float(model.value(x) - e)

    left = None
    for i in range(i_min, 0, -1):
        if vals[i - 1] >= 0.0 > vals[i]:
            left = brentq(f, dense[i - 1], dense[i], xtol=1e-13, rtol=8.9e-16)
            break
    right = None
    for i in range(i_min, dense.size - 1):
        if vals[i] < 0.0 <= vals[i + 1]:
            right = brentq(f, dense[i], dense[i + 1], xtol=1e-13, rtol=8.9e-16)
            break
    if left is None or right is None:
        raise DomainError(
            f"E={e:.6g} does not bracket an allowed interval inside the table"
        )
    return TurningPoints(float(left), float(right))


def analytic_eigenfunction(model, units, n, x):
    """Normalized closed-form eigenfunction, positive as x -> +inf."""
    psi, _ = eigenfunction_with_derivative(model, units, n, x)
    return psi


def eigenfunction_with_derivative(model, units, n, x):
    """Closed-form eigenfunction and its x-derivative on given points.

    harmonic: Hermite functions,
        psi_n = (m omega / pi hbar)^(1/4) / sqrt(2^n n!) H_n(xi) exp(-xi^2/2),
        xi = sqrt(m omega / hbar) x.
    Morse: associated Laguerre form in z = 2 lambda exp(-a x),
        psi_n ~ z^(b/2) exp(-z/2) L_n^(b)(z), b = 2 lambda - 2n - 1,
        normalized by sqrt(a b n! / Gamma(2 lambda - n)).

    Both conventions give psi > 0 in the right-hand tail.
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"quantum number must be a non-negative integer, got {n}")
    n = int(n)
    x = np.asarray(x, dtype=float)
    if isinstance(model, HarmonicPotential):
        alpha = math.sqrt(model.mass * model.omega / units.hbar)
        xi = alpha * x
        lognorm = 0.25 * math.log(model.mass * model.omega / (math.pi * units.hbar))
        lognorm -= 0.5 * (n * math.log(2.0) + gammaln(n + 1))
        norm = math.exp(lognorm)
        gauss = np.exp(-0.5 * xi * xi)
        h_n = eval_hermite(n, xi)
        psi = norm * h_n * gauss
        # H_n' = 2 n H_{n-1}
        h_prev = eval_hermite(n - 1, xi) if n > 0 else np.zeros_like(xi)
        dpsi = norm * alpha * (2.0 * n * h_prev - xi * h_n) * gauss
        return psi, dpsi
    if isinstance(model, MorsePotential):
        count = bound_state_count(model, units)
        if n >= count:
            raise UnboundStateError(
                f"Morse well binds {count} states (n = 0..{count - 1}), got n={n}"
            )
        lam = _morse_lambda(model, units)
        a = model.rate
        b = 2.0 * lam - 2.0 * n - 1.0
        z = 2.0 * lam * np.exp(-a * x)
        lognorm = 0.5 * (
            math.log(a * b) + gammaln(n + 1) - gammaln(2.0 * lam - n)
        )
        norm = math.exp(lognorm)
        lag = eval_genlaguerre(n, b, z)
        shape = np.exp(0.5 * b * np.log(z) - 0.5 * z)
        psi = norm * shape * lag
        # d/dz L_n^(b)(z) = -L_{n-1}^(b+1)(z)
        dlag = -eval_genlaguerre(n - 1, b + 1.0, z) if n > 0 else np.zeros_like(z)
        dpsi_dz = norm * shape * ((0.5 * b / z - 0.5) * lag + dlag)
        dpsi = dpsi_dz * (-a * z)
        return psi, dpsi
    raise UnsupportedPotentialError(
        f"no closed-form eigenfunctions for {type(model).__name__}"
    )


def load_tabulated(path):
    """Read a two-column (x, V) text file into a TabulatedPotential.

    Lines starting with '#' and blank lines are skipped; columns are
    whitespace separated.
    """
    xs, vs = [], []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split()
            if len(parts) < 2:
                raise ValueError(f"{path}:{lineno}: expected two columns, got {text!r}")
            xs.append(float(parts[0]))
            vs.append(float(parts[1]))
    return TabulatedPotential(np.asarray(xs), np.asarray(vs))
