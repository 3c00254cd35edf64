"""Command-line front end: solves, figure data files, hbar sweep, poles.

Every command writes CSV (UTF-8, LF, ``%.12g`` cells, one header row)
into the output directory; ``--emit csv,svg`` adds a minimal polyline
rendering with no plotting dependency.  Failures are classified through
the exit code alone: 0 success, 2 configuration error, 3 requested
energy is not an eigenvalue, 4 solver breakdown mid-run.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline

from .classical import classical_action, classical_momentum
from .errors import NotAnEigenvalueError, QhjeError
from .milne import classical_limit_sweep, synthesize_state
from .oracle import numerov_solve
from .polar import moebius_integrate_qmf, reconstruct_psi_antithetic
from .potentials import (
    HarmonicPotential,
    MorsePotential,
    UnitsConfig,
    bound_state_count,
    eigenenergy,
    eval_potential,
    load_tabulated,
    turning_points,
)


class ConfigError(QhjeError, ValueError):
    """Bad flag, config-file entry, or grid string."""


_DEFAULTS = {
    "potential": "harmonic",
    "omega": 1.0,
    "D": 10.0,
    "a": 1.0,
    "mass": 1.0,
    "hbar": 1.0,
    "n": 2,
    "grid": "-6:6:2001",
    "method": "both",
    "out": ".",
    "emit": "csv",
    "hbars": "1,0.5,0.25,0.1",
}

# the figure gallery is fixed content: 1-3 harmonic n=2, 4 Morse n=2
_FIG_GRID = {4: "-2.5:8:2001"}

_SVG_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b")


@dataclass(frozen=True)
class RunConfig:
    """Resolved inputs for one command invocation."""

    model: object
    units: UnitsConfig
    n: int
    energy: float | None
    grid: np.ndarray
    method: str
    out: Path
    emit: frozenset
    hbars: tuple


def _parse_grid_spec(spec):
    parts = str(spec).split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must look like a:b:N, got {spec!r}")
    try:
        a, b, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as err:
        raise ConfigError(f"unreadable grid spec {spec!r}") from err
    if not a < b:
        raise ConfigError(f"grid needs a < b, got {spec!r}")
    if count < 101 or count % 2 == 0:
        raise ConfigError(f"grid count must be odd and >= 101, got {count}")
    return np.linspace(a, b, count)


def _parse_config_file(path):
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot read config file {path}: {err}") from err
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in _DEFAULTS and key != "table":
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value.strip()
    return values


def _setting(args, file_values, key, cast=None):
    """Flag wins over config file wins over built-in default."""
    value = getattr(args, key, None)
    if value is None:
        value = file_values.get(key, _DEFAULTS.get(key))
    if value is None:
        return None
    return cast(value) if cast else value


def _build_config(args, *, grid_default=None, method=None):
    file_values = _parse_config_file(args.config) if args.config else {}

    hbar = _setting(args, file_values, "hbar", float)
    mass = _setting(args, file_values, "mass", float)
    if hbar <= 0.0 or mass <= 0.0:
        raise ConfigError("hbar and mass must be positive")
    units = UnitsConfig(hbar=hbar, mass=mass)

    kind = _setting(args, file_values, "potential")
    if kind == "harmonic":
        model = HarmonicPotential(
            omega=_setting(args, file_values, "omega", float), mass=mass
        )
    elif kind == "morse":
        model = MorsePotential(
            depth=_setting(args, file_values, "D", float),
            rate=_setting(args, file_values, "a", float),
        )
    elif kind == "tabulated":
        table = getattr(args, "table", None) or file_values.get("table")
        if not table:
            raise ConfigError("--potential tabulated needs --table PATH")
        model = load_tabulated(table)
    else:
        raise ConfigError(f"unknown potential kind {kind!r}")

    n = _setting(args, file_values, "n", int)
    if n < 0:
        raise ConfigError(f"quantum number must be >= 0, got {n}")
    limit = None
    try:
        limit = bound_state_count(model, units)
    except QhjeError:
        pass  # tabulated: no closed-form count
    if limit is not None and n >= limit:
        raise ConfigError(f"n={n} is not bound (the well holds {limit} states)")

    energy = getattr(args, "energy", None)
    if energy is None and "energy" in file_values:
        energy = float(file_values["energy"])
    if kind == "tabulated" and energy is None:
        raise ConfigError("tabulated potentials need an explicit --energy")

    grid_spec = getattr(args, "grid", None) or file_values.get("grid")
    if grid_spec is None:
        grid_spec = grid_default or _DEFAULTS["grid"]
    grid = _parse_grid_spec(grid_spec)

    emit_spec = _setting(args, file_values, "emit")
    emit = frozenset(token.strip() for token in emit_spec.split(",") if token.strip())
    if not emit or not emit <= {"csv", "svg"}:
        raise ConfigError(f"emit must be csv and/or svg, got {emit_spec!r}")

    hbars_spec = _setting(args, file_values, "hbars")
    try:
        hbars = tuple(float(tok) for tok in str(hbars_spec).split(",") if tok.strip())
    except ValueError as err:
        raise ConfigError(f"unreadable hbar list {hbars_spec!r}") from err

    return RunConfig(
        model=model,
        units=units,
        n=n,
        energy=None if energy is None else float(energy),
        grid=grid,
        method=method or _setting(args, file_values, "method"),
        out=Path(_setting(args, file_values, "out")),
        emit=emit,
        hbars=hbars,
    )


def _resolve_energy(cfg):
    if cfg.energy is not None:
        return cfg.energy
    return eigenenergy(cfg.model, cfg.units, cfg.n).energy


def _require_bracketing(cfg, e):
    tp = turning_points(cfg.model, e)
    if not (cfg.grid[0] < tp.x_left and tp.x_right < cfg.grid[-1]):
        raise ConfigError(
            f"grid [{cfg.grid[0]:.6g}, {cfg.grid[-1]:.6g}] must bracket the "
            f"turning points [{tp.x_left:.6g}, {tp.x_right:.6g}]"
        )
    return tp


def _fmt(value):
    if value is None:
        return ""
    value = float(value)
    if math.isnan(value):
        return ""
    return f"{value:.12g}"


def _write_csv(path, header, columns):
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(_fmt(cell) for cell in row))
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_svg(path, x, series, title):
    """One polyline per labelled series, linear axes, no dependencies."""
    width, height, margin = 800.0, 500.0, 60.0
    xs = np.asarray(x, dtype=float)
    finite_y = [
        np.asarray([v for v in ys if v is not None and math.isfinite(v)])
        for _, ys in series
    ]
    y_all = np.concatenate([f for f in finite_y if f.size] or [np.zeros(1)])
    x_lo, x_hi = float(xs.min()), float(xs.max())
    y_lo, y_hi = float(y_all.min()), float(y_all.max())
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def sx(v):
        return margin + (v - x_lo) / (x_hi - x_lo) * (width - 2 * margin)

    def sy(v):
        return height - margin - (v - y_lo) / (y_hi - y_lo) * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:g} {height:g}" '
        f'font-family="sans-serif" font-size="12">',
        f'<rect width="{width:g}" height="{height:g}" fill="white"/>',
        f'<text x="{width / 2:g}" y="24" text-anchor="middle" font-size="15">'
        f"{title}</text>",
    ]
    axis = f'stroke="#333" stroke-width="1"'
    parts.append(
        f'<line x1="{margin:g}" y1="{height - margin:g}" x2="{width - margin:g}" '
        f'y2="{height - margin:g}" {axis}/>'
    )
    parts.append(
        f'<line x1="{margin:g}" y1="{margin:g}" x2="{margin:g}" '
        f'y2="{height - margin:g}" {axis}/>'
    )
    for tick in np.linspace(x_lo, x_hi, 5):
        px = sx(tick)
        parts.append(
            f'<line x1="{px:.6g}" y1="{height - margin:g}" x2="{px:.6g}" '
            f'y2="{height - margin + 5:g}" {axis}/>'
        )
        parts.append(
            f'<text x="{px:.6g}" y="{height - margin + 20:g}" '
            f'text-anchor="middle">{tick:.3g}</text>'
        )
    for tick in np.linspace(y_lo, y_hi, 5):
        py = sy(tick)
        parts.append(
            f'<line x1="{margin - 5:g}" y1="{py:.6g}" x2="{margin:g}" '
            f'y2="{py:.6g}" {axis}/>'
        )
        parts.append(
            f'<text x="{margin - 8:g}" y="{py + 4:.6g}" '
            f'text-anchor="end">{tick:.3g}</text>'
        )
    for k, (label, ys) in enumerate(series):
        color = _SVG_PALETTE[k % len(_SVG_PALETTE)]
        points = [
            f"{sx(float(xv)):.6g},{sy(float(yv)):.6g}"
            for xv, yv in zip(xs, ys)
            if yv is not None and math.isfinite(yv)
        ]
        if points:
            parts.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                f'points="{" ".join(points)}"/>'
            )
        parts.append(
            f'<text x="{width - margin:g}" y="{margin + 16 * k:g}" '
            f'text-anchor="end" fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(parts) + "\n")


def _column(size, fill=None):
    return [fill] * size


def _oracle_on(cfg, e, x_out):
    """Numerov needs a uniform grid; spline-correct any snapped nodes."""
    sol = numerov_solve(cfg.model, cfg.units, e, cfg.grid)
    if sol.tail_mismatch > 1e-3:
        raise NotAnEigenvalueError(
            "oracle logarithmic derivative jumps at the match point",
            sol.tail_mismatch,
        )
    psi = sol.psi.copy()
    moved = np.nonzero(x_out != cfg.grid)[0]
    if moved.size:
        spline = CubicSpline(cfg.grid, sol.psi)
        psi[moved] = spline(x_out[moved])
    return psi


def cmd_solve(cfg):
    e = _resolve_energy(cfg)
    _require_bracketing(cfg, e)
    size = cfg.grid.size
    x_out = cfg.grid
    psi_col = _column(size)
    x_col = y_col = xp_col = _column(size)
    pl_col = _column(size)

    if cfg.method in ("family", "both"):
        res = synthesize_state(cfg.model, cfg.units, cfg.n, cfg.grid, energy=cfg.energy)
        x_out = res.grid
        psi_col = list(res.psi)
        x_col = _column(size)
        xp_col = _column(size)
        y_col = _column(size)
        sl = res.allowed_slice
        x_col[sl] = list(res.action.X)
        xp_col[sl] = list(res.action.Xp)
        y_col[sl] = list(res.action.Y)

    if cfg.method in ("polar", "both"):
        trace = moebius_integrate_qmf(
            cfg.model, cfg.units, e, float(x_out[0]), x_out
        )
        pl_col = [
            float(p.imag) if ok else None
            for p, ok in zip(trace.p_l, trace.regular)
        ]
        if cfg.method == "polar":
            wave = reconstruct_psi_antithetic(
                trace, cfg.units, [p.x0 for p in trace.poles]
            )
            psi_col = list(wave.psi)

    psi_oracle = _oracle_on(cfg, e, x_out)
    v_col = eval_potential(cfg.model, x_out)

    _write_csv(
        cfg.out / "solution.csv",
        ["x", "V", "psi", "psi_oracle", "X", "Xp", "Y", "pL_im"],
        [list(x_out), list(v_col), psi_col, list(psi_oracle), x_col, xp_col, y_col, pl_col],
    )
    if "svg" in cfg.emit:
        _write_svg(
            cfg.out / "solution.svg",
            x_out,
            [("psi", psi_col), ("psi_oracle", list(psi_oracle))],
            f"bound state n={cfg.n}, E={e:.6g}",
        )
    return 0


def _figure_config(args, which):
    if which in (1, 2, 3):
        args.potential = "harmonic"
    else:
        args.potential = "morse"
    args.n = 2
    args.energy = None
    return _build_config(args, grid_default=_FIG_GRID.get(which))


def cmd_figures(args):
    which = args.which
    if which not in (1, 2, 3, 4):
        raise ConfigError(f"figure index must be 1..4, got {which}")
    cfg = _figure_config(args, which)
    e = _resolve_energy(cfg)
    _require_bracketing(cfg, e)
    res = synthesize_state(cfg.model, cfg.units, cfg.n, cfg.grid)
    act = res.action

    if which == 1:
        w0 = classical_action(cfg.model, cfg.units, e, act.grid).w0
        header = ["x", "X", "W0"]
        columns = [list(act.grid), list(act.X), list(w0)]
        x_plot, series = act.grid, [("X", columns[1]), ("W0", columns[2])]
    elif which == 2:
        p_c = np.real(classical_momentum(cfg.model, cfg.units, e, act.grid))
        header = ["x", "Xp", "pC"]
        columns = [list(act.grid), list(act.Xp), list(p_c)]
        x_plot, series = act.grid, [("Xp", columns[1]), ("pC", columns[2])]
    elif which == 3:
        envelope = res.wave.A / np.sqrt(act.Xp)
        phase = np.sin(act.X / cfg.units.hbar + 0.25 * math.pi)
        product = envelope * phase
        header = ["x", "envelope", "phase_factor", "product"]
        columns = [list(act.grid), list(envelope), list(phase), list(product)]
        x_plot = act.grid
        series = [("envelope", columns[1]), ("product", columns[3])]
    else:
        size = res.grid.size
        y1 = _column(size)
        y3 = _column(size)
        x_col = _column(size)
        i_l = res.allowed_slice.start
        i_r = res.allowed_slice.stop - 1
        left_len = res.left.grid.size
        y1[i_l - left_len + 1 : i_l + 1] = list(res.left.Yi[::-1])
        y3[i_r : i_r + res.right.grid.size] = list(res.right.Yi)
        x_col[res.allowed_slice] = list(act.X)
        header = ["x", "Y1", "Y3", "X", "psi"]
        columns = [list(res.grid), y1, y3, x_col, list(res.psi)]
        x_plot = res.grid
        series = [("Y1", y1), ("Y3", y3), ("X", x_col), ("psi", columns[4])]

    _write_csv(cfg.out / f"fig{which}.csv", header, columns)
    if "svg" in cfg.emit:
        _write_svg(cfg.out / f"fig{which}.svg", x_plot, series, f"figure {which}")
    return 0


def cmd_sweep_hbar(args):
    cfg = _build_config(args)
    if not cfg.hbars:
        raise ConfigError("hbar sweep list is empty")
    if any(h <= 0.0 for h in cfg.hbars) or any(
        b >= a for a, b in zip(cfg.hbars, cfg.hbars[1:])
    ):
        raise ConfigError("hbar list must be positive and strictly decreasing")
    rows = classical_limit_sweep(
        cfg.model, cfg.n, cfg.hbars, n_points=cfg.grid.size
    )
    _write_csv(
        cfg.out / "sweep.csv",
        ["hbar", "sup_Xp_minus_pc", "sup_Yp"],
        [[r[0] for r in rows], [r[1] for r in rows], [r[2] for r in rows]],
    )
    if "svg" in cfg.emit:
        _write_svg(
            cfg.out / "sweep.svg",
            [r[0] for r in rows],
            [
                ("sup|X'-pC|", [r[1] for r in rows]),
                ("sup|Y'|", [r[2] for r in rows]),
            ],
            "classical limit sweep",
        )
    return 0


def cmd_poles(args):
    cfg = _build_config(args, method="polar")
    e = _resolve_energy(cfg)
    _require_bracketing(cfg, e)
    trace = moebius_integrate_qmf(
        cfg.model, cfg.units, e, float(cfg.grid[0]), cfg.grid
    )
    inside = [
        p for p in trace.poles if eval_potential(cfg.model, p.x0) < e
    ]
    _write_csv(
        cfg.out / "poles.csv",
        ["x0", "residue_re", "residue_im"],
        [
            [p.x0 for p in inside],
            [p.residue.real for p in inside],
            [p.residue.imag for p in inside],
        ],
    )
    return 0


def _add_common_flags(sub):
    sub.add_argument("--potential", choices=("harmonic", "morse", "tabulated"))
    sub.add_argument("--omega", type=float)
    sub.add_argument("--D", type=float)
    sub.add_argument("--a", type=float)
    sub.add_argument("--mass", type=float)
    sub.add_argument("--hbar", type=float)
    sub.add_argument("--n", type=int)
    sub.add_argument("--grid", help="x_min:x_max:count, count odd and >= 101")
    sub.add_argument("--method", choices=("family", "polar", "both"))
    sub.add_argument("--out")
    sub.add_argument("--emit", help="csv, svg, or csv,svg")
    sub.add_argument("--config", help="key=value file; explicit flags win")
    sub.add_argument("--table", help="x V table for --potential tabulated")
    sub.add_argument(
        "--energy",
        type=float,
        help="explicit energy instead of the closed-form level",
    )
    sub.add_argument("--hbars", help="comma list for sweep-hbar, decreasing")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qhje1d",
        description="Bound states from the quantum Hamilton-Jacobi equation.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for name in ("solve", "figures", "sweep-hbar", "poles"):
        sub = commands.add_parser(name)
        if name == "figures":
            sub.add_argument("which", type=int, help="figure index 1..4")
        _add_common_flags(sub)
    return parser


_DISPATCH = {
    "solve": lambda args: cmd_solve(_build_config(args)),
    "figures": cmd_figures,
    "sweep-hbar": cmd_sweep_hbar,
    "poles": cmd_poles,
}

_VALUE_FLAGS = {
    "--potential", "--omega", "--D", "--a", "--mass", "--hbar", "--n",
    "--grid", "--method", "--out", "--emit", "--config", "--table",
    "--energy", "--hbars",
}


def _absorb_values(argv):
    # glue `--grid -6:6:2001` into `--grid=-6:6:2001` so leading minus
    # signs in values survive argparse tokenization
    merged = []
    i = 0
    while i < len(argv):
        if argv[i] in _VALUE_FLAGS and i + 1 < len(argv):
            merged.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            merged.append(argv[i])
            i += 1
    return merged


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = build_parser().parse_args(_absorb_values(list(argv)))
    except SystemExit as err:
        return int(err.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except NotAnEigenvalueError as err:
        print(f"qhje1d: {err}", file=sys.stderr)
        return 3
    except QhjeError as err:
        code = 2 if isinstance(err, ValueError) else 4
        print(f"qhje1d: {err}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
