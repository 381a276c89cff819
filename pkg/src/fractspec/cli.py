"""Command-line interface: JSON job configs in, CSV/SVG artifacts out.

Every subcommand reads the same JSON config (either a contractor list or a
generatrix vertex chain plus optional solver overrides), writes its artifacts
under ``--out``, and prints a short key-value report.  Exit status is 0 on
success, 2 on a validation error, and 3 on a numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .dimension import (
    divider_dim,
    hausdorff_dim,
    mf_dim_max,
    mf_dim_min,
    schedule_for,
)
from .errors import CapExceededError, SolverError
from .ifs import (
    Generatrix,
    SelfSimilarSystem,
    build_generatrix,
    build_system,
    system_from_generatrix,
)
from .multifractal import (
    alpha_bounds,
    d_tilde,
    hessian_check,
    information_dim,
    omega_min,
    renyi,
    shrink_and_invert,
    spectrum,
)
from .prefractal import (
    ExpansionSchedule,
    Polyline,
    census,
    diameter,
    expand,
    iterate,
)
from .sausage import estimate_mf_dim

SUBCOMMANDS = (
    "dims", "spectrum", "renyi", "curve", "expand", "census", "estimate", "hessian",
)

_TOP_KEYS = {"contractors", "weights", "generatrix", "flips", "solver"}
_SOLVER_KEYS = {
    "depth", "schedule", "target_c", "epsilon", "grid",
    "lambda_range", "omega_range", "q_range",
    "cell_size", "cell_cap", "segment_cap",
}


class ConfigError(ValueError):
    """Raised for malformed configs; exits with status 2."""


@dataclass
class JobConfig:
    """Validated geometry source plus optional solver overrides."""

    system: SelfSimilarSystem
    generatrix: Optional[Generatrix] = None
    solver: dict = field(default_factory=dict)


def parse_config(text: str) -> JobConfig:
    """Parse and validate a JSON job config.

    Exactly one of ``contractors`` / ``generatrix`` supplies the geometry;
    unknown keys are rejected with the offending path named.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config root must be an object, got {type(raw).__name__}")
    for key in raw:
        if key not in _TOP_KEYS:
            raise ConfigError(f"unknown config key at $.{key}")
    solver = raw.get("solver", {})
    if not isinstance(solver, dict):
        raise ConfigError("$.solver must be an object")
    for key in solver:
        if key not in _SOLVER_KEYS:
            raise ConfigError(f"unknown config key at $.solver.{key}")

    has_contractors = "contractors" in raw
    has_generatrix = "generatrix" in raw
    if has_contractors == has_generatrix:
        raise ConfigError("config needs exactly one of $.contractors or $.generatrix")
    if has_contractors:
        if "flips" in raw:
            raise ConfigError("$.flips requires $.generatrix")
        system = build_system(raw["contractors"], raw.get("weights"))
        return JobConfig(system=system, solver=dict(solver))
    if "weights" in raw:
        raise ConfigError("$.weights requires $.contractors")
    generatrix = build_generatrix(raw["generatrix"], raw.get("flips"))
    system, _ = system_from_generatrix(generatrix)
    return JobConfig(system=system, generatrix=generatrix, solver=dict(solver))


def _fmt(value: float) -> str:
    """Shortest round-trip decimal representation."""
    return repr(float(value))


def _write_csv(path: Path, header: Sequence[str], rows) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _write_svg(path: Path, polyline: Polyline) -> None:
    """Single-path SVG rendering: viewBox with 5% margin, thin stroke."""
    verts = polyline.vertices.copy()
    verts[:, 1] = -verts[:, 1]  # SVG y axis points down
    lo = verts.min(axis=0)
    hi = verts.max(axis=0)
    span = hi - lo
    margin = 0.05 * max(float(span[0]), float(span[1]), 1e-12)
    stroke = 0.002 * diameter(verts)
    view = (lo[0] - margin, lo[1] - margin, span[0] + 2 * margin, span[1] + 2 * margin)
    points = " ".join(f"{x:.6f},{y:.6f}" for x, y in verts)
    path.write_text(
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{view[0]:.6f} {view[1]:.6f} {view[2]:.6f} {view[3]:.6f}">\n'
        f'  <polyline points="{points}" fill="none" stroke="black" '
        f'stroke-width="{stroke:.6f}"/>\n'
        "</svg>\n",
        encoding="utf-8",
    )


def _parse_range(text: str, flag: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigError(f"{flag} expects LO:HI, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ConfigError(f"{flag} expects numbers, got {text!r}") from exc
    if not lo < hi:
        raise ConfigError(f"{flag} needs LO < HI, got {text!r}")
    return lo, hi


def _parse_q_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--q-range expects LO:HI:STEP, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"--q-range expects numbers, got {text!r}") from exc
    if not (lo < hi and step > 0):
        raise ConfigError(f"--q-range needs LO < HI and STEP > 0, got {text!r}")
    return lo, hi, step


def _parse_schedule(text: str, n: int) -> ExpansionSchedule:
    """1-based comma-separated contractor indices, e.g. "1,1,2,1"."""
    try:
        indices = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"--schedule expects integers, got {text!r}") from exc
    for i in indices:
        if not 1 <= i <= n:
            raise ConfigError(f"--schedule index {i} outside 1..{n}")
    return ExpansionSchedule(steps=tuple(i - 1 for i in indices))


def _option(args, config: JobConfig, name: str, default=None):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return config.solver.get(name, default)


def _resolve_schedule(args, config: JobConfig, depth: int) -> ExpansionSchedule:
    schedule = _option(args, config, "schedule")
    target_c = _option(args, config, "target_c")
    if schedule is not None and target_c is not None:
        raise ConfigError("give at most one of --schedule and --target-c")
    if schedule is not None:
        sched = _parse_schedule(str(schedule), config.system.n)
        if len(sched.steps) < depth:
            raise ConfigError(
                f"schedule has {len(sched.steps)} steps but depth is {depth}"
            )
        return sched
    if target_c is not None:
        return schedule_for(config.system, float(target_c))
    # Default: the smallest contractor's expansor at every step (d_min regime).
    return ExpansionSchedule(steps=(config.system.argmin(),) * depth)


def _require_generatrix(config: JobConfig, subcommand: str) -> Generatrix:
    if config.generatrix is None:
        raise ConfigError(
            f"{subcommand} needs $.generatrix in the config (vertex geometry)"
        )
    return config.generatrix


def _report(pairs: list[tuple[str, float]], out: Path, name: str) -> None:
    for key, value in pairs:
        print(f"{key} = {_fmt(value)}")
    _write_csv(out / name, ("key", "value"),
               ((key, _fmt(value)) for key, value in pairs))


def _cmd_dims(args, config: JobConfig, out: Path) -> int:
    system = config.system
    a_lo, a_hi = alpha_bounds(system)
    m = sum(1 for a in system.contractors if a == system.a_min)
    m_prime = sum(1 for a in system.contractors if a == system.a_max)
    pairs = [
        ("dim_H", hausdorff_dim(system)),
        ("d_min", mf_dim_min(system)),
        ("d_max", mf_dim_max(system)),
        ("divider_dim", divider_dim(system)),
        ("D_tilde", d_tilde(system)),
        ("D_1", information_dim(system)),
        ("alpha_min", a_lo),
        ("alpha_max", a_hi),
        ("f_asymptote_left", math.log(1.0 / m) / math.log(system.a_min)),
        ("f_asymptote_right", math.log(1.0 / m_prime) / math.log(system.a_max)),
    ]
    om = omega_min(system)
    if om is not None:
        pairs.append(("Omega_min", om))
    _report(pairs, out, "dims.csv")
    return 0


def _spectrum_rows(curve, n: int):
    for p in curve.points:
        freq = [""] * n if p.freq is None else [_fmt(x) for x in p.freq]
        yield [_fmt(p.Lambda), _fmt(p.Omega), _fmt(p.alpha), _fmt(p.f)] + freq


def _cmd_spectrum(args, config: JobConfig, out: Path) -> int:
    system = config.system
    size = int(_option(args, config, "grid", 512))
    lam_range = _option(args, config, "lambda_range", "-20:20")
    omega_range = _option(args, config, "omega_range")
    if omega_range is not None:
        lo, hi = _parse_range(str(omega_range), "--omega-range")
        curve = spectrum(system, omegas=np.linspace(lo, hi, size))
    else:
        lo, hi = _parse_range(str(lam_range), "--lambda-range")
        curve = spectrum(system, lambdas=np.linspace(lo, hi, size))
    header = ["Lambda", "Omega", "alpha", "f"] + [
        f"lambda_{i + 1}" for i in range(system.n)
    ]
    _write_csv(out / "spectrum.csv", header, _spectrum_rows(curve, system.n))
    annotations = "".join(
        f"{key} = {_fmt(value)}\n" for key, value in sorted(curve.annotations.items())
    )
    (out / "spectrum_annotations.txt").write_text(annotations, encoding="utf-8")
    print(f"spectrum: {len(curve.points)} points -> {out / 'spectrum.csv'}")
    if args.shrink or args.invert:
        shrunk, inverted = shrink_and_invert(curve)
        if args.shrink:
            _write_csv(out / "spectrum_shrunk.csv", header,
                       _spectrum_rows(shrunk, system.n))
            print(f"shrunk spectrum -> {out / 'spectrum_shrunk.csv'}")
        if args.invert:
            _write_csv(out / "spectrum_inverted.csv", header,
                       _spectrum_rows(inverted, system.n))
            print(f"inverted spectrum -> {out / 'spectrum_inverted.csv'}")
    return 0


def _cmd_renyi(args, config: JobConfig, out: Path) -> int:
    lo, hi, step = _parse_q_range(str(_option(args, config, "q_range", "-10:10:0.5")))
    qs = np.arange(lo, hi + 0.5 * step, step)
    rows = [(q, renyi(config.system, float(q))) for q in qs]
    _write_csv(out / "renyi.csv", ("q", "D_q"),
               ((_fmt(q), _fmt(d)) for q, d in rows))
    print(f"renyi: {len(rows)} values of D_q -> {out / 'renyi.csv'}")
    return 0


def _write_polyline(args, polyline: Polyline, out: Path, stem: str) -> None:
    _write_csv(out / f"{stem}.csv", ("x", "y"),
               ((_fmt(x), _fmt(y)) for x, y in polyline.vertices))
    print(f"{stem}: {polyline.segment_count} segments -> {out / f'{stem}.csv'}")
    if args.svg:
        _write_svg(out / f"{stem}.svg", polyline)
        print(f"{stem}: SVG -> {out / f'{stem}.svg'}")


def _cmd_curve(args, config: JobConfig, out: Path) -> int:
    g = _require_generatrix(config, "curve")
    depth = int(_option(args, config, "depth", 4))
    _write_polyline(args, iterate(g, depth), out, "curve")
    return 0


def _cmd_expand(args, config: JobConfig, out: Path) -> int:
    g = _require_generatrix(config, "expand")
    depth = int(_option(args, config, "depth", 4))
    expanded = expand(g, _resolve_schedule(args, config, depth), depth)
    print(f"cumulative_expansion = {_fmt(expanded.cumulative_expansion)}")
    print(f"anchor_index = {expanded.anchor_index}")
    _write_polyline(args, expanded.polyline, out, "expand")
    return 0


def _cmd_census(args, config: JobConfig, out: Path) -> int:
    depth = int(_option(args, config, "depth", 2))
    groups = census(config.system, depth).grouped_by_length()
    _write_csv(out / "census.csv", ("length", "count"),
               ((_fmt(length), str(count)) for length, count in groups))
    print(f"census: {len(groups)} length groups -> {out / 'census.csv'}")
    return 0


def _cmd_estimate(args, config: JobConfig, out: Path) -> int:
    g = _require_generatrix(config, "estimate")
    depth = int(_option(args, config, "depth", 7))
    if depth < 5:
        raise ConfigError(f"estimate needs depth >= 5 (regresses k = 3..depth), got {depth}")
    epsilon = float(_option(args, config, "epsilon", 0.45))
    cell_size = _option(args, config, "cell_size")
    cell_cap = _option(args, config, "cell_cap")
    est = estimate_mf_dim(
        g,
        _resolve_schedule(args, config, depth),
        range(3, depth + 1),
        epsilon,
        cell_size=None if cell_size is None else float(cell_size),
        cell_cap=None if cell_cap is None else int(cell_cap),
    )
    _write_csv(
        out / "estimate.csv",
        ("k", "epsilon", "delta", "area", "log_delta", "log_area"),
        (
            (str(s.depth), _fmt(s.epsilon), _fmt(s.delta), _fmt(s.area),
             _fmt(math.log(s.delta)), _fmt(math.log(s.area)))
            for s in est.samples
        ),
    )
    print(f"slope = {_fmt(est.slope)}")
    print(f"stderr = {_fmt(est.stderr)}")
    print(f"samples -> {out / 'estimate.csv'}")
    return 0


def _cmd_hessian(args, config: JobConfig, out: Path) -> int:
    system = config.system
    size = int(_option(args, config, "grid", 9))
    lo, hi = _parse_range(str(_option(args, config, "lambda_range", "-5:5")), "--lambda-range")
    rows = []
    all_max = True
    for lam in np.linspace(lo, hi, size):
        report = hessian_check(float(lam), system)
        all_max = all_max and report.is_maximum
        rows.append([_fmt(lam), str(report.is_maximum)]
                    + [_fmt(m) for m in report.minors])
    header = ["Lambda", "is_maximum"] + [
        f"minor_{k}" for k in range(2, system.n + 2)
    ]
    _write_csv(out / "hessian.csv", header, rows)
    print(f"maximum_at_all_sampled_Lambda = {all_max}")
    print(f"minors -> {out / 'hessian.csv'}")
    return 0


_COMMANDS = {
    "dims": _cmd_dims,
    "spectrum": _cmd_spectrum,
    "renyi": _cmd_renyi,
    "curve": _cmd_curve,
    "expand": _cmd_expand,
    "census": _cmd_census,
    "estimate": _cmd_estimate,
    "hessian": _cmd_hessian,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fractspec",
        description="Dimensional spectra of self-similar curves.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON job config path")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--depth", type=int, default=None)
        p.add_argument("--schedule", default=None,
                       help="1-based contractor indices, e.g. 1,1,2,1")
        p.add_argument("--target-c", dest="target_c", type=float, default=None)
        p.add_argument("--epsilon", type=float, default=None)
        p.add_argument("--grid", type=int, default=None)
        p.add_argument("--lambda-range", dest="lambda_range", default=None,
                       metavar="LO:HI")
        p.add_argument("--omega-range", dest="omega_range", default=None,
                       metavar="LO:HI")
        p.add_argument("--q-range", dest="q_range", default=None,
                       metavar="LO:HI:STEP")
        p.add_argument("--svg", action="store_true")
        p.add_argument("--shrink", action="store_true")
        p.add_argument("--invert", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config_path = Path(args.config)
        if not config_path.is_file():
            raise ConfigError(f"config file not found: {config_path}")
        config = parse_config(config_path.read_text(encoding="utf-8"))
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        return _COMMANDS[args.subcommand](args, config, out)
    except (ConfigError, ValueError) as exc:
        print(f"fractspec {args.subcommand}: validation error: {exc}", file=sys.stderr)
        return 2
    except (SolverError, CapExceededError) as exc:
        print(f"fractspec {args.subcommand}: numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
