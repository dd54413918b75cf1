"""Command-line interface.

    gqw zeros --count 5
    gqw spectrum --levels 5 --units si --g0 10
    gqw cycle isoenergetic --pair 1 2 --alpha 2
    gqw sweep --alpha-min 1 --alpha-max 5 --steps 100 --jobs 4
    gqw eos --pair 1 2 --samples 101

CSV output starts with ``#`` comment lines (version, command, config echo)
followed by a header row whose column names carry units. JSON output is one
object with ``schema_version``. Numbers are written with 15 significant
digits. Exit status: 0 success, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from typing import Any, Sequence

from . import __version__
from .airy import airy_ai, airy_zeros
from .engine import (
    CycleReport,
    EngineState,
    IsoenergeticMode,
    LengthRule,
    efficiency_sweep,
    isoenergetic_stroke,
    run_isoenergetic_cycle,
    run_isogravitational_cycle,
)
from .eos import stroke_profile
from .errors import DomainError, GqwError, NumericalError, PreconditionError
from .spectrum import NEUTRON_MASS, GqwParams, UnitSystem, classical_turning_point, eigenenergy, level

SCHEMA_VERSION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class UsageError(GqwError):
    pass


@dataclass(frozen=True)
class RunConfig:
    unit_system: UnitSystem = UnitSystem.SI
    mass: float = NEUTRON_MASS
    g0: float = 10.0
    pair: tuple[int, int] = (1, 2)
    alpha: float = 2.0
    alpha_min: float = 1.0
    alpha_max: float = 10.0
    steps: int = 100
    g_start: float | None = None
    output_format: str = "csv"
    out: str | None = None
    length_rule: LengthRule = LengthRule.ZERO_RATIO
    path_steps: int = 1000

    def __post_init__(self) -> None:
        for name in ("mass", "g0", "alpha", "alpha_min", "alpha_max"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise UsageError(f"--{name.replace('_', '-')} must be positive, got {value}")
        if self.g_start is not None and not self.g_start > 0:
            raise UsageError(f"--g-start must be positive, got {self.g_start}")
        n, m = self.pair
        if not 1 <= n < m:
            raise UsageError(f"--pair needs 1 <= N < M, got {n} {m}")
        if self.alpha_min > self.alpha_max:
            raise UsageError("--alpha-min must not exceed --alpha-max")
        if self.steps < 1:
            raise UsageError("--steps must be >= 1")
        if self.path_steps < 2 or self.path_steps % 2:
            raise UsageError("--path-steps must be an even integer >= 2")

    @property
    def params(self) -> GqwParams:
        if self.unit_system is UnitSystem.NATURAL:
            return GqwParams.natural()
        return GqwParams.si(self.mass, self.g0)

    def echo(self) -> str:
        items = asdict(self)
        items.pop("out")
        parts = []
        for key in sorted(items):
            value = items[key]
            if isinstance(value, (UnitSystem, LengthRule)):
                value = value.value
            elif isinstance(value, float):
                value = _fmt(value)
            elif isinstance(value, tuple):
                value = " ".join(str(v) for v in value)
            parts.append(f"{key}={value}")
        return " ".join(parts)


# -- formatting --------------------------------------------------------------


def _fmt(x: float) -> str:
    return format(x, ".15g")


def _round(x: Any) -> Any:
    if isinstance(x, float):
        return float(format(x, ".15g")) if math.isfinite(x) else None
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    return x


def _unit_labels(params: GqwParams) -> dict[str, str]:
    if params.unit_system is UnitSystem.SI:
        return {"energy": "J", "length": "m", "gravity": "m/s2", "force": "N", "pressure": "J/m3"}
    return {k: "natural" for k in ("energy", "length", "gravity", "force", "pressure")}


def _table(command: str, config: RunConfig, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    if config.output_format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "version": __version__,
            "config": config.echo(),
            "columns": list(columns),
            "rows": [[_round(v) for v in row] for row in rows],
        }
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"# gqw {__version__}\n# command: {command}\n# config: {config.echo()}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


# -- commands ----------------------------------------------------------------


def cmd_zeros(count: int, tol: float, config: RunConfig) -> str:
    if count < 1:
        raise UsageError(f"--count must be >= 1, got {count}")
    try:
        table = airy_zeros(count, tol)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    rows = [(n, a, abs(airy_ai(a))) for n, a in enumerate(table.zeros, start=1)]
    return _table("zeros", config, ["n", "a_n", "abs_ai_at_a_n"], rows)


def cmd_spectrum(levels: int, config: RunConfig) -> str:
    if levels < 1:
        raise UsageError(f"--levels must be >= 1, got {levels}")
    params = config.params
    g = params.g0 if config.g_start is None else config.g_start
    u = _unit_labels(params)
    e1 = eigenenergy(params, 1, g)
    rows = []
    for n in range(1, levels + 1):
        e = eigenenergy(params, n, g)
        rows.append((n, level(n).zero, e, classical_turning_point(params, n, g), e / e1))
    columns = ["n", "a_n", f"energy[{u['energy']}]", f"turning_point[{u['length']}]", "energy_ratio_to_ground"]
    return _table("spectrum", config, columns, rows)


def report_dict(report: CycleReport, config: RunConfig) -> dict[str, Any]:
    """JSON-ready view of a cycle report in the configuration's units."""
    params = report.params
    eu, lu, gu = params.energy_unit, params.length_unit, params.g0
    strokes = []
    for s in report.strokes:
        strokes.append(
            {
                "kind": s.kind.value,
                "g_start": s.start.g * gu,
                "g_end": s.end.g * gu,
                "ell_start": s.start.ell * lu,
                "ell_end": s.end.ell * lu,
                "energy_start": s.start.mean_energy * eu,
                "energy_end": s.end.mean_energy * eu,
                "occupations_start": {str(k): v for k, v in s.start.occupations.items()},
                "occupations_end": {str(k): v for k, v in s.end.occupations.items()},
                "heat": s.heat * eu,
                "work": s.work * eu,
            }
        )
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "cycle": report.cycle,
        "config": config.echo(),
        "units": _unit_labels(params),
        "pair": list(report.pair),
        "alpha": report.alpha,
        "sign_convention": "heat and work positive when flowing into the working substance",
        "efficiency_definition": (
            "1 - |Q_released| / Q_absorbed"
            if report.cycle == "isogravitational"
            else "1 - |Q_compression| / |Q_expansion|"
        ),
        "strokes": strokes,
        "q_absorbed": report.q_absorbed * eu,
        "q_released": report.q_released * eu,
        "net_work": report.net_work * eu,
        "efficiency": report.efficiency,
        "efficiency_formula": report.efficiency_formula,
        "cycle_closed": report.closed,
    }
    if report.cycle == "isoenergetic":
        out["length_rule"] = report.length_rule.value
        out["efficiency_general"] = report.efficiency_general
        out["heat_integral_residuals"] = [r * eu for r in report.heat_integral_residuals]
    return _round(out)


def cmd_cycle(kind: str, config: RunConfig) -> str:
    if config.alpha <= 1.0:
        raise UsageError(f"--alpha must exceed 1 for a working cycle, got {config.alpha}")
    params = config.params
    if kind == "isograv":
        report = run_isogravitational_cycle(params, config.g_start, config.alpha, config.pair)
    else:
        report = run_isoenergetic_cycle(
            params, config.g_start, config.alpha, config.pair, config.length_rule, config.path_steps
        )
    data = report_dict(report, config)
    if config.output_format == "json":
        return json.dumps(data, indent=2) + "\n"
    u = data["units"]
    columns = [
        "stroke",
        "kind",
        f"g_start[{u['gravity']}]",
        f"g_end[{u['gravity']}]",
        f"ell_start[{u['length']}]",
        f"ell_end[{u['length']}]",
        f"heat[{u['energy']}]",
        f"work[{u['energy']}]",
    ]
    rows = [
        (i, s["kind"], s["g_start"], s["g_end"], s["ell_start"], s["ell_end"], s["heat"], s["work"])
        for i, s in enumerate(data["strokes"], start=1)
    ]
    text = _table(f"cycle {kind}", config, columns, rows)
    return text + f"# efficiency={_fmt(report.efficiency)} cycle_closed={str(report.closed).lower()}\n"


def cmd_sweep(config: RunConfig, jobs: int = 1) -> str:
    if config.steps < 1:
        raise UsageError("empty alpha grid")
    lo, hi, k = config.alpha_min, config.alpha_max, config.steps
    if lo < 1:
        raise UsageError("--alpha-min must be >= 1")
    alphas = [lo] if k == 1 else [lo + (hi - lo) * i / (k - 1) for i in range(k)]
    rows = efficiency_sweep(alphas, config.params, config.pair, config.g_start, config.length_rule, jobs)
    return _table("sweep", config, ["alpha", "eta_isograv", "eta_isoenergetic"], rows)


def cmd_eos(config: RunConfig, kind: str, samples: int, g_end: float | None, direction: str) -> str:
    if kind != "isoenergetic":
        raise UsageError(f"the equation of state is defined along isoenergetic strokes, not {kind}")
    if samples < 1:
        raise UsageError("--samples must be >= 1")
    params = config.params
    g1 = 1.0 if config.g_start is None else config.g_start / params.g0
    n, m = config.pair
    mode = IsoenergeticMode.MAXIMAL_EXPANSION if direction == "expansion" else IsoenergeticMode.MAXIMAL_COMPRESSION
    src = n if mode is IsoenergeticMode.MAXIMAL_EXPANSION else m
    stroke = isoenergetic_stroke(EngineState.pure(src, g1), (n, m), mode, LengthRule.ENERGY_MATCHED, config.path_steps)
    if g_end is not None:
        g2 = g_end / params.g0
        lo, hi = sorted((stroke.start.g, stroke.end.g))
        if not lo * (1 - 1e-12) <= g2 <= hi * (1 + 1e-12):
            raise UsageError(f"--g-end outside the reachable range [{lo * params.g0}, {hi * params.g0}]")
        end = EngineState.create(g2, stroke.end.occupations)
        stroke = type(stroke)(stroke.kind, stroke.start, end, stroke.heat, stroke.work, stroke.length_rule)
    if stroke.start.g == stroke.end.g:
        samples = 1
    eu, lu = params.energy_unit, params.length_unit
    fu = params.force_unit
    pu = eu / lu**3
    u = _unit_labels(params)
    rows = []
    for s in stroke_profile(stroke, samples):
        rows.append((s.ell_g * lu, s.force * fu, s.pressure * pu, s.pv * eu, 2.0 * stroke.start.mean_energy * eu))
    columns = [
        f"ell_g[{u['length']}]",
        f"force[{u['force']}]",
        f"pressure[{u['pressure']}]",
        f"pressure_times_ell3[{u['energy']}]",
        f"two_mean_energy[{u['energy']}]",
    ]
    return _table("eos", config, columns, rows)


# -- argument parsing --------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--units", choices=["si", "natural"], default="si")
    p.add_argument("--mass", type=float, default=None, help="particle mass in kg (SI only)")
    p.add_argument("--g0", type=float, default=None, help="reference gravity in m/s^2 (SI only)")
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--out", default=None, help="output file (default stdout)")


def _pair(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pair", nargs=2, type=int, default=[1, 2], metavar=("N", "M"))


def _rule(p: argparse.ArgumentParser) -> None:
    p.add_argument("--length-rule", choices=[r.value for r in LengthRule], default=LengthRule.ZERO_RATIO.value)
    p.add_argument("--path-steps", type=int, default=1000, help="quasi-static path panels (energy-matched rule)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gqw", description="Gravitational quantum well heat engine")
    parser.add_argument("--version", action="version", version=f"gqw {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeros", help="negative zeros of Ai")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-13)
    _common(p)

    p = sub.add_parser("spectrum", help="eigenenergies and turning points")
    p.add_argument("--levels", type=int, default=5)
    p.add_argument("--g", dest="g_start", type=float, default=None, help="gravity (default g0)")
    _common(p)

    p = sub.add_parser("cycle", help="run one cycle and print its stroke ledger")
    p.add_argument("kind", choices=["isograv", "isoenergetic"])
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--g-start", type=float, default=None)
    _pair(p)
    _rule(p)
    _common(p)

    p = sub.add_parser("sweep", help="efficiency of both cycles over an alpha grid")
    p.add_argument("--alpha-min", type=float, default=1.0)
    p.add_argument("--alpha-max", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--g-start", type=float, default=None)
    p.add_argument("--jobs", type=int, default=1)
    _pair(p)
    _rule(p)
    _common(p)

    p = sub.add_parser("eos", help="equation-of-state samples along an isoenergetic stroke")
    p.add_argument("--kind", choices=["isoenergetic", "isograv", "isoentropic"], default="isoenergetic")
    p.add_argument("--direction", choices=["expansion", "compression"], default="expansion")
    p.add_argument("--g-start", type=float, default=None)
    p.add_argument("--g-end", type=float, default=None)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--path-steps", type=int, default=1000)
    _pair(p)
    _common(p)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    units = UnitSystem(args.units)
    if units is UnitSystem.NATURAL and (args.mass is not None or args.g0 is not None):
        raise UsageError("--mass and --g0 apply to SI units only")
    kwargs: dict[str, Any] = {
        "unit_system": units,
        "output_format": args.format or ("json" if args.command == "cycle" else "csv"),
        "out": args.out,
    }
    if units is UnitSystem.NATURAL:
        kwargs.update(mass=1.0, g0=1.0)
    else:
        kwargs.update(
            mass=NEUTRON_MASS if args.mass is None else args.mass,
            g0=10.0 if args.g0 is None else args.g0,
        )
    for name in ("alpha", "alpha_min", "alpha_max", "steps", "g_start", "path_steps"):
        if getattr(args, name, None) is not None:
            kwargs[name] = getattr(args, name)
    if getattr(args, "pair", None) is not None:
        kwargs["pair"] = tuple(args.pair)
    if getattr(args, "length_rule", None) is not None:
        kwargs["length_rule"] = LengthRule(args.length_rule)
    return RunConfig(**kwargs)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config(args)
        if args.command == "zeros":
            text = cmd_zeros(args.count, args.tol, config)
        elif args.command == "spectrum":
            text = cmd_spectrum(args.levels, config)
        elif args.command == "cycle":
            text = cmd_cycle(args.kind, config)
        elif args.command == "sweep":
            text = cmd_sweep(config, args.jobs)
        else:
            text = cmd_eos(config, args.kind, args.samples, args.g_end, args.direction)
        _emit(text, config.out)
    except (UsageError, DomainError, PreconditionError) as exc:
        print(f"gqw {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"gqw {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return 0


if __name__ == "__main__":
    sys.exit(main())
