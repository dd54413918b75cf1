"""Strokes and cycles of the two-level gravitational-well engine.

All engine quantities are in natural units (hbar = m = g0 = 1): an
:class:`EngineState` stores gravity as the ratio g/g0 and energies in units of
``GqwParams.energy_unit``. Cycle runners take physical inputs, divide out g0
once, and keep the parameters on the report for conversion back.

Sign convention: heat and work are energy flowing *into* the working
substance, so every stroke satisfies ``heat + work = dE``. The useful work of a
cycle is ``net_work = -sum(work) = sum(heat)``.

Isoenergetic strokes come in two flavours (:class:`LengthRule`):

``ZERO_RATIO``
    The length scale changes by the ratio of Airy zeros, a_m/a_n, and the heat
    is the closed-form value E_start ln(a_start/a_end). This reproduces the
    standard closed-form efficiency 1 - (a_n/a_m)/alpha^2, but the endpoint
    mean energies differ by the factor a_n/a_m.
``ENERGY_MATCHED``
    The length ratio is sqrt(a_m/a_n), so E_n(g_start) = E_m(g_end) holds
    exactly. The heat is integrated along the constant-energy path and has
    the physical sign (absorbed during expansion). The efficiency is then
    1 - 1/alpha^2.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DomainError, PreconditionError, TwoLevelViolation
from .quadrature import integrate
from .spectrum import NATURAL, GqwParams, Level, eigenenergy, eigenenergy_slope, length_scale, level

__all__ = [
    "StrokeKind",
    "IsoenergeticMode",
    "LengthRule",
    "EngineState",
    "StrokeRecord",
    "CycleReport",
    "energy",
    "isogravitational_stroke",
    "isoentropic_stroke",
    "isoenergetic_stroke",
    "isoenergetic_endpoint",
    "isoenergetic_occupations",
    "isoenergetic_path",
    "path_heat",
    "heat_integral_check",
    "reference_heat",
    "closed_form_heat",
    "general_efficiency",
    "run_isogravitational_cycle",
    "run_isoenergetic_cycle",
    "efficiency_sweep",
]

PROB_TOL = 1e-12
CLOSURE_TOL = 1e-10
PATH_STEPS = 1000

LevelLike = int | Level
Pair = tuple[LevelLike, LevelLike]


class StrokeKind(str, Enum):
    ISOGRAVITATIONAL = "isogravitational"
    ISOENTROPIC = "isoentropic"
    ISOENERGETIC = "isoenergetic"


class IsoenergeticMode(str, Enum):
    MAXIMAL_EXPANSION = "maximal_expansion"
    MAXIMAL_COMPRESSION = "maximal_compression"


class LengthRule(str, Enum):
    ZERO_RATIO = "zero_ratio"
    ENERGY_MATCHED = "energy_matched"


def energy(n: LevelLike, g: float) -> float:
    """Natural-unit eigenenergy of level ``n`` at reduced gravity ``g``."""
    return eigenenergy(NATURAL, n, g)


def _slope(n: LevelLike, g: float) -> float:
    return eigenenergy_slope(NATURAL, n, g)


@dataclass(frozen=True)
class EngineState:
    """Reduced gravity, level occupations and the cached mean energy."""

    g: float
    occupations: Mapping[int, float]
    mean_energy: float

    @classmethod
    def create(cls, g: float, occupations: Mapping[int, float]) -> "EngineState":
        if not (math.isfinite(g) and g > 0):
            raise DomainError(f"gravity must be positive, got {g!r}")
        occ = {}
        for n, p in sorted(occupations.items()):
            level(n)
            if not -PROB_TOL <= p <= 1 + PROB_TOL:
                raise PreconditionError(f"occupation p_{n}={p} outside [0, 1]")
            if p != 0.0:
                occ[int(n)] = min(max(float(p), 0.0), 1.0)
        if abs(math.fsum(occ.values()) - 1.0) > PROB_TOL:
            raise PreconditionError(f"occupations sum to {math.fsum(occ.values())!r}, not 1")
        mean = math.fsum(p * energy(n, g) for n, p in occ.items())
        return cls(float(g), occ, mean)

    @classmethod
    def pure(cls, n: LevelLike, g: float) -> "EngineState":
        return cls.create(g, {level(n).index: 1.0})

    def probability(self, n: LevelLike) -> float:
        return self.occupations.get(level(n).index, 0.0)

    def pure_level(self) -> int | None:
        """Index of the fully occupied level, or None for a mixed state."""
        for n, p in self.occupations.items():
            if abs(p - 1.0) <= PROB_TOL:
                return n
        return None

    @property
    def ell(self) -> float:
        return length_scale(NATURAL, self.g)

    def same_as(self, other: "EngineState", tol: float = CLOSURE_TOL) -> bool:
        if abs(self.g - other.g) > tol * max(abs(self.g), abs(other.g)):
            return False
        keys = set(self.occupations) | set(other.occupations)
        return all(abs(self.probability(n) - other.probability(n)) <= tol for n in keys)


@dataclass(frozen=True)
class StrokeRecord:
    kind: StrokeKind
    start: EngineState
    end: EngineState
    heat: float
    work: float
    length_rule: LengthRule | None = None

    @property
    def energy_change(self) -> float:
        return self.end.mean_energy - self.start.mean_energy

    def first_law_residual(self) -> float:
        """|heat + work - dE| relative to the largest energy involved."""
        scale = max(abs(self.start.mean_energy), abs(self.end.mean_energy), abs(self.heat), 1e-300)
        return abs(self.heat + self.work - self.energy_change) / scale


@dataclass(frozen=True)
class CycleReport:
    """Outcome of a four-stroke cycle, in natural units (see ``params``)."""

    cycle: str
    params: GqwParams
    pair: tuple[int, int]
    alpha: float
    strokes: tuple[StrokeRecord, ...]
    q_absorbed: float
    q_released: float
    net_work: float
    efficiency: float
    efficiency_formula: float
    efficiency_general: float | None = None
    length_rule: LengthRule | None = None
    closed: bool = False
    heat_integral_residuals: tuple[float, ...] = field(default=())

    @property
    def first_law_residual(self) -> float:
        total = math.fsum(s.heat + s.work for s in self.strokes)
        return abs(total) / self.q_absorbed


# -- strokes -----------------------------------------------------------------


def _require_pure(state: EngineState, n: int, what: str) -> None:
    if state.pure_level() != n:
        raise PreconditionError(
            f"{what} requires the state to be pure in level {n}, got occupations {dict(state.occupations)}"
        )


def isogravitational_stroke(state: EngineState, from_level: LevelLike, to_level: LevelLike) -> StrokeRecord:
    """Level transition at fixed gravity: all energy change is heat."""
    a, b = level(from_level), level(to_level)
    _require_pure(state, a.index, "isogravitational stroke")
    end = EngineState.pure(b, state.g)
    heat = energy(b, state.g) - energy(a, state.g)
    return StrokeRecord(StrokeKind.ISOGRAVITATIONAL, state, end, heat, 0.0)


def isoentropic_stroke(state: EngineState, g_target: float) -> StrokeRecord:
    """Change gravity with frozen occupations: all energy change is work."""
    if not (math.isfinite(g_target) and g_target > 0):
        raise DomainError(f"target gravity must be positive, got {g_target!r}")
    end = EngineState.create(g_target, state.occupations)
    work = math.fsum(p * (energy(n, g_target) - energy(n, state.g)) for n, p in state.occupations.items())
    return StrokeRecord(StrokeKind.ISOENTROPIC, state, end, 0.0, work)


def _distinct(pair: Pair) -> tuple[Level, Level]:
    a, b = level(pair[0]), level(pair[1])
    if a.index == b.index:
        raise DomainError(f"isoenergetic pair needs two distinct levels, got ({a.index}, {b.index})")
    return a, b


def isoenergetic_endpoint(
    g: float, start: LevelLike, end: LevelLike, length_rule: LengthRule = LengthRule.ZERO_RATIO
) -> float:
    """Reduced gravity at which a maximal isoenergetic stroke from ``start`` ends.

    The length scale grows by c = a_end/a_start (``ZERO_RATIO``) or by its
    square root (``ENERGY_MATCHED``); gravity scales as c^-3.
    """
    ratio = level(end).zero / level(start).zero
    c = ratio if LengthRule(length_rule) is LengthRule.ZERO_RATIO else math.sqrt(ratio)
    return g / c**3


def isoenergetic_stroke(
    state: EngineState,
    pair: Pair,
    mode: IsoenergeticMode = IsoenergeticMode.MAXIMAL_EXPANSION,
    length_rule: LengthRule = LengthRule.ZERO_RATIO,
    steps: int = PATH_STEPS,
) -> StrokeRecord:
    """Maximal isoenergetic stroke between the two levels of ``pair``.

    Expansion starts pure in ``pair[0]`` and ends pure in ``pair[1]``;
    compression runs the other way. Work is ``dE - heat``.
    """
    n, m = _distinct(pair)
    mode = IsoenergeticMode(mode)
    length_rule = LengthRule(length_rule)
    src, dst = (n, m) if mode is IsoenergeticMode.MAXIMAL_EXPANSION else (m, n)
    _require_pure(state, src.index, f"{mode.value} stroke")
    g_end = isoenergetic_endpoint(state.g, src, dst, length_rule)
    end = EngineState.pure(dst, g_end)
    if length_rule is LengthRule.ZERO_RATIO:
        heat = state.mean_energy * math.log(src.zero / dst.zero)
    else:
        heat = path_heat((src, dst), state.g, g_end, state.mean_energy, steps)
    work = (end.mean_energy - state.mean_energy) - heat
    return StrokeRecord(StrokeKind.ISOENERGETIC, state, end, heat, work, length_rule)


# -- isoenergetic path machinery ---------------------------------------------


def isoenergetic_occupations(pair: Pair, g: float, e_target: float) -> tuple[float, float]:
    """Occupations (p_n, p_m) with p_n E_n(g) + p_m E_m(g) = e_target.

    Raises :class:`TwoLevelViolation` when ``e_target`` lies outside
    [E_n(g), E_m(g)], i.e. no mixture of the two levels has that energy.
    """
    n, m = _distinct(pair)
    en, em = energy(n, g), energy(m, g)
    lo, hi = min(en, em), max(en, em)
    slack = PROB_TOL * hi
    if not lo - slack <= e_target <= hi + slack:
        raise TwoLevelViolation(
            f"mean energy {e_target!r} outside [{lo!r}, {hi!r}] at g={g!r}: "
            f"levels {n.index} and {m.index} cannot hold it"
        )
    p_n = min(max((em - e_target) / (em - en), 0.0), 1.0)
    return p_n, 1.0 - p_n


def _geometric_grid(g_from: float, g_to: float, samples: int) -> list[float]:
    if samples == 1 or g_from == g_to:
        return [g_from]
    s0, s1 = math.log(g_from), math.log(g_to)
    grid = [math.exp(s0 + (s1 - s0) * i / (samples - 1)) for i in range(samples)]
    grid[0], grid[-1] = g_from, g_to
    return grid


def isoenergetic_path(pair: Pair, g_from: float, g_to: float, e_target: float, samples: int = 101) -> list[EngineState]:
    """States along a constant-energy sweep, uniform in ln g."""
    n, m = _distinct(pair)
    states = []
    for g in _geometric_grid(g_from, g_to, samples):
        p_n, p_m = isoenergetic_occupations((n, m), g, e_target)
        states.append(EngineState.create(g, {n.index: p_n, m.index: p_m}))
    return states


def path_heat(pair: Pair, g_from: float, g_to: float, e_target: float, steps: int = PATH_STEPS) -> float:
    """Heat sum_k E_k dp_k absorbed along the constant-energy path.

    Composite Simpson rule in ln g with ``steps`` (even) panels; the rate
    dp_n/dg is differentiated analytically from the occupation solution.
    """
    n, m = _distinct(pair)
    if g_from == g_to:
        return 0.0
    if steps < 2 or steps % 2:
        raise DomainError(f"steps must be an even integer >= 2, got {steps!r}")

    def rate(s: float) -> float:
        g = math.exp(s)
        isoenergetic_occupations((n, m), g, e_target)
        en, em = energy(n, g), energy(m, g)
        dn, dm = _slope(n, g), _slope(m, g)
        gap = em - en
        dp_n = (dm * gap - (em - e_target) * (dm - dn)) / gap**2
        return (en - em) * dp_n * g

    s0, s1 = math.log(g_from), math.log(g_to)
    h = (s1 - s0) / steps
    total = rate(s0) + rate(s1)
    total += 4 * math.fsum(rate(s0 + i * h) for i in range(1, steps, 2))
    total += 2 * math.fsum(rate(s0 + i * h) for i in range(2, steps, 2))
    return total * h / 3.0


EnergyModel = Callable[[int, float], tuple[float, float]]


def _gqw_model(n: int, g: float) -> tuple[float, float]:
    return energy(n, g), _slope(n, g)


def heat_integral_check(
    pair: Pair,
    g_from: float,
    g_to: float,
    model: EnergyModel | None = None,
    abstol: float = 1e-12,
    reltol: float = 1e-10,
) -> float:
    """Integral of (E_n E_m' - E_m E_n') / (E_n - E_m) dg from g_from to g_to.

    ``model(n, g)`` returns ``(E_n, dE_n/dg)``; the default is the natural
    unit spectrum, for which the integrand vanishes identically.
    """
    n, m = _distinct(pair)
    model = model or _gqw_model

    def integrand(g: float) -> float:
        en, dn = model(n.index, g)
        em, dm = model(m.index, g)
        return (en * dm - em * dn) / (en - em)

    return integrate(integrand, g_from, g_to, abstol=abstol, reltol=reltol).value


def reference_heat(pair: Pair, g_from: float, g_to: float, e_start: float, model: EnergyModel | None = None) -> float:
    """Logarithmic heat expression plus its integral correction, by quadrature.

    ``e_start ln[(E_n - E_m)(g_to) / (E_n - E_m)(g_from)]`` plus
    :func:`heat_integral_check`, where ``pair[0]`` is the starting level.
    For a constant-energy sweep this is minus :func:`path_heat`.
    """
    n, m = _distinct(pair)
    model = model or _gqw_model
    gap_to = model(n.index, g_to)[0] - model(m.index, g_to)[0]
    gap_from = model(n.index, g_from)[0] - model(m.index, g_from)[0]
    return e_start * math.log(gap_to / gap_from) + heat_integral_check((n, m), g_from, g_to, model)


def closed_form_heat(g_from: float, g_to: float, e_start: float) -> float:
    """:func:`reference_heat` for an E ~ g^(2/3) spectrum: e_start (2/3) ln(g_to/g_from)."""
    return e_start * (2.0 / 3.0) * math.log(g_to / g_from)


def general_efficiency(e_start_expansion: float, e_start_compression: float) -> float:
    """1 - E_m(g_c) / E_n(g_a) from the energies at which the two isoenergetic strokes begin."""
    if not (e_start_expansion > 0 and e_start_compression > 0):
        raise DomainError("stroke energies must be positive")
    # equal energies (alpha = 1 on the energy-matched path) may differ in the last ulp
    if e_start_compression > e_start_expansion * (1.0 + 1e-12):
        raise DomainError(
            f"compression energy {e_start_compression!r} exceeds expansion energy "
            f"{e_start_expansion!r}; efficiency would be negative"
        )
    return max(0.0, 1.0 - e_start_compression / e_start_expansion)


# -- cycles ------------------------------------------------------------------


def _check_alpha(alpha: float) -> float:
    if not (math.isfinite(alpha) and alpha >= 1.0):
        raise DomainError(f"alpha must be a finite length ratio >= 1, got {alpha!r}")
    return float(alpha)


def _reduced(params: GqwParams, g: float | None) -> float:
    if g is None:
        return 1.0
    if not (math.isfinite(g) and g > 0):
        raise DomainError(f"gravity must be positive, got {g!r}")
    return g / params.g0


def _totals(strokes: Sequence[StrokeRecord]) -> tuple[float, float, float]:
    q_in = math.fsum(s.heat for s in strokes if s.heat > 0)
    q_out = math.fsum(s.heat for s in strokes if s.heat < 0)
    return q_in, q_out, q_in + q_out


def run_isogravitational_cycle(
    params: GqwParams = NATURAL,
    g_high: float | None = None,
    alpha: float = 2.0,
    pair: Pair = (1, 2),
) -> CycleReport:
    """Heat at fixed g_high, expand by length factor alpha, release, compress back.

    ``g_high`` defaults to ``params.g0``. Efficiency comes from the stroke
    ledger as 1 - |Q_released| / Q_absorbed; the closed form is 1 - 1/alpha^2.
    """
    alpha = _check_alpha(alpha)
    n, m = _distinct(pair)
    g1 = _reduced(params, g_high)
    g2 = g1 / alpha**3

    s1 = isogravitational_stroke(EngineState.pure(n, g1), n, m)
    s2 = isoentropic_stroke(s1.end, g2)
    s3 = isogravitational_stroke(s2.end, m, n)
    s4 = isoentropic_stroke(s3.end, g1)
    strokes = (s1, s2, s3, s4)
    q_in, q_out, net = _totals(strokes)
    return CycleReport(
        cycle="isogravitational",
        params=params,
        pair=(n.index, m.index),
        alpha=alpha,
        strokes=strokes,
        q_absorbed=q_in,
        q_released=q_out,
        net_work=net,
        efficiency=1.0 - abs(q_out) / q_in,
        efficiency_formula=1.0 - 1.0 / alpha**2,
        closed=s4.end.same_as(s1.start),
    )


def run_isoenergetic_cycle(
    params: GqwParams = NATURAL,
    g_start: float | None = None,
    alpha: float = 2.0,
    pair: Pair = (1, 2),
    length_rule: LengthRule = LengthRule.ZERO_RATIO,
    steps: int = PATH_STEPS,
) -> CycleReport:
    """Isoenergetic expansion n -> m, isoentropic expansion by alpha,
    isoenergetic compression m -> n, isoentropic return to ``g_start``.

    Efficiency is 1 - |Q_compression| / |Q_expansion|.
    """
    alpha = _check_alpha(alpha)
    n, m = _distinct(pair)
    if n.index > m.index:
        raise PreconditionError(f"expansion must go up the ladder, got pair ({n.index}, {m.index})")
    length_rule = LengthRule(length_rule)
    g1 = _reduced(params, g_start)

    s1 = isoenergetic_stroke(EngineState.pure(n, g1), (n, m), IsoenergeticMode.MAXIMAL_EXPANSION, length_rule, steps)
    s2 = isoentropic_stroke(s1.end, s1.end.g / alpha**3)
    s3 = isoenergetic_stroke(s2.end, (n, m), IsoenergeticMode.MAXIMAL_COMPRESSION, length_rule, steps)
    s4 = isoentropic_stroke(s3.end, g1)
    strokes = (s1, s2, s3, s4)
    q_in, q_out, net = _totals(strokes)

    if length_rule is LengthRule.ZERO_RATIO:
        formula = 1.0 - (n.zero / m.zero) / alpha**2
    else:
        formula = 1.0 - 1.0 / alpha**2
    residuals = tuple(
        heat_integral_check((s.start.pure_level(), s.end.pure_level()), s.start.g, s.end.g) for s in (s1, s3)
    )
    return CycleReport(
        cycle="isoenergetic",
        params=params,
        pair=(n.index, m.index),
        alpha=alpha,
        strokes=strokes,
        q_absorbed=q_in,
        q_released=q_out,
        net_work=net,
        efficiency=1.0 - abs(s3.heat) / abs(s1.heat),
        efficiency_formula=formula,
        efficiency_general=general_efficiency(s1.start.mean_energy, s3.start.mean_energy),
        length_rule=length_rule,
        closed=s4.end.same_as(s1.start),
        heat_integral_residuals=residuals,
    )


def _sweep_point(args: tuple) -> tuple[float, float, float]:
    params, alpha, pair, g_start, length_rule = args
    iso_g = run_isogravitational_cycle(params, g_start, alpha, pair)
    iso_e = run_isoenergetic_cycle(params, g_start, alpha, pair, length_rule)
    return alpha, iso_g.efficiency, iso_e.efficiency


def efficiency_sweep(
    alphas: Iterable[float],
    params: GqwParams = NATURAL,
    pair: Pair = (1, 2),
    g_start: float | None = None,
    length_rule: LengthRule = LengthRule.ZERO_RATIO,
    jobs: int = 1,
) -> list[tuple[float, float, float]]:
    """Rows (alpha, eta_isogravitational, eta_isoenergetic), in grid order."""
    pair = (level(pair[0]).index, level(pair[1]).index)
    tasks = [(params, float(a), pair, g_start, LengthRule(length_rule)) for a in alphas]
    if jobs <= 1 or len(tasks) < 2:
        return [_sweep_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sweep_point, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
