"""Force on the well, the pressure analogue P = F / ell_g^2, and the
isoenergetic equation of state P ell_g^3 = 2 <E>.

Level forces are f_n = -dE_n/d(ell_g) with E_n = -(hbar^2 / 2 m ell_g^2) a_n,
which gives f_n = -(hbar^2 / m ell_g^3) a_n = 2 E_n / ell_g. Because this holds
level by level, P ell_g^3 = 2 <E> for any state; what singles out the
isoenergetic stroke is that the product stays at the starting energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .engine import EngineState, StrokeKind, StrokeRecord, isoenergetic_path
from .errors import PreconditionError, TwoLevelViolation
from .spectrum import NATURAL, GqwParams, Level, length_scale, level

__all__ = ["EosSample", "level_force", "state_force", "sample", "stroke_profile", "equation_of_state_check"]


@dataclass(frozen=True)
class EosSample:
    ell_g: float
    force: float
    pressure: float
    mean_energy: float

    @property
    def pv(self) -> float:
        """P ell_g^3, the pressure-volume product."""
        return self.pressure * self.ell_g**3


def level_force(params: GqwParams, lvl: int | Level, g: float) -> float:
    """f_n = -(hbar^2 / (m ell_g^3)) a_n."""
    ell = length_scale(params, g)
    return -params.hbar**2 / (params.mass * ell**3) * level(lvl).zero


def state_force(state: EngineState) -> float:
    """F = sum_n p_n f_n for a natural-unit engine state."""
    return math.fsum(p * level_force(NATURAL, n, state.g) for n, p in state.occupations.items())


def sample(state: EngineState) -> EosSample:
    ell = state.ell
    force = state_force(state)
    return EosSample(ell, force, force / ell**2, state.mean_energy)


def stroke_profile(stroke: StrokeRecord, samples: int = 101) -> list[EosSample]:
    """EOS samples along a stroke, uniform in ln g.

    Isoentropic strokes keep occupations frozen; isoenergetic strokes solve
    for the two-level mixture holding the starting mean energy.
    """
    if stroke.kind is StrokeKind.ISOGRAVITATIONAL:
        raise PreconditionError("an isogravitational stroke has no length-scale path")
    if stroke.kind is StrokeKind.ISOENTROPIC:
        g0, g1 = math.log(stroke.start.g), math.log(stroke.end.g)
        count = 1 if stroke.start.g == stroke.end.g else samples
        gs = [math.exp(g0 + (g1 - g0) * i / max(count - 1, 1)) for i in range(count)]
        return [sample(EngineState.create(g, stroke.start.occupations)) for g in gs]

    src, dst = stroke.start.pure_level(), stroke.end.pure_level()
    if src is None or dst is None:
        raise PreconditionError("isoenergetic stroke endpoints must be pure states")
    try:
        path = isoenergetic_path((src, dst), stroke.start.g, stroke.end.g, stroke.start.mean_energy, samples)
    except TwoLevelViolation as exc:
        raise PreconditionError(
            "stroke endpoint is not reachable at constant mean energy "
            f"(length rule {stroke.length_rule}); use the energy-matched rule: {exc}"
        ) from exc
    return [sample(s) for s in path]


def equation_of_state_check(stroke: StrokeRecord, samples: int = 101) -> float:
    """Max over the stroke of |P ell_g^3 - 2 E_start| / (2 E_start)."""
    if stroke.kind is not StrokeKind.ISOENERGETIC:
        raise PreconditionError(f"equation of state applies to isoenergetic strokes, got {stroke.kind.value}")
    if samples < 1:
        raise PreconditionError("need at least one sample")
    target = 2.0 * stroke.start.mean_energy
    return max(abs(s.pv - target) / target for s in stroke_profile(stroke, samples))
