"""Gravitational quantum well as a two-level quantum heat engine."""

__version__ = "0.1.0"

from .airy import AiryZeroTable, airy_ai, airy_ai_prime, airy_zeros
from .engine import (
    CycleReport,
    EngineState,
    IsoenergeticMode,
    LengthRule,
    StrokeKind,
    StrokeRecord,
    general_efficiency,
    heat_integral_check,
    isoenergetic_occupations,
    isoenergetic_stroke,
    isoentropic_stroke,
    isogravitational_stroke,
    run_isoenergetic_cycle,
    run_isogravitational_cycle,
)
from .eos import EosSample, equation_of_state_check, level_force, state_force
from .errors import DomainError, NumericalError, PreconditionError, TwoLevelViolation
from .spectrum import (
    NATURAL,
    GqwParams,
    Level,
    UnitSystem,
    classical_turning_point,
    eigenenergy,
    length_scale,
    level,
    wavefunction,
)
