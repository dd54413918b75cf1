"""Exception hierarchy shared by the library and the CLI."""


class GqwError(Exception):
    """Base class for library errors."""


class DomainError(GqwError, ValueError):
    """An argument lies outside the domain of an operation."""


class PreconditionError(GqwError, ValueError):
    """The input state does not satisfy an operation's precondition."""


class TwoLevelViolation(PreconditionError):
    """A target mean energy cannot be reached by mixing the two chosen levels."""


class NumericalError(GqwError, RuntimeError):
    """A numerical procedure (root bracketing, quadrature) failed to converge."""
