"""Exception types shared across the package."""


class SkeinError(Exception):
    """Base class for every error raised by seifert_skein."""


class EulerZero(SkeinError):
    """The Euler number vanishes: H_1 is infinite and the manifold is Haken (or S^2 x S^1)."""


class GroupTooLarge(SkeinError):
    pass


class HypothesisNotMet(SkeinError):
    pass


class DescentViolation(SkeinError):
    """A rewrite emitted an index whose complexity is not strictly below its head."""


class NotRealizable(SkeinError):
    pass


class NoAdmissibleAngle(SkeinError):
    pass


class InconsistentSpec(SkeinError):
    pass


class IllConditioned(SkeinError):
    """No clean singular-value gap at the rank cut."""


class BudgetExceeded(SkeinError):
    """A computation ran past its wall-clock deadline."""
