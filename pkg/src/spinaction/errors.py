"""Exception hierarchy shared by all modules."""


class SpinActionError(Exception):
    """Base class for errors raised by this package."""


class DivisionByZero(SpinActionError, ZeroDivisionError):
    pass


class ZeroDenominator(SpinActionError, ZeroDivisionError):
    pass


class GroupMismatch(SpinActionError, ValueError):
    pass


class ParityError(SpinActionError, ValueError):
    pass


class NegativeMultiplicity(SpinActionError, ValueError):
    pass


class PoleAtElement(SpinActionError, ArithmeticError):
    pass


class NonCyclicGroup(SpinActionError, ValueError):
    pass


class NotUnique(SpinActionError, ValueError):
    pass


class HypothesisNotMet(SpinActionError, ValueError):
    pass


class DimensionMismatch(SpinActionError, ValueError):
    pass


class SpinConditionFailed(SpinActionError, ValueError):
    pass


class NonIntegralInvariant(SpinActionError, ValueError):
    pass


class HypothesisFailed(SpinActionError, ValueError):
    """A theorem was asked to run outside its hypotheses.

    ``hypotheses`` holds the full pass/fail table so callers can report every failure.
    """

    def __init__(self, name: str, hypotheses: list | None = None) -> None:
        super().__init__(f"hypothesis failed: {name}")
        self.name = name
        self.hypotheses = hypotheses or []


class ParseError(SpinActionError, ValueError):
    pass


class SchemaError(SpinActionError, ValueError):
    pass
