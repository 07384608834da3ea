"""Exception hierarchy shared by every module of the package."""


class STCError(Exception):
    """Base class for all package errors."""


class NonFiniteCoefficient(STCError, ValueError):
    pass


class DivisionOrderError(STCError, ValueError):
    """The divisor vanishes to higher order than the dividend."""


class BranchPrecondition(STCError, ValueError):
    """A fractional power was requested of a series with h(0) != 0."""


class OutsideDisk(STCError, ValueError):
    pass


class SingularPoint(STCError, ValueError):
    """Evaluation at a point where w(z) + 1 vanishes."""


class DegenerateMax(STCError, ValueError):
    """The function is identically zero on the probed circle."""


class ZeroDenominator(STCError, ZeroDivisionError):
    pass


class EvaluationUnreliable(STCError, RuntimeError):
    """Truncation tail bounds exceed the reliability threshold."""


class GridEmpty(STCError, ValueError):
    pass


class InvalidParameters(STCError, ValueError):
    """Theorem parameters violate the stated preconditions."""


class SpecInvalid(STCError, ValueError):
    pass


class ParseError(STCError, ValueError):
    """Syntax error in a function-spec string.

    ``position`` is the 0-based character offset and ``expected`` the set of
    tokens that would have been accepted there.
    """

    def __init__(self, message, position=0, expected=()):
        self.position = position
        self.expected = tuple(sorted(expected))
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)
