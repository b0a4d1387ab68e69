"""Exception hierarchy.

Every error carries a stable ``code`` (its class name) that the CLI maps to
machine-readable output.  ``UsageError`` subclasses indicate malformed input
(CLI exit 1); the remaining ``MathError`` subclasses indicate a mathematically
meaningful failure (CLI exit 2).
"""


class RatdecError(Exception):
    """Base class for all library errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class UsageError(RatdecError):
    """Malformed input: bad descriptor, bad expression, bad flag combination."""


class MathError(RatdecError):
    """Well-formed input on which the requested operation fails."""


# -- field construction -------------------------------------------------------

class NonPrimeModulus(UsageError):
    pass


class MissingModulus(UsageError):
    pass


class ReducibleExtensionModulus(UsageError):
    pass


class UnsupportedTower(UsageError):
    pass


class ParseError(UsageError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnknownSymbol(ParseError):
    pass


# -- arithmetic ----------------------------------------------------------------

class DivisionByZero(MathError):
    pass


class MixedFields(UsageError):
    pass


class FieldTooLarge(MathError):
    pass


class ZeroDenominator(MathError):
    pass


class ZeroInput(MathError):
    pass


class ConstantInner(MathError):
    pass


class DegeneratePoints(MathError):
    pass


class InvalidInput(UsageError):
    pass


# -- decomposition -------------------------------------------------------------

class NotMonic(MathError):
    pass


class DegreeNotDivisible(MathError):
    pass


class WildRoot(MathError):
    pass


class ConstantBase(MathError):
    pass


class WildInput(MathError):
    pass


class BadDegree(MathError):
    pass


class SearchSpaceTooLarge(MathError):
    pass


class InfiniteField(MathError):
    pass


class ConstantRightComponent(MathError):
    pass


class DifferentComposites(MathError):
    pass


class NotPolynomialComposite(MathError):
    pass


# -- fixing groups ---------------------------------------------------------------

class NotEnoughSamplePoints(MathError):
    pass


class SeedExhaustion(MathError):
    pass


class LeftDivisionFailed(MathError):
    pass


# -- verification ----------------------------------------------------------------

class WildComponent(MathError):
    pass


class WildDegree(MathError):
    pass


class InvariantViolation(MathError):
    """An internally checked mathematical invariant failed; indicates a bug."""
