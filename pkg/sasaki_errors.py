"""
Exceptions raised by the Sasaki toolkit.

Every error derives from SasakiError, itself a ValueError, so callers that only
care about "bad input" can catch ValueError the way the rest of the code does.
"""


class SasakiError(ValueError):
    """Base class for all toolkit errors."""


class NotSymmetric(SasakiError):
    pass


class NotALieAlgebra(SasakiError):
    pass


class ParseError(SasakiError):
    """Salamon text that does not match the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnboundSymbol(SasakiError):
    def __init__(self, symbol: str, position: int):
        super().__init__(f"Symbol '{symbol}' has no binding (at position {position})")
        self.symbol = symbol
        self.position = position


class IndexOutOfRange(SasakiError):
    pass


class DimensionTooLarge(SasakiError):
    pass


class DegenerateMetric(SasakiError):
    pass


class NonPositiveParameter(SasakiError):
    pass


class NotAnIdeal(SasakiError):
    pass


class NotAbelian(SasakiError):
    pass


class NotNilpotent(SasakiError):
    pass


class NotOrthogonal(SasakiError):
    pass


class RankNotOne(SasakiError):
    pass


class XiNotUnit(SasakiError):
    pass


class NotADerivation(SasakiError):
    pass


class SymmetricPartMismatch(SasakiError):
    pass


class CommutatorNonzero(SasakiError):
    pass


class NotZStandard(SasakiError):
    pass


class BlockFormViolation(SasakiError):
    pass


class SeedInvariantViolated(SasakiError):
    def __init__(self, clause: str):
        super().__init__(f"Kähler seed violates {clause}")
        self.clause = clause


class RepresentationConditionViolated(SasakiError):
    pass


class SymmetricPartNotDerivation(SasakiError):
    pass


class CharacterizationMismatch(SasakiError):
    """The two Sasaki characterizations disagree on an almost contact metric structure."""
