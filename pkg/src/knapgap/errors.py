"""Exception types shared across the package.

Two families matter to callers: ValidationError means the input violated a
documented precondition, GuardrailExceeded means the computation was refused
because it would allocate more than the configured cell budget.  The CLI maps
them to exit codes 2 and 3 respectively.
"""


class KnapgapError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(KnapgapError, ValueError):
    """An input violates a documented precondition."""


class NonPositiveEntry(ValidationError):
    """An instance entry is not a positive integer (condition (i))."""


class NotCoprime(ValidationError):
    """The instance entries have a common divisor > 1 (condition (ii))."""


class DimensionTooSmall(ValidationError):
    """Fewer coordinates than the operation requires."""


class NegativeRhs(ValidationError):
    """A right hand side b < 0 was supplied."""


class NegativeWeight(ValidationError):
    """A residue-table weight is negative."""


class NoPointInBox(ValidationError):
    """Brute-force enumeration box contains no point of the residue class."""


class BadEpsilon(ValidationError):
    """Normalization exponent outside the open interval (0, 1)."""


class BetaOutOfRange(ValidationError):
    """Fractional parameter beta outside the open interval (0, 1)."""


class InsufficientSamples(ValidationError):
    """Too few samples survive the smallest threshold to fit a tail."""


class GuardrailExceeded(KnapgapError, RuntimeError):
    """Refused: the computation would exceed the configured cell budget."""


class BoundTooLarge(GuardrailExceeded):
    """A table, sieve or enumeration would exceed the cell budget."""
