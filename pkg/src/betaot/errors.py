"""Exception types shared across the package."""


class BetaOTError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BetaOTError, ValueError):
    """An argument lies outside the domain of a generator or its conjugate."""


class DimensionMismatchError(BetaOTError, ValueError):
    """Array shapes are incompatible for the requested operation."""


class InfeasibleToleranceError(BetaOTError, ValueError):
    """The distance tolerance z does not exceed lambda/(beta-1)."""


class BudgetExhaustedError(BetaOTError, ValueError):
    """The derived iteration budget is below 1; rescale the data (see auto_scale)."""


class AutoScaleError(BetaOTError, ValueError):
    """No scale factor places the iteration budget inside the target range."""


class UnsupportedGeneratorError(BetaOTError, ValueError):
    """The requested solver supports cofinite generators only."""


class NumericalUnderflowError(BetaOTError, ArithmeticError):
    """The scaling kernel underflowed to an all-zero row or column."""


class SizeError(BetaOTError, ValueError):
    """The instance exceeds the size supported by the exact reference solver."""


class FormatError(BetaOTError, ValueError):
    """A file does not conform to the expected CSV layout."""
