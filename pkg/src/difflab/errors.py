"""Exception types shared across the package."""


class DifflabError(Exception):
    """Base class for every error raised by this package."""


class ExponentOverflow(DifflabError):
    """An exponent coefficient left the 64-bit range."""


class NotDivisible(DifflabError):
    """Exponent division requested by a number that does not divide it."""


class DomainMismatch(DifflabError):
    """Operands live over different coefficient domains or fields."""


class BadReduction(DifflabError):
    """A rational coefficient has a denominator divisible by the characteristic."""


class ZeroPolynomial(DifflabError):
    """Operation undefined on the zero polynomial."""


class ConstantPolynomial(DifflabError):
    """Operation undefined on constant polynomials."""


class NonInversiveCoefficients(DifflabError):
    """The coefficient domain does not support inverting the shift action."""


class NotPrime(DifflabError):
    """Field characteristic must be prime."""


class TooLarge(DifflabError):
    """Requested field exceeds the supported size caps."""


class DivisionByZero(DifflabError, ZeroDivisionError):
    """Inversion of the zero element."""


class BudgetExceeded(DifflabError):
    """Enumeration would evaluate more tuples than the configured budget."""


class UnassignedParameter(DifflabError):
    """A parameter symbol has no value assigned."""


class NotOnVariety(DifflabError):
    """Point does not satisfy the system."""


class UsageError(DifflabError):
    """Request is structurally valid but cannot be executed as given."""


class DslError(DifflabError):
    """Parse failure carrying a 1-based source position."""

    def __init__(self, message, line=0, col=0, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        loc = f"{line}:{col}: " if line else ""
        hint = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{loc}{message}{hint}")
        self.message = message


class UndeclaredSymbol(DslError):
    """Expression references a name that is neither a variable nor a parameter."""


class SigmaDepthExceeded(DslError):
    """Shift depth in an expression is above the supported cap."""
