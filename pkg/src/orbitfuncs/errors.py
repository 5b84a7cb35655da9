"""Exception types raised across the package."""


class InvalidAlgebraError(ValueError):
    """Unknown family letter or a rank the family does not admit."""


class NotARootError(ValueError):
    """A weight that was required to be a root of the system is not one."""


class TwoLengthsRequiredError(ValueError):
    """Operation needs a root system with two root lengths (B, C, F or G)."""


class EnumerationCapError(RuntimeError):
    """Group too large to enumerate; use the orbit-based code paths."""


class ExactDivisionError(ArithmeticError):
    """Division in the exponential ring left a remainder.

    The offending residual is attached as ``remainder``.
    """

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class IdentityViolationError(RuntimeError):
    """An identity that must hold exactly failed; indicates a bug."""


class FactorizationError(RuntimeError):
    """No complement subgroup found within the search budget."""
