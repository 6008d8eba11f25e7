"""Exceptions raised by the Weyl algebra toolkit."""


class WeylError(Exception):
    """Base class for every error raised here.

    `location` points at the offending input when there is one, e.g.
    ``eps[1].d`` for a parameter file or ``(1, 2)`` for an identity.
    """

    def __init__(self, message, location=None):
        super().__init__(message)
        self.message = message
        self.location = location

    def __str__(self):
        if self.location is None:
            return self.message
        return f"{self.location}: {self.message}"


class OrderMismatchError(WeylError):
    """Cyclotomic elements of different orders were combined."""


class RingMismatchError(WeylError):
    """Polynomials over different variable tables were combined."""


class NotDivisibleError(WeylError):
    """An exact division that was required to succeed did not."""


class ParamsError(WeylError):
    """Malformed parameter data."""


class AssumptionViolated(ParamsError):
    """Some epsilon_j equals 1."""


class ExpressionError(ParamsError):
    """An element expression could not be parsed."""


class FreenessError(WeylError):
    """The operation needs d_j | d_l and d_jk | d_l for all j <= l."""


class RecognitionError(WeylError):
    """An element expected to lie in the central subalgebra does not."""


class DescentError(WeylError):
    """A cyclotomic result does not lie in the expected subring."""


class ModeMismatchError(WeylError):
    """Elements of different algebras were combined."""


class IdentityViolation(WeylError):
    """A checked identity failed; `location` holds the failing indices."""
