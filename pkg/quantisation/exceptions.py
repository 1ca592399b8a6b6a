"""
Exceptions raised by the quantisation engine.

Validators report axiom failures in a Report instead of raising; the errors
below are for constructions that cannot proceed.
"""


class QuantisationError(Exception):
    """Base class for all engine errors."""


class OrderMismatch(QuantisationError):
    """Two truncated series with different hbar orders were combined."""


class NotAUnit(QuantisationError):
    """A truncated series with zero constant term was inverted."""


class SignatureMismatch(QuantisationError):
    """Domain and codomain legs do not line up."""


class RingMismatch(QuantisationError):
    """Maps over different coefficient rings were tensored."""


class NoSolution(QuantisationError):
    """A linear system is inconsistent."""


class TruncationObstruction(QuantisationError):
    """An order-by-order solve failed at a positive hbar order."""

    def __init__(self, message, order=None):
        super().__init__(message)
        self.order = order


class InvalidStructure(QuantisationError):
    """Structure constants fail their axioms."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotSplit(QuantisationError):
    """A claimed split pair violates a morphism or splitting identity."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotMatched(QuantisationError):
    """A matched pair condition fails."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class NoAntipodeInverse(QuantisationError):
    """The antipode is not invertible."""


class NotConnected(QuantisationError):
    """The convolution series for the antipode does not terminate."""


class NotBraidedHopf(QuantisationError):
    """Braided Hopf axioms fail in the Drinfeld-Yetter category."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotAdmissible(QuantisationError):
    """A quantum module coaction does not factor through B'."""


class InternalInvariantViolation(QuantisationError):
    """A construction produced data violating an invariant it guarantees."""


class FixtureError(QuantisationError):
    """A fixture file cannot be parsed or its references do not resolve."""


class UnknownObject(QuantisationError):
    """An export or lookup named an object that does not exist."""
