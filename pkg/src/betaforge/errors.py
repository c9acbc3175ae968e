"""Exception hierarchy shared by every betaforge module."""


class BetaForgeError(Exception):
    """Base class for all library errors."""


class PolynomialParseError(BetaForgeError, ValueError):
    pass


class WordParseError(BetaForgeError, ValueError):
    pass


class NotDivisible(BetaForgeError, ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class ZeroPolynomialError(BetaForgeError, ValueError):
    pass


class EndpointRoot(BetaForgeError, ValueError):
    """A polynomial vanishes at an interval endpoint; the caller must perturb."""


class NotUnique(BetaForgeError, ValueError):
    """An interval does not isolate exactly one root."""


class NotSquarefree(BetaForgeError, ValueError):
    pass


class OnCircleOrDegenerate(BetaForgeError, ArithmeticError):
    """The unit-disk root count is inapplicable (roots on the unit circle)."""


class TransformDegenerate(BetaForgeError, ValueError):
    """The x + 1/x transform needs a self-reciprocal polynomial of even degree."""


class NoDominantRoot(BetaForgeError, ValueError):
    pass


class NotGreedy(BetaForgeError, ValueError):
    pass


class BaseOutOfRange(BetaForgeError, ValueError):
    pass


class NoSalemRoot(BetaForgeError, ValueError):
    pass


class MOutOfRange(BetaForgeError, ValueError):
    pass


class PatternMismatch(BetaForgeError):
    """A computed expansion does not fit a theorem template."""


class Undetermined(BetaForgeError):
    """An expansion neither terminated nor cycled within the digit budget."""

    def __init__(self, message, digits_computed=None):
        super().__init__(message)
        self.digits_computed = digits_computed


class HypothesisFailed(BetaForgeError):
    """A theorem hypothesis (reversibly greedy, reciprocal co-factor) fails."""


class UnsupportedParams(BetaForgeError, ValueError):
    pass
