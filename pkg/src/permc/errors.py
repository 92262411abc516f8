"""Exception hierarchy shared by every module.

The CLI maps each family to an exit code, so new errors should subclass one
of the family bases rather than ``PermcError`` directly.
"""


class PermcError(Exception):
    pass


class InputError(PermcError, ValueError):
    """Malformed user input (exit code 1)."""


class MalformedSpec(InputError):
    pass


class NotMarked(InputError):
    pass


class NoFixedPoint(InputError):
    pass


class LengthMismatch(InputError):
    pass


class CapExceeded(PermcError):
    """A configured computation bound was hit (exit code 3)."""


class LengthCapExceeded(CapExceeded):
    pass


class LookaheadCapExceeded(CapExceeded):
    pass


class StabilizationCapExceeded(CapExceeded):
    pass


class NotCircular(CapExceeded):
    pass


class ArithmeticOverflow(CapExceeded):
    pass


class WordError(PermcError, ValueError):
    pass


class TooShort(WordError):
    pass


class NotAFactor(WordError):
    pass


class UnknownSeed(WordError, KeyError):
    pass


class ConsistencyError(PermcError):
    """Internal results disagree with each other (exit code 5)."""


class DegenerateBoundary(ConsistencyError):
    pass


class NegativeResult(ConsistencyError):
    pass
