"""Exception types raised across the package."""


class LGError(Exception):
    """Base class for all input and computation errors."""


class ParseError(LGError):
    pass


class NotInvertible(LGError):
    pass


class DegenerateWeights(LGError):
    pass


class NotASymmetry(LGError):
    pass


class NotDiagonalSubgroup(LGError):
    pass


class NotNormalized(LGError):
    pass


class NotInGroup(LGError):
    pass


class SizeLimitExceeded(LGError):
    pass


class SearchLimitExceeded(SizeLimitExceeded):
    pass


class LoopEvenAmbiguity(LGError):
    """The mirror partner is one of several elements (even-length loop atoms)."""

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = list(candidates)


class NoSolution(LGError):
    """An exact congruence that must be solvable was not; indicates a bug."""
