"""Exception types shared across the package."""


class QuarticPellError(Exception):
    """Base class for every error raised on purpose by this package."""


class HypothesisNotMet(QuarticPellError):
    """A theorem predicate was asked about an instance outside its hypotheses."""


class TheoremViolation(QuarticPellError):
    """An exact computation contradicts a proven statement. Never swallowed."""


class ReproductionFailure(QuarticPellError):
    """A published number or list could not be reproduced."""

    def __init__(self, message, diff=None):
        super().__init__(message)
        self.diff = diff


class ConsistencyError(QuarticPellError):
    """Two independent computations of the same quantity disagree."""


class PrecisionExhausted(QuarticPellError):
    """A ball comparison stayed undecided up to the maximum precision."""
