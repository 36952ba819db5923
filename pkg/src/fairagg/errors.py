"""Exception hierarchy shared across the package."""

from __future__ import annotations


class FairaggError(Exception):
    """Base class for all package-specific errors."""


class ConstantValueFunction(FairaggError):
    """A value function is constant on the feasible set, so it cannot be 0-1 normalized."""


class UnknownOutcome(FairaggError):
    """An act or operation references an outcome outside the feasible set."""


class UnknownCell(FairaggError):
    """An act, belief, or operation references a cell that is not in the partition."""


class FractionOutOfRange(FairaggError):
    """A split fraction or mixing weight lies outside the open interval (0, 1)."""


class PartitionMismatch(FairaggError):
    """An act does not match the partition it is being applied to."""


class InvalidProbability(FairaggError):
    """A requested event probability lies outside [0, 1]."""


class InvalidVector(FairaggError):
    """A utility vector has entries outside [0, 1] or the wrong length."""


class EmptyWeightSet(FairaggError):
    """A weight set was constructed with no vertices."""


class InvalidWeight(FairaggError):
    """A weight vector has negative entries or does not sum to one."""


class NotGrounded(FairaggError):
    """A cost function's minimum penalty is not zero."""


class ComparatorOnly(FairaggError):
    """The rule ranks acts but does not assign numeric scores."""


class NotSupportFunction(FairaggError):
    """A welfare function failed the homogeneity/translation pre-checks for recovery."""


class NotInessential(FairaggError):
    """A proposed outcome addition would change some individual's best or worst outcome."""


class ParseError(FairaggError):
    """A problem or rule file failed schema validation."""
