"""Exception types raised across the package.

Every error is a ``ValueError`` subclass so callers that only care about
bad input can catch that.
"""


class QuickspaceError(ValueError):
    pass


# finite probability spaces
class EmptySpace(QuickspaceError):
    pass


class DuplicateLabel(QuickspaceError):
    pass


class NegativeWeight(QuickspaceError):
    pass


class NotNormalized(QuickspaceError):
    pass


class UnknownLabel(QuickspaceError):
    pass


class UndefinedOutcome(QuickspaceError):
    pass


class MissingBranch(QuickspaceError):
    pass


class ImpossibleCondition(QuickspaceError):
    pass


class NotAPartition(QuickspaceError):
    pass


class ImpossibleCell(QuickspaceError):
    pass


# run spaces, recurrence, splitter analysis
class TooLarge(QuickspaceError):
    pass


class InvalidRun(QuickspaceError):
    pass


class InvalidInterval(QuickspaceError):
    pass


class RankOutOfInterval(QuickspaceError):
    pass


class BadPair(QuickspaceError):
    pass


# simulator / cli
class DuplicateItems(QuickspaceError):
    pass


class ZeroTrials(QuickspaceError):
    pass


class UnknownSuite(QuickspaceError):
    pass
