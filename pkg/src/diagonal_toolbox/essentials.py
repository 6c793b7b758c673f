from enum import Enum


class Outcome(Enum):
    DIAGONAL = 0
    NOT_DIAGONAL = 1
    KERNEL_INCONCLUSIVE = 2
    PRECISION_UNKNOWN = 3


class Status(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


class Summability(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class KernelResult(Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"
    UNKNOWN = "unknown"


class OutputFormat(Enum):
    JSON = "json"
    TEXT = "text"


def combine_statuses(statuses):
    """Three-valued conjunction: one failure decides, otherwise any unknown wins."""
    statuses = list(statuses)
    if Status.FAILS in statuses:
        return Status.FAILS
    if Status.UNKNOWN in statuses:
        return Status.UNKNOWN
    return Status.HOLDS
