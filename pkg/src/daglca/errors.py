"""Exception types raised across the package."""


class DagLcaError(Exception):
    """Base class for every error raised by daglca."""


class CycleDetected(DagLcaError, ValueError):
    pass


class InvalidGraph(DagLcaError, ValueError):
    """Self-loops, duplicate edges or out-of-range endpoints."""


class IndexOutOfRange(DagLcaError, IndexError):
    pass


class DimensionMismatch(DagLcaError, ValueError):
    pass


class RetryLimitExceeded(DagLcaError, RuntimeError):
    """Raised when a Las Vegas loop keeps failing verification."""


class InvalidBlockSize(DagLcaError, ValueError):
    pass


class PartitionMismatch(DagLcaError, ValueError):
    pass


class NotFourPartite(DagLcaError, ValueError):
    pass


class SolverContractViolation(DagLcaError, RuntimeError):
    """A user-supplied solver returned answers that fail re-verification."""


class ParseError(DagLcaError, ValueError):
    pass
