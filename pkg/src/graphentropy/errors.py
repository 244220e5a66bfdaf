"""Exception types raised by the library."""


class GraphEntropyError(Exception):
    """Base class for all library errors."""


class SizeLimitExceeded(GraphEntropyError):
    """An exact routine was called on an input above its enumeration cap."""

    def __init__(self, what, size, limit):
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
        self.size = size
        self.limit = limit


class VertexSetMismatch(GraphEntropyError):
    pass


class EmptyEdgeSet(GraphEntropyError):
    pass


class UnknownVertex(GraphEntropyError):
    pass


class NotBipartite(GraphEntropyError):
    pass


class IsolatedVertex(GraphEntropyError):
    pass


class NotCompleteMultipartite(GraphEntropyError):
    pass


class PartitionNotFound(GraphEntropyError):
    pass


class DomainError(GraphEntropyError, ValueError):
    pass


class DimensionMismatch(GraphEntropyError, ValueError):
    pass


class InfeasiblePoint(GraphEntropyError):
    pass


class NonconvergenceAfterMaxIters(GraphEntropyError):
    pass


class InvalidDistribution(GraphEntropyError, ValueError):
    pass


class SumNotOne(InvalidDistribution):
    pass


class NegativeEntry(InvalidDistribution):
    pass


class NotPerfect(GraphEntropyError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotKGraph(GraphEntropyError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class KBelowThree(GraphEntropyError):
    pass


class NotCubic(GraphEntropyError):
    pass


class HasBridge(GraphEntropyError):
    def __init__(self, message, bridge=None):
        super().__init__(message)
        self.bridge = bridge


class InvariantViolation(GraphEntropyError, AssertionError):
    """An internal cross-check failed; indicates a bug or a tolerance problem."""
