"""Exception hierarchy shared across the package."""


class MotifRankError(Exception):
    """Base class for every domain error raised by this package."""


class GraphParseError(MotifRankError):
    """An edge-list stream could not be parsed; the message names the line."""


class NodeRangeError(MotifRankError):
    """A node identifier is outside the graph's node range."""


class PairIsEdgeError(MotifRankError):
    """An operation that requires a non-adjacent pair received an existing edge."""


class OracleBudgetError(MotifRankError):
    """The brute-force reference counter refused a graph above its node budget."""


class SamplingError(MotifRankError):
    """A random-sampling request cannot be satisfied (e.g. too few non-edges)."""


class MetricError(MotifRankError):
    """A ranking metric was asked for an ill-posed input (e.g. no positives)."""


class EvalError(MotifRankError):
    """An evaluation run was configured inconsistently with the graph."""
