"""Motif-closure link ranking: score candidate edges by the higher-order
network motifs they would complete."""

from .baselines import BaselineKind, baseline_score
from .closure import (
    ClosureCounter,
    RankStats,
    ScoredPair,
    closure_counts,
    rank_pairs,
    rank_pairs_detailed,
    upper_bound,
)
from .errors import (
    EvalError,
    GraphParseError,
    MetricError,
    MotifRankError,
    NodeRangeError,
    OracleBudgetError,
    PairIsEdgeError,
    SamplingError,
)
from .evaluation import (
    EvalConfig,
    EvalReport,
    Method,
    bench_pairs,
    derived_rng,
    inject_noise,
    run_eval,
    sample_negatives,
    split_holdout,
)
from .graph import Graph, NodePair, load_graph, parse_edge_text
from .metrics import average_precision, coverage, precision_at_k
from .motifs import ALL_KINDS, FOUR_NODE_KINDS, ClosureVector, MotifKind
from .oracle import InducedInstance, classify_4set, enumerate_instances, oracle_closure_counts

__version__ = "0.1.0"

__all__ = [
    "ALL_KINDS",
    "BaselineKind",
    "ClosureCounter",
    "ClosureVector",
    "EvalConfig",
    "EvalError",
    "EvalReport",
    "FOUR_NODE_KINDS",
    "Graph",
    "GraphParseError",
    "InducedInstance",
    "Method",
    "MetricError",
    "MotifKind",
    "MotifRankError",
    "NodePair",
    "NodeRangeError",
    "OracleBudgetError",
    "PairIsEdgeError",
    "RankStats",
    "SamplingError",
    "ScoredPair",
    "average_precision",
    "baseline_score",
    "bench_pairs",
    "classify_4set",
    "closure_counts",
    "coverage",
    "derived_rng",
    "enumerate_instances",
    "inject_noise",
    "load_graph",
    "oracle_closure_counts",
    "precision_at_k",
    "parse_edge_text",
    "rank_pairs",
    "rank_pairs_detailed",
    "run_eval",
    "sample_negatives",
    "split_holdout",
    "upper_bound",
    "__version__",
]
