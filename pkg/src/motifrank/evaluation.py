"""Hold-out evaluation protocol: splits, negative sampling, noise, metrics.

Every random choice flows from one 64-bit seed through named, derived
streams (seed, trial, purpose), so a run is reproducible bit-for-bit from
its seed alone, independent of worker count. The generator is PCG64 seeded
via SeedSequence with that entropy tuple; re-implementations in another
language can replicate the streams from this note.

Purposes: 0 = hold-out selection, 1 = negative sampling, 2 = noise
injection, 3 = benchmark pair selection.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .baselines import BaselineKind, baseline_score
from .closure import ClosureCounter, ScoredPair
from .errors import EvalError, SamplingError
from .graph import Graph, NodePair, PairLike, as_pair
from .metrics import average_precision, coverage, precision_at_k
from .motifs import FOUR_NODE_KINDS, ClosureVector, MotifKind

_MASK64 = (1 << 64) - 1


class RngPurpose(IntEnum):
    HOLDOUT = 0
    NEGATIVES = 1
    NOISE = 2
    BENCH = 3


def derived_rng(seed: int, trial: int, purpose: RngPurpose) -> np.random.Generator:
    """The named random stream for one (seed, trial, purpose) triple."""
    entropy = (seed & _MASK64, trial, int(purpose))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


@dataclass(frozen=True)
class EvalConfig:
    """Knobs of one evaluation run."""

    seed: int
    holdout_fraction: float = 0.10
    trials: int = 10
    noise_edges: int = 0
    k_max: int = 40

    def __post_init__(self) -> None:
        if not 0.0 < self.holdout_fraction < 1.0:
            raise EvalError(f"holdout fraction must be in (0, 1), got {self.holdout_fraction}")
        if self.trials < 1:
            raise EvalError(f"trials must be at least 1, got {self.trials}")
        if self.k_max < 1:
            raise EvalError(f"k_max must be at least 1, got {self.k_max}")
        if self.noise_edges < 0:
            raise EvalError(f"noise_edges must be non-negative, got {self.noise_edges}")


@dataclass(frozen=True)
class Method:
    """A scoring method: one motif-closure count or one baseline."""

    motif: Optional[MotifKind] = None
    baseline: Optional[BaselineKind] = None

    def __post_init__(self) -> None:
        if (self.motif is None) == (self.baseline is None):
            raise ValueError("method must name exactly one of motif, baseline")

    @property
    def name(self) -> str:
        if self.motif is not None:
            return f"motif:{self.motif.value}"
        return self.baseline.value

    @classmethod
    def parse(cls, text: str) -> "Method":
        """Parse a method name: cn, jaccard, adamic-adar, or motif:<kind>."""
        key = text.strip().lower()
        if key.startswith("motif:"):
            return cls(motif=MotifKind.from_name(key[len("motif:"):]))
        return cls(baseline=BaselineKind.from_name(key))

    @classmethod
    def all_methods(cls) -> tuple["Method", ...]:
        """The standard nine: six 4-node motif closures plus three baselines."""
        motifs = tuple(cls(motif=kind) for kind in FOUR_NODE_KINDS)
        bases = tuple(cls(baseline=kind) for kind in BaselineKind)
        return motifs + bases

    def score_from(self, closures: ClosureVector, bases: dict[BaselineKind, float]) -> Union[int, float]:
        if self.motif is not None:
            return closures[self.motif]
        return bases[self.baseline]


def split_holdout(g: Graph, cfg: EvalConfig, trial: int) -> tuple[Graph, list[NodePair]]:
    """Remove a random fraction of edges; return (training graph, removed edges).

    The count removed is ceil(holdout_fraction * num_edges) (with a tiny
    rounding guard so e.g. 0.10 of 100 edges is exactly 10). The training
    graph keeps the full node universe and may be disconnected.
    """
    m = g.num_edges
    target = round(cfg.holdout_fraction * m, 9)
    n_hold = math.ceil(target)
    if target < 1.0:
        raise EvalError(
            f"too few edges: fraction {cfg.holdout_fraction} of {m} edges selects less "
            "than one (need fraction * edges >= 1)"
        )
    if n_hold >= m:
        raise EvalError(
            f"too few edges: holding out {n_hold} of {m} would empty the training graph"
        )
    rng = derived_rng(cfg.seed, trial, RngPurpose.HOLDOUT)
    chosen = np.sort(rng.choice(m, size=n_hold, replace=False))
    edges = g.edge_array()
    keep = np.ones(m, dtype=bool)
    keep[chosen] = False
    train = Graph.from_edges(edges[keep], g.num_nodes, index_offset=g.index_offset)
    positives = sorted(NodePair(int(u), int(v)) for u, v in edges[chosen])
    return train, positives


def _pair_key(p: NodePair, n: int) -> int:
    return p.i * n + p.j


def sample_negatives(
    g: Graph,
    count: int,
    exclude: Iterable[PairLike],
    rng: np.random.Generator,
) -> list[NodePair]:
    """Sample `count` distinct non-edges uniformly, avoiding `exclude`.

    Rejection-samples unordered pairs, discarding self-pairs, existing edges
    of `g`, excluded pairs, and repeats. When the request is a large share
    of the eligible pairs (rejection would stall), it enumerates them and
    draws without replacement instead. Returns pairs in canonical order.
    """
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    if count == 0:
        return []
    n = g.num_nodes
    excl = {as_pair(e) for e in exclude}
    excl_nonedges = sum(1 for p in excl if not g.has_edge(p.i, p.j))
    available = n * (n - 1) // 2 - g.num_edges - excl_nonedges
    if count > available:
        raise SamplingError(
            f"requested {count} negative pairs but only {available} eligible non-edges exist"
        )
    if count * 3 >= available:
        return _sample_by_enumeration(g, count, excl, rng)
    return _sample_by_rejection(g, count, excl, rng)


def _sample_by_enumeration(g, count, excl, rng):
    n = g.num_nodes
    eligible: list[NodePair] = []
    for u in range(n):
        others = g.non_neighbors(u)
        for v in others[others > u]:
            p = NodePair(u, int(v))
            if p not in excl:
                eligible.append(p)
    idx = rng.choice(len(eligible), size=count, replace=False)
    return sorted(eligible[t] for t in idx)


def _sample_by_rejection(g, count, excl, rng):
    n = g.num_nodes
    ea = g.edge_array()
    edge_keys = ea[:, 0] * n + ea[:, 1]  # ascending: edge_array is lexicographic
    excl_keys = np.sort(np.array([_pair_key(p, n) for p in excl], dtype=np.int64))
    seen: set[int] = set()
    out: list[int] = []
    while len(out) < count:
        batch = max(1024, 2 * (count - len(out)))
        u = rng.integers(0, n, size=batch, dtype=np.int64)
        v = rng.integers(0, n, size=batch, dtype=np.int64)
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        keys = (lo * n + hi)[lo < hi]
        keys = keys[~_member(keys, edge_keys)]
        if len(excl_keys):
            keys = keys[~_member(keys, excl_keys)]
        for key in keys.tolist():
            if key not in seen:
                seen.add(key)
                out.append(key)
                if len(out) == count:
                    break
    return sorted(NodePair(key // n, key % n) for key in out)


def _member(keys: np.ndarray, sorted_keys: np.ndarray) -> np.ndarray:
    if len(sorted_keys) == 0:
        return np.zeros(len(keys), dtype=bool)
    pos = np.searchsorted(sorted_keys, keys)
    pos_ok = np.minimum(pos, len(sorted_keys) - 1)
    return (pos < len(sorted_keys)) & (sorted_keys[pos_ok] == keys)


def inject_noise(
    g: Graph,
    cfg: EvalConfig,
    rng: np.random.Generator,
    exclude: Iterable[PairLike] = (),
) -> Graph:
    """Add cfg.noise_edges random spurious edges; `exclude` pairs are never used."""
    if cfg.noise_edges == 0:
        return g
    extra = sample_negatives(g, cfg.noise_edges, exclude, rng)
    return g.with_extra_edges(extra)


# -- full protocol -----------------------------------------------------------


@dataclass(frozen=True)
class MethodMetrics:
    ap: float
    coverage: float
    p_at_k: tuple  # length k_max, clamped at the candidate count


@dataclass(frozen=True)
class TrialOutcome:
    trial: int
    n_candidates: int
    n_positives: int
    mean_pair_ms: float
    per_method: dict  # method name -> MethodMetrics


@dataclass(frozen=True)
class EvalReport:
    """Aggregated evaluation results plus the per-trial breakdown."""

    config: EvalConfig
    methods: tuple  # method names, fixed order
    trials: tuple  # TrialOutcome per trial
    map_by_method: dict  # mean AP across trials
    coverage_by_method: dict
    p_at_k_by_method: dict  # name -> tuple length k_max
    mean_pair_ms: float
    per_node_map_by_method: Optional[dict] = None


def _score_candidates(
    train: Graph, candidates: Sequence[NodePair], threads: int
) -> tuple[list[ClosureVector], list[dict], float]:
    """All seven closure counts plus the three baselines per candidate.

    Returns (closures, baseline score dicts, total closure seconds). The
    timing covers the all-seven closure computation only, matching how the
    per-pair cost is reported. Chunked across threads; chunk boundaries and
    result order do not depend on the thread count.
    """

    def score_chunk(chunk: Sequence[NodePair]):
        counter = ClosureCounter(train)
        closures = []
        elapsed = 0.0
        for p in chunk:
            t0 = time.perf_counter()
            vec = counter.counts(p)
            elapsed += time.perf_counter() - t0
            closures.append(vec)
        bases = [
            {kind: baseline_score(train, p, kind) for kind in BaselineKind}
            for p in chunk
        ]
        return closures, bases, elapsed

    if threads <= 1 or len(candidates) < 2:
        closures, bases, elapsed = score_chunk(candidates)
        return closures, bases, elapsed
    chunk_size = max(1, math.ceil(len(candidates) / (threads * 4)))
    chunks = [candidates[i : i + chunk_size] for i in range(0, len(candidates), chunk_size)]
    closures: list[ClosureVector] = []
    bases: list[dict] = []
    elapsed = 0.0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for c_part, b_part, e_part in pool.map(score_chunk, chunks):
            closures.extend(c_part)
            bases.extend(b_part)
            elapsed += e_part
    return closures, bases, elapsed


def run_eval(
    g: Graph,
    cfg: EvalConfig,
    methods: Sequence[Method],
    *,
    threads: int = 1,
    per_node_map: bool = False,
) -> EvalReport:
    """Run the full protocol and aggregate metrics across trials.

    Per trial: hold out edges as positives, sample an equal number of
    non-edges as negatives, optionally add noise edges to the training
    graph (never overlapping positives or negatives), score every candidate
    with every method on the training graph, then compute average
    precision, coverage, and precision at 1..k_max with tie-aware
    expectations. The headline MAP is the mean AP across trials; per-node
    MAP (mean AP over per-endpoint candidate subsets) is optional.
    """
    if not methods:
        raise EvalError("no methods given")
    names = [m.name for m in methods]
    if len(set(names)) != len(names):
        raise EvalError(f"duplicate methods: {names}")
    outcomes = []
    node_aps: dict[str, list[float]] = {name: [] for name in names}
    for trial in range(cfg.trials):
        train, positives = split_holdout(g, cfg, trial)
        negatives = sample_negatives(
            g, len(positives), positives, derived_rng(cfg.seed, trial, RngPurpose.NEGATIVES)
        )
        if cfg.noise_edges:
            train = inject_noise(
                train,
                cfg,
                derived_rng(cfg.seed, trial, RngPurpose.NOISE),
                exclude=positives + negatives,
            )
        candidates = [(p, True) for p in positives] + [(p, False) for p in negatives]
        pairs = [p for p, _ in candidates]
        closures, bases, closure_seconds = _score_candidates(train, pairs, threads)
        per_method = {}
        for method in methods:
            ranked = [
                ScoredPair(p, method.score_from(vec, base), label)
                for (p, label), vec, base in zip(candidates, closures, bases)
            ]
            curve = tuple(
                precision_at_k(ranked, min(k, len(ranked)))
                for k in range(1, cfg.k_max + 1)
            )
            per_method[method.name] = MethodMetrics(
                ap=average_precision(ranked),
                coverage=coverage(ranked),
                p_at_k=curve,
            )
            if per_node_map:
                node_aps[method.name].append(_per_node_ap(ranked))
        outcomes.append(
            TrialOutcome(
                trial=trial,
                n_candidates=len(candidates),
                n_positives=len(positives),
                mean_pair_ms=1000.0 * closure_seconds / len(candidates),
                per_method=per_method,
            )
        )
    map_by = {n: _mean(o.per_method[n].ap for o in outcomes) for n in names}
    cov_by = {n: _mean(o.per_method[n].coverage for o in outcomes) for n in names}
    curve_by = {
        n: tuple(
            _mean(o.per_method[n].p_at_k[i] for o in outcomes) for i in range(cfg.k_max)
        )
        for n in names
    }
    return EvalReport(
        config=cfg,
        methods=tuple(names),
        trials=tuple(outcomes),
        map_by_method=map_by,
        coverage_by_method=cov_by,
        p_at_k_by_method=curve_by,
        mean_pair_ms=_mean(o.mean_pair_ms for o in outcomes),
        per_node_map_by_method=(
            {n: _mean(node_aps[n]) for n in names} if per_node_map else None
        ),
    )


@dataclass(frozen=True)
class BenchResult:
    """Per-pair timing of the all-seven closure computation."""

    pairs: tuple  # the sampled NodePairs, canonical order
    mean_ms: float
    median_ms: float
    p99_ms: float


def bench_pairs(g: Graph, n_pairs: int, seed: int) -> BenchResult:
    """Time closure counting on n_pairs random non-edges.

    Pair selection is seed-reproducible (purpose stream 3); timings are not,
    by nature.
    """
    if n_pairs < 1:
        raise EvalError(f"need at least one pair to time, got {n_pairs}")
    pairs = sample_negatives(g, n_pairs, (), derived_rng(seed, 0, RngPurpose.BENCH))
    counter = ClosureCounter(g)
    times = np.empty(len(pairs))
    for idx, p in enumerate(pairs):
        t0 = time.perf_counter()
        counter.counts(p)
        times[idx] = time.perf_counter() - t0
    times *= 1000.0
    return BenchResult(
        pairs=tuple(pairs),
        mean_ms=float(times.mean()),
        median_ms=float(np.median(times)),
        p99_ms=float(np.percentile(times, 99)),
    )


def _per_node_ap(ranked: Sequence[ScoredPair]) -> float:
    """Mean AP over per-endpoint candidate subsets (the per-query reading)."""
    nodes = sorted({u for sp in ranked if sp.label for u in (sp.pair.i, sp.pair.j)})
    aps = []
    for u in nodes:
        subset = [sp for sp in ranked if u in (sp.pair.i, sp.pair.j)]
        aps.append(average_precision(subset))
    return _mean(aps)


def _mean(values) -> float:
    values = list(values)
    return sum(values) / len(values)
