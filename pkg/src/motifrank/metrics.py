"""Ranking metrics with analytic handling of tied scores.

Count-valued scores produce heavy ties, and breaking them optimistically or
pessimistically would bias comparisons between methods of different score
granularity. Every metric here therefore evaluates the exact expectation of
its value over a uniformly random ordering inside each tie group, in closed
form. The test suite checks the closed forms against brute-force shuffling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .closure import ScoredPair
from .errors import MetricError


@dataclass(frozen=True)
class _TieGroup:
    size: int
    positives: int
    before: int  # items ranked above this group
    positives_before: int


def _tie_groups(ranked: Sequence[ScoredPair]) -> list[_TieGroup]:
    if not ranked:
        raise MetricError("empty ranking")
    for sp in ranked:
        if sp.label is None:
            raise MetricError(f"candidate {sp.pair} has no positive/negative label")
        if not math.isfinite(sp.score):
            raise MetricError(f"candidate {sp.pair} has non-finite score {sp.score!r}")
    by_score = sorted(ranked, key=lambda sp: -sp.score)
    groups: list[_TieGroup] = []
    before = positives_before = 0
    idx = 0
    while idx < len(by_score):
        end = idx
        while end < len(by_score) and by_score[end].score == by_score[idx].score:
            end += 1
        pos = sum(1 for sp in by_score[idx:end] if sp.label)
        groups.append(_TieGroup(end - idx, pos, before, positives_before))
        before += end - idx
        positives_before += pos
        idx = end
    if positives_before == 0:
        raise MetricError("ranking contains no positive labels")
    return groups


def average_precision(ranked: Sequence[ScoredPair]) -> float:
    """Expected average precision over uniform shuffles within tie groups.

    For each positive, precision at its rank is averaged; a tie group of
    size n with p positives starting below `before` prior items contributes
    its exact expectation: conditioned on a positive occupying in-group
    position r, it is the (1 + (r-1)(p-1)/(n-1))-th positive of the group
    on average, each position holding a positive with probability p/n.
    """
    groups = _tie_groups(ranked)
    total_positives = sum(g.positives for g in groups)
    ap = 0.0
    for g in groups:
        if g.positives == 0:
            continue
        frac = g.positives / g.size
        for r in range(1, g.size + 1):
            expected_hits = 1.0 if g.size == 1 else 1.0 + (r - 1) * (g.positives - 1) / (g.size - 1)
            ap += frac * (g.positives_before + expected_hits) / (g.before + r)
    return ap / total_positives


def precision_at_k(ranked: Sequence[ScoredPair], k: int) -> float:
    """Expected fraction of positives among the top k.

    A tie group straddling rank k fills its top slots uniformly, so it
    contributes (slots inside k) * p/n positives in expectation.
    """
    groups = _tie_groups(ranked)
    total = sum(g.size for g in groups)
    if not 1 <= k <= total:
        raise MetricError(f"k={k} out of range for a ranking of {total} candidates")
    hits = 0.0
    for g in groups:
        if g.before >= k:
            break
        slots = min(g.size, k - g.before)
        hits += slots * (g.positives / g.size)
    return hits / k


def coverage(ranked: Sequence[ScoredPair]) -> float:
    """Normalized expected rank by which every positive has been retrieved.

    The deepest positive lies in the last tie group holding one; the
    expected maximum of p uniform positions among n is p(n+1)/(p+1). Lower
    is better; a positive with the unique minimum score yields exactly 1.0.
    """
    groups = _tie_groups(ranked)
    total = sum(g.size for g in groups)
    last = next(g for g in reversed(groups) if g.positives)
    expected_max = last.before + last.positives * (last.size + 1) / (last.positives + 1)
    return expected_max / total
