"""Triangle-based link scores: common neighbors, Jaccard, Adamic/Adar."""

from __future__ import annotations

import math
from enum import Enum, unique

from .graph import Graph, PairLike, validate_candidate_pair


@unique
class BaselineKind(Enum):
    """The three classic neighborhood-overlap scores.

    The value of each member is its public (CLI / CSV) name.
    """

    CN = "cn"
    JACCARD = "jaccard"
    ADAMIC_ADAR = "adamic-adar"

    @classmethod
    def from_name(cls, name: str) -> "BaselineKind":
        key = name.strip().lower().replace("_", "-")
        for kind in cls:
            if key == kind.value or key == kind.name.lower().replace("_", "-"):
                return kind
        valid = ", ".join(k.value for k in cls)
        raise ValueError(f"unknown baseline {name!r} (expected one of: {valid})")


def baseline_score(g: Graph, pair: PairLike, kind: BaselineKind) -> float:
    """Score a candidate pair with one of the triangle-based baselines.

    CN is the common-neighbor count. Jaccard divides it by the neighborhood
    union size, 0 when both endpoints are isolated. Adamic/Adar sums
    1/ln(deg(w)) over common neighbors w; natural log is a fixed choice
    (any base only rescales, preserving every ranking) and is always finite
    here because a common neighbor of a non-adjacent pair has degree >= 2.
    """
    p = validate_candidate_pair(g, pair)
    common = g.common_neighbors(p)
    t = len(common)
    if kind is BaselineKind.CN:
        return float(t)
    if kind is BaselineKind.JACCARD:
        union = g.degree(p.i) + g.degree(p.j) - t
        return t / union if union else 0.0
    if kind is BaselineKind.ADAMIC_ADAR:
        return float(sum(1.0 / math.log(g.degree(int(w))) for w in common))
    raise ValueError(f"unknown baseline kind: {kind!r}")
