"""Request and response schemas for the HTTP service.

Node ids cross the wire in the graph file's original numbering; the service
translates to internal ids at the boundary, so a 1-indexed dataset is
queried with 1-indexed pairs.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class GraphCreateRequest(BaseModel):
    edges_text: str = Field(description="Edge-list file content")
    format: Literal["auto", "edges", "mtx"] = "auto"
    name: Optional[str] = None


class GraphInfo(BaseModel):
    graph_id: str
    name: str
    num_nodes: int
    num_edges: int
    index_offset: int
    max_degree: int


class PairRequest(BaseModel):
    i: int
    j: int


class ScoreResponse(BaseModel):
    i: int
    j: int
    closures: dict[str, int]
    baselines: dict[str, float]


class RankRequest(BaseModel):
    motif: str = Field(description="Motif kind, e.g. 4-cycle")
    k: int = Field(default=10, ge=1)
    candidates: Optional[list[tuple[int, int]]] = Field(
        default=None, description="Explicit candidate pairs (original ids)"
    )
    all_non_edges_of: Optional[int] = Field(
        default=None, description="Rank every non-neighbor of this node instead"
    )
    prune: bool = True


class RankRow(BaseModel):
    i: int
    j: int
    score: int


class RankResponse(BaseModel):
    motif: str
    rows: list[RankRow]
    candidates: int
    exact_count_calls: int
    pruned: int


class EvalRequest(BaseModel):
    seed: int
    holdout_fraction: float = Field(default=0.10, gt=0.0, lt=1.0)
    trials: int = Field(default=10, ge=1)
    noise_edges: int = Field(default=0, ge=0)
    k_max: int = Field(default=40, ge=1)
    methods: list[str] = Field(default=["all"])
    threads: int = Field(default=1, ge=1)
    per_node_map: bool = False


class MethodMetricsModel(BaseModel):
    ap: float
    coverage: float
    p_at_k: list[float]


class TrialModel(BaseModel):
    trial: int
    n_candidates: int
    n_positives: int
    mean_pair_ms: float
    per_method: dict[str, MethodMetricsModel]


class EvalResponse(BaseModel):
    methods: list[str]
    map: dict[str, float]
    coverage: dict[str, float]
    p_at_k: dict[str, list[float]]
    mean_pair_ms: float
    per_node_map: Optional[dict[str, float]] = None
    trials: list[TrialModel]


class BenchRequest(BaseModel):
    pairs: int = Field(ge=1)
    seed: int = 0


class BenchResponse(BaseModel):
    pairs: int
    mean_ms: float
    median_ms: float
    p99_ms: float
    sampled: list[tuple[int, int]]


class OracleCheckRequest(BaseModel):
    pairs: int = Field(default=25, ge=1)
    seed: int = 0
    node_budget: int = Field(default=2000, ge=4)


class Mismatch(BaseModel):
    i: int
    j: int
    engine: dict[str, int]
    oracle: dict[str, int]


class OracleCheckResponse(BaseModel):
    pairs_checked: int
    skipped_over_budget: int
    mismatches: list[Mismatch]
    ok: bool
