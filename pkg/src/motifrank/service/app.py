"""HTTP service exposing the scoring, ranking, and evaluation operations.

Graphs are uploaded once into an in-memory registry and then queried by id;
graphs themselves are immutable, so requests against one graph can be
served concurrently. Domain errors map to 400 (404 for unknown ids) with
the error message in `detail`.
"""

from __future__ import annotations

import itertools
import threading

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..baselines import BaselineKind, baseline_score
from ..closure import ClosureCounter, rank_pairs_detailed
from ..errors import MotifRankError, OracleBudgetError
from ..evaluation import (
    EvalConfig,
    Method,
    RngPurpose,
    bench_pairs,
    derived_rng,
    run_eval,
    sample_negatives,
)
from ..graph import Graph, NodePair, parse_edge_text
from ..motifs import MotifKind
from ..oracle import oracle_closure_counts
from ..reports import report_to_payload
from . import models


class _Registry:
    """Loaded graphs by id. Insertion is locked; reads are immutable."""

    def __init__(self):
        self._graphs: dict[str, tuple[str, Graph]] = {}
        self._lock = threading.Lock()
        self._counter = itertools.count(1)

    def add(self, name: str, g: Graph) -> str:
        with self._lock:
            gid = f"g{next(self._counter)}"
            self._graphs[gid] = (name, g)
        return gid

    def get(self, gid: str) -> tuple[str, Graph]:
        try:
            return self._graphs[gid]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no graph with id {gid!r}") from None

    def remove(self, gid: str) -> None:
        with self._lock:
            if gid not in self._graphs:
                raise HTTPException(status_code=404, detail=f"no graph with id {gid!r}")
            del self._graphs[gid]

    def items(self):
        return list(self._graphs.items())


def _info(gid: str, name: str, g: Graph) -> models.GraphInfo:
    return models.GraphInfo(
        graph_id=gid,
        name=name,
        num_nodes=g.num_nodes,
        num_edges=g.num_edges,
        index_offset=g.index_offset,
        max_degree=g.max_degree,
    )


def _parse_methods(names: list[str]) -> list[Method]:
    if names == ["all"]:
        return list(Method.all_methods())
    try:
        return [Method.parse(name) for name in names]
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def create_app() -> FastAPI:
    app = FastAPI(title="motifrank", version=__version__)
    registry = _Registry()

    @app.exception_handler(MotifRankError)
    async def _domain_error(request, exc: MotifRankError):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/graphs", response_model=models.GraphInfo)
    def create_graph(req: models.GraphCreateRequest):
        g = parse_edge_text(req.edges_text.splitlines(), req.format)
        name = req.name or "graph"
        gid = registry.add(name, g)
        return _info(gid, name, g)

    @app.get("/graphs", response_model=list[models.GraphInfo])
    def list_graphs():
        return [_info(gid, name, g) for gid, (name, g) in registry.items()]

    @app.get("/graphs/{gid}", response_model=models.GraphInfo)
    def get_graph(gid: str):
        name, g = registry.get(gid)
        return _info(gid, name, g)

    @app.delete("/graphs/{gid}")
    def delete_graph(gid: str):
        registry.remove(gid)
        return {"deleted": gid}

    @app.post("/graphs/{gid}/score", response_model=models.ScoreResponse)
    def score(gid: str, req: models.PairRequest):
        _, g = registry.get(gid)
        pair = NodePair(g.to_internal(req.i), g.to_internal(req.j))
        closures = ClosureCounter(g).counts(pair)
        baselines = {
            kind.name: baseline_score(g, pair, kind) for kind in BaselineKind
        }
        return models.ScoreResponse(
            i=req.i, j=req.j, closures=closures.as_dict(), baselines=baselines
        )

    @app.post("/graphs/{gid}/rank", response_model=models.RankResponse)
    def rank(gid: str, req: models.RankRequest):
        _, g = registry.get(gid)
        try:
            kind = MotifKind.from_name(req.motif)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        if (req.candidates is None) == (req.all_non_edges_of is None):
            raise HTTPException(
                status_code=400,
                detail="provide exactly one of candidates, all_non_edges_of",
            )
        if req.candidates is not None:
            pairs = [
                NodePair(g.to_internal(a), g.to_internal(b)) for a, b in req.candidates
            ]
        else:
            u = g.to_internal(req.all_non_edges_of)
            pairs = [NodePair(u, int(v)) for v in g.non_neighbors(u)]
            if not pairs:
                raise HTTPException(
                    status_code=400,
                    detail=f"node {req.all_non_edges_of} has no non-neighbors to rank",
                )
        ranked, stats = rank_pairs_detailed(g, pairs, kind, req.k, prune=req.prune)
        rows = [
            models.RankRow(
                i=g.to_original(sp.pair.i), j=g.to_original(sp.pair.j), score=int(sp.score)
            )
            for sp in ranked
        ]
        return models.RankResponse(
            motif=kind.value,
            rows=rows,
            candidates=stats.candidates,
            exact_count_calls=stats.exact_count_calls,
            pruned=stats.pruned,
        )

    @app.post("/graphs/{gid}/eval", response_model=models.EvalResponse)
    def evaluate(gid: str, req: models.EvalRequest):
        _, g = registry.get(gid)
        cfg = EvalConfig(
            seed=req.seed,
            holdout_fraction=req.holdout_fraction,
            trials=req.trials,
            noise_edges=req.noise_edges,
            k_max=req.k_max,
        )
        methods = _parse_methods(req.methods)
        report = run_eval(
            g, cfg, methods, threads=req.threads, per_node_map=req.per_node_map
        )
        return models.EvalResponse(**report_to_payload(report))

    @app.post("/graphs/{gid}/bench", response_model=models.BenchResponse)
    def bench(gid: str, req: models.BenchRequest):
        _, g = registry.get(gid)
        result = bench_pairs(g, req.pairs, req.seed)
        sampled = [(g.to_original(p.i), g.to_original(p.j)) for p in result.pairs]
        return models.BenchResponse(
            pairs=len(result.pairs),
            mean_ms=result.mean_ms,
            median_ms=result.median_ms,
            p99_ms=result.p99_ms,
            sampled=sampled,
        )

    @app.post("/graphs/{gid}/oracle-check", response_model=models.OracleCheckResponse)
    def oracle_check(gid: str, req: models.OracleCheckRequest):
        _, g = registry.get(gid)
        rng = derived_rng(req.seed, 0, RngPurpose.BENCH)
        available = g.num_nodes * (g.num_nodes - 1) // 2 - g.num_edges
        if available < 1:
            raise HTTPException(status_code=400, detail="graph has no non-edges to check")
        pairs = sample_negatives(g, min(req.pairs, available), (), rng)
        counter = ClosureCounter(g)
        mismatches = []
        skipped = checked = 0
        for p in pairs:
            try:
                want = oracle_closure_counts(g, p, node_budget=req.node_budget)
            except OracleBudgetError:
                skipped += 1
                continue
            got = counter.counts(p)
            checked += 1
            if got != want:
                mismatches.append(
                    models.Mismatch(
                        i=g.to_original(p.i),
                        j=g.to_original(p.j),
                        engine=got.as_dict(),
                        oracle=want.as_dict(),
                    )
                )
        return models.OracleCheckResponse(
            pairs_checked=checked,
            skipped_over_budget=skipped,
            mismatches=mismatches,
            ok=checked > 0 and not mismatches,
        )

    return app
