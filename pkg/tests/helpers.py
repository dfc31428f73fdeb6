"""Shared test utilities: random graphs, an independent brute-force counter,
Monte-Carlo metric estimation, and an in-process CLI runner."""

from __future__ import annotations

import io
import itertools
import sys
from contextlib import redirect_stderr, redirect_stdout

import numpy as np

from motifrank.closure import ScoredPair
from motifrank.graph import Graph, NodePair
from motifrank.motifs import ClosureVector, MotifKind


def random_graph(rng, n: int, p: float) -> Graph:
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    return Graph.from_edges(edges, n)


def non_edges(g: Graph) -> list[tuple[int, int]]:
    return [
        (a, b)
        for a in range(g.num_nodes)
        for b in range(a + 1, g.num_nodes)
        if not g.has_edge(a, b)
    ]


_SHAPE_BY_SIGNATURE = {
    (3, (1, 1, 1, 3)): MotifKind.STAR4,
    (3, (1, 1, 2, 2)): MotifKind.PATH4,
    (4, (2, 2, 2, 2)): MotifKind.CYCLE4,
    (4, (1, 2, 2, 3)): MotifKind.TAILED_TRIANGLE4,
}


def naive_closure_counts(g: Graph, pair: tuple[int, int]) -> ClosureVector:
    """Independent reference counter: plain set arithmetic, no shared code.

    Enumerates every 3- and 4-subset of ALL nodes with the candidate edge
    treated as present, classifies by edge count and degree sequence, and
    checks connectivity by transitive closure over the subset's edges.
    """
    i, j = pair
    edge_set = {tuple(e) for e in g.edge_array().tolist()}
    edge_set.add((min(i, j), max(i, j)))

    def adjacent(u, v):
        return (min(u, v), max(u, v)) in edge_set

    counts = {kind: 0 for kind in MotifKind}
    for w in range(g.num_nodes):
        if w not in (i, j) and adjacent(i, w) and adjacent(j, w):
            counts[MotifKind.TRIANGLE] += 1
    for quad in itertools.combinations(range(g.num_nodes), 4):
        if i not in quad or j not in quad:
            continue
        edges = [(a, b) for a, b in itertools.combinations(quad, 2) if adjacent(a, b)]
        component = {quad[0]}
        grew = True
        while grew:
            grew = False
            for a, b in edges:
                if (a in component) != (b in component):
                    component.update((a, b))
                    grew = True
        if len(component) < 4:
            continue
        deg = {q: 0 for q in quad}
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        signature = tuple(sorted(deg.values()))
        kind = _SHAPE_BY_SIGNATURE.get((len(edges), signature))
        if kind is None and len(edges) == 5:
            kind = MotifKind.CHORDAL_CYCLE4
        if kind is None and len(edges) == 6:
            kind = MotifKind.CLIQUE4
        if kind is not None:
            counts[kind] += 1
    return ClosureVector(counts)


def make_ranked(scores, labels) -> list[ScoredPair]:
    """Build a labeled ranking over synthetic disjoint pairs."""
    return [
        ScoredPair(NodePair(2 * idx, 2 * idx + 1), score, bool(label))
        for idx, (score, label) in enumerate(zip(scores, labels))
    ]


def monte_carlo_metrics(scores, labels, shuffles: int, seed: int = 0):
    """Empirical AP, P@k curve, and coverage over random within-tie shuffles."""
    rng = np.random.default_rng(seed)
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels, dtype=bool)
    order = np.argsort(-scores, kind="stable")
    sorted_scores, sorted_labels = scores[order], labels[order]
    n = len(scores)
    keys = rng.random((shuffles, n))
    lab = np.empty((shuffles, n), dtype=bool)
    start = 0
    while start < n:
        end = start
        while end < n and sorted_scores[end] == sorted_scores[start]:
            end += 1
        segment = sorted_labels[start:end]
        idx = np.argsort(keys[:, start:end], axis=1)
        lab[:, start:end] = segment[idx]
        start = end
    total_pos = int(sorted_labels.sum())
    cum = np.cumsum(lab, axis=1)
    ranks = np.arange(1, n + 1)
    precision = cum / ranks
    ap = (precision * lab).sum(axis=1) / total_pos
    max_rank = (lab * ranks).max(axis=1)
    return ap.mean(), (cum / ranks).mean(axis=0), max_rank.mean() / n


def invoke_cli(args: list[str]) -> tuple[int, str, str]:
    """Run the console entry point in-process; returns (exit code, out, err)."""
    from motifrank.cli import entrypoint

    old_argv = sys.argv
    sys.argv = ["motifrank", *args]
    out, err = io.StringIO(), io.StringIO()
    code = 0
    try:
        with redirect_stdout(out), redirect_stderr(err):
            entrypoint()
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
    finally:
        sys.argv = old_argv
    return code, out.getvalue(), err.getvalue()
