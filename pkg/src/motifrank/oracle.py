"""Brute-force reference counter for closure counts.

Given a candidate pair (i, j), this module literally enumerates every
connected 3- or 4-node induced subgraph of G + (i, j) that contains the new
edge, classifies its shape, and tallies per kind. It is the ground truth the
fast counter is checked against; it makes no attempt to be fast and refuses
graphs above a node budget.

Completeness of the search space: a connected 4-node subgraph containing
edge (i, j) has every node within distance 2 of i or of j inside the
subgraph itself, so enumerating third/fourth nodes from the distance-2 ball
around {i, j} misses nothing. Adding the edge (i, j) does not grow that
ball: the only new paths it creates lead to neighbors of the other endpoint,
which the union of the two balls already contains.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OracleBudgetError
from .graph import Graph, PairLike, validate_candidate_pair
from .motifs import FOUR_NODE_KINDS, ClosureVector, MotifKind

DEFAULT_NODE_BUDGET = 2000

#: Flag order for an ordered 4-tuple (n0, n1, n2, n3).
FLAG_SLOTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class InducedInstance:
    """One enumerated subgraph: its node set and the shape it realizes.

    The induced subgraph on `nodes` (in G plus the candidate edge) is
    connected, contains the candidate edge, and is isomorphic to `kind`.
    """

    nodes: frozenset
    kind: MotifKind

    def __post_init__(self) -> None:
        want = 3 if self.kind is MotifKind.TRIANGLE else 4
        if len(self.nodes) != want:
            raise ValueError(f"{self.kind.value} instance needs {want} nodes, got {len(self.nodes)}")


def _classify_mask(mask: int) -> MotifKind | None:
    """Classify the 4-node graph whose edges are the set bits of `mask`.

    Bit b corresponds to FLAG_SLOTS[b]. Returns None when the graph is
    disconnected (no connected 4-node graph has fewer than 3 edges, and a
    triangle plus an isolated node is disconnected too).
    """
    adj = [[False] * 4 for _ in range(4)]
    deg = [0] * 4
    n_edges = 0
    for bit, (a, b) in enumerate(FLAG_SLOTS):
        if mask >> bit & 1:
            adj[a][b] = adj[b][a] = True
            deg[a] += 1
            deg[b] += 1
            n_edges += 1
    # connectivity: breadth-first from node 0 must reach all four
    seen = {0}
    frontier = [0]
    while frontier:
        u = frontier.pop()
        for v in range(4):
            if adj[u][v] and v not in seen:
                seen.add(v)
                frontier.append(v)
    if len(seen) < 4:
        return None
    signature = tuple(sorted(deg))
    if n_edges == 3:
        return MotifKind.STAR4 if signature == (1, 1, 1, 3) else MotifKind.PATH4
    if n_edges == 4:
        return MotifKind.CYCLE4 if signature == (2, 2, 2, 2) else MotifKind.TAILED_TRIANGLE4
    if n_edges == 5:
        return MotifKind.CHORDAL_CYCLE4
    return MotifKind.CLIQUE4


#: All 64 adjacency masks classified once at import.
_CLASSIFY6: tuple[MotifKind | None, ...] = tuple(_classify_mask(m) for m in range(64))


def classify_4set(flags) -> MotifKind | None:
    """Classify an induced 4-node subgraph given its six adjacency flags.

    `flags` are booleans for the pairs (0,1), (0,2), (0,3), (1,2), (1,3),
    (2,3) of an ordered 4-tuple. Returns the shape, or None when the induced
    subgraph is disconnected.
    """
    flags = tuple(flags)
    if len(flags) != 6:
        raise ValueError(f"expected 6 adjacency flags, got {len(flags)}")
    mask = 0
    for bit, flag in enumerate(flags):
        if flag:
            mask |= 1 << bit
    return _CLASSIFY6[mask]


# Lookup for the oracle's inner loop. The candidate edge (i, j) is always
# present, so only five flags vary: for the tuple (i, j, w, x) with
# m5 = wi | wj<<1 | xi<<2 | xj<<3 | wx<<4, _TABLE5[m5] is the index of the
# kind in FOUR_NODE_KINDS, or -1 for disconnected.
_KIND_INDEX = {kind: idx for idx, kind in enumerate(FOUR_NODE_KINDS)}


def _build_table5() -> np.ndarray:
    table = np.full(32, -1, dtype=np.int8)
    for m5 in range(32):
        wi, wj, xi, xj, wx = (m5 >> b & 1 for b in range(5))
        kind = classify_4set((True, wi, xi, wj, xj, wx))
        if kind is not None:
            table[m5] = _KIND_INDEX[kind]
    return table


_TABLE5 = _build_table5()
_TABLE5.setflags(write=False)


def _ball2(g: Graph, i: int, j: int) -> np.ndarray:
    """Sorted node ids within distance 2 of i or j (i and j included)."""
    parts = [np.array([i, j], dtype=g.indices.dtype)]
    for u in (i, j):
        nbrs = g.neighbors(u)
        parts.append(nbrs)
        parts.extend(g.indices[g.indptr[v] : g.indptr[v + 1]] for v in nbrs)
    return np.unique(np.concatenate(parts))


def _candidate_frame(g, pair, node_budget, restrict_to_ball):
    """Validate the pair and set up the search space shared by both entry points.

    Returns (pair, triangle_nodes, cand, adj_i, adj_j, sub) where cand is the
    array of possible third/fourth nodes, adj_i/adj_j mark which of them
    neighbor each endpoint, and sub is the induced adjacency matrix on cand.
    """
    p = validate_candidate_pair(g, pair)
    if restrict_to_ball:
        scope = _ball2(g, p.i, p.j)
    else:
        scope = np.arange(g.num_nodes)
    if len(scope) > node_budget:
        raise OracleBudgetError(
            f"enumeration would cover {len(scope)} nodes, above the budget of "
            f"{node_budget}; use closure_counts for graphs this large"
        )
    tri_nodes = g.common_neighbors(p)
    cand = scope[(scope != p.i) & (scope != p.j)]
    n = len(cand)
    pos = np.full(g.num_nodes, -1, dtype=np.int64)
    pos[cand] = np.arange(n)
    adj_i = np.isin(cand, g.neighbors(p.i), assume_unique=True)
    adj_j = np.isin(cand, g.neighbors(p.j), assume_unique=True)
    sub = np.zeros((n, n), dtype=bool)
    for idx in range(n):
        hits = pos[g.neighbors(int(cand[idx]))]
        hits = hits[hits >= 0]
        sub[idx, hits] = True
    return p, tri_nodes, cand, adj_i, adj_j, sub


def _pair_kinds(cand, adj_i, adj_j, sub):
    """Classify every unordered candidate pair {w, x}.

    Returns (iu, iv, kind_idx): positions of w and x within cand and the
    FOUR_NODE_KINDS index of the shape (-1 where disconnected).
    """
    iu, iv = np.triu_indices(len(cand), k=1)
    m5 = (
        adj_i[iu].astype(np.int8)
        | adj_j[iu] << 1
        | adj_i[iv] << 2
        | adj_j[iv] << 3
        | sub[iu, iv] << 4
    )
    return iu, iv, _TABLE5[m5]


def oracle_closure_counts(
    g: Graph,
    pair: PairLike,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    restrict_to_ball: bool = True,
) -> ClosureVector:
    """Count closures of every kind for a candidate pair, by enumeration.

    Triangles are the common neighbors of the pair. For the four-node kinds,
    every unordered pair of further nodes {w, x} is taken from the search
    space (the distance-2 ball around the endpoints, or the whole graph when
    `restrict_to_ball` is off), the subgraph induced on {i, j, w, x} in
    G + (i, j) is classified, and each node set is counted exactly once.

    Raises OracleBudgetError when the search space exceeds `node_budget`.
    """
    p, tri_nodes, cand, adj_i, adj_j, sub = _candidate_frame(
        g, pair, node_budget, restrict_to_ball
    )
    counts = {kind: 0 for kind in MotifKind}
    counts[MotifKind.TRIANGLE] = len(tri_nodes)
    if len(cand) >= 2:
        _, _, kind_idx = _pair_kinds(cand, adj_i, adj_j, sub)
        tally = np.bincount(kind_idx[kind_idx >= 0], minlength=len(FOUR_NODE_KINDS))
        for idx, kind in enumerate(FOUR_NODE_KINDS):
            counts[kind] = int(tally[idx])
    return ClosureVector(counts)


def enumerate_instances(
    g: Graph,
    pair: PairLike,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    restrict_to_ball: bool = True,
) -> list[InducedInstance]:
    """List every induced instance the candidate edge would complete.

    Same search as oracle_closure_counts but materializes the node sets.
    Instances use internal node ids.
    """
    p, tri_nodes, cand, adj_i, adj_j, sub = _candidate_frame(
        g, pair, node_budget, restrict_to_ball
    )
    out = [
        InducedInstance(frozenset((p.i, p.j, int(w))), MotifKind.TRIANGLE)
        for w in tri_nodes
    ]
    if len(cand) >= 2:
        iu, iv, kind_idx = _pair_kinds(cand, adj_i, adj_j, sub)
        for where in np.flatnonzero(kind_idx >= 0):
            nodes = frozenset((p.i, p.j, int(cand[iu[where]]), int(cand[iv[where]])))
            out.append(InducedInstance(nodes, FOUR_NODE_KINDS[kind_idx[where]]))
    return out
