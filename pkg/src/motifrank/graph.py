"""Immutable undirected simple graph in compressed sparse adjacency form.

Node ids are reindexed to a dense 0-based range at load time. Edge-list files
that are 1-indexed (minimum observed id is 1 and 0 never appears) are shifted
by -1; the shift is kept so results can be reported in the file's original
ids. Neighbor lists are sorted and duplicate-free, so membership tests are
binary searches and intersections are linear merges.

The graph never changes after construction, which makes concurrent read
access from any number of workers safe.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence, Union

import numpy as np

from .errors import GraphParseError, NodeRangeError, PairIsEdgeError

log = logging.getLogger(__name__)

_COMMENT_CHARS = ("%", "#")


@dataclass(frozen=True, order=True)
class NodePair:
    """An unordered candidate pair, stored canonically as i < j."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if self.i == self.j:
            raise ValueError(f"node pair requires two distinct nodes, got ({self.i}, {self.j})")
        if self.i > self.j:
            i, j = self.j, self.i
            object.__setattr__(self, "i", i)
            object.__setattr__(self, "j", j)


PairLike = Union[NodePair, tuple]


def as_pair(pair: PairLike) -> NodePair:
    if isinstance(pair, NodePair):
        return pair
    i, j = pair
    return NodePair(int(i), int(j))


class Graph:
    """Undirected simple graph over nodes 0..num_nodes-1.

    Attributes:
        num_nodes: number of vertices.
        num_edges: number of undirected edges.
        index_offset: amount subtracted from file ids at load (0 or 1);
            original id = internal id + index_offset.
        max_degree: largest neighbor-list length (0 for an empty graph).
        self_loops_dropped / duplicate_edges_dropped: cleanup counters
            from parsing, 0 for programmatically built graphs.
    """

    __slots__ = (
        "num_nodes",
        "num_edges",
        "indptr",
        "indices",
        "index_offset",
        "max_degree",
        "self_loops_dropped",
        "duplicate_edges_dropped",
        "_degrees",
        "_edge_array",
    )

    def __init__(
        self,
        indptr: np.ndarray,
        indices: np.ndarray,
        *,
        index_offset: int = 0,
        self_loops_dropped: int = 0,
        duplicate_edges_dropped: int = 0,
    ):
        self.indptr = indptr
        self.indices = indices
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        self.num_nodes = len(indptr) - 1
        self.num_edges = len(indices) // 2
        self.index_offset = index_offset
        self._degrees = np.diff(indptr)
        self._degrees.setflags(write=False)
        self.max_degree = int(self._degrees.max()) if self.num_nodes else 0
        self.self_loops_dropped = self_loops_dropped
        self.duplicate_edges_dropped = duplicate_edges_dropped
        self._edge_array = None

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int]] | np.ndarray,
        num_nodes: int | None = None,
        *,
        index_offset: int = 0,
        self_loops_dropped: int = 0,
        duplicate_edges_dropped: int = 0,
    ) -> "Graph":
        """Build a graph from (u, v) pairs of internal ids.

        Self-loops are dropped and duplicates collapsed; direction is ignored.
        """
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be (u, v) pairs")
        if arr.size and arr.min() < 0:
            raise ValueError("negative node id in edge list")
        loops = arr[:, 0] == arr[:, 1]
        self_loops_dropped += int(loops.sum())
        arr = arr[~loops]
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        canon = np.column_stack([lo, hi])
        uniq = np.unique(canon, axis=0) if len(canon) else canon
        duplicate_edges_dropped += len(canon) - len(uniq)
        if num_nodes is None:
            num_nodes = int(arr.max()) + 1 if arr.size else 0
        elif arr.size and int(arr.max()) >= num_nodes:
            raise ValueError(f"edge endpoint {int(arr.max())} out of range for num_nodes={num_nodes}")
        indptr, indices = _build_csr(uniq, num_nodes)
        return cls(
            indptr,
            indices,
            index_offset=index_offset,
            self_loops_dropped=self_loops_dropped,
            duplicate_edges_dropped=duplicate_edges_dropped,
        )

    def with_extra_edges(self, extra: Sequence[NodePair]) -> "Graph":
        """A new graph with `extra` non-edges added; node universe unchanged."""
        if not extra:
            return self
        add = np.array([(p.i, p.j) for p in extra], dtype=np.int64)
        combined = np.concatenate([self.edge_array(), add])
        g = Graph.from_edges(combined, self.num_nodes, index_offset=self.index_offset)
        if g.num_edges != self.num_edges + len(extra):
            raise ValueError("extra edges overlap existing edges or each other")
        return g

    # -- queries -----------------------------------------------------------

    def _check_node(self, u: int) -> None:
        if not 0 <= u < self.num_nodes:
            raise NodeRangeError(f"node {u} out of range (graph has {self.num_nodes} nodes)")

    def degree(self, u: int) -> int:
        self._check_node(u)
        return int(self._degrees[u])

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    def neighbors(self, u: int) -> np.ndarray:
        """Sorted, duplicate-free neighbor ids of u (read-only view)."""
        self._check_node(u)
        return self.indices[self.indptr[u] : self.indptr[u + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        if u == v:
            return False
        if self._degrees[u] > self._degrees[v]:
            u, v = v, u
        row = self.indices[self.indptr[u] : self.indptr[u + 1]]
        pos = np.searchsorted(row, v)
        return pos < len(row) and row[pos] == v

    def common_neighbors(self, pair: PairLike) -> np.ndarray:
        """Sorted intersection of the two neighbor lists (never contains i or j)."""
        p = as_pair(pair)
        return np.intersect1d(self.neighbors(p.i), self.neighbors(p.j), assume_unique=True)

    def edge_array(self) -> np.ndarray:
        """All edges as canonical (u < v) rows in lexicographic order."""
        if self._edge_array is None:
            rows = np.repeat(np.arange(self.num_nodes, dtype=np.int64), self._degrees)
            mask = self.indices > rows
            arr = np.column_stack([rows[mask], self.indices[mask].astype(np.int64)])
            arr.setflags(write=False)
            self._edge_array = arr
        return self._edge_array

    def non_neighbors(self, u: int) -> np.ndarray:
        """All nodes v != u with (u, v) not an edge, ascending."""
        self._check_node(u)
        mask = np.ones(self.num_nodes, dtype=bool)
        mask[u] = False
        mask[self.neighbors(u)] = False
        return np.flatnonzero(mask)

    # -- id translation ----------------------------------------------------

    def to_internal(self, label: int) -> int:
        u = label - self.index_offset
        if not 0 <= u < self.num_nodes:
            lo, hi = self.index_offset, self.num_nodes - 1 + self.index_offset
            raise NodeRangeError(f"node id {label} not in graph (valid ids: {lo}..{hi})")
        return u

    def to_original(self, u: int) -> int:
        return u + self.index_offset

    # -- plumbing ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.num_nodes == other.num_nodes
            and self.index_offset == other.index_offset
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Graph(num_nodes={self.num_nodes}, num_edges={self.num_edges})"


def _build_csr(canon_edges: np.ndarray, num_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    if len(canon_edges):
        both = np.concatenate([canon_edges, canon_edges[:, ::-1]])
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        src = both[:, 0]
        indices = both[:, 1].astype(np.int32)
    else:
        src = np.zeros(0, dtype=np.int64)
        indices = np.zeros(0, dtype=np.int32)
    counts = np.bincount(src, minlength=num_nodes) if num_nodes else np.zeros(0, dtype=np.int64)
    indptr = np.zeros(num_nodes + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, indices


def validate_candidate_pair(g: Graph, pair: PairLike) -> NodePair:
    """Check that `pair` is two distinct in-range nodes with no edge between them.

    Scoring functions only accept candidate pairs, i.e. non-edges; an existing
    edge cannot be "added" again.
    """
    p = as_pair(pair)
    g._check_node(p.i)
    g._check_node(p.j)
    if g.has_edge(p.i, p.j):
        raise PairIsEdgeError(
            f"pair is an existing edge: ({g.to_original(p.i)}, {g.to_original(p.j)})"
        )
    return p


# -- edge-list parsing -------------------------------------------------------

_FORMATS = ("auto", "edges", "mtx")


def _is_int(token: str) -> bool:
    try:
        int(token)
    except ValueError:
        return False
    return True


def parse_edge_text(lines: Iterable[str], fmt: str = "auto") -> Graph:
    """Parse edge-list text into a Graph.

    Accepted lines: "u v" or "u v w" (weight ignored), whitespace- or
    comma-separated; lines starting with '%' or '#' are comments. In "auto"
    and "mtx" formats a Matrix Market size header after the comments is
    skipped ("auto" detects one as a first data line of three integer
    tokens). Ids are auto-shifted to 0-based when the file is 1-indexed.
    """
    if fmt not in _FORMATS:
        raise ValueError(f"unknown format {fmt!r} (expected one of {_FORMATS})")
    raw: list[tuple[int, int]] = []
    min_id: int | None = None
    max_id = -1
    saw_zero = False
    header_pending = fmt in ("auto", "mtx")
    saw_data = False
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if not s or s[0] in _COMMENT_CHARS:
            continue
        tokens = s.replace(",", " ").split()
        if header_pending:
            header_pending = False
            if fmt == "mtx":
                continue
            if len(tokens) == 3 and all(_is_int(t) for t in tokens):
                continue  # MTX size header: rows cols nnz
        saw_data = True
        if len(tokens) not in (2, 3):
            raise GraphParseError(
                f"line {lineno}: expected 'u v' (optional weight), got {len(tokens)} tokens"
            )
        try:
            u = int(tokens[0])
            v = int(tokens[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: malformed node id in {s!r}") from None
        if len(tokens) == 3 and not _is_float(tokens[2]):
            raise GraphParseError(f"line {lineno}: malformed weight token {tokens[2]!r}")
        if u < 0 or v < 0:
            raise GraphParseError(f"line {lineno}: negative node id in {s!r}")
        raw.append((u, v))
        lo = min(u, v)
        min_id = lo if min_id is None else min(min_id, lo)
        max_id = max(max_id, u, v)
        saw_zero = saw_zero or u == 0 or v == 0
    if not saw_data:
        raise GraphParseError("empty input: no edge lines found")
    offset = 1 if (min_id == 1 and not saw_zero) else 0
    arr = np.asarray(raw, dtype=np.int64) - offset
    g = Graph.from_edges(arr, max_id + 1 - offset, index_offset=offset)
    if g.self_loops_dropped or g.duplicate_edges_dropped:
        log.warning(
            "dropped %d self-loop(s) and %d duplicate edge(s) while loading",
            g.self_loops_dropped,
            g.duplicate_edges_dropped,
        )
    return g


def _is_float(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def load_graph(source: Union[str, Path, IO], fmt: str = "auto") -> Graph:
    """Load a graph from a path or an open text/byte stream."""
    if isinstance(source, (str, Path)):
        text = Path(source).read_text()
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    return parse_edge_text(text.splitlines(), fmt)
