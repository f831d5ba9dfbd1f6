"""Undirected simple graphs in CSR form, edge-list I/O and community views."""
from __future__ import annotations

import io
import logging
import os
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .partition import Partition

log = logging.getLogger(__name__)

COMMENT_PREFIXES = ("#", "%")


class EdgeListError(ValueError):
    """Malformed edge-list input."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass
class LoadReport:
    lines: int = 0
    edges_read: int = 0
    self_loops: int = 0
    duplicates: int = 0
    extra_columns: int = 0


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph.

    ``indices[indptr[u]:indptr[u+1]]`` are the neighbours of ``u`` in
    increasing order.  ``edges`` lists every edge once as ``(u, v)`` with
    ``u < v``, sorted lexicographically; edge ids index into it.
    """

    indptr: np.ndarray
    indices: np.ndarray
    original_ids: tuple
    report: LoadReport | None = field(default=None, compare=False)

    def __post_init__(self):
        for arr in (self.indptr, self.indices):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.indptr.size - 1

    @property
    def m(self) -> int:
        return self.indices.size // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    @property
    def adjacency(self) -> list[np.ndarray]:
        return [self.neighbors(u) for u in range(self.n)]

    @property
    def edges(self) -> np.ndarray:
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def edge_ids(self) -> np.ndarray:
        """Edge id of every CSR slot (both directions share one id)."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        lo = np.minimum(src, self.indices)
        hi = np.maximum(src, self.indices)
        key = lo * self.n + hi
        fwd = src < self.indices
        order = np.sort(key[fwd])
        return np.searchsorted(order, key).astype(np.int64)

    def to_scipy(self) -> csr_matrix:
        data = np.ones(self.indices.size, dtype=np.float64)
        return csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def same_structure(self, other: "Graph") -> bool:
        return (np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def subgraph(self, members) -> tuple["Graph", np.ndarray]:
        """Induced subgraph; returns it with the member ids it was built from."""
        members = np.unique(np.asarray(members, dtype=np.int64))
        local = np.full(self.n, -1, dtype=np.int64)
        local[members] = np.arange(members.size)
        e = self.edges
        keep = (local[e[:, 0]] >= 0) & (local[e[:, 1]] >= 0)
        sub = from_edges(members.size, local[e[keep]],
                         original_ids=[self.original_ids[i] for i in members])
        return sub, members


def from_edges(n: int, edges, original_ids=None) -> Graph:
    """Build a Graph on nodes 0..n-1, dropping self-loops and duplicate edges."""
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if e.size and (e.min() < 0 or e.max() >= n):
        raise ValueError("edge endpoint out of range")
    e = e[e[:, 0] != e[:, 1]]
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    key = np.unique(lo * max(n, 1) + hi)
    lo, hi = key // max(n, 1), key % max(n, 1)
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    if original_ids is None:
        original_ids = tuple(str(i) for i in range(n))
    return Graph(indptr, dst.astype(np.int64), tuple(original_ids))


def _label_order(labels):
    try:
        return sorted(labels, key=int)
    except ValueError:
        return sorted(labels)


def _open_text(source):
    if isinstance(source, (str, os.PathLike)):
        return open(source, encoding="utf-8"), True
    return source, False


def load_edge_list(source, *, allow_extra_columns: bool = True) -> Graph:
    """Parse a whitespace separated edge list (SNAP / KONECT style).

    Lines starting with ``#`` or ``%`` and blank lines are skipped.  Columns
    after the first two (weights, timestamps) are ignored and counted in the
    report when ``allow_extra_columns`` is set, otherwise they are an error.
    Integer labels are ordered numerically, anything else lexicographically.
    """
    fh, close = _open_text(source)
    report = LoadReport()
    pairs = []
    try:
        for lineno, line in enumerate(fh, 1):
            report.lines += 1
            s = line.strip()
            if not s or s.startswith(COMMENT_PREFIXES):
                continue
            tok = s.split()
            if len(tok) < 2 or (len(tok) > 2 and not allow_extra_columns):
                raise EdgeListError(f"expected 2 node labels, got {len(tok)} tokens", lineno)
            if len(tok) > 2:
                report.extra_columns += 1
            pairs.append((tok[0], tok[1]))
    finally:
        if close:
            fh.close()
    if not pairs:
        raise EdgeListError("edge list is empty")

    labels = _label_order({a for p in pairs for a in p})
    index = {lab: i for i, lab in enumerate(labels)}
    e = np.array([(index[a], index[b]) for a, b in pairs], dtype=np.int64)
    report.edges_read = len(pairs)
    loops = e[:, 0] == e[:, 1]
    report.self_loops = int(loops.sum())
    g = from_edges(len(labels), e, original_ids=labels)
    report.duplicates = int(report.edges_read - report.self_loops - g.m)
    if report.extra_columns:
        log.warning("ignored extra columns (weights?) on %d lines", report.extra_columns)
    if report.self_loops or report.duplicates:
        log.info("dropped %d self-loops and %d duplicate edges",
                 report.self_loops, report.duplicates)
    return Graph(g.indptr, g.indices, g.original_ids, report)


def parse_edge_list(text: str, **kwargs) -> Graph:
    return load_edge_list(io.StringIO(text), **kwargs)


def write_edge_list(g: Graph, sink) -> None:
    """Write one ``u v`` line per edge using the original labels."""
    fh, close = (open(sink, "w", encoding="utf-8"), True) \
        if isinstance(sink, (str, os.PathLike)) else (sink, False)
    try:
        ids = g.original_ids
        for u, v in g.edges:
            fh.write(f"{ids[u]} {ids[v]}\n")
    finally:
        if close:
            fh.close()


def edge_list_text(g: Graph) -> str:
    buf = io.StringIO()
    write_edge_list(g, buf)
    return buf.getvalue()


@dataclass(frozen=True, eq=False)
class CommunityView:
    """Boundary bookkeeping of one node set.

    ``d_int``, ``d_ext`` and ``degree`` are aligned with ``nodes``.
    """

    nodes: np.ndarray
    m_S: int
    c_S: int
    d_int: np.ndarray
    d_ext: np.ndarray
    degree: np.ndarray

    @property
    def n_S(self) -> int:
        return int(self.nodes.size)


def community_view(g: Graph, members) -> CommunityView:
    nodes = np.unique(np.asarray(list(members) if not isinstance(members, np.ndarray)
                                 else members, dtype=np.int64))
    if nodes.size == 0:
        raise ValueError("community is empty")
    if nodes[0] < 0 or nodes[-1] >= g.n:
        raise ValueError(f"member out of range 0..{g.n - 1}")
    inside = np.zeros(g.n, dtype=bool)
    inside[nodes] = True
    deg = g.degrees[nodes]
    d_int = np.array([inside[g.neighbors(u)].sum() for u in nodes], dtype=np.int64)
    d_ext = deg - d_int
    return CommunityView(nodes, int(d_int.sum()) // 2, int(d_ext.sum()), d_int, d_ext, deg)


def connected_components(g: Graph) -> Partition:
    """One community per connected component, numbered in discovery order."""
    _, labels = _cc(g.to_scipy(), directed=False)
    return Partition(labels)
