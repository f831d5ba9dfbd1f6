"""Modularity, dendrograms and best-cut selection."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..graph import Graph
from ..partition import Partition

Q_TIE_TOL = 1e-12


def modularity(g: Graph, part: Partition) -> float:
    """Newman modularity under the configuration null model.

    Evaluated as ``sum_c m_c/m - (D_c / 2m)^2`` where ``m_c`` counts edges
    inside community ``c`` and ``D_c`` is its total degree.
    """
    if g.m == 0:
        raise ValueError("modularity is undefined on a graph without edges")
    if part.n != g.n:
        raise ValueError(f"partition covers {part.n} nodes, graph has {g.n}")
    lab = part.assignment
    e = g.edges
    inside = lab[e[:, 0]] == lab[e[:, 1]]
    m_c = np.bincount(lab[e[inside, 0]], minlength=part.k).astype(np.float64)
    d_c = np.bincount(lab, weights=g.degrees.astype(np.float64), minlength=part.k)
    m = float(g.m)
    return float(np.sum(m_c / m - (d_c / (2.0 * m)) ** 2))


@dataclass
class Dendrogram:
    """Sequence of partitions with the modularity of each level.

    Agglomerative detectors record ``merges``: level ``i`` is ``base`` after
    applying the first ``i`` merges, each ``(a, b)`` folding community ``b``
    into ``a``.  Divisive ones record full ``snapshots`` instead.
    """

    q: list[float]
    n_communities: list[int]
    base: np.ndarray | None = None
    merges: list[tuple[int, int]] = field(default_factory=list)
    snapshots: list[np.ndarray] | None = None

    def __len__(self) -> int:
        return len(self.q)

    def partition(self, level: int) -> Partition:
        if not 0 <= level < len(self):
            raise IndexError(f"level {level} out of range 0..{len(self) - 1}")
        if self.snapshots is not None:
            return Partition(self.snapshots[level])
        labels = self.base.copy()
        for a, b in self.merges[:level]:
            labels[labels == b] = a
        return Partition(labels)


def best_cut_level(q, n_communities) -> int:
    q = np.asarray(q, dtype=np.float64)
    if q.size == 0:
        raise ValueError("empty dendrogram")
    top = q.max()
    cands = np.flatnonzero(q >= top - Q_TIE_TOL)
    sizes = np.asarray(n_communities)[cands]
    return int(cands[np.argmin(sizes)])


def best_cut(d: Dendrogram) -> Partition:
    """Level with the highest modularity; ties go to the coarsest level."""
    return d.partition(best_cut_level(d.q, d.n_communities))
