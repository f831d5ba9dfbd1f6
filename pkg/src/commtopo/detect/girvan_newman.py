"""Divisive clustering by repeated removal of the highest-betweenness edge."""
from __future__ import annotations

import numpy as np

from .. import _kernels
from ..graph import Graph, connected_components
from ..partition import Partition
from .core import Dendrogram, modularity

# relative slack when deciding that two betweenness values tie
BETWEENNESS_TIE_RTOL = 1e-9


def edge_betweenness(g: Graph, alive=None) -> np.ndarray:
    """Exact edge betweenness (unordered pairs), indexed like ``g.edges``."""
    if alive is None:
        alive = np.ones(g.m, dtype=np.bool_)
    sources = np.arange(g.n, dtype=np.int64)
    eb = _kernels.edge_betweenness(g.indptr, g.indices, g.edge_ids(), alive, sources, g.m)
    return eb / 2.0


def _pick_edge(eb, alive):
    scores = np.where(alive, eb, -np.inf)
    top = scores.max()
    ties = np.flatnonzero(scores >= top - BETWEENNESS_TIE_RTOL * max(1.0, abs(top)))
    return int(ties[0])


def girvan_newman(g: Graph, max_levels: int | None = None) -> Dendrogram:
    """Remove max-betweenness edges, snapshotting each time a component splits.

    Level 0 is the connected-component partition of ``g``.  Ties between
    edges go to the lexicographically smallest ``(u, v)``.  Betweenness is
    only recomputed inside the component that lost an edge.
    """
    if g.m == 0:
        raise ValueError("Girvan-Newman needs at least one edge")
    eids = g.edge_ids()
    edges = g.edges
    alive = np.ones(g.m, dtype=np.bool_)
    comp = connected_components(g).assignment.copy()
    n_comp = int(comp.max()) + 1

    snapshots = [comp.copy()]
    q = [modularity(g, Partition(comp))]
    eb = _kernels.edge_betweenness(g.indptr, g.indices, eids, alive,
                                   np.arange(g.n, dtype=np.int64), g.m) / 2.0
    mark = np.zeros(g.n, dtype=np.bool_)
    while alive.any():
        if max_levels is not None and len(snapshots) >= max_levels:
            break
        e = _pick_edge(eb, alive)
        alive[e] = False
        u, v = edges[e]
        old = comp[u]
        members = np.flatnonzero(comp == old)
        mark[:] = False
        _kernels.reachable(g.indptr, g.indices, eids, alive, u, mark)
        if not mark[v]:
            comp[members[~mark[members]]] = n_comp
            n_comp += 1
            snapshots.append(comp.copy())
            q.append(modularity(g, Partition(comp)))
        in_comp = (comp[edges[:, 0]] == comp[u]) | (comp[edges[:, 0]] == comp[v])
        local = _kernels.edge_betweenness(g.indptr, g.indices, eids, alive, members, g.m) / 2.0
        eb[in_comp] = local[in_comp]
        eb[e] = 0.0
    return Dendrogram(q=q, n_communities=[int(s.max()) + 1 for s in snapshots],
                      snapshots=snapshots)
