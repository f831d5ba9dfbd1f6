"""Multi-level modularity optimisation (Louvain)."""
from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix

from .. import _kernels
from ..graph import Graph
from ..partition import Partition, canonical_labels
from .core import modularity

GAIN_TOL = 1e-12


def louvain_levels(g: Graph, seed: int = 0, tol: float = GAIN_TOL) -> list[tuple[Partition, float]]:
    """Run Louvain and return ``(partition, Q)`` after every aggregation level.

    Each level shuffles the node order once with ``seed`` and repeats local
    moving until no move gains more than ``tol``; the communities are then
    folded into weighted super-nodes (internal edges become self-loops).
    Stops when a level moves nothing or fails to raise Q.
    """
    if g.m == 0:
        raise ValueError("Louvain needs at least one edge")
    rng = np.random.default_rng(seed)
    adj = g.to_scipy()
    m2 = float(adj.sum())
    flat = np.arange(g.n, dtype=np.int64)
    levels = []
    while True:
        nl = adj.shape[0]
        indptr = adj.indptr.astype(np.int64)
        indices = adj.indices.astype(np.int64)
        weights = adj.data.astype(np.float64)
        k = np.asarray(adj.sum(axis=1), dtype=np.float64).ravel()
        comm = np.arange(nl, dtype=np.int64)
        tot = k.copy()
        order = rng.permutation(nl).astype(np.int64)
        moves = _kernels.louvain_local_moves(indptr, indices, weights, k, comm, tot,
                                             order, m2, tol)
        if moves == 0:
            break
        comm = canonical_labels(comm)
        candidate = comm[flat]
        q = modularity(g, Partition(candidate))
        if levels and q <= levels[-1][1] + tol:
            break
        flat = candidate
        levels.append((Partition(flat), q))
        kc = int(comm.max()) + 1
        fold = csr_matrix((np.ones(nl), (np.arange(nl), comm)), shape=(nl, kc))
        adj = (fold.T @ adj @ fold).tocsr()
        adj.sort_indices()
    if not levels:
        part = Partition(flat)
        levels.append((part, modularity(g, part)))
    return levels


def louvain(g: Graph, seed: int = 0) -> Partition:
    return louvain_levels(g, seed)[-1][0]
