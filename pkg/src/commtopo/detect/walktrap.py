"""Walktrap: agglomerative clustering on random-walk distances."""
from __future__ import annotations

import heapq

import numpy as np
from scipy.sparse import diags, identity

from ..graph import Graph, connected_components
from ..partition import Partition
from .core import Dendrogram, modularity

DEFAULT_WALK_LENGTH = 4


def walk_profiles(g: Graph, t: int = DEFAULT_WALK_LENGTH) -> np.ndarray:
    """Rows ``D^{-1/2} P^t_{i.}`` so that ``r_ij = ||row_i - row_j||``.

    Every node gets a self-loop before building ``P = D^{-1} A``, as in the
    original method; this keeps the walk aperiodic.
    """
    if t < 1:
        raise ValueError("walk length t must be >= 1")
    adj = g.to_scipy() + identity(g.n, format="csr")
    deg = np.asarray(adj.sum(axis=1)).ravel()
    trans = (diags(1.0 / deg) @ adj).tocsr()
    walk = trans.toarray()
    for _ in range(t - 1):
        walk = trans @ walk
    # rows of trans @ walk are P^t rows since P^t = P @ P^(t-1)
    return walk / np.sqrt(deg)[None, :]


def walk_distance_sq(g: Graph, t: int = DEFAULT_WALK_LENGTH) -> np.ndarray:
    """Matrix of squared walk distances ``r_ij^2``."""
    prof = walk_profiles(g, t)
    sq = (prof ** 2).sum(axis=1)
    r2 = sq[:, None] + sq[None, :] - 2.0 * prof @ prof.T
    return np.maximum(r2, 0.0)


def walktrap(g: Graph, t: int = DEFAULT_WALK_LENGTH, seed=None) -> Dendrogram:
    """Merge adjacent communities by smallest increase of within-class walk variance.

    The merge cost of communities ``C1, C2`` is
    ``|C1||C2| / (|C1|+|C2|) * r^2(C1, C2) / n`` where community profiles
    are member averages.  Profiles are computed per connected component.
    The walk is deterministic; ``seed`` is accepted for interface symmetry
    and ignored.  Equal costs merge the smallest ``(i, j)`` pair first.
    """
    if t < 1:
        raise ValueError("walk length t must be >= 1")
    if g.m == 0:
        raise ValueError("Walktrap needs at least one edge")
    n, m = g.n, float(g.m)
    prof = [None] * n
    for members in connected_components(g).communities:
        sub, ids = g.subgraph(members)
        rows = walk_profiles(sub, t) if sub.m else np.ones((1, 1))
        for local, node in enumerate(ids):
            prof[node] = rows[local]

    size = np.ones(n, dtype=np.int64)
    a = g.degrees / (2.0 * m)
    links = [dict() for _ in range(n)]
    for u, v in g.edges:
        links[u][v] = 1
        links[v][u] = 1
    version = np.zeros(n, dtype=np.int64)

    def cost(i, j):
        diff = prof[i] - prof[j]
        return size[i] * size[j] / (size[i] + size[j]) * float(diff @ diff) / n

    heap = [(cost(u, v), int(u), int(v), 0, 0) for u, v in g.edges]
    heapq.heapify(heap)
    base = np.arange(n, dtype=np.int64)
    q_now = modularity(g, Partition(base))
    q = [q_now]
    n_comm = [n]
    merges = []
    while heap:
        _, i, j, vi, vj = heapq.heappop(heap)
        if links[i] is None or links[j] is None or version[i] != vi or version[j] != vj:
            continue
        l_ij = links[i].pop(j)
        for k, l in links[j].items():
            if k == i:
                continue
            links[i][k] = links[i].get(k, 0) + l
            nb = links[k]
            del nb[j]
            nb[i] = nb.get(i, 0) + l
        links[j] = None
        prof[i] = (size[i] * prof[i] + size[j] * prof[j]) / (size[i] + size[j])
        prof[j] = None
        size[i] += size[j]
        q_now += l_ij / m - 2.0 * a[i] * a[j]
        a[i] += a[j]
        version[i] += 1
        merges.append((i, j))
        q.append(q_now)
        n_comm.append(n_comm[-1] - 1)
        for k in links[i]:
            lo, hi = (i, k) if i < k else (k, i)
            heapq.heappush(heap, (cost(lo, hi), lo, hi, int(version[lo]), int(version[hi])))
    return Dendrogram(q=q, n_communities=n_comm, base=base, merges=merges)
