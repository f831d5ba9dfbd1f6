"""Clauset-Newman-Moore greedy modularity agglomeration."""
from __future__ import annotations

import heapq

import numpy as np

from ..graph import Graph
from ..partition import Partition
from .core import Dendrogram, modularity


def fast_greedy(g: Graph) -> Dendrogram:
    """Merge the adjacent pair with the largest modularity gain until none is left.

    Equal gains are resolved in favour of the smallest ``(i, j)`` community
    pair; the merged community keeps the smaller id.  Only communities
    joined by at least one edge are ever merged.
    """
    if g.m == 0:
        raise ValueError("fast greedy needs at least one edge")
    n, m = g.n, float(g.m)
    a = g.degrees / (2.0 * m)
    links = [dict() for _ in range(n)]
    for u, v in g.edges:
        links[u][v] = 1
        links[v][u] = 1
    version = np.zeros(n, dtype=np.int64)
    heap = [(-(1.0 / m - 2.0 * a[u] * a[v]), int(u), int(v), 0, 0) for u, v in g.edges]
    heapq.heapify(heap)

    base = np.arange(n, dtype=np.int64)
    q_now = modularity(g, Partition(base))
    q = [q_now]
    n_comm = [n]
    merges = []
    while heap:
        neg, i, j, vi, vj = heapq.heappop(heap)
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
        q_now += l_ij / m - 2.0 * a[i] * a[j]
        a[i] += a[j]
        version[i] += 1
        merges.append((i, j))
        q.append(q_now)
        n_comm.append(n_comm[-1] - 1)
        for k, l in links[i].items():
            lo, hi = (i, k) if i < k else (k, i)
            heapq.heappush(heap, (-(l / m - 2.0 * a[i] * a[k]), lo, hi,
                                  int(version[lo]), int(version[hi])))
    return Dendrogram(q=q, n_communities=n_comm, base=base, merges=merges)
