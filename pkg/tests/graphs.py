"""Small named graphs used across the tests."""
import itertools

import networkx as nx
import numpy as np

from commtopo import from_edges


def clique_edges(nodes):
    return list(itertools.combinations(nodes, 2))


def clique(k):
    return from_edges(k, clique_edges(range(k)))


def barbell(k):
    """Two k-cliques joined by the single edge (k-1, k)."""
    e = clique_edges(range(k)) + clique_edges(range(k, 2 * k)) + [(k - 1, k)]
    return from_edges(2 * k, e)


def path(n):
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def ring(n):
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(n):
    return from_edges(n, [(0, i) for i in range(1, n)])


def edgeless(n):
    return from_edges(n, np.empty((0, 2), dtype=np.int64))


def from_nx(h):
    return from_edges(h.number_of_nodes(), list(h.edges()))


def atlas(max_nodes, connected=None):
    """Every graph on 1..max_nodes nodes, one per isomorphism class (max 7)."""
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0 or n > max_nodes:
            continue
        if connected is not None and nx.is_connected(h) != connected:
            continue
        yield from_nx(h)


def set_partitions(n):
    """All partitions of range(n) as label lists (restricted growth strings)."""
    if n == 0:
        yield []
        return

    def grow(prefix, top):
        if len(prefix) == n:
            yield list(prefix)
            return
        for lab in range(top + 2):
            prefix.append(lab)
            yield from grow(prefix, max(top, lab))
            prefix.pop()

    yield from grow([0], 0)


def random_graph(rng, n, p):
    iu = np.triu_indices(n, 1)
    keep = rng.random(iu[0].size) < p
    return from_edges(n, np.column_stack([iu[0][keep], iu[1][keep]]))
