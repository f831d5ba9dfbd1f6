"""Hot loops over CSR arrays.

Every function here sticks to the numba nopython subset and takes plain
numpy arrays.  Randomness is drawn by the callers (``numpy.random.Generator``)
and passed in, so the JIT and the interpreted path produce identical output.
"""
import numpy as np

from ._jit import jit


@jit
def edge_betweenness(indptr, indices, eids, alive, sources, n_edges):
    """Brandes accumulation of shortest-path dependencies onto edges.

    Sums over the given sources only; for an undirected graph the caller
    halves the result when ``sources`` covers both ends of every pair.
    """
    n = indptr.size - 1
    eb = np.zeros(n_edges)
    dist = np.full(n, -1, dtype=np.int64)
    sigma = np.zeros(n)
    delta = np.zeros(n)
    order = np.empty(n, dtype=np.int64)
    for s in sources:
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = order[head]
            head += 1
            for p in range(indptr[v], indptr[v + 1]):
                if not alive[eids[p]]:
                    continue
                w = indices[p]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
        for idx in range(tail - 1, 0, -1):
            w = order[idx]
            coeff = (1.0 + delta[w]) / sigma[w]
            for p in range(indptr[w], indptr[w + 1]):
                if not alive[eids[p]]:
                    continue
                v = indices[p]
                if dist[v] == dist[w] - 1:
                    c = sigma[v] * coeff
                    eb[eids[p]] += c
                    delta[v] += c
        for idx in range(tail):
            v = order[idx]
            dist[v] = -1
            sigma[v] = 0.0
            delta[v] = 0.0
    return eb


@jit
def reachable(indptr, indices, eids, alive, start, mark):
    """Flag in ``mark`` every node reachable from ``start`` over alive edges."""
    stack = np.empty(indptr.size - 1, dtype=np.int64)
    stack[0] = start
    mark[start] = True
    top = 1
    while top > 0:
        top -= 1
        v = stack[top]
        for p in range(indptr[v], indptr[v + 1]):
            if alive[eids[p]]:
                w = indices[p]
                if not mark[w]:
                    mark[w] = True
                    stack[top] = w
                    top += 1


@jit
def internal_structure(indptr, indices, labels):
    """Per-node internal degree and internal triangle count.

    An edge or triangle is internal when all its endpoints share a label.
    Triangles are enumerated once (u < v < w) by merging sorted neighbour
    lists.
    """
    n = indptr.size - 1
    d_int = np.zeros(n, dtype=np.int64)
    tri = np.zeros(n, dtype=np.int64)
    for u in range(n):
        lu = labels[u]
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            if labels[v] != lu:
                continue
            d_int[u] += 1
            if v <= u:
                continue
            a = p + 1
            b = indptr[v]
            a_end = indptr[u + 1]
            b_end = indptr[v + 1]
            while a < a_end and b < b_end:
                x = indices[a]
                y = indices[b]
                if x < y:
                    a += 1
                elif y < x:
                    b += 1
                else:
                    if x > v and labels[x] == lu:
                        tri[u] += 1
                        tri[v] += 1
                        tri[x] += 1
                    a += 1
                    b += 1
    return d_int, tri


@jit
def lpa_sweep(indptr, indices, labels, order, draws, counts):
    """One asynchronous label-propagation sweep; returns how many labels changed.

    ``counts`` is a zeroed scratch array of length n and is left zeroed.
    A node whose label is already among its most frequent neighbour labels
    keeps it; otherwise ties are broken by ``draws``.
    """
    changed = 0
    cand = np.empty(indptr.size, dtype=np.int64)
    for t in range(order.size):
        i = order[t]
        lo = indptr[i]
        hi = indptr[i + 1]
        if lo == hi:
            continue
        best = 0
        for p in range(lo, hi):
            lab = labels[indices[p]]
            counts[lab] += 1
            if counts[lab] > best:
                best = counts[lab]
        keep = counts[labels[i]] == best
        nc = 0
        for p in range(lo, hi):
            lab = labels[indices[p]]
            if counts[lab] == best:
                cand[nc] = lab
                nc += 1
                counts[lab] = -1
        for p in range(lo, hi):
            counts[labels[indices[p]]] = 0
        if keep:
            continue
        cs = np.sort(cand[:nc])
        pick = cs[min(int(draws[t] * nc), nc - 1)]
        if pick != labels[i]:
            labels[i] = pick
            changed += 1
    return changed


@jit
def lpa_converged(indptr, indices, labels, counts):
    """True when every node already holds one of its most frequent neighbour labels."""
    n = indptr.size - 1
    for i in range(n):
        lo = indptr[i]
        hi = indptr[i + 1]
        if lo == hi:
            continue
        best = 0
        for p in range(lo, hi):
            lab = labels[indices[p]]
            counts[lab] += 1
            if counts[lab] > best:
                best = counts[lab]
        own = counts[labels[i]]
        for p in range(lo, hi):
            counts[labels[indices[p]]] = 0
        counts[labels[i]] = 0
        if own != best:
            return False
    return True


@jit
def louvain_local_moves(indptr, indices, weights, k, comm, tot, order, m2, tol):
    """Louvain phase one on a weighted graph (self-loops allowed).

    Sweeps ``order`` repeatedly, moving each node to the neighbouring
    community with the largest modularity gain, until a full sweep makes no
    move whose gain exceeds ``tol``.  Updates ``comm`` and ``tot`` in place
    and returns the number of moves.
    """
    n = k.size
    wsum = np.zeros(n)
    seen = np.zeros(n, dtype=np.bool_)
    touched = np.empty(n, dtype=np.int64)
    half = m2 / 2.0
    moves = 0
    improved = True
    while improved:
        improved = False
        for t in range(n):
            i = order[t]
            ci = comm[i]
            ki = k[i]
            nt = 0
            for p in range(indptr[i], indptr[i + 1]):
                j = indices[p]
                if j == i:
                    continue
                c = comm[j]
                if not seen[c]:
                    seen[c] = True
                    touched[nt] = c
                    nt += 1
                wsum[c] += weights[p]
            tot[ci] -= ki
            best_c = ci
            best_gain = wsum[ci] - tot[ci] * ki / m2
            for q in range(nt):
                c = touched[q]
                gain = wsum[c] - tot[c] * ki / m2
                if (gain - best_gain) / half > tol:
                    best_c = c
                    best_gain = gain
            tot[best_c] += ki
            if best_c != ci:
                comm[i] = best_c
                moves += 1
                improved = True
            for q in range(nt):
                c = touched[q]
                seen[c] = False
                wsum[c] = 0.0
    return moves
