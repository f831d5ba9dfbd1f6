"""Erdős–Rényi, Watts–Strogatz and Barabási–Albert graphs, and a power-law fit.

Randomness comes from ``numpy.random.Generator(PCG64(seed))``; PCG64's
stream is fixed by numpy across platforms, so a seed pins the graph.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import zeta

from .graph import Graph, from_edges

MODELS = ("er", "ws", "ba")


@dataclass(frozen=True)
class GeneratorSpec:
    model: str
    n: int
    p: float = 0.0
    k: int = 0
    m_attach: int = 0
    seed: int = 0

    def validate(self) -> "GeneratorSpec":
        model = self.model.lower()
        if model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"probability p={self.p} outside [0, 1]")
        if model == "ws" and (self.k % 2 or self.k < 2 or self.k >= self.n):
            raise ValueError(f"Watts-Strogatz needs an even k with 2 <= k < n, got k={self.k}")
        if model == "ba" and not 1 <= self.m_attach < self.n:
            raise ValueError(f"Barabasi-Albert needs 1 <= m_attach < n, got {self.m_attach}")
        return self

    def to_dict(self) -> dict:
        return asdict(self)


def _rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def generate_er(spec: GeneratorSpec) -> Graph:
    """G(n, p): every unordered pair independently, by geometric skipping."""
    spec.validate()
    n, p = spec.n, spec.p
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return from_edges(n, np.empty((0, 2), dtype=np.int64))
    if p == 1.0:
        pos = np.arange(total, dtype=np.int64)
    else:
        rng = _rng(spec.seed)
        chunk = int(p * total * 1.1) + 64
        parts, last = [], -1
        while last < total:
            gaps = rng.geometric(p, size=chunk)
            steps = last + np.cumsum(gaps)
            parts.append(steps)
            last = int(steps[-1])
        pos = np.concatenate(parts)
        pos = pos[pos < total]
    # pair (i, j), i < j, sits at offset[i] + (j - i - 1)
    rows = np.arange(n, dtype=np.int64)
    offset = rows * n - rows * (rows + 1) // 2
    i = np.searchsorted(offset, pos, side="right") - 1
    j = pos - offset[i] + i + 1
    return from_edges(n, np.column_stack([i, j]))


def generate_ws(spec: GeneratorSpec) -> Graph:
    """Ring lattice of degree k, each edge rewired with probability p.

    Lattice edges ``(u, u+j)`` are visited for ``j = 1..k/2`` and each ``u``;
    a rewired edge keeps ``u`` and gets a uniform new endpoint that is not
    ``u`` and not already a neighbour.  If ``u`` is saturated the edge stays.
    """
    spec.validate()
    n, k, p = spec.n, spec.k, spec.p
    rng = _rng(spec.seed)
    adj = [set() for _ in range(n)]
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)
    if p > 0.0:
        for j in range(1, k // 2 + 1):
            for u in range(n):
                if rng.random() >= p:
                    continue
                if len(adj[u]) >= n - 1:
                    continue
                v = (u + j) % n
                w = int(rng.integers(n))
                while w == u or w in adj[u]:
                    w = int(rng.integers(n))
                adj[u].discard(v)
                adj[v].discard(u)
                adj[u].add(w)
                adj[w].add(u)
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return from_edges(n, np.array(edges, dtype=np.int64).reshape(-1, 2))


def generate_ba(spec: GeneratorSpec) -> Graph:
    """Preferential attachment grown from a complete graph on ``m_attach`` nodes.

    Each new node links to ``m_attach`` distinct existing nodes drawn with
    probability proportional to their current degree.
    """
    spec.validate()
    n, m = spec.n, spec.m_attach
    rng = _rng(spec.seed)
    n_edges = m * (m - 1) // 2 + (n - m) * m
    edges = np.empty((n_edges, 2), dtype=np.int64)
    ends = np.empty(2 * n_edges, dtype=np.int64)  # node listed once per incident edge
    ne = 0
    for u in range(m):
        for v in range(u + 1, m):
            edges[ne] = (u, v)
            ends[2 * ne], ends[2 * ne + 1] = u, v
            ne += 1
    for s in range(m, n):
        targets = []
        while len(targets) < m:
            if ne == 0:
                t = int(rng.integers(s))  # degenerate start (m_attach == 1): uniform
            else:
                t = int(ends[rng.integers(2 * ne)])
            if t not in targets:
                targets.append(t)
        for t in targets:
            edges[ne] = (s, t)
            ends[2 * ne], ends[2 * ne + 1] = s, t
            ne += 1
    return from_edges(n, edges)


def generate(spec: GeneratorSpec) -> Graph:
    model = spec.validate().model.lower()
    return {"er": generate_er, "ws": generate_ws, "ba": generate_ba}[model](spec)


@dataclass(frozen=True)
class DegreeFit:
    alpha: float
    xmin: int
    n_tail: int
    method: str = "mle"


MIN_TAIL = 100
ALPHA_BOUNDS = (1.0 + 1e-9, 50.0)


def fit_power_law(degrees, xmin: int = 1, method: str = "mle") -> DegreeFit:
    """Exponent of a discrete power law ``p(d) ~ d^-alpha`` for ``d >= xmin``.

    ``method="mle"`` maximises the exact discrete likelihood
    ``-n ln zeta(alpha, xmin) - alpha sum(ln d_i)``.  ``method="approx"``
    uses the closed form ``1 + n / sum(ln(d_i / (xmin - 1/2)))``, which
    underestimates alpha noticeably when ``xmin`` is small (about 2.74
    instead of 3 at ``xmin = 2``).
    """
    if xmin < 1:
        raise ValueError("xmin must be >= 1")
    d = np.asarray(degrees, dtype=np.float64)
    tail = d[d >= xmin]
    if tail.size < MIN_TAIL:
        raise ValueError(f"only {tail.size} observations >= xmin={xmin}; need {MIN_TAIL}")
    if np.all(tail == tail[0]):
        raise ValueError("degree sequence is constant; exponent is not identifiable")
    approx = 1.0 + tail.size / np.log(tail / (xmin - 0.5)).sum()
    if method == "approx":
        return DegreeFit(float(approx), int(xmin), int(tail.size), method)
    if method != "mle":
        raise ValueError(f"unknown method {method!r}")
    mean_log = float(np.log(tail).mean())
    res = minimize_scalar(lambda a: np.log(zeta(a, xmin)) + a * mean_log,
                          bounds=ALPHA_BOUNDS, method="bounded",
                          options={"xatol": 1e-10})
    return DegreeFit(float(res.x), int(xmin), int(tail.size), method)
