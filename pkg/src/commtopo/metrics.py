"""Structural quality metrics of individual communities.

All metrics use only the community and its boundary: internal edge
density, hub structure, triadic closure and external connectivity.
Metrics that cannot be evaluated (too few nodes, no connected triple, no
incident edges) are ``None``, never 0.
"""
from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, fields

import numpy as np

from . import _kernels
from .graph import CommunityView, Graph, community_view
from .partition import Partition

METRIC_NAMES = ("density", "sc_den", "hub_dom", "ccf", "tpr",
                "expansion", "conductance", "mean_odf", "max_odf")
CSV_COLUMNS = ("community_id", "size") + METRIC_NAMES


@dataclass(frozen=True)
class MetricRecord:
    community_id: int
    size: int
    density: float | None
    sc_den: float | None
    hub_dom: float | None
    ccf: float | None
    tpr: float
    expansion: float
    conductance: float | None
    mean_odf: float
    max_odf: float

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def density(v: CommunityView):
    if v.n_S < 2:
        return None
    return v.m_S / (v.n_S * (v.n_S - 1) / 2.0)


def scaled_density(v: CommunityView):
    if v.n_S < 2:
        return None
    return 2.0 * v.m_S / (v.n_S - 1)


def hub_dominance(v: CommunityView):
    if v.n_S < 2:
        return None
    return float(v.d_int.max()) / (v.n_S - 1)


def _member_triangles(v: CommunityView, g: Graph) -> np.ndarray:
    labels = np.arange(1, g.n + 1, dtype=np.int64)  # non-members never share a label
    labels[v.nodes] = 0
    _, tri = _kernels.internal_structure(g.indptr, g.indices, labels)
    return tri[v.nodes]


def _ccf(triangles_total: int, d_int: np.ndarray):
    triples = int(np.sum(d_int * (d_int - 1) // 2))
    if triples == 0:
        return None
    return 3.0 * triangles_total / triples


def clustering_coefficient(v: CommunityView, g: Graph):
    """3 x internal triangles / connected triples, on internal edges only."""
    tri = _member_triangles(v, g)
    return _ccf(int(tri.sum()) // 3, v.d_int)


def triangle_participation(v: CommunityView, g: Graph) -> float:
    return float(np.count_nonzero(_member_triangles(v, g))) / v.n_S


def expansion(v: CommunityView) -> float:
    return v.c_S / v.n_S


def conductance(v: CommunityView):
    vol = 2 * v.m_S + v.c_S
    if vol == 0:
        return None
    return v.c_S / vol


def _odf(d_ext, deg) -> np.ndarray:
    # a node without edges has no outward share
    return np.divide(d_ext, deg, out=np.zeros(deg.size), where=deg > 0)


def mean_odf(v: CommunityView, g: Graph | None = None) -> float:
    return float(_odf(v.d_ext, v.degree).mean())


def max_odf(v: CommunityView, g: Graph | None = None) -> float:
    return float(_odf(v.d_ext, v.degree).max())


def score_community(g: Graph, members, community_id: int = 0) -> MetricRecord:
    v = community_view(g, members)
    tri = _member_triangles(v, g)
    return _record(community_id, v, tri)


def _record(cid, v: CommunityView, tri) -> MetricRecord:
    odf = _odf(v.d_ext, v.degree)
    return MetricRecord(
        community_id=int(cid),
        size=v.n_S,
        density=density(v),
        sc_den=scaled_density(v),
        hub_dom=hub_dominance(v),
        ccf=_ccf(int(tri.sum()) // 3, v.d_int),
        tpr=float(np.count_nonzero(tri)) / v.n_S,
        expansion=expansion(v),
        conductance=conductance(v),
        mean_odf=float(odf.mean()),
        max_odf=float(odf.max()),
    )


def score_partition(g: Graph, part: Partition, min_size: int = 3) -> list[MetricRecord]:
    """One record per community with at least ``min_size`` members."""
    if min_size < 1:
        raise ValueError("min_size must be >= 1")
    if part.n != g.n:
        raise ValueError(f"partition covers {part.n} nodes, graph has {g.n}")
    labels = part.assignment
    d_int, tri = _kernels.internal_structure(g.indptr, g.indices, labels)
    deg = g.degrees
    out = []
    for cid, nodes in enumerate(part.communities):
        if nodes.size < min_size:
            continue
        di = d_int[nodes]
        v = CommunityView(nodes, int(di.sum()) // 2, int((deg[nodes] - di).sum()),
                          di, deg[nodes] - di, deg[nodes])
        out.append(_record(cid, v, tri[nodes]))
    return out


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def records_to_csv(records, sink=None):
    """CSV with ``CSV_COLUMNS`` header; ``None`` becomes an empty field."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([_fmt(x) for x in astuple(r)])
    text = buf.getvalue()
    if sink is None:
        return text
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return None


def records_from_csv(source) -> list[MetricRecord]:
    fh = open(source, encoding="utf-8") if not hasattr(source, "read") else source
    try:
        rows = list(csv.DictReader(fh))
    finally:
        if fh is not source:
            fh.close()
    out = []
    for row in rows:
        vals = {}
        for name in CSV_COLUMNS:
            s = row[name]
            if name in ("community_id", "size"):
                vals[name] = int(s)
            else:
                vals[name] = float(s) if s != "" else None
        out.append(MetricRecord(**vals))
    return out
