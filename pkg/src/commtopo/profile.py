"""Correlation analysis and the transitivity x hub-dominance map."""
from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.special import betainc

from .detect import detect
from .generators import GeneratorSpec, generate
from .metrics import METRIC_NAMES, MetricRecord, score_partition

CORRELATION_COLUMNS = ("size",) + METRIC_NAMES
DEFAULT_MASK_THRESHOLD = 0.01
DEFAULT_THRESHOLDS = (0.4, 0.5)  # (ccf, hub_dom); values equal to a threshold count as high
DEFAULT_BINS = 20
DEFAULT_SCALE_SPLIT = 10
SCALES = ("micro", "macro")

# Metrics that move together on real networks, with the structural trait they share.
METRIC_GROUPS = {
    "external activeness": ("max_odf", "mean_odf", "conductance"),
    "external connectivity": ("expansion",),
    "centralized connectivity": ("hub_dom",),
    "internal edge density": ("density",),
    "average internal density": ("sc_den",),
    "internal triadic closure": ("ccf", "tpr"),
}


class TopologyLabel(str, enum.Enum):
    STRING_BASED = "STRING_BASED"
    GRID_BASED = "GRID_BASED"
    STAR_BASED = "STAR_BASED"
    CLIQUE_BASED = "CLIQUE_BASED"
    UNCLASSIFIED = "UNCLASSIFIED"

    def __str__(self):
        return self.value


LABEL_ORDER = tuple(TopologyLabel)


def _defined(x) -> bool:
    return x is not None and not (isinstance(x, float) and math.isnan(x))


def pearson(x, y) -> tuple[float | None, float | None]:
    """Pearson r with a two-sided t-test p-value, dropping incomplete pairs.

    Returns ``(None, None)`` when either series is constant.
    """
    if len(x) != len(y):
        raise ValueError("series differ in length")
    pairs = [(float(a), float(b)) for a, b in zip(x, y) if _defined(a) and _defined(b)]
    if len(pairs) < 3:
        raise ValueError(f"need at least 3 complete pairs, got {len(pairs)}")
    xy = np.array(pairs)
    if np.ptp(xy[:, 0]) == 0.0 or np.ptp(xy[:, 1]) == 0.0:
        return None, None
    dx = xy[:, 0] - xy[:, 0].mean()
    dy = xy[:, 1] - xy[:, 1].mean()
    sxx, syy = float(dx @ dx), float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        return None, None
    r = float(np.clip((dx @ dy) / math.sqrt(sxx * syy), -1.0, 1.0))
    return r, _p_value(r, len(pairs))


def _p_value(r: float, n: int) -> float:
    df = n - 2
    if df <= 0 or abs(r) >= 1.0:
        return 0.0 if abs(r) >= 1.0 else 1.0
    t2 = r * r * df / (1.0 - r * r)
    return float(betainc(df / 2.0, 0.5, df / (df + t2)))


@dataclass
class CorrelationMatrix:
    metric_names: tuple
    r: np.ndarray
    p: np.ndarray
    n_obs: np.ndarray
    mask_threshold: float = DEFAULT_MASK_THRESHOLD

    @property
    def masked(self) -> np.ndarray:
        """True where the coefficient is undefined or not significant."""
        return np.isnan(self.r) | ~(self.p <= self.mask_threshold)

    def get(self, a: str, b: str) -> tuple[float, float]:
        i, j = self.metric_names.index(a), self.metric_names.index(b)
        return float(self.r[i, j]), float(self.p[i, j])


def _column(records, name):
    return [getattr(rec, name) for rec in records]


def correlation_matrix(records, mask_threshold: float = DEFAULT_MASK_THRESHOLD,
                       columns=CORRELATION_COLUMNS) -> CorrelationMatrix:
    records = list(records)
    if len(records) < 3:
        raise ValueError(f"need at least 3 communities, got {len(records)}")
    cols = [_column(records, c) for c in columns]
    k = len(columns)
    r = np.full((k, k), np.nan)
    p = np.full((k, k), np.nan)
    n_obs = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(i, k):
            n_ij = sum(1 for a, b in zip(cols[i], cols[j]) if _defined(a) and _defined(b))
            n_obs[i, j] = n_obs[j, i] = n_ij
            if n_ij < 3:
                continue
            if i == j:
                varies = len({v for v in cols[i] if _defined(v)}) > 1
                rij, pij = (1.0, 0.0) if varies else (None, None)
            else:
                rij, pij = pearson(cols[i], cols[j])
            if rij is not None:
                r[i, j] = r[j, i] = rij
                p[i, j] = p[j, i] = pij
    return CorrelationMatrix(tuple(columns), r, p, n_obs, mask_threshold)


def classify_topology(ccf, hub_dom, thresholds=DEFAULT_THRESHOLDS) -> TopologyLabel:
    """Quadrant of the (transitivity, hub dominance) square."""
    if not (_defined(ccf) and _defined(hub_dom)):
        return TopologyLabel.UNCLASSIFIED
    for name, val in (("ccf", ccf), ("hub_dom", hub_dom)):
        if not 0.0 <= val <= 1.0:
            raise ValueError(f"{name}={val} outside [0, 1]")
    tau_ccf, tau_hub = thresholds
    high_t = ccf >= tau_ccf
    high_h = hub_dom >= tau_hub
    if high_h:
        return TopologyLabel.CLIQUE_BASED if high_t else TopologyLabel.STAR_BASED
    return TopologyLabel.GRID_BASED if high_t else TopologyLabel.STRING_BASED


def scale_of(size: int, scale_split: int = DEFAULT_SCALE_SPLIT) -> str:
    return "micro" if size <= scale_split else "macro"


def bin_index(x: float, bins: int) -> int:
    """Uniform bins on [0, 1]; 1.0 falls in the last bin."""
    return min(int(math.floor(x * bins)), bins - 1)


@dataclass
class BivariateProfile:
    bins: int
    scale_split: int
    thresholds: tuple
    grids: dict = field(default_factory=dict)
    label_totals: dict = field(default_factory=dict)
    unclassified_count: int = 0

    def to_dict(self) -> dict:
        return {
            "scale_split": self.scale_split,
            "bins": self.bins,
            "thresholds": {"ccf": self.thresholds[0], "hub_dom": self.thresholds[1]},
            "grids": {s: self.grids[s].astype(int).tolist() for s in SCALES},
            "label_totals": {s: {str(lab): int(self.label_totals[s].get(lab, 0))
                                 for lab in LABEL_ORDER}
                             for s in SCALES},
            "unclassified_count": int(self.unclassified_count),
        }

    def plurality(self, scale: str = "macro") -> TopologyLabel | None:
        return plurality(self.label_totals[scale])


def plurality(counts) -> TopologyLabel | None:
    """Most frequent classified label; ties resolved by ``LABEL_ORDER``."""
    best, top = None, 0
    for lab in LABEL_ORDER[:-1]:
        c = counts.get(lab, 0)
        if c > top:
            best, top = lab, c
    return best


def bivariate_map(records, bins: int = DEFAULT_BINS, scale_split: int = DEFAULT_SCALE_SPLIT,
                  thresholds=DEFAULT_THRESHOLDS) -> BivariateProfile:
    """2-D histogram of (ccf, hub_dom), one grid per community scale.

    ``grid[i, j]`` counts communities whose ccf falls in bin ``i`` and
    hub_dom in bin ``j``.
    """
    if bins < 2:
        raise ValueError("need at least 2 bins")
    prof = BivariateProfile(bins, scale_split, tuple(thresholds),
                            grids={s: np.zeros((bins, bins), dtype=np.int64) for s in SCALES},
                            label_totals={s: Counter() for s in SCALES})
    for rec in records:
        scale = scale_of(rec.size, scale_split)
        label = classify_topology(rec.ccf, rec.hub_dom, thresholds)
        prof.label_totals[scale][label] += 1
        if label is TopologyLabel.UNCLASSIFIED:
            prof.unclassified_count += 1
            continue
        prof.grids[scale][bin_index(rec.ccf, bins), bin_index(rec.hub_dom, bins)] += 1
    return prof


def label_counts(records, scale: str | None = "macro", scale_split: int = DEFAULT_SCALE_SPLIT,
                 thresholds=DEFAULT_THRESHOLDS) -> Counter:
    out = Counter()
    for rec in records:
        if scale is None or scale_of(rec.size, scale_split) == scale:
            out[classify_topology(rec.ccf, rec.hub_dom, thresholds)] += 1
    return out


def community_records(spec: GeneratorSpec, detector: str = "louvain",
                      min_size: int = 3) -> list[MetricRecord]:
    """Generate one graph, detect with its generator seed, score its communities."""
    g = generate(spec)
    return score_partition(g, detect(g, detector, seed=spec.seed), min_size)


def model_placement(specs, detector: str = "louvain", seeds=range(20), *,
                    min_size: int = 3, scale_split: int = DEFAULT_SCALE_SPLIT,
                    thresholds=DEFAULT_THRESHOLDS, scale: str | None = "macro") -> dict:
    """Topology label counts per generative model over many seeds.

    Returns ``{model: Counter(label -> count)}`` over communities of the
    requested scale (all scales when ``scale`` is None).
    """
    out = {}
    for spec in specs:
        tally = out.setdefault(spec.model.lower(), Counter())
        for s in seeds:
            recs = community_records(replace(spec, seed=int(s)), detector, min_size)
            tally.update(label_counts(recs, scale, scale_split, thresholds))
    return out
