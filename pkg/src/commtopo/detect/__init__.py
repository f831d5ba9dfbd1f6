"""Community detection: five native detectors plus partition import/export."""
from __future__ import annotations

from ..graph import Graph
from ..partition import Partition
from .core import Dendrogram, best_cut, best_cut_level, modularity
from .fast_greedy import fast_greedy
from .girvan_newman import edge_betweenness, girvan_newman
from .label_propagation import label_propagation
from .louvain import louvain, louvain_levels
from .partition_io import PartitionFileError, export_partition, import_partition, parse_partition
from .walktrap import DEFAULT_WALK_LENGTH, walk_distance_sq, walktrap

METHODS = ("gn", "cnm", "louvain", "lpa", "walktrap")

# Girvan-Newman is O(n m^2); refuse bigger inputs unless forced.
GN_MAX_EDGES = 20_000


class GuardrailError(RuntimeError):
    pass


def detect(g: Graph, method: str, *, seed: int = 0, t: int = DEFAULT_WALK_LENGTH,
           max_levels: int | None = None, force: bool = False) -> Partition:
    """Run one detector and return its partition (best modularity cut for dendrograms)."""
    if method == "gn":
        if g.m > GN_MAX_EDGES and not force:
            raise GuardrailError(
                f"Girvan-Newman on {g.m} edges exceeds the {GN_MAX_EDGES}-edge guardrail "
                "(cost grows as n*m^2); pass force to run anyway")
        return best_cut(girvan_newman(g, max_levels))
    if method == "cnm":
        return best_cut(fast_greedy(g))
    if method == "louvain":
        return louvain(g, seed)
    if method == "lpa":
        return label_propagation(g, seed)
    if method == "walktrap":
        return best_cut(walktrap(g, t))
    raise ValueError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")


__all__ = [
    "Dendrogram", "GN_MAX_EDGES", "GuardrailError", "METHODS", "Partition",
    "PartitionFileError", "best_cut", "best_cut_level", "detect", "edge_betweenness",
    "export_partition", "fast_greedy", "girvan_newman", "import_partition",
    "label_propagation", "louvain", "louvain_levels", "modularity", "parse_partition",
    "walk_distance_sq", "walktrap",
]
