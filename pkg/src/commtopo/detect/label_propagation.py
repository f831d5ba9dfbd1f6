"""Asynchronous label propagation."""
from __future__ import annotations

import logging

import numpy as np

from .. import _kernels
from ..graph import Graph
from ..partition import Partition

log = logging.getLogger(__name__)

DEFAULT_SEED = 0


def label_propagation(g: Graph, seed: int = DEFAULT_SEED, max_sweeps: int = 1000) -> Partition:
    """Every node repeatedly adopts the label most common among its neighbours.

    Each sweep visits nodes in a fresh random order.  A node already holding
    a most frequent label keeps it; otherwise ties are broken uniformly at
    random.  Stops once every node already carries one of its
    most frequent neighbour labels.  Isolated nodes keep their own label.
    """
    rng = np.random.default_rng(seed)
    labels = np.arange(g.n, dtype=np.int64)
    counts = np.zeros(g.n, dtype=np.int64)
    for _ in range(max_sweeps):
        order = rng.permutation(g.n).astype(np.int64)
        draws = rng.random(g.n)
        _kernels.lpa_sweep(g.indptr, g.indices, labels, order, draws, counts)
        if _kernels.lpa_converged(g.indptr, g.indices, labels, counts):
            break
    else:
        log.warning("label propagation stopped after %d sweeps without converging", max_sweeps)
    return Partition(labels)
