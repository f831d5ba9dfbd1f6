"""Node-to-community assignments."""
from __future__ import annotations

import numpy as np


def canonical_labels(labels) -> np.ndarray:
    """Relabel so community ids are 0..k-1 in order of first appearance."""
    labels = np.asarray(labels)
    if labels.size == 0:
        return np.zeros(0, dtype=np.int64)
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(first.size, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(first.size)
    return rank[inverse.ravel()]


class Partition:
    """Assignment of every node to exactly one community.

    Community ids are kept canonical (dense, numbered by the smallest member
    node), so two partitions describing the same grouping compare equal.
    """

    __slots__ = ("assignment", "_communities")

    def __init__(self, labels):
        self.assignment = canonical_labels(labels)
        self.assignment.setflags(write=False)
        self._communities = None

    @classmethod
    def from_communities(cls, communities, n: int) -> "Partition":
        labels = np.full(n, -1, dtype=np.int64)
        for cid, members in enumerate(communities):
            members = np.asarray(list(members), dtype=np.int64)
            if members.size == 0:
                raise ValueError(f"community {cid} is empty")
            if np.any(labels[members] >= 0):
                raise ValueError("communities overlap")
            labels[members] = cid
        if np.any(labels < 0):
            missing = int(np.flatnonzero(labels < 0)[0])
            raise ValueError(f"node {missing} is not assigned to any community")
        return cls(labels)

    @property
    def n(self) -> int:
        return int(self.assignment.size)

    @property
    def k(self) -> int:
        return int(self.assignment.max()) + 1 if self.assignment.size else 0

    @property
    def communities(self) -> list[np.ndarray]:
        if self._communities is None:
            order = np.argsort(self.assignment, kind="stable")
            bounds = np.searchsorted(self.assignment[order], np.arange(self.k + 1))
            self._communities = [order[bounds[i]:bounds[i + 1]] for i in range(self.k)]
        return self._communities

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.k)

    def __len__(self) -> int:
        return self.k

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.assignment, other.assignment)

    def __hash__(self):
        return hash(self.assignment.tobytes())

    def __repr__(self) -> str:
        return f"Partition(n={self.n}, k={self.k})"
