"""Partition files: one ``node_label community_label`` pair per line."""
from __future__ import annotations

import io
import os

import numpy as np

from ..graph import COMMENT_PREFIXES, Graph
from ..partition import Partition


class PartitionFileError(ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def import_partition(g: Graph, source) -> Partition:
    close = isinstance(source, (str, os.PathLike))
    fh = open(source, encoding="utf-8") if close else source
    index = {lab: i for i, lab in enumerate(g.original_ids)}
    labels = np.full(g.n, -1, dtype=np.int64)
    seen_at = {}
    comm_ids = {}
    lineno = 0
    try:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith(COMMENT_PREFIXES):
                continue
            tok = s.split()
            if len(tok) != 2:
                raise PartitionFileError(f"expected 'node community', got {len(tok)} tokens", lineno)
            node, comm = tok
            if node not in index:
                raise PartitionFileError(f"unknown node label {node!r}", lineno)
            u = index[node]
            if u in seen_at:
                raise PartitionFileError(
                    f"node {node!r} listed twice (first on line {seen_at[u]})", lineno)
            seen_at[u] = lineno
            labels[u] = comm_ids.setdefault(comm, len(comm_ids))
    finally:
        if close:
            fh.close()
    missing = np.flatnonzero(labels < 0)
    if missing.size:
        names = ", ".join(g.original_ids[i] for i in missing[:10])
        raise PartitionFileError(f"missing node(s): {names}", lineno)
    return Partition(labels)


def export_partition(g: Graph, part: Partition, sink=None):
    """Write the partition; returns the text when ``sink`` is None."""
    if part.n != g.n:
        raise ValueError("partition does not match graph")
    lines = "".join(f"{g.original_ids[u]} {c}\n" for u, c in enumerate(part.assignment))
    if sink is None:
        return lines
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8") as fh:
            fh.write(lines)
    else:
        sink.write(lines)
    return None


def parse_partition(g: Graph, text: str) -> Partition:
    return import_partition(g, io.StringIO(text))
