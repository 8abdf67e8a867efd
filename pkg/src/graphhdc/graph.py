"""Symmetrized, self-looped sparse adjacency in compressed sparse row form.

Every propagation kernel consumes the structure built here: the symmetric
closure of the raw edge set, one self-loop per node, duplicates collapsed,
column indices sorted within each row, and per-node degrees that count the
self-loop.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MalformedInput


@dataclass(frozen=True, eq=False)
class EdgeList:
    """Raw 0-indexed edge pairs over ``num_nodes`` nodes.

    May contain duplicates, self-loops, or both orientations of an edge;
    :func:`build_graph` normalizes all of that.
    """

    edges: np.ndarray
    num_nodes: int

    def __post_init__(self) -> None:
        e = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if self.num_nodes < 0:
            raise MalformedInput(f"num_nodes must be >= 0, got {self.num_nodes}")
        if e.size and (e.min() < 0 or e.max() >= self.num_nodes):
            raise MalformedInput(
                f"edge endpoints must lie in [0, {self.num_nodes}), "
                f"found range [{e.min()}, {e.max()}]"
            )
        object.__setattr__(self, "edges", e)


@dataclass(frozen=True, eq=False)
class Adjacency:
    """CSR view of the symmetric closure plus self-loops, with degrees.

    Row ``v`` occupies ``col_indices[row_offsets[v]:row_offsets[v+1]]``,
    sorted ascending; ``degrees[v]`` equals the row length and is always at
    least 1 because of the self-loop. Arrays are read-only after
    construction; concurrent readers are safe.
    """

    num_nodes: int
    row_offsets: np.ndarray
    col_indices: np.ndarray
    degrees: np.ndarray

    def __post_init__(self) -> None:
        for name in ("row_offsets", "col_indices", "degrees"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.int64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def nnz(self) -> int:
        """Number of stored (node, neighbor) entries, self-loops included."""
        return int(self.col_indices.shape[0])


def build_graph(raw: EdgeList) -> Adjacency:
    """Build the deduplicated symmetric closure with self-loops, CSR-sorted.

    Duplicate input edges collapse to one entry (the edge set is treated as
    a set), input self-loops merge with the mandated one, and isolated
    nodes end up with a single self-loop entry.
    """
    n = raw.num_nodes
    if n == 0:
        empty = np.zeros(0, dtype=np.int64)
        return Adjacency(0, np.zeros(1, dtype=np.int64), empty, empty)
    e = raw.edges
    loops = np.arange(n, dtype=np.int64)
    src = np.concatenate([e[:, 0], e[:, 1], loops])
    dst = np.concatenate([e[:, 1], e[:, 0], loops])
    # n*n fits int64 for every graph this package targets
    keys = np.unique(src * np.int64(n) + dst)
    rows = keys // n
    cols = keys % n
    degrees = np.bincount(rows, minlength=n)
    row_offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degrees, out=row_offsets[1:])
    return Adjacency(n, row_offsets, cols, degrees)


def neighbors(g: Adjacency, v: int) -> np.ndarray:
    """Sorted neighbor ids of ``v``, including ``v`` itself (read-only view)."""
    if not 0 <= v < g.num_nodes:
        raise IndexError(f"node {v} out of range [0, {g.num_nodes})")
    return g.col_indices[g.row_offsets[v] : g.row_offsets[v + 1]]


def edge_pairs(g: Adjacency) -> np.ndarray:
    """All stored (u, v) entries as an (nnz, 2) array, self-loops included."""
    u = np.repeat(np.arange(g.num_nodes, dtype=np.int64), g.degrees)
    return np.stack([u, g.col_indices], axis=1)
