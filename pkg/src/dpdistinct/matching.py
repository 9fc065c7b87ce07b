"""Exact bounded distinct counts via maximum bipartite matching.

Capping each person at ``ell`` items and maximising the size of the union is
the same as a maximum matching between ``min(ell, |u_i|)`` copies of every
person and the items they hold.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from dpdistinct import _backend
from dpdistinct.ingest import Dataset


@dataclasses.dataclass(frozen=True, eq=False)
class CopyGraph:
    """Bipartite graph whose left vertices share adjacency rows.

    Left vertex ``k`` is the pair ``left_vertices[k]`` and its neighbours are
    ``indices[indptr[r]:indptr[r+1]]`` with ``r = row_of[k]``. For a person-copy
    graph the rows are persons, so every copy of a person has the same
    neighbourhood and the edge list never has to be materialised.
    """

    left_vertices: tuple[tuple[int, int], ...]
    right_count: int
    row_of: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Sequence[int]], right_count: int) -> "CopyGraph":
        """Arbitrary bipartite graph; left vertex ``k`` is labelled ``(k, 0)``."""
        rows = [sorted(set(a)) for a in adjacency]
        for a in rows:
            if a and (a[0] < 0 or a[-1] >= right_count):
                raise ValueError("adjacent vertex out of range")
        indptr = np.zeros(len(rows) + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(a) for a in rows])
        flat = [v for a in rows for v in a]
        return cls(tuple((k, 0) for k in range(len(rows))), right_count,
                   np.arange(len(rows), dtype=np.int64), indptr,
                   np.asarray(flat, dtype=np.int64))

    @property
    def left_count(self) -> int:
        return len(self.left_vertices)

    def adjacency(self, k: int) -> list[int]:
        r = self.row_of[k]
        return self.indices[self.indptr[r]:self.indptr[r + 1]].tolist()

    @property
    def edge_count(self) -> int:
        deg = np.diff(self.indptr)
        return int(deg[self.row_of].sum()) if self.left_count else 0


@dataclasses.dataclass(frozen=True)
class BoundedCountCurve:
    """``counts[ell - 1]`` is the bounded count at bound ``ell``."""

    counts: tuple[float, ...]
    exact: bool

    @property
    def ell_max(self) -> int:
        return len(self.counts)

    def at(self, ell: int) -> float:
        return self.counts[ell - 1]


def _check_ell(ell: int, name: str = "ell") -> None:
    if int(ell) != ell or ell < 1:
        raise ValueError(f"{name} must be a positive integer, got {ell!r}")


def _copy_rows(d: Dataset) -> tuple[np.ndarray, np.ndarray]:
    # adjacency rows sorted by item id for a deterministic search order
    rows = np.repeat(np.arange(d.n, dtype=np.int64), d.contributions)
    return d.indptr, np.ascontiguousarray(d.indices[np.lexsort((d.indices, rows))])


def build_copy_graph(d: Dataset, ell: int) -> CopyGraph:
    _check_ell(ell)
    copies = np.minimum(d.contributions, ell)
    row_of = np.repeat(np.arange(d.n, dtype=np.int64), copies)
    left = tuple((int(i), j) for i, c in enumerate(copies.tolist()) for j in range(c))
    indptr, indices = _copy_rows(d)
    return CopyGraph(left, d.vocabulary_size, row_of, indptr, indices)


def maximum_matching_size(g: CopyGraph) -> int:
    if g.left_count == 0 or g.right_count == 0:
        return 0
    return int(_backend.max_matching(g.row_of, g.indptr, g.indices, g.right_count))


def bounded_distinct_count(d: Dataset, ell: int) -> int:
    return maximum_matching_size(build_copy_graph(d, ell))


def bounded_count_curve(d: Dataset, ell_max: int, workers: int = 1) -> BoundedCountCurve:
    """Exact bounded counts for ``ell = 1..ell_max``, one matching per bound.

    The matchings are independent; ``workers > 1`` runs them on a thread pool
    (the compiled kernel releases the GIL). Bounds past the largest
    contribution reuse the saturated value.
    """
    _check_ell(ell_max, "ell_max")
    indptr, indices = _copy_rows(d)
    contrib = d.contributions
    top = int(contrib.max()) if d.n else 0
    right = d.vocabulary_size

    def solve(ell: int) -> int:
        if right == 0:
            return 0
        row_of = np.repeat(np.arange(d.n, dtype=np.int64), np.minimum(contrib, ell))
        return int(_backend.max_matching(row_of, indptr, indices, right))

    todo = list(range(1, min(ell_max, max(top, 1)) + 1))
    if workers > 1 and len(todo) > 1:
        with ThreadPoolExecutor(workers) as pool:
            counts = list(pool.map(solve, todo))
    else:
        counts = [solve(ell) for ell in todo]
    counts += [counts[-1]] * (ell_max - len(counts))
    return BoundedCountCurve(tuple(counts), exact=True)
