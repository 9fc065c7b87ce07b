"""Linear-time approximate bounded counts from a greedily grown maximal matching.

Round ``ell`` sweeps the persons in dataset order and gives each one its
lexicographically first item not yet taken. The number of taken items after
round ``ell`` is at least half the exact bounded count and never more than it,
and removing one person moves it by at most ``ell``. That sensitivity argument
relies on rounds being the outer loop, so the loop order here is fixed.
"""

from __future__ import annotations

from dpdistinct import _backend
from dpdistinct.ingest import Dataset
from dpdistinct.matching import BoundedCountCurve, _check_ell


def greedy_count_curve(d: Dataset, ell_max: int) -> BoundedCountCurve:
    _check_ell(ell_max, "ell_max")
    counts = _backend.greedy_curve(d.indptr, d.indices, d.vocabulary_size, int(ell_max))
    return BoundedCountCurve(tuple(int(c) for c in counts), exact=False)


def greedy_count_at(d: Dataset, ell: int) -> int:
    return int(greedy_count_curve(d, ell).counts[-1])
