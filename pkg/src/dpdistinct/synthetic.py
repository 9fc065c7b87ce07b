"""Synthetic person/item datasets with Zipf item popularity and geometric person sizes."""

from __future__ import annotations

import numpy as np

from dpdistinct.ingest import Dataset


def zipf_dataset(n: int, exponent: float = 1.1, mean_size: float = 8.0,
                 vocabulary: int = 5000, max_size: int | None = None,
                 seed: int = 0) -> Dataset:
    """``n`` persons; each draws a geometric number of items (capped at ``max_size``)
    from a Zipf(``exponent``) law over ``vocabulary`` ranks, duplicates collapsed.

    Labels are zero-padded ranks, so byte order of labels equals rank order.
    """
    rng = np.random.default_rng(seed)
    sizes = rng.geometric(1.0 / mean_size, size=n)
    if max_size is not None:
        sizes = np.minimum(sizes, max_size)
    weights = np.arange(1, vocabulary + 1, dtype=float) ** -exponent
    draws = rng.choice(vocabulary, size=int(sizes.sum()), p=weights / weights.sum())
    owner = np.repeat(np.arange(n, dtype=np.int64), sizes)

    # dedupe (person, rank) pairs; the result is sorted by person then rank
    pairs = np.unique(owner * vocabulary + draws)
    person, rank = np.divmod(pairs, vocabulary)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(person, minlength=n), out=indptr[1:])

    # dense item ids in order of first appearance
    used, first = np.unique(rank, return_index=True)
    by_first = used[np.argsort(first, kind="stable")]
    dense = np.empty(vocabulary, dtype=np.int64)
    dense[by_first] = np.arange(len(by_first))
    width = len(str(vocabulary - 1))
    labels = [f"w{r:0{width}d}" for r in by_first.tolist()]
    return Dataset(indptr, dense[rank], labels, [f"p{i}" for i in range(n)])


def small_dataset(rng: np.random.Generator, max_people: int = 5,
                  max_items: int = 4, universe: int = 6) -> Dataset:
    """Random tiny dataset for exhaustive cross-checks (people may be empty)."""
    n = int(rng.integers(1, max_people + 1))
    alphabet = [chr(ord("a") + k) for k in range(universe)]
    people = []
    for _ in range(n):
        k = int(rng.integers(0, max_items + 1))
        people.append([alphabet[j] for j in rng.choice(universe, size=k, replace=False)])
    return Dataset.from_lists(people)


def small_corpus(cases: int, seed: int, **kwargs) -> list[tuple[Dataset, int]]:
    """``cases`` pairs of (tiny dataset, bound in 1..4)."""
    rng = np.random.default_rng(seed)
    return [(small_dataset(rng, **kwargs), int(rng.integers(1, 5))) for _ in range(cases)]
