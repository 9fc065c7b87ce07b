"""Private distinct-count releases and contribution-bound selection.

Every release has the same two-step shape: pick a bound ``ell`` with the
generalized exponential mechanism at half the budget, then publish the
bound's utility score plus Laplace noise at the other half. The counters
differ only in how the per-bound counts are produced.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from dpdistinct.greedy import greedy_count_curve
from dpdistinct.ingest import Dataset
from dpdistinct.matching import BoundedCountCurve, _check_ell, bounded_count_curve
from dpdistinct.mechanisms import (
    PrivacyParams,
    RandomSource,
    gem_select,
    laplace_offset,
    sample_laplace,
)

COUNTERS = ("matching", "greedy", "sampling")
SELECTIONS = ("max_contribution", "p90_contribution", "exact_utility", "gem_utility")


@dataclasses.dataclass(frozen=True)
class DpEstimate:
    ell_hat: int
    nu_hat: float
    method: str
    params: PrivacyParams
    seed: int

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "epsilon": self.params.epsilon,
            "beta": self.params.beta,
            "ell_max": self.params.ell_max,
            "seed": self.seed,
            "ell_hat": self.ell_hat,
            "nu_hat": self.nu_hat,
        }


@dataclasses.dataclass(frozen=True)
class UtilityScores:
    values: tuple[float, ...]


def utility_scores(curve: BoundedCountCurve, params: PrivacyParams) -> UtilityScores:
    if curve.ell_max != params.ell_max:
        raise ValueError(f"curve has {curve.ell_max} bounds, params expect {params.ell_max}")
    return UtilityScores(tuple(
        float(c) - laplace_offset(ell, params.epsilon, params.beta)
        for ell, c in enumerate(curve.counts, start=1)))


def _person_permutations(d: Dataset, rng: RandomSource, ell: int | None = None) -> list[np.ndarray]:
    """Per person, a uniformly random ordering of the first ``ell`` picks (Fisher-Yates prefix)."""
    out = []
    ptr = d.indptr
    for i in range(d.n):
        items = d.indices[ptr[i]:ptr[i + 1]].copy()
        size = len(items)
        steps = size - 1 if ell is None else min(ell, size - 1)
        if steps > 0:
            u = rng.uniform(steps)
            for k in range(steps):
                j = k + int(u[k] * (size - k))
                items[k], items[j] = items[j], items[k]
        out.append(items if ell is None else items[:ell])
    return out


def sampling_count(d: Dataset, ell: int, rng: RandomSource) -> int:
    """Distinct count of the union of one uniform ``ell``-subset per person."""
    _check_ell(ell)
    picks = _person_permutations(d, rng, ell)
    return int(np.unique(np.concatenate(picks)).size) if d.size else 0


def sampling_count_curve(d: Dataset, ell_max: int, rng: RandomSource,
                         trials: int = 1) -> BoundedCountCurve:
    """Sampling baseline for every bound, averaged over ``trials``.

    Within a trial each person's samples are nested prefixes of one random
    ordering, so every bound still sees a uniform subset.
    """
    _check_ell(ell_max, "ell_max")
    total = np.zeros(ell_max)
    for _ in range(trials):
        perms = _person_permutations(d, rng)
        seen = np.zeros(d.vocabulary_size, dtype=bool)
        size = 0
        for ell in range(ell_max):
            for p in perms:
                if ell < len(p) and not seen[p[ell]]:
                    seen[p[ell]] = True
                    size += 1
            total[ell] += size
    counts = total / trials
    if trials == 1:
        return BoundedCountCurve(tuple(int(c) for c in counts), exact=False)
    return BoundedCountCurve(tuple(float(c) for c in counts), exact=False)


def count_curve(d: Dataset, ell_max: int, counter: str,
                rng: RandomSource | None = None) -> BoundedCountCurve:
    if counter == "matching":
        return bounded_count_curve(d, ell_max)
    if counter == "greedy":
        return greedy_count_curve(d, ell_max)
    if counter == "sampling":
        if rng is None:
            raise ValueError("the sampling counter needs a RandomSource")
        return sampling_count_curve(d, ell_max, rng)
    raise ValueError(f"unknown counter {counter!r}; expected one of {COUNTERS}")


def estimate_from_curve(curve: BoundedCountCurve, params: PrivacyParams,
                        rng: RandomSource, method: str) -> DpEstimate:
    """Select a bound privately and release its noisy utility score.

    Private as long as every entry of ``curve`` has sensitivity at most its bound.
    """
    scores = utility_scores(curve, params).values
    bounds = range(1, params.ell_max + 1)
    ell_hat = gem_select(scores, bounds, params.epsilon / 2, params.beta, rng) + 1
    nu_hat = scores[ell_hat - 1] + sample_laplace(2 * ell_hat / params.epsilon, rng)
    return DpEstimate(ell_hat, float(nu_hat), method, params, rng.seed)


def dp_distinct_count(d: Dataset, params: PrivacyParams, rng: RandomSource) -> DpEstimate:
    return estimate_from_curve(bounded_count_curve(d, params.ell_max), params, rng, "matching")


def dp_approx_distinct_count(d: Dataset, params: PrivacyParams, rng: RandomSource) -> DpEstimate:
    return estimate_from_curve(greedy_count_curve(d, params.ell_max), params, rng, "greedy")


def dp_sampling_distinct_count(d: Dataset, params: PrivacyParams, rng: RandomSource) -> DpEstimate:
    """Baseline: the same release driven by per-person random subsets."""
    curve = sampling_count_curve(d, params.ell_max, rng)
    return estimate_from_curve(curve, params, rng, "sampling")


def dp_count_fixed_bound(c: float, ell: int, epsilon: float, rng: RandomSource) -> float:
    """``c + Laplace(ell/epsilon)``; ``c`` must come from a counter run at bound ``ell``."""
    _check_ell(ell)
    return float(c) + sample_laplace(ell / epsilon, rng)


def select_bound(d: Dataset, method: str, params: PrivacyParams,
                 counter: str = "matching", rng: RandomSource | None = None) -> int:
    """Contribution bound chosen by one of :data:`SELECTIONS`.

    Only ``gem_utility`` is differentially private. ``exact_utility`` maximises
    ``count - (ell/eps) log(1/(2 beta))`` exactly; the private path uses
    twice that offset because its release spends half the budget on selection.
    """
    if method in ("max_contribution", "p90_contribution"):
        if d.n == 0:
            raise ValueError(f"{method} needs a non-empty dataset")
        c = np.sort(d.contributions)
        if method == "max_contribution":
            return max(1, int(c[-1]))
        rank = -(-9 * d.n // 10)  # nearest rank, ceil(0.9 n)
        return max(1, int(c[rank - 1]))
    if method == "exact_utility":
        curve = count_curve(d, params.ell_max, counter, rng)
        values = [float(cnt) - (ell / params.epsilon) * math.log(1 / (2 * params.beta))
                  for ell, cnt in enumerate(curve.counts, start=1)]
        return int(np.argmax(values)) + 1
    if method == "gem_utility":
        if rng is None:
            raise ValueError("gem_utility needs a RandomSource")
        curve = count_curve(d, params.ell_max, counter, rng)
        scores = utility_scores(curve, params).values
        return gem_select(scores, range(1, params.ell_max + 1),
                          params.epsilon / 2, params.beta, rng) + 1
    raise ValueError(f"unknown selection method {method!r}; expected one of {SELECTIONS}")
