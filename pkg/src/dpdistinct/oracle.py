"""Brute-force references for tests and ``selftest``. Slow by design, guarded by size limits."""

from __future__ import annotations

import itertools
from typing import Callable

import numpy as np

from dpdistinct.ingest import Dataset
from dpdistinct.greedy import greedy_count_at
from dpdistinct.matching import (
    CopyGraph,
    bounded_distinct_count,
    build_copy_graph,
    maximum_matching_size,
)
from dpdistinct.mechanisms import GemProblem, gem_scores_fast
from dpdistinct.synthetic import small_corpus

MAX_RECORDS = 20
MAX_MATCHING_VERTICES = 64


class OracleRefusal(ValueError):
    """The instance is outside the oracle's size guard."""


def bounded_count_bruteforce(d: Dataset, ell: int, max_records: int = MAX_RECORDS) -> int:
    """Largest union over every choice of subsets ``v_i`` of ``u_i`` with ``|v_i| <= ell``.

    Choices are enumerated person by person; partial choices that reach the
    same union are merged, which keeps the search small without pruning any
    reachable union.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    if d.size > max_records:
        raise OracleRefusal(f"{d.size} records exceeds the guard of {max_records}")
    unions = {frozenset()}
    for items in d.to_lists():
        options = [frozenset(c) for k in range(min(ell, len(items)) + 1)
                   for c in itertools.combinations(items, k)]
        unions = {u | v for u in unions for v in options}
    return max(len(u) for u in unions)


def matching_bruteforce(g: CopyGraph) -> int:
    """Maximum matching by one augmenting-path DFS per left vertex (Kuhn's method)."""
    if g.left_count + g.right_count > MAX_MATCHING_VERTICES:
        raise OracleRefusal("graph exceeds the oracle vertex guard")
    adj = [g.adjacency(k) for k in range(g.left_count)]
    owner: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in owner or augment(owner[v], seen):
                owner[v] = u
                return True
        return False

    return sum(augment(u, set()) for u in range(g.left_count))


def gem_scores_naive(p: GemProblem) -> list[float]:
    """Direct evaluation of the pairwise minimum, O(m^2)."""
    q = np.asarray(p.q, dtype=float)
    d = np.asarray(p.delta, dtype=float)
    a = q - p.t * d
    return ((a[:, None] - a[None, :]) / (d[:, None] + d[None, :])).min(axis=1).tolist()


COUNTERS: dict[str, Callable[[Dataset, int], int]] = {
    "matching": bounded_distinct_count,
    "greedy": greedy_count_at,
}


def sensitivity_probe(d: Dataset, ell: int, counter: str = "matching") -> int:
    """Largest change of ``counter(d, ell)`` over all single-person removals."""
    if d.n < 1:
        raise ValueError("need at least one person")
    f = COUNTERS[counter]
    base = f(d, ell)
    return max(abs(base - f(d.without(i), ell)) for i in range(d.n))


def random_graph(rng: np.random.Generator, max_left: int = 8, max_right: int = 8) -> CopyGraph:
    n_left = int(rng.integers(1, max_left + 1))
    n_right = int(rng.integers(1, max_right + 1))
    dense = rng.random() * 0.8 + 0.1
    adj = [[v for v in range(n_right) if rng.random() < dense] for _ in range(n_left)]
    return CopyGraph.from_adjacency(adj, n_right)


def random_gem_problem(rng: np.random.Generator, max_m: int = 200) -> GemProblem:
    m = int(rng.integers(1, max_m + 1))
    q = rng.uniform(-1e3, 1e3, size=m)
    delta = 10.0 ** rng.uniform(-3, 3, size=m)
    return GemProblem(tuple(q.tolist()), tuple(delta.tolist()), float(rng.uniform(0, 50)))


def run_selftest(cases: int = 1000, seed: int = 0) -> dict[str, int]:
    """Cross-check fast paths against the references; returns mismatch counts per check."""
    failures = dict.fromkeys(
        ["bounded_count", "copy_graph_matching", "random_graph_matching",
         "sensitivity_matching", "sensitivity_greedy", "greedy_bounds", "gem_scores"], 0)
    for d, ell in small_corpus(cases, seed):
        exact = bounded_distinct_count(d, ell)
        failures["bounded_count"] += exact != bounded_count_bruteforce(d, ell)
        g = build_copy_graph(d, ell)
        failures["copy_graph_matching"] += maximum_matching_size(g) != matching_bruteforce(g)
        failures["sensitivity_matching"] += sensitivity_probe(d, ell, "matching") > ell
        failures["sensitivity_greedy"] += sensitivity_probe(d, ell, "greedy") > ell
        approx = greedy_count_at(d, ell)
        failures["greedy_bounds"] += not (-(-exact // 2) <= approx <= exact)

    rng = np.random.default_rng([seed, 1])
    for _ in range(cases):
        g = random_graph(rng)
        failures["random_graph_matching"] += maximum_matching_size(g) != matching_bruteforce(g)
    for _ in range(max(1, cases // 10)):
        p = random_gem_problem(rng, max_m=50)
        err = np.max(np.abs(np.subtract(gem_scores_fast(p), gem_scores_naive(p))))
        failures["gem_scores"] += bool(err > 1e-9)
    return failures
