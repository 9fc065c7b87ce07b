import time

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dpdistinct import (
    CopyGraph,
    Dataset,
    bounded_count_curve,
    bounded_distinct_count,
    build_copy_graph,
    distinct_count_exact,
    maximum_matching_size,
)
from dpdistinct.oracle import bounded_count_bruteforce, matching_bruteforce, random_graph
from dpdistinct.synthetic import zipf_dataset

from conftest import datasets


def D(*people):
    return Dataset.from_lists([list(p) for p in people])


def test_copy_count_capped_by_set_size():
    g = build_copy_graph(D("ab"), 3)
    assert g.left_vertices == ((0, 0), (0, 1))


def test_copy_graph_small():
    g = build_copy_graph(D("ab", "b"), 1)
    assert g.left_count == 2
    assert g.edge_count == 3
    assert g.right_count == 2


def test_copy_graph_empty_and_bad_bound():
    g = build_copy_graph(D(), 2)
    assert g.left_count == 0 and g.right_count == 0
    with pytest.raises(ValueError):
        build_copy_graph(D("a"), 0)


@given(datasets(max_people=6, max_items=5), st.integers(1, 6))
def test_copy_graph_invariants(d, ell):
    g = build_copy_graph(d, ell)
    sizes = d.contributions.tolist()
    per_person = [sum(1 for i, _ in g.left_vertices if i == p) for p in range(d.n)]
    assert per_person == [min(ell, s) for s in sizes]
    for k, (i, _) in enumerate(g.left_vertices):
        adj = g.adjacency(k)
        assert adj == sorted(d.people[i].items)
    assert g.edge_count == sum(s * min(ell, s) for s in sizes)


def test_matching_single_item_two_copies(backend):
    g = CopyGraph.from_adjacency([[0], [0]], 1)
    assert maximum_matching_size(g) == 1


def test_matching_disjoint_singletons(backend):
    d = Dataset.from_lists([[f"x{i}"] for i in range(50)])
    assert bounded_distinct_count(d, 1) == 50


def test_matching_vs_bruteforce_random_graphs(backend):
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        g = random_graph(rng)
        assert maximum_matching_size(g) == matching_bruteforce(g)


def test_matching_needs_augmenting_paths(backend):
    # greedy-in-order picks 0-0 first and must reroute twice
    g = CopyGraph.from_adjacency([[0, 1], [0, 2], [0]], 3)
    assert maximum_matching_size(g) == 3


def test_bounded_count_examples(backend):
    assert bounded_distinct_count(D("abc"), 2) == 2
    # exhaustive-selection oracle gives 3 here
    assert bounded_count_bruteforce(D("ab", "b", "bc"), 1) == 3
    assert bounded_distinct_count(D("ab", "b", "bc"), 1) == 3


def test_curve_examples(backend):
    assert bounded_count_curve(D("ab"), 3).counts == (1, 2, 2)
    assert [bounded_count_bruteforce(D("ab", "a"), ell) for ell in (1, 2)] == [2, 2]
    c = bounded_count_curve(D("ab", "a"), 2)
    assert c.counts == (2, 2) and c.exact


@given(datasets(max_people=5, max_items=4))
def test_oracle_equivalence(d):
    for ell in range(1, 5):
        if d.size <= 12:
            assert bounded_distinct_count(d, ell) == bounded_count_bruteforce(d, ell)


@given(datasets(max_people=6, max_items=5))
def test_saturation(d):
    top = max(d.contributions.tolist(), default=0)
    assert bounded_distinct_count(d, max(top, 1)) == distinct_count_exact(d)
    assert bounded_distinct_count(d, top + 3) == distinct_count_exact(d)


@given(datasets(max_people=7, max_items=6, alphabet="abcdefgh"), st.integers(1, 8))
def test_curve_shape(d, ell_max):
    c = bounded_count_curve(d, ell_max).counts
    inc = np.diff((0,) + c)
    assert (inc >= 0).all()
    assert (np.diff(inc) <= 0).all()
    dc = distinct_count_exact(d)
    assert all(x <= dc and x <= d.n * ell for ell, x in enumerate(c, start=1))
    assert list(c) == [bounded_distinct_count(d, ell) for ell in range(1, ell_max + 1)]


@given(datasets(max_people=5, max_items=4), st.integers(1, 4))
def test_sensitivity(d, ell):
    base = bounded_distinct_count(d, ell)
    for i in range(d.n):
        assert abs(base - bounded_distinct_count(d.without(i), ell)) <= ell


def test_curve_threads_match_serial():
    d = zipf_dataset(300, seed=5, max_size=30)
    assert bounded_count_curve(d, 25, workers=4) == bounded_count_curve(d, 25)


def test_backends_agree_on_larger_data():
    from dpdistinct import _pure
    _kernels = pytest.importorskip("dpdistinct._kernels")
    d = zipf_dataset(400, seed=11, mean_size=12)
    for ell in (1, 3, 10, 40):
        g = build_copy_graph(d, ell)
        args = (g.row_of, g.indptr, g.indices, g.right_count)
        assert _kernels.max_matching(*args) == _pure.max_matching(*args)


def test_runtime_scaling_smoke():
    """Timing is reported, not asserted: the bound is O(|D|^1.5 ell_max^2)."""
    times = {}
    for n in (250, 1000):
        d = zipf_dataset(n, seed=3, mean_size=10, vocabulary=20000)
        t0 = time.perf_counter()
        bounded_count_curve(d, 20)
        times[d.size] = time.perf_counter() - t0
    print("matching curve seconds by |D|:", times)
