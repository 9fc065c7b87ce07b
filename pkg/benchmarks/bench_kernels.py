"""Compare the compiled and pure-Python kernels on synthetic Zipf data.

    python3 benchmarks/bench_kernels.py [--people 2000] [--ell-max 20] [--repeat 3]
"""

import argparse
import time

from dpdistinct import _pure, build_copy_graph
from dpdistinct.synthetic import zipf_dataset

try:
    from dpdistinct import _kernels
except ImportError:
    _kernels = None


def best_of(repeat, f, *args):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = f(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--people", type=int, default=2000)
    ap.add_argument("--ell-max", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    d = zipf_dataset(args.people, mean_size=10, vocabulary=20000, seed=1)
    print(f"dataset: {d.n} people, {d.size} records, {d.vocabulary_size} items")
    backends = {"python": _pure}
    if _kernels is not None:
        backends["cython"] = _kernels
    else:
        print("compiled kernels unavailable; timing the pure-Python path only")

    g = build_copy_graph(d, args.ell_max)
    cases = {
        f"max_matching (ell={args.ell_max})": lambda m: m.max_matching(g.row_of, g.indptr, g.indices, g.right_count),
        f"greedy_curve (ell_max={args.ell_max})": lambda m: m.greedy_curve(d.indptr, d.indices, d.vocabulary_size, args.ell_max),
    }
    print(f"{'kernel':32} " + " ".join(f"{b:>12}" for b in backends) + "   speedup")
    for name, call in cases.items():
        times, results = {}, []
        for b, mod in backends.items():
            times[b], r = best_of(args.repeat, call, mod)
            results.append(r if isinstance(r, int) else r.tolist())
        assert all(r == results[0] for r in results), "backends disagree"
        row = " ".join(f"{times[b] * 1e3:10.2f}ms" for b in backends)
        speed = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else ""
        print(f"{name:32} {row} {speed}")


if __name__ == "__main__":
    main()
