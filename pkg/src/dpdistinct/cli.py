"""Command-line interface.

Exit codes: 0 success, 1 input/file error, 2 usage error, 3 selftest mismatch.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from typing import Sequence

from dpdistinct.estimator import (
    count_curve,
    dp_count_fixed_bound,
    estimate_from_curve,
    sampling_count,
    sampling_count_curve,
    select_bound,
)
from dpdistinct.greedy import greedy_count_at
from dpdistinct.ingest import ParseError, dataset_stats, distinct_count_exact, load_dataset
from dpdistinct.matching import bounded_distinct_count
from dpdistinct.mechanisms import PrivacyParams, RandomSource, derive_seed
from dpdistinct.oracle import run_selftest

EXIT_INPUT, EXIT_USAGE, EXIT_SELFTEST = 1, 2, 3

_SELECT_METHODS = {
    "max": "max_contribution",
    "p90": "p90_contribution",
    "utility": "exact_utility",
    "gem": "gem_utility",
}


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpdistinct",
        description="Differentially private lower bounds on distinct counts.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("input", help="TSV (person<TAB>item) or JSONL file; '-' for stdin")
        p.add_argument("--format", choices=["tsv", "jsonl"],
                       help="input format (default: from the file extension, else tsv)")
        p.add_argument("-o", "--output", help="write here instead of stdout")
        return p

    def with_privacy(p, ell_max=True):
        p.add_argument("--epsilon", type=float, default=1.0)
        p.add_argument("--beta", type=float, default=0.05)
        if ell_max:
            p.add_argument("--ell-max", type=_positive_int, default=100)

    with_input(sub.add_parser("stats", help="dataset statistics as JSON"))
    with_input(sub.add_parser("count-exact", help="true (non-private) distinct count"))

    p = with_input(sub.add_parser("curve", help="bounded count for every bound, as CSV"))
    p.add_argument("--algo", choices=["matching", "greedy", "sampling"], default="matching")
    p.add_argument("--ell-max", type=_positive_int, default=100)
    p.add_argument("--trials", type=_positive_int, default=1)
    p.add_argument("--seed", type=_seed, default=0)

    p = with_input(sub.add_parser("select-bound", help="choose a contribution bound"))
    p.add_argument("--method", choices=sorted(_SELECT_METHODS), default="gem")
    p.add_argument("--algo", choices=["matching", "greedy", "sampling"], default="matching")
    with_privacy(p)
    p.add_argument("--seed", type=_seed, default=0)

    p = with_input(sub.add_parser("dp-count", help="private lower bound, one JSON line per trial"))
    p.add_argument("--algo", choices=["matching", "greedy"], default="matching")
    with_privacy(p)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--trials", type=_positive_int, default=1)

    p = with_input(sub.add_parser("dp-count-fixed", help="Laplace release at a fixed bound"))
    p.add_argument("--algo", choices=["matching", "greedy", "sampling"], default="matching")
    p.add_argument("--ell", type=_positive_int, required=True)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--seed", type=_seed, default=0)

    p = sub.add_parser("selftest", help="cross-check fast paths against brute force")
    p.add_argument("--cases", type=_positive_int, default=1000)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("-o", "--output", help="write here instead of stdout")
    return parser


def _config(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "output"}


def _load(args: argparse.Namespace):
    fmt = args.format
    if fmt is None:
        fmt = "jsonl" if args.input.endswith((".jsonl", ".json")) else "tsv"
    args.format = fmt
    if args.input == "-":
        return load_dataset(sys.stdin.buffer, fmt)
    with open(args.input, "rb") as fh:
        return load_dataset(fh, fmt)


def _json_line(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False) + "\n"


def _execute(args: argparse.Namespace, out: io.StringIO) -> int:
    if args.command == "selftest":
        failures = run_selftest(args.cases, args.seed)
        ok = not any(failures.values())
        out.write(_json_line({"ok": ok, "failures": failures, "config": _config(args)}))
        return 0 if ok else EXIT_SELFTEST

    d = _load(args)
    config = _config(args)

    if args.command == "stats":
        out.write(_json_line({**dataset_stats(d).to_dict(), "config": config}))
    elif args.command == "count-exact":
        out.write(_json_line({"distinct": distinct_count_exact(d), "config": config}))
    elif args.command == "curve":
        if args.algo == "sampling":
            curve = sampling_count_curve(d, args.ell_max, RandomSource(args.seed), args.trials)
        else:
            curve = count_curve(d, args.ell_max, args.algo)
        out.write("ell,count\n")
        for ell, c in enumerate(curve.counts, start=1):
            out.write(f"{ell},{c}\n")
    elif args.command == "select-bound":
        method = _SELECT_METHODS[args.method]
        params = PrivacyParams(args.epsilon, args.beta, args.ell_max)
        ell = select_bound(d, method, params, args.algo, RandomSource(args.seed))
        out.write(_json_line({"ell": ell, "private": method == "gem_utility",
                              "config": config}))
    elif args.command == "dp-count":
        params = PrivacyParams(args.epsilon, args.beta, args.ell_max)
        curve = count_curve(d, args.ell_max, args.algo)
        for trial in range(args.trials):
            rng = RandomSource(derive_seed(args.seed, trial))
            est = estimate_from_curve(curve, params, rng, args.algo)
            out.write(_json_line({**est.to_dict(), "trial": trial, "config": config}))
    elif args.command == "dp-count-fixed":
        if not args.epsilon > 0:
            raise ValueError("epsilon must be positive")
        rng = RandomSource(args.seed)
        if args.algo == "matching":
            c = bounded_distinct_count(d, args.ell)
        elif args.algo == "greedy":
            c = greedy_count_at(d, args.ell)
        else:
            c = sampling_count(d, args.ell, rng)
        nu = dp_count_fixed_bound(c, args.ell, args.epsilon, rng)
        out.write(_json_line({"method": args.algo, "ell": args.ell, "epsilon": args.epsilon,
                              "seed": args.seed, "nu_hat": nu, "config": config}))
    return 0


def run(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    out = io.StringIO()
    try:
        status = _execute(args, out)
    except (OSError, ParseError, UnicodeDecodeError) as exc:
        print(f"dpdistinct: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"dpdistinct: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    data = out.getvalue().encode("utf-8")
    if getattr(args, "output", None):
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
