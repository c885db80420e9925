#!/usr/bin/env python3
"""Fibonacci-codeword experiment: self-delimiting multisets, emit CSV.

N integers drawn uniformly from 1..K are Fibonacci-coded and compressed
four ways: the self-delimiting tree codec with the binomial and
Beta-binomial families, the Dirichlet-multinomial direct code over the
raw integers, and flat concatenation of the codewords.
"""

import argparse
import sys

from msetzip.bench import DEFAULT_N_GRID, bench_fib, write_csv


def parse_grid(text):
    return [int(t) for t in text.split(",") if t]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--k", type=int, default=100_000, help="alphabet bound (default 10^5)")
    ap.add_argument(
        "--n-values",
        type=parse_grid,
        default=DEFAULT_N_GRID,
        metavar="N1,N2,...",
        help="benchmark points (default: 16,32,...,16384)",
    )
    ap.add_argument("--csv", default="-", help="output path, - for stdout")
    args = ap.parse_args()

    records = bench_fib(args.n_values, seed=args.seed, k=args.k)
    if args.csv == "-":
        write_csv(records, sys.stdout)
    else:
        with open(args.csv, "w", newline="") as f:
            write_csv(records, f)
    return 0


if __name__ == "__main__":
    sys.exit(main())
