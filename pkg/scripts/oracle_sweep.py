#!/usr/bin/env python3
"""Cross-check the table recurrence against its independent oracles.

For every (degree, exponent) pair in the sweep the table is computed three
ways — the production block recurrence, a factored inverse of the mass
matrix, and the orthogonal-basis double sum — and the worst pairwise relative
difference is reported.  Exits nonzero if any difference exceeds the bound,
which makes the script usable as a long-running randomized gate.

Example:
    python3 scripts/oracle_sweep.py --max-degree 8
    python3 scripts/oracle_sweep.py --random 25 --seed 7 --bound 1e-8
"""

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from dualbern import compute_table
from dualbern.oracles import (
    ORACLE_MAX_DEGREE,
    table_direct_sum,
    table_gram_inverse,
    table_rel_difference,
)

FIXED_ALPHAS = [(0.0, 0.0, 0.0), (-0.5, -0.5, -0.5), (1.0, 2.0, 3.0), (0.5, 0.0, -0.3)]


@dataclass
class SweepConfig:
    max_degree: int
    random_alphas: int
    seed: int
    bound: float


def parse_args(argv=None) -> SweepConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=8,
                    help=f"largest degree to sweep (oracle cap: {ORACLE_MAX_DEGREE})")
    ap.add_argument("--random", type=int, default=0, metavar="COUNT",
                    help="additional random exponent triples beyond the fixed set")
    ap.add_argument("--seed", type=int, default=0, help="seed for --random")
    ap.add_argument("--bound", type=float, default=1e-8,
                    help="acceptable worst pairwise relative difference")
    args = ap.parse_args(argv)
    if args.max_degree > ORACLE_MAX_DEGREE:
        ap.error(f"--max-degree must be <= {ORACLE_MAX_DEGREE}")
    return SweepConfig(args.max_degree, args.random, args.seed, args.bound)


def sweep_one(alpha, n: int) -> float:
    t_rec = compute_table(alpha, n)
    t_inv = table_gram_inverse(alpha, n)
    t_sum = table_direct_sum(alpha, n)
    return max(
        table_rel_difference(t_rec, t_inv),
        table_rel_difference(t_rec, t_sum),
        table_rel_difference(t_inv, t_sum),
    )


def main(argv=None) -> int:
    cfg = parse_args(argv)
    rng = np.random.default_rng(cfg.seed)
    alphas = list(FIXED_ALPHAS)
    alphas += [tuple(rng.uniform(-0.9, 3.0, 3)) for _ in range(cfg.random_alphas)]

    worst = 0.0
    failures = 0
    for alpha in alphas:
        row = 0.0
        for n in range(cfg.max_degree + 1):
            row = max(row, sweep_one(alpha, n))
        flag = ""
        if row > cfg.bound:
            failures += 1
            flag = "  <-- over bound"
        print(f"alpha=({alpha[0]:+.4f}, {alpha[1]:+.4f}, {alpha[2]:+.4f})"
              f"  worst rel {row:.3e}{flag}")
        worst = max(worst, row)

    print(f"{len(alphas)} exponent triples, degrees 0..{cfg.max_degree}: "
          f"worst {worst:.3e} (bound {cfg.bound:.1e})")
    if failures:
        print(f"{failures} triple(s) over bound", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
