#!/usr/bin/env python3
"""Benchmark the dual-coefficient table sweep across degrees.

Prints per-degree wall time, the implied n^4 constant, and the deviation of
that constant from the geometric mean over all measured degrees — a quick way
to confirm the quartic cost model on new hardware.

Example:
    python3 scripts/scaling_bench.py --degrees 16,24,32,48,64 --repeats 5
    python3 scripts/scaling_bench.py --alpha 0.5,0,-0.3 --csv bench.csv
"""

import argparse
import csv
import sys
import time
from dataclasses import dataclass

import numpy as np

from dualbern import compute_table


@dataclass
class BenchConfig:
    degrees: tuple[int, ...]
    repeats: int
    alpha: tuple[float, float, float]
    csv_path: str | None


def parse_args(argv=None) -> BenchConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degrees", default="16,24,32,48,64",
                    help="comma-separated basis degrees to time")
    ap.add_argument("--repeats", type=int, default=5,
                    help="timed repetitions per degree (minimum is reported)")
    ap.add_argument("--alpha", default="0,0,0", help="weight exponents A1,A2,A3")
    ap.add_argument("--csv", dest="csv_path", default=None,
                    help="optional CSV output path")
    args = ap.parse_args(argv)
    return BenchConfig(
        degrees=tuple(int(t) for t in args.degrees.split(",")),
        repeats=args.repeats,
        alpha=tuple(float(t) for t in args.alpha.split(",")),
        csv_path=args.csv_path,
    )


def time_once(alpha, n: int) -> float:
    t0 = time.perf_counter()
    compute_table(alpha, n)
    return time.perf_counter() - t0


def main(argv=None) -> int:
    cfg = parse_args(argv)
    compute_table(cfg.alpha, 10)  # trigger JIT compilation outside the timings

    rows = []
    for n in cfg.degrees:
        best = min(time_once(cfg.alpha, n) for _ in range(cfg.repeats))
        rows.append((n, best, best / n**4))

    geo = float(np.exp(np.mean(np.log([c for _, _, c in rows]))))
    print(f"{'n':>5} {'time':>12} {'time/n^4':>12} {'vs geomean':>11}")
    for n, best, const in rows:
        print(f"{n:>5} {best * 1e3:>10.2f}ms {const:>12.3e} {100 * (const / geo - 1):>+10.1f}%")
    print(f"geometric-mean constant: {geo:.3e} s")

    if cfg.csv_path:
        with open(cfg.csv_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "seconds", "seconds_per_n4"])
            w.writerows(rows)
        print(f"wrote {cfg.csv_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
