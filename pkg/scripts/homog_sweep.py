"""Sweep the classical series and tabulate homogeneous-space K-theory.

Usage:
    python scripts/homog_sweep.py --max-rank 6
"""

import argparse
import sys
import time
from dataclasses import dataclass

from pvtower.liegroups import SeriesSpec, homogeneous_ktheory

MINIMA = {"A": 1, "B": 2, "C": 3, "D": 3}


@dataclass
class SweepConfig:
    max_rank: int = 6
    trials: int = 8
    seed: int = 0


def pairs(config: SweepConfig):
    for series, lo in MINIMA.items():
        for n in range(lo + 1, config.max_rank + 1):
            for k in range(lo, n):
                yield series, n, k


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-rank", type=int, default=6)
    parser.add_argument("--trials", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    config = SweepConfig(max_rank=args.max_rank, trials=args.trials, seed=args.seed)

    print(f"{'pair':>10}  {'even':>8}  {'odd':>8}  {'spot ranks':<24} {'time':>8}")
    total = time.monotonic()
    for series, n, k in pairs(config):
        start = time.monotonic()
        result = homogeneous_ktheory(
            SeriesSpec(series, n), SeriesSpec(series, k),
            trials=config.trials, seed=config.seed,
        )
        elapsed = time.monotonic() - start
        expected = 2 ** (n - k - 1)
        status = "" if result.group.even.free_rank == expected else "  <-- UNEXPECTED"
        print(
            f"{series}{n}/{series}{k:<7}  {str(result.group.even):>8}  "
            f"{str(result.group.odd):>8}  {str(list(result.nonzero_ranks)):<24} "
            f"{elapsed:7.3f}s{status}"
        )
    print(f"total: {time.monotonic() - total:.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
