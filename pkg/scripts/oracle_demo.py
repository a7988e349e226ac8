"""Compare cubical cochain matrices with contraction matrices, rank by rank.

Usage:
    python scripts/oracle_demo.py --max-rank 5 [--show 2]
"""

import argparse
import sys
import time
from dataclasses import dataclass

from pvtower.cubical import cellular_differential, oracle_compare
from pvtower.exterior import Covector, koszul_matrix


@dataclass
class OracleConfig:
    max_rank: int = 5
    show: int | None = None


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-rank", type=int, default=5)
    parser.add_argument("--show", type=int, default=None,
                        help="print both matrix families for this rank")
    args = parser.parse_args()
    config = OracleConfig(max_rank=args.max_rank, show=args.show)

    for n in range(1, config.max_rank + 1):
        start = time.monotonic()
        match = oracle_compare(n)
        print(f"n={n}: match={match}  ({time.monotonic() - start:.3f}s)")

    if config.show:
        n = config.show
        v = Covector.standard(n)
        for d in range(1, n + 1):
            print(f"\nrank {n}, degree {d}")
            print("  cellular:    ", cellular_differential(n, d))
            print("  contraction: ", koszul_matrix(v, d))
    return 0


if __name__ == "__main__":
    sys.exit(main())
