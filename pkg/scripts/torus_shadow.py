"""Crossed products by trivial Z^n-actions: tower assembly vs iterated rank-1.

The two assembly paths are independent implementations and must agree;
the final group is free of rank 2^(n-1) in each parity.

Usage:
    python scripts/torus_shadow.py --max-rank 5
"""

import argparse
import sys
import time
from dataclasses import dataclass

from pvtower.abgroup import IntMatrix
from pvtower.koszul import GradedEndo, ModuleDatum, Presentation
from pvtower.tower import iterate_rank1, pv_tower


@dataclass
class ShadowConfig:
    max_rank: int = 5


def trivial_action_datum(n: int) -> ModuleDatum:
    endos = tuple(
        GradedEndo(IntMatrix.identity(1), IntMatrix.identity(0)) for _ in range(n)
    )
    return ModuleDatum(Presentation.free(1), Presentation.free(0), endos)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-rank", type=int, default=5)
    args = parser.parse_args()
    config = ShadowConfig(max_rank=args.max_rank)

    for n in range(1, config.max_rank + 1):
        datum = trivial_action_datum(n)
        start = time.monotonic()
        tower = pv_tower(datum)
        iterated = iterate_rank1(datum)
        agree = tower.final == iterated.group
        print(
            f"n={n}: tower={tower.final}  iterated={iterated.group}  "
            f"agree={agree}  ({time.monotonic() - start:.3f}s)"
        )
        if not agree:
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
