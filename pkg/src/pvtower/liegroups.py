"""Classical-series data and K-theory of homogeneous spaces G_n / G_k.

Only two facts about a compact group enter the computation: the rank of
its maximal torus and the order of its Weyl group.  Weyl orders come
from closed forms with a brute-force signed-permutation enumeration as
an oracle.  For a nested same-series pair the representation-theoretic
input reduces to a Koszul complex over Z[t1^{+-1}, ..., tk^{+-1}] whose
covector has k unit-augmentation entries and n-k zeros; the zeros peel
off as an exterior algebra and the regular remainder resolves to a
single Z at the endpoint, witnessed by seeded rank checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .abgroup import FGAbelianGroup, GradedGroup
from .exterior import Covector
from .koszul import (
    RankExactnessReport,
    build_symbolic,
    convolve_with_exterior,
    endpoint_augmentation_surjective,
    generic_rank_exactness,
    split_reduction,
)
from .ring import LaurentPoly, one_minus_var
from .tower import TowerLevel, TowerReport, assemble_final, suspend_by

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 3}
_ENUM_RANK_CAP = 7


@dataclass(frozen=True)
class SeriesSpec:
    """A classical simple series member: A_n, B_n, C_n or D_n."""

    series: str
    rank: int

    def __post_init__(self) -> None:
        if self.series not in _MIN_RANK:
            raise ValueError(f"unknown series {self.series!r}; expected A, B, C or D")
        if self.rank < _MIN_RANK[self.series]:
            raise ValueError(
                f"{self.series}-series rank must be at least {_MIN_RANK[self.series]}, got {self.rank}"
            )

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"


def weyl_order(spec: SeriesSpec) -> int:
    """Order of the Weyl group: (n+1)! for A_n, 2^n n! for B_n/C_n, 2^(n-1) n! for D_n."""
    n = spec.rank
    if spec.series == "A":
        return factorial(n + 1)
    if spec.series in ("B", "C"):
        return 2 ** n * factorial(n)
    return 2 ** (n - 1) * factorial(n)


# Signed permutations are tuples t with t[i] = +-(j+1) meaning e_i -> sign * e_j.


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for bi in b:
        j = abs(bi) - 1
        out.append(a[j] if bi > 0 else -a[j])
    return tuple(out)


def _simple_reflections(spec: SeriesSpec) -> list[tuple[int, ...]]:
    n = spec.rank
    if spec.series == "A":
        m = n + 1
        ident = tuple(range(1, m + 1))
        gens = []
        for i in range(m - 1):
            g = list(ident)
            g[i], g[i + 1] = g[i + 1], g[i]
            gens.append(tuple(g))
        return gens
    m = n
    ident = tuple(range(1, m + 1))
    gens = []
    for i in range(m - 1):
        g = list(ident)
        g[i], g[i + 1] = g[i + 1], g[i]
        gens.append(tuple(g))
    if spec.series in ("B", "C"):
        g = list(ident)
        g[m - 1] = -g[m - 1]
        gens.append(tuple(g))
    else:  # D: flip-and-swap on the last two coordinates
        g = list(ident)
        g[m - 2], g[m - 1] = -ident[m - 1], -ident[m - 2]
        gens.append(tuple(g))
    return gens


def weyl_enumerate(spec: SeriesSpec) -> int:
    """Order of the group generated by the simple reflections, by explicit closure."""
    if spec.rank > _ENUM_RANK_CAP:
        raise ValueError(
            f"enumeration capped at rank {_ENUM_RANK_CAP} (combinatorial explosion)"
        )
    gens = _simple_reflections(spec)
    identity = tuple(range(1, len(gens[0]) + 1))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                wg = _compose(w, g)
                if wg not in seen:
                    seen.add(wg)
                    nxt.append(wg)
        frontier = nxt
    return len(seen)


# ---------------------------------------------------------------------------
# Homogeneous spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomogeneousKTheory:
    group: GradedGroup
    spot_groups: tuple[GradedGroup, ...]  # cohomology at wedge^d spots, d = 0..n
    spot_ranks: tuple[int, ...]
    exactness: RankExactnessReport

    @property
    def nonzero_ranks(self) -> tuple[int, ...]:
        return tuple(r for r in self.spot_ranks if r)


def _check_pair(big: SeriesSpec, small: SeriesSpec) -> tuple[int, int]:
    if big.series != small.series:
        raise ValueError(
            f"series mismatch: {big} and {small} must lie in the same series"
        )
    if small.rank >= big.rank:
        raise ValueError(f"need k < n, got k={small.rank}, n={big.rank}")
    return big.rank, small.rank


def _homogeneous_covector(n: int, k: int) -> Covector:
    entries = [one_minus_var(i, k) for i in range(1, k + 1)]
    entries += [LaurentPoly.zero(k)] * (n - k)
    return Covector(tuple(entries), k)


def homogeneous_ktheory(
    big: SeriesSpec, small: SeriesSpec, trials: int = 8, seed: int = 0
) -> HomogeneousKTheory:
    """K-theory of G_n / G_k for a nested same-series pair, k < n.

    The small group is assumed simply connected (Spin for the B/D
    series), which is what lets its representation ring slot in as the
    coefficient module.
    """
    n, k = _check_pair(big, small)
    v = _homogeneous_covector(n, k)
    zeros, reduced = split_reduction(v)
    regular_cx = build_symbolic(reduced)
    report = generic_rank_exactness(regular_cx, trials=trials, seed=seed)
    if not report.all_consistent:
        raise RuntimeError(
            f"exactness witnesses failed for the regular part of {big}/{small}"
        )
    if not endpoint_augmentation_surjective(regular_cx):
        raise RuntimeError(
            f"endpoint augmentation check failed for {big}/{small}"
        )
    # Regular sequence of length k: all cohomology dies except a single Z
    # (the augmentation quotient) at the endpoint spot.
    regular_spots = [GradedGroup(FGAbelianGroup.free(1), FGAbelianGroup.trivial())]
    regular_spots += [GradedGroup() for _ in range(k)]
    spot_groups = convolve_with_exterior(regular_spots, zeros)
    group = assemble_final(spot_groups)
    return HomogeneousKTheory(
        group=group,
        spot_groups=tuple(spot_groups),
        spot_ranks=tuple(g.even.free_rank + g.odd.free_rank for g in spot_groups),
        exactness=report,
    )


def homogeneous_tower(
    big: SeriesSpec, small: SeriesSpec, trials: int = 8, seed: int = 0
) -> TowerReport:
    """Per-level report for the homogeneous-space tower.

    Level l keeps spots 0..n-l.  The kernel summand at the top retained
    spot is a module over the rank-k Laurent ring (free-rank recorded,
    infinite rank as an abelian group), so it is reported by its module
    rank next to the finitely generated part.
    """
    n, k = _check_pair(big, small)
    kth = homogeneous_ktheory(big, small, trials=trials, seed=seed)
    full_cx = build_symbolic(_homogeneous_covector(n, k))
    full_report = generic_rank_exactness(full_cx, trials=trials, seed=seed)

    levels = []
    for l in range(n - 1, 0, -1):
        top = n - l
        fg = GradedGroup()
        for d in range(top):
            fg = fg.direct_sum(suspend_by(kth.spot_groups[d], d))
        kernel_rank = comb(n, top) - full_report.observed_rank(top)
        levels.append(
            TowerLevel(
                level=l,
                group=fg,
                ambiguous=False,
                reasons=(),
                kernel_module_rank=kernel_rank,
                kernel_suspension=top % 2,
            )
        )
    return TowerReport(
        n=n,
        levels=tuple(levels),
        final=kth.group,
        ambiguous=False,
        reasons=(),
        cohomology=kth.spot_groups,
    )
