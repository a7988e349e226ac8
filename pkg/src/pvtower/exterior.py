"""Exterior powers of Z^n and interior multiplication by a covector.

Basis elements of wedge^j Z^n are indexed by strictly increasing subsets
of {1, ..., n} in lexicographic order; that order is the fixed basis
convention for every matrix produced here.  The sign convention for
interior multiplication is (-1)^(p-1) where p is the 1-based position of
the removed index in the sorted subset.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .ring import LaurentPoly, PolyMatrix, one_minus_var


@dataclass(frozen=True, order=True)
class ExteriorIndex:
    """A basis element e_S of wedge^|S| Z^n, S a sorted subset of {1..n}."""

    subset: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        prev = 0
        for s in self.subset:
            if s <= prev:
                raise ValueError(f"subset {self.subset} is not strictly increasing")
            prev = s
        if self.subset and not (1 <= self.subset[0] and self.subset[-1] <= self.n):
            raise ValueError(f"subset {self.subset} not contained in 1..{self.n}")

    @property
    def degree(self) -> int:
        return len(self.subset)

    def remove(self, s: int) -> "ExteriorIndex":
        if s not in self.subset:
            raise ValueError(f"{s} not in {self.subset}")
        return ExteriorIndex(tuple(x for x in self.subset if x != s), self.n)

    def position(self, s: int) -> int:
        """1-based position of s in the sorted subset."""
        return self.subset.index(s) + 1


def exterior_basis(n: int, j: int) -> list[ExteriorIndex]:
    """All C(n, j) basis indices of wedge^j Z^n in lexicographic order."""
    if not 0 <= j <= n:
        raise ValueError(f"degree {j} out of range 0..{n}")
    return [ExteriorIndex(S, n) for S in combinations(range(1, n + 1), j)]


@dataclass(frozen=True)
class Covector:
    """An element of Hom(Z^n (x) R, R): entries[i] is the coefficient of e_{i+1}*."""

    entries: tuple[LaurentPoly, ...]
    nvars: int

    def __post_init__(self) -> None:
        for p in self.entries:
            if p.nvars != self.nvars:
                raise ValueError(
                    f"covector entry has {p.nvars} variables, expected {self.nvars}"
                )

    @classmethod
    def of(cls, entries: Sequence[LaurentPoly], nvars: int | None = None) -> "Covector":
        if nvars is None:
            if not entries:
                raise ValueError("nvars required for an empty covector")
            nvars = entries[0].nvars
        return cls(tuple(entries), nvars)

    @classmethod
    def standard(cls, n: int) -> "Covector":
        """(1 - t_1, ..., 1 - t_n) over the rank-n Laurent ring."""
        return cls(tuple(one_minus_var(i, n) for i in range(1, n + 1)), n)

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, i: int) -> LaurentPoly:
        """Coefficient of e_i*, i in 1..n."""
        return self.entries[i - 1]

    def zero_positions(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if self.entry(i).is_zero)


def interior_mul(v: Covector, index: ExteriorIndex) -> list[tuple[LaurentPoly, ExteriorIndex]]:
    """Contraction of the basis element e_S against v.

    Returns the formal sum sum_p (-1)^(p-1) v_{s_p} e_{S \\ {s_p}}; the
    empty subset contracts to the empty sum.
    """
    if v.n != index.n:
        raise ValueError(f"covector rank {v.n} does not match index rank {index.n}")
    out = []
    for p, s in enumerate(index.subset, start=1):
        coeff = v.entry(s)
        if p % 2 == 0:
            coeff = -coeff
        out.append((coeff, index.remove(s)))
    return out


def koszul_matrix(v: Covector, j: int) -> PolyMatrix:
    """Matrix of contraction wedge^j -> wedge^(j-1) in the fixed basis order.

    Shape is C(n, j-1) x C(n, j).
    """
    n = v.n
    if not 1 <= j <= n:
        raise ValueError(f"degree {j} out of range 1..{n}")
    rows = exterior_basis(n, j - 1)
    cols = exterior_basis(n, j)
    row_pos = {idx.subset: r for r, idx in enumerate(rows)}
    zero = LaurentPoly.zero(v.nvars)
    grid = [[zero for _ in cols] for _ in rows]
    for c, S in enumerate(cols):
        for coeff, T in interior_mul(v, S):
            grid[row_pos[T.subset]][c] = grid[row_pos[T.subset]][c] + coeff
    return PolyMatrix(len(rows), len(cols), v.nvars, tuple(tuple(r) for r in grid))
