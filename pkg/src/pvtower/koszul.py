"""Koszul complexes in the two regimes the solvers need.

Symbolic mode: wedge powers of Z^n tensored with a Laurent ring, with
differentials given by contraction against a covector.  Cohomology over
the ring is not computed in general; regular covectors of the shape
(1 - t_i) are resolved by the structure theorem, witnessed by seeded
generic-rank checks, and covectors with vanishing entries are peeled off
by :func:`split_reduction`.

Datum mode: a finitely generated Z/2-graded group carrying n pairwise
commuting graded endomorphisms beta_i; the differential is contraction
against (1 - beta_1, ..., 1 - beta_n) realized as block integer
matrices, and cohomology is exact via Smith normal form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .abgroup import (
    FGAbelianGroup,
    GradedGroup,
    IntMatrix,
    LatticeSolveError,
    block_diag,
    column_span_basis,
    cokernel,
    hstack,
    kernel_basis,
    rational_rank,
    solve_exact,
    subquotient,
)
from .exterior import Covector, exterior_basis
from .ring import PolyMatrix

PARITIES = ("even", "odd")


class DatumError(ValueError):
    """The module datum violates one of its structural invariants."""


@dataclass(frozen=True)
class Presentation:
    """One parity of the input group: Z^free_rank modulo the row span of relations."""

    free_rank: int
    relations: IntMatrix  # shape (num_relations, free_rank)

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise DatumError("negative free rank")
        if self.relations.cols != self.free_rank:
            raise DatumError(
                f"relations have {self.relations.cols} columns, expected {self.free_rank}"
            )

    @classmethod
    def free(cls, rank: int) -> "Presentation":
        return cls(rank, IntMatrix.zeros(0, rank))

    @classmethod
    def of(cls, free_rank: int, relation_rows: list[list[int]]) -> "Presentation":
        return cls(free_rank, IntMatrix.from_rows(relation_rows, free_rank))

    def relation_columns(self) -> IntMatrix:
        return self.relations.transpose()

    def group(self) -> FGAbelianGroup:
        return cokernel(self.relation_columns())


@dataclass(frozen=True)
class GradedEndo:
    """A degree-zero endomorphism: one square matrix per parity, columns are images."""

    even: IntMatrix
    odd: IntMatrix

    def part(self, parity: str) -> IntMatrix:
        return self.even if parity == "even" else self.odd


@dataclass(frozen=True)
class ModuleDatum:
    """Graded group presentation with n commuting graded endomorphisms."""

    even: Presentation
    odd: Presentation
    endos: tuple[GradedEndo, ...]

    def __post_init__(self) -> None:
        for i, e in enumerate(self.endos):
            for parity in PARITIES:
                g = self.presentation(parity).free_rank
                mat = e.part(parity)
                if (mat.rows, mat.cols) != (g, g):
                    raise DatumError(
                        f"endos[{i}].{parity} has shape {mat.rows}x{mat.cols}, expected {g}x{g}"
                    )
        self._validate_well_defined()
        self._validate_commuting()

    @property
    def n(self) -> int:
        return len(self.endos)

    def presentation(self, parity: str) -> Presentation:
        return self.even if parity == "even" else self.odd

    def group(self) -> GradedGroup:
        return GradedGroup(self.even.group(), self.odd.group())

    def _lattice_basis(self, parity: str) -> IntMatrix:
        return column_span_basis(self.presentation(parity).relation_columns())

    def _validate_well_defined(self) -> None:
        for parity in PARITIES:
            rel = self.presentation(parity).relation_columns()
            if rel.cols == 0:
                continue
            basis = column_span_basis(rel)
            for i, e in enumerate(self.endos):
                try:
                    solve_exact(basis, e.part(parity) @ rel)
                except LatticeSolveError:
                    raise DatumError(
                        f"endos[{i}].{parity} does not preserve the relation lattice"
                    ) from None

    def _validate_commuting(self) -> None:
        for parity in PARITIES:
            rel = self.presentation(parity).relation_columns()
            basis = column_span_basis(rel) if rel.cols else None
            for i in range(len(self.endos)):
                for j in range(i + 1, len(self.endos)):
                    a = self.endos[i].part(parity)
                    b = self.endos[j].part(parity)
                    comm = a @ b - b @ a
                    if comm.is_zero:
                        continue
                    if basis is None:
                        raise DatumError(
                            f"endos[{i}] and endos[{j}] do not commute ({parity} part)"
                        )
                    try:
                        solve_exact(basis, comm)
                    except LatticeSolveError:
                        raise DatumError(
                            f"endos[{i}] and endos[{j}] do not commute ({parity} part)"
                        ) from None

    # -- JSON wire format ----------------------------------------------

    def to_json_dict(self) -> dict:
        def pres(p: Presentation) -> dict:
            return {
                "free_rank": p.free_rank,
                "relations": [list(row) for row in p.relations.entries],
            }

        return {
            "n": self.n,
            "even": pres(self.even),
            "odd": pres(self.odd),
            "endos": [
                {
                    "even": [list(r) for r in e.even.entries],
                    "odd": [list(r) for r in e.odd.entries],
                }
                for e in self.endos
            ],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ModuleDatum":
        def pres(d: dict, where: str) -> Presentation:
            unknown = set(d) - {"free_rank", "relations"}
            if unknown:
                raise DatumError(f"{where}: unknown field {sorted(unknown)[0]!r}")
            if "free_rank" not in d:
                raise DatumError(f"{where}.free_rank: missing")
            g = d["free_rank"]
            if not isinstance(g, int) or g < 0:
                raise DatumError(f"{where}.free_rank: expected a nonnegative integer")
            rel = d.get("relations", [])
            if not isinstance(rel, list):
                raise DatumError(f"{where}.relations: expected a list of rows")
            rows = []
            for r, row in enumerate(rel):
                if not isinstance(row, list) or len(row) != g or not all(
                    isinstance(x, int) for x in row
                ):
                    raise DatumError(
                        f"{where}.relations[{r}]: expected a row of {g} integers"
                    )
                rows.append(row)
            return Presentation(g, IntMatrix.from_rows(rows, g))

        unknown = set(obj) - {"n", "even", "odd", "endos"}
        if unknown:
            raise DatumError(f"datum: unknown field {sorted(unknown)[0]!r}")
        for key in ("n", "even", "odd", "endos"):
            if key not in obj:
                raise DatumError(f"datum.{key}: missing")
        even = pres(obj["even"], "datum.even")
        odd = pres(obj["odd"], "datum.odd")
        if not isinstance(obj["endos"], list):
            raise DatumError("datum.endos: expected a list")
        if not isinstance(obj["n"], int) or obj["n"] != len(obj["endos"]):
            raise DatumError("datum.n: must equal the number of endomorphisms")

        def square(mat: object, size: int, where: str) -> IntMatrix:
            if not isinstance(mat, list) or len(mat) != size:
                raise DatumError(f"{where}: expected {size} rows")
            rows = []
            for r, row in enumerate(mat):
                if not isinstance(row, list) or len(row) != size or not all(
                    isinstance(x, int) for x in row
                ):
                    raise DatumError(f"{where}[{r}]: expected a row of {size} integers")
                rows.append(row)
            return IntMatrix.from_rows(rows, size)

        endos = []
        for i, e in enumerate(obj["endos"]):
            if not isinstance(e, dict):
                raise DatumError(f"datum.endos[{i}]: expected an object")
            unknown = set(e) - {"even", "odd"}
            if unknown:
                raise DatumError(f"datum.endos[{i}]: unknown field {sorted(unknown)[0]!r}")
            if "even" not in e or "odd" not in e:
                raise DatumError(f"datum.endos[{i}]: needs 'even' and 'odd' matrices")
            endos.append(
                GradedEndo(
                    square(e["even"], even.free_rank, f"datum.endos[{i}].even"),
                    square(e["odd"], odd.free_rank, f"datum.endos[{i}].odd"),
                )
            )
        return cls(even, odd, tuple(endos))


# ---------------------------------------------------------------------------
# Complex construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KoszulComplex:
    """Spots wedge^d (d = n..0) with contraction differentials d_j: spot j -> spot j-1.

    ``symbolic_diffs[j-1]`` (or ``even_diffs``/``odd_diffs``) holds d_j.
    In datum mode consecutive differentials compose to zero modulo the
    spot relation lattice (exactly zero when the input group is free).
    """

    n: int
    mode: str  # "symbolic" | "datum"
    ranks: tuple[int, ...]  # ranks[d] = C(n, d)
    covector: Covector | None = None
    symbolic_diffs: tuple[PolyMatrix, ...] = ()
    datum: ModuleDatum | None = None
    even_diffs: tuple[IntMatrix, ...] = ()
    odd_diffs: tuple[IntMatrix, ...] = ()

    def differential(self, j: int, parity: str | None = None):
        """d_j: spot j -> spot j-1, j in 1..n."""
        if not 1 <= j <= self.n:
            raise ValueError(f"differential index {j} out of range 1..{self.n}")
        if self.mode == "symbolic":
            return self.symbolic_diffs[j - 1]
        return (self.even_diffs if parity == "even" else self.odd_diffs)[j - 1]


def build_symbolic(v: Covector) -> KoszulComplex:
    """Koszul complex of contraction against v over the Laurent ring."""
    from .exterior import koszul_matrix

    n = v.n
    diffs = tuple(koszul_matrix(v, j) for j in range(1, n + 1))
    for j in range(n - 1):
        if not (diffs[j] @ diffs[j + 1]).is_zero:
            raise AssertionError("consecutive Koszul differentials do not compose to zero")
    return KoszulComplex(
        n=n,
        mode="symbolic",
        ranks=tuple(comb(n, d) for d in range(n + 1)),
        covector=v,
        symbolic_diffs=diffs,
    )


def _block_contraction(n: int, j: int, blocks: list[IntMatrix], g: int) -> IntMatrix:
    """Matrix of contraction against (blocks[0], ..., blocks[n-1]) from spot j to j-1."""
    rows_basis = exterior_basis(n, j - 1)
    cols_basis = exterior_basis(n, j)
    row_pos = {idx.subset: r for r, idx in enumerate(rows_basis)}
    grid = [[0] * (len(cols_basis) * g) for _ in range(len(rows_basis) * g)]
    for c, S in enumerate(cols_basis):
        for p, s in enumerate(S.subset, start=1):
            r = row_pos[tuple(x for x in S.subset if x != s)]
            sign = -1 if p % 2 == 0 else 1
            blk = blocks[s - 1]
            for a in range(g):
                for b in range(g):
                    grid[r * g + a][c * g + b] += sign * blk.entries[a][b]
    return IntMatrix.from_rows(grid, len(cols_basis) * g)


def spot_relations(datum: ModuleDatum, d: int, parity: str) -> IntMatrix:
    """Relation lattice of spot d (columns), one block per basis subset."""
    rel = datum.presentation(parity).relation_columns()
    copies = comb(datum.n, d)
    if rel.cols == 0:
        return IntMatrix.zeros(copies * rel.rows, 0)
    return block_diag([rel] * copies)


def build_datum(datum: ModuleDatum) -> KoszulComplex:
    """Koszul complex of contraction against (1 - beta_1, ..., 1 - beta_n)."""
    n = datum.n
    per_parity: dict[str, tuple[IntMatrix, ...]] = {}
    for parity in PARITIES:
        g = datum.presentation(parity).free_rank
        blocks = [
            IntMatrix.identity(g) - e.part(parity) for e in datum.endos
        ]
        diffs = tuple(_block_contraction(n, j, blocks, g) for j in range(1, n + 1))
        # d_j d_{j+1} lands in the relation lattice; exactly zero for free input.
        for j in range(n - 1):
            prod = diffs[j] @ diffs[j + 1]
            if prod.is_zero:
                continue
            rel = spot_relations(datum, j, parity)
            if rel.cols == 0:
                raise AssertionError("consecutive differentials do not compose to zero")
            try:
                solve_exact(column_span_basis(rel), prod)
            except LatticeSolveError:
                raise AssertionError(
                    "consecutive differentials do not compose to zero modulo relations"
                ) from None
        per_parity[parity] = diffs
    return KoszulComplex(
        n=n,
        mode="datum",
        ranks=tuple(comb(n, d) for d in range(n + 1)),
        datum=datum,
        even_diffs=per_parity["even"],
        odd_diffs=per_parity["odd"],
    )


# ---------------------------------------------------------------------------
# Datum-mode cohomology
# ---------------------------------------------------------------------------


def _cycle_span(cx: KoszulComplex, d: int, parity: str) -> IntMatrix:
    """Columns spanning {x in spot d : d_d(x) lies in the target relation lattice}."""
    datum = cx.datum
    assert datum is not None
    g = datum.presentation(parity).free_rank
    dim = comb(cx.n, d) * g
    if d == 0:
        return IntMatrix.identity(dim)
    dmat = cx.differential(d, parity)
    target_rel = spot_relations(datum, d - 1, parity)
    ker = kernel_basis(hstack(dmat, target_rel))
    return ker.take_rows(0, dim)


def datum_spot_cohomology(cx: KoszulComplex, d: int) -> GradedGroup:
    """Homology at spot d of a datum-mode complex, one group per parity."""
    if cx.mode != "datum":
        raise ValueError("datum-mode complex required")
    datum = cx.datum
    assert datum is not None
    parts = {}
    for parity in PARITIES:
        own_rel = spot_relations(datum, d, parity)
        cycles = _cycle_span(cx, d, parity)
        numerator = hstack(cycles, own_rel)
        if d < cx.n:
            incoming = cx.differential(d + 1, parity)
            denominator = hstack(incoming, own_rel)
        else:
            denominator = own_rel
        parts[parity] = subquotient(numerator, denominator)
    return GradedGroup(parts["even"], parts["odd"])


def datum_cohomology(datum: ModuleDatum) -> list[GradedGroup]:
    """Cohomology of the datum Koszul complex at every spot d = 0..n."""
    cx = build_datum(datum)
    return [datum_spot_cohomology(cx, d) for d in range(cx.n + 1)]


def datum_spot_kernel(cx: KoszulComplex, d: int) -> GradedGroup:
    """The kernel of d_d on the quotient spot-d group (d = 1..n)."""
    if cx.mode != "datum":
        raise ValueError("datum-mode complex required")
    datum = cx.datum
    assert datum is not None
    parts = {}
    for parity in PARITIES:
        own_rel = spot_relations(datum, d, parity)
        cycles = _cycle_span(cx, d, parity)
        parts[parity] = subquotient(hstack(cycles, own_rel), own_rel)
    return GradedGroup(parts["even"], parts["odd"])


# ---------------------------------------------------------------------------
# Zero-entry splitting
# ---------------------------------------------------------------------------


def split_reduction(v: Covector) -> tuple[int, Covector]:
    """Count and delete identically-zero entries of v.

    Cohomology of the full complex is the cohomology of the reduced one
    convolved with the exterior algebra on the deleted directions; the
    convolution itself is :func:`convolve_with_exterior`.
    """
    kept = [p for p in v.entries if not p.is_zero]
    zeros = v.n - len(kept)
    return zeros, Covector(tuple(kept), v.nvars)


def convolve_with_exterior(spot_groups: list[GradedGroup], z: int) -> list[GradedGroup]:
    """Tensor spot-indexed cohomology with wedge* Z^z.

    Deleted zero directions contribute pure degree shifts: the output at
    spot d collects C(z, a) copies of the input at spot d - a.  Suspension
    bookkeeping happens downstream, where spot d carries shift Sigma^d, so
    the convolution itself works with plain groups.
    """
    n_in = len(spot_groups) - 1
    out = []
    for d in range(n_in + z + 1):
        acc = GradedGroup()
        for a in range(z + 1):
            if 0 <= d - a <= n_in:
                acc = acc.direct_sum(spot_groups[d - a].repeated(comb(z, a)))
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Generic-rank exactness witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpotRankReport:
    spot: int
    module_rank: int  # rank of the free middle module at this spot
    observed_rank: int  # max over trials of rank d_spot at the sample points
    consistent: bool  # rank d_j + rank d_{j+1} == C(n, j) in every trial


@dataclass(frozen=True)
class RankExactnessReport:
    n: int
    trials: int
    seed: int
    spots: tuple[SpotRankReport, ...]  # spots 1..n

    @property
    def all_consistent(self) -> bool:
        return all(s.consistent for s in self.spots)

    @property
    def interior_consistent(self) -> bool:
        return all(s.consistent for s in self.spots if s.spot < self.n)

    def observed_rank(self, j: int) -> int:
        return self.spots[j - 1].observed_rank


def _sample_point(rng: random.Random, nvars: int, bound: int) -> list[Fraction]:
    point = []
    for _ in range(nvars):
        while True:
            num = rng.randint(-bound, bound)
            den = rng.randint(1, bound)
            if num == 0:
                continue
            val = Fraction(num, den)
            if val == 1:  # the common zero locus of every 1 - t_i
                continue
            point.append(val)
            break
    return point


def generic_rank_exactness(
    cx: KoszulComplex, trials: int = 8, seed: int = 0, bound: int = 9
) -> RankExactnessReport:
    """Monte Carlo exactness witnesses for a symbolic complex.

    Substitutes independent random nonzero rationals for the variables,
    computes differential ranks over Q, and checks the rank bookkeeping
    rank(d_j) + rank(d_{j+1}) = C(n, j) that exactness at spot j forces.
    """
    if cx.mode != "symbolic":
        raise ValueError("symbolic-mode complex required")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    n = cx.n
    nvars = cx.covector.nvars if cx.covector is not None else 0
    rng = random.Random(seed)
    observed = [0] * (n + 2)  # observed[j] = max rank of d_j; d_{n+1} = 0
    consistent = [True] * (n + 1)
    for _ in range(trials):
        point = _sample_point(rng, nvars, bound)
        ranks = [0] * (n + 2)
        for j in range(1, n + 1):
            ranks[j] = rational_rank(cx.differential(j).evaluate(point))
            observed[j] = max(observed[j], ranks[j])
        for j in range(1, n + 1):
            if ranks[j] + ranks[j + 1] != comb(n, j):
                consistent[j] = False
    spots = tuple(
        SpotRankReport(
            spot=j,
            module_rank=comb(n, j),
            observed_rank=observed[j],
            consistent=consistent[j],
        )
        for j in range(1, n + 1)
    )
    return RankExactnessReport(n=n, trials=trials, seed=seed, spots=spots)


def endpoint_augmentation_surjective(cx: KoszulComplex) -> bool:
    """Whether the endpoint cokernel surjects onto Z via augmentation.

    True exactly when every covector entry has augmentation zero, so the
    image of d_1 lies inside the augmentation ideal.
    """
    if cx.mode != "symbolic" or cx.covector is None:
        raise ValueError("symbolic-mode complex required")
    return all(p.augmentation() == 0 for p in cx.covector.entries)
