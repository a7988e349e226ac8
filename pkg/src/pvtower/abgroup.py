"""Finitely generated abelian groups and exact integer linear algebra.

The workhorse is Smith normal form with full transform tracking
(U, D, V and their inverses), from which kernels, cokernels, lattice
bases and subquotients all follow.  Groups are always reduced to
invariant-factor canonical form, so equality of ``FGAbelianGroup``
values is isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Immutable rectangular matrix with arbitrary-precision integer entries."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def column(cls, values: Sequence[int]) -> "IntMatrix":
        return cls(len(values), 1, tuple((int(v),) for v in values))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        out = []
        for i in range(self.rows):
            srow = self.entries[i]
            row = []
            for j in range(other.cols):
                row.append(sum(srow[k] * other.entries[k][j] for k in range(self.cols)))
            out.append(tuple(row))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + other.scale(-1)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(
            self.rows, self.cols, tuple(tuple(c * x for x in row) for row in self.entries)
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def take_rows(self, start: int, stop: int) -> "IntMatrix":
        return IntMatrix(stop - start, self.cols, self.entries[start:stop])

    def take_cols(self, start: int, stop: int) -> "IntMatrix":
        return IntMatrix(
            self.rows, stop - start, tuple(row[start:stop] for row in self.entries)
        )

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(x) for x in row) for row in self.entries) + "]"


def hstack(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.rows != b.rows:
        raise ValueError("row count mismatch in hstack")
    return IntMatrix(
        a.rows, a.cols + b.cols, tuple(ra + rb for ra, rb in zip(a.entries, b.entries))
    )


def vstack(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.cols:
        raise ValueError("column count mismatch in vstack")
    return IntMatrix(a.rows + b.rows, a.cols, a.entries + b.entries)


def block_diag(blocks: Sequence[IntMatrix]) -> IntMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    grid = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                grid[r0 + i][c0 + j] = b.entries[i][j]
        r0 += b.rows
        c0 += b.cols
    return IntMatrix.from_rows(grid, cols)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithNormalForm:
    """M = U @ D @ V with U, V unimodular and D a nonnegative divisor chain."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    Uinv: IntMatrix
    Vinv: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        return self.D.diagonal()


def snf(m: IntMatrix) -> SmithNormalForm:
    """Smith normal form with tracked unimodular transforms.

    Pivot policy: the nonzero entry of minimal absolute value in the
    working submatrix, ties broken by row-major position.  This bounds
    intermediate entry growth and makes the output deterministic.
    """
    rows, cols = m.rows, m.cols
    d = [list(row) for row in m.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    uinv = [row[:] for row in u]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    vinv = [row[:] for row in v]

    # Maintain m = U D V; every elementary op on D updates the transforms.
    def row_add(i: int, k: int, q: int) -> None:  # row i += q * row k
        di, dk = d[i], d[k]
        for j in range(cols):
            di[j] += q * dk[j]
        for r in range(rows):
            u[r][k] -= q * u[r][i]
        ui, uk = uinv[i], uinv[k]
        for j in range(rows):
            ui[j] += q * uk[j]

    def row_swap(i: int, k: int) -> None:
        d[i], d[k] = d[k], d[i]
        for r in range(rows):
            u[r][i], u[r][k] = u[r][k], u[r][i]
        uinv[i], uinv[k] = uinv[k], uinv[i]

    def row_negate(i: int) -> None:
        d[i] = [-x for x in d[i]]
        for r in range(rows):
            u[r][i] = -u[r][i]
        uinv[i] = [-x for x in uinv[i]]

    def col_add(j: int, k: int, q: int) -> None:  # col j += q * col k
        for r in range(rows):
            d[r][j] += q * d[r][k]
        vj, vk = v[j], v[k]
        for c in range(cols):
            vk[c] -= q * vj[c]
        for r in range(cols):
            vinv[r][j] += q * vinv[r][k]

    def col_swap(j: int, k: int) -> None:
        for r in range(rows):
            d[r][j], d[r][k] = d[r][k], d[r][j]
        v[j], v[k] = v[k], v[j]
        for r in range(cols):
            vinv[r][j], vinv[r][k] = vinv[r][k], vinv[r][j]

    def find_pivot(k: int) -> tuple[int, int] | None:
        best = None
        best_abs = None
        for i in range(k, rows):
            for j in range(k, cols):
                val = d[i][j]
                if val != 0 and (best_abs is None or abs(val) < best_abs):
                    best, best_abs = (i, j), abs(val)
        return best

    k = 0
    limit = min(rows, cols)
    while k < limit:
        piv = find_pivot(k)
        if piv is None:
            break
        while True:
            pi, pj = piv
            if pi != k:
                row_swap(k, pi)
            if pj != k:
                col_swap(k, pj)
            if d[k][k] < 0:
                row_negate(k)
            # Clear row/column k modulo the pivot; leftovers shrink it.
            dirty = False
            for i in range(k + 1, rows):
                if d[i][k]:
                    q = d[i][k] // d[k][k]
                    if q:
                        row_add(i, k, -q)
                    if d[i][k]:
                        dirty = True
            for j in range(k + 1, cols):
                if d[k][j]:
                    q = d[k][j] // d[k][k]
                    if q:
                        col_add(j, k, -q)
                    if d[k][j]:
                        dirty = True
            if dirty:
                best = None
                best_abs = None
                for i in range(k, rows):
                    if d[i][k] and (best_abs is None or abs(d[i][k]) < best_abs):
                        best, best_abs = (i, k), abs(d[i][k])
                for j in range(k, cols):
                    if d[k][j] and (best_abs is None or abs(d[k][j]) < best_abs):
                        best, best_abs = (k, j), abs(d[k][j])
                piv = best
                continue
            # Divisor-chain enforcement: fold in any entry the pivot misses.
            p = d[k][k]
            offender = None
            for i in range(k + 1, rows):
                for j in range(k + 1, cols):
                    if d[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(k, offender, 1)
            piv = (k, k)
        k += 1

    return SmithNormalForm(
        U=IntMatrix.from_rows(u, rows),
        D=IntMatrix.from_rows(d, cols),
        V=IntMatrix.from_rows(v, cols),
        Uinv=IntMatrix.from_rows(uinv, rows),
        Vinv=IntMatrix.from_rows(vinv, cols),
    )


# ---------------------------------------------------------------------------
# Lattice toolkit
# ---------------------------------------------------------------------------


class LatticeSolveError(ValueError):
    """A vector lies outside the lattice it was solved against."""


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer kernel of m."""
    s = snf(m)
    diag = s.diagonal()
    free = [j for j in range(m.cols) if j >= len(diag) or diag[j] == 0]
    cols = [s.Vinv.col(j) for j in free]
    return IntMatrix(
        m.cols, len(cols), tuple(tuple(c[i] for c in cols) for i in range(m.cols))
    )


def column_span_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a basis of the lattice spanned by the columns of m."""
    s = snf(m)
    diag = s.diagonal()
    cols = [tuple(dj * x for x in s.U.col(j)) for j, dj in enumerate(diag) if dj != 0]
    return IntMatrix(
        m.rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(m.rows))
    )


def solve_exact(a: IntMatrix, y: IntMatrix) -> IntMatrix:
    """An integer solution X of a @ X = y; raises LatticeSolveError if none."""
    if a.rows != y.rows:
        raise ValueError("shape mismatch in solve_exact")
    s = snf(a)
    c = s.Uinv @ y
    diag = s.diagonal()
    w = [[0] * y.cols for _ in range(a.cols)]
    for i in range(a.rows):
        di = diag[i] if i < len(diag) else 0
        for j in range(y.cols):
            ci = c.entries[i][j]
            if di == 0:
                if ci != 0:
                    raise LatticeSolveError("target outside the column span")
            else:
                if ci % di:
                    raise LatticeSolveError("target outside the column span")
                if i < a.cols:
                    w[i][j] = ci // di
    return s.Vinv @ IntMatrix.from_rows(w, y.cols)


def in_column_span(a: IntMatrix, y: IntMatrix) -> bool:
    try:
        solve_exact(a, y)
        return True
    except LatticeSolveError:
        return False


def rational_rank(rows: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank over Q by exact Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        pivval = a[row][col]
        for i in range(row + 1, nrows):
            if a[i][col] != 0:
                f = a[i][col] / pivval
                for j in range(col, ncols):
                    a[i][j] -= f * a[row][j]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


# ---------------------------------------------------------------------------
# Finitely generated abelian groups
# ---------------------------------------------------------------------------


def normalize_invariant_factors(factors: Iterable[int]) -> tuple[int, ...]:
    """Reduce a multiset of cyclic orders to a divisor chain d1 | d2 | ..."""
    work = sorted(abs(int(f)) for f in factors if abs(int(f)) > 1)
    changed = True
    while changed:
        changed = False
        for i in range(len(work) - 1):
            a, b = work[i], work[i + 1]
            if b % a:
                g = gcd(a, b)
                work[i], work[i + 1] = g, a * b // g
                changed = True
        if changed:
            work = sorted(x for x in work if x > 1)
    return tuple(work)


@dataclass(frozen=True)
class FGAbelianGroup:
    """Isomorphism class of a finitely generated abelian group.

    Stored in invariant-factor canonical form: free rank plus a divisor
    chain of torsion orders, each at least 2.  Structural equality is
    isomorphism.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = 1
        for t in self.torsion:
            if t < 2:
                raise ValueError(f"torsion order {t} < 2")
            if t % prev:
                raise ValueError(f"torsion {self.torsion} is not a divisor chain")
            prev = t

    @classmethod
    def trivial(cls) -> "FGAbelianGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FGAbelianGroup":
        return cls(rank, ())

    @classmethod
    def from_invariants(cls, free_rank: int, factors: Iterable[int]) -> "FGAbelianGroup":
        return cls(free_rank, normalize_invariant_factors(factors))

    @property
    def rank(self) -> int:
        return self.free_rank

    @property
    def has_torsion(self) -> bool:
        return bool(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def direct_sum(self, other: "FGAbelianGroup") -> "FGAbelianGroup":
        return FGAbelianGroup.from_invariants(
            self.free_rank + other.free_rank, self.torsion + other.torsion
        )

    def repeated(self, copies: int) -> "FGAbelianGroup":
        if copies < 0:
            raise ValueError("negative multiplicity")
        return FGAbelianGroup.from_invariants(
            self.free_rank * copies, self.torsion * copies
        )

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def cokernel(m: IntMatrix) -> FGAbelianGroup:
    """Z^rows modulo the column span of m."""
    diag = snf(m).diagonal()
    nonzero = [x for x in diag if x != 0]
    return FGAbelianGroup.from_invariants(m.rows - len(nonzero), nonzero)


def kernel_rank(m: IntMatrix) -> int:
    return m.cols - len([x for x in snf(m).diagonal() if x != 0])


def subquotient(numerator: IntMatrix, denominator: IntMatrix) -> FGAbelianGroup:
    """The group (column span of numerator) / (column span of denominator).

    The denominator lattice must be contained in the numerator lattice.
    """
    if numerator.rows != denominator.rows:
        raise ValueError("ambient rank mismatch")
    basis = column_span_basis(numerator)
    if basis.cols == 0:
        if not denominator.is_zero:
            raise LatticeSolveError("denominator not contained in numerator")
        return FGAbelianGroup.trivial()
    coords = solve_exact(basis, denominator)
    diag = snf(coords).diagonal()
    nonzero = [x for x in diag if x != 0]
    return FGAbelianGroup.from_invariants(basis.cols - len(nonzero), nonzero)


class CompositionNotZero(ValueError):
    """d_out @ d_in was expected to vanish but does not."""


def homology(d_in: IntMatrix, d_out: IntMatrix) -> FGAbelianGroup:
    """ker(d_out) / im(d_in) for maps A --d_in--> B --d_out--> C."""
    if d_out.cols != d_in.rows:
        raise ValueError("middle dimension mismatch")
    if not (d_out @ d_in).is_zero:
        raise CompositionNotZero("d_out @ d_in != 0")
    return subquotient(kernel_basis(d_out), d_in)


@dataclass(frozen=True)
class GradedGroup:
    """Z/2-graded finitely generated abelian group."""

    even: FGAbelianGroup = field(default_factory=FGAbelianGroup.trivial)
    odd: FGAbelianGroup = field(default_factory=FGAbelianGroup.trivial)

    def suspend(self) -> "GradedGroup":
        return GradedGroup(self.odd, self.even)

    def direct_sum(self, other: "GradedGroup") -> "GradedGroup":
        return GradedGroup(
            self.even.direct_sum(other.even), self.odd.direct_sum(other.odd)
        )

    def repeated(self, copies: int) -> "GradedGroup":
        return GradedGroup(self.even.repeated(copies), self.odd.repeated(copies))

    @property
    def has_torsion(self) -> bool:
        return self.even.has_torsion or self.odd.has_torsion

    @property
    def is_trivial(self) -> bool:
        return self.even.is_trivial and self.odd.is_trivial

    def to_dict(self) -> dict[str, str]:
        return {"even": str(self.even), "odd": str(self.odd)}

    def __str__(self) -> str:
        return f"(even: {self.even}, odd: {self.odd})"


def graded_suspend(g: GradedGroup) -> GradedGroup:
    """Degree shift; an involution by Bott periodicity."""
    return g.suspend()
