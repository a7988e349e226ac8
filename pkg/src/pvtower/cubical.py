"""Equivariant cellular cochain complex of R^n from the cubical face structure.

R^n carries the product CW structure with vertices on the integer
lattice; the faces of the semi-open unit cube [0,1[^n through the origin
are orbit representatives for the translation action.  Equivariant
cochains form free modules over Z[t1^{+-1}, ..., tn^{+-1}] with one
generator per face, and the cochain differential is assembled here by
enumerating actual face boundaries, independently of any contraction
formula.  Comparing the two is the job of :func:`oracle_compare`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exterior import Covector, ExteriorIndex, exterior_basis, koszul_matrix
from .ring import LaurentPoly, PolyMatrix


@dataclass(frozen=True)
class CubeFace:
    """Open face of [0,1[^n through the origin; free coordinates range in ]0,1[."""

    free: ExteriorIndex
    n: int

    def __post_init__(self) -> None:
        if self.free.n != self.n:
            raise ValueError("free-set rank does not match ambient rank")

    @property
    def dimension(self) -> int:
        return self.free.degree


def enumerate_faces(n: int, d: int) -> list[CubeFace]:
    """All C(n, d) d-dimensional faces, ordered by their free sets."""
    if not 0 <= d <= n:
        raise ValueError(f"dimension {d} out of range 0..{n}")
    return [CubeFace(idx, n) for idx in exterior_basis(n, d)]


@dataclass(frozen=True)
class BoundaryPart:
    """One boundary face of a cube face.

    ``translated`` is False for the face pinned at coordinate 0 (the
    orbit representative itself) and True for the face at coordinate 1,
    which is the representative moved by the deck translation in
    ``direction``.
    """

    face: CubeFace
    direction: int
    sign: int  # orientation sign (-1)^(p-1) from dropping the p-th free coordinate
    translated: bool


def face_boundary(face: CubeFace) -> list[BoundaryPart]:
    parts = []
    for p, s in enumerate(face.free.subset, start=1):
        sub = CubeFace(face.free.remove(s), face.n)
        sign = -1 if p % 2 == 0 else 1
        parts.append(BoundaryPart(sub, s, sign, translated=False))
        parts.append(BoundaryPart(sub, s, sign, translated=True))
    return parts


def cellular_differential(n: int, d: int) -> PolyMatrix:
    """Equivariant cochain map from d-face cochains to (d-1)-face cochains.

    The face at coordinate 0 contributes sign * 1; the face at
    coordinate 1 contributes sign * (-t_s), the deck translation showing
    up as the ring variable.
    """
    if not 1 <= d <= n:
        raise ValueError(f"dimension {d} out of range 1..{n}")
    rows = enumerate_faces(n, d - 1)
    cols = enumerate_faces(n, d)
    row_pos = {f.free.subset: r for r, f in enumerate(rows)}
    zero = LaurentPoly.zero(n)
    grid = [[zero for _ in cols] for _ in rows]
    for c, face in enumerate(cols):
        for part in face_boundary(face):
            r = row_pos[part.face.free.subset]
            if part.translated:
                contrib = LaurentPoly.variable(part.direction, n) * (-part.sign)
            else:
                contrib = LaurentPoly.constant(part.sign, n)
            grid[r][c] = grid[r][c] + contrib
    return PolyMatrix(len(rows), len(cols), n, tuple(tuple(r) for r in grid))


def face_counts(n: int) -> list[int]:
    """Number of (i-1)-dimensional faces for i = 1..n+1; equals C(n, i-1)."""
    return [len(enumerate_faces(n, i - 1)) for i in range(1, n + 2)]


def oracle_compare(n: int) -> bool:
    """Match the cubical cochain matrices against contraction by (1 - t_i).

    Searches for one sign vector per spot (diagonal +-1 change of basis,
    shared across consecutive differentials) under which every cellular
    matrix equals the corresponding contraction matrix.  Sign choices are
    propagated entry by entry, exactly.
    """
    if n < 1:
        raise ValueError("rank must be at least 1")
    v = Covector.standard(n)
    cellular = {d: cellular_differential(n, d) for d in range(1, n + 1)}
    contraction = {d: koszul_matrix(v, d) for d in range(1, n + 1)}

    # One constraint per jointly nonzero entry: sign(row node) * sign(col node)
    # must equal the +-1 ratio of the two entries.
    edges: list[tuple[tuple[int, int], tuple[int, int], int]] = []
    for d in range(1, n + 1):
        cell, kos = cellular[d], contraction[d]
        for r in range(cell.rows):
            for c in range(cell.cols):
                a, b = cell.entries[r][c], kos.entries[r][c]
                if a.is_zero and b.is_zero:
                    continue
                if a == b:
                    ratio = 1
                elif a == -b:
                    ratio = -1
                else:
                    return False  # entries differ by more than a sign
                edges.append(((d - 1, r), (d, c), ratio))

    # Propagate spot-basis signs over the constraint graph.
    sign: dict[tuple[int, int], int] = {}
    adj: dict[tuple[int, int], list[tuple[tuple[int, int], int]]] = {}
    for a, b, ratio in edges:
        adj.setdefault(a, []).append((b, ratio))
        adj.setdefault(b, []).append((a, ratio))
    for node in adj:
        if node in sign:
            continue
        sign[node] = 1
        stack = [node]
        while stack:
            cur = stack.pop()
            for nxt, ratio in adj[cur]:
                want = sign[cur] * ratio
                if nxt not in sign:
                    sign[nxt] = want
                    stack.append(nxt)
                elif sign[nxt] != want:
                    return False
    return True
