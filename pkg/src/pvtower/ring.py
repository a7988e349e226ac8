"""Exact arithmetic in the Laurent ring Z[t1^{+-1}, ..., tn^{+-1}].

Polynomials are finite maps from exponent vectors to nonzero integer
coefficients.  Values are immutable and canonical: no zero coefficient is
ever stored, and two polynomials are equal iff their term maps are equal.
The variable count ``nvars`` is carried on every value and checked at
every operation boundary; silent broadcasts between rings of different
rank are the main failure mode this guards against.

Coefficients are arbitrary-precision ints; evaluation is exact over
``fractions.Fraction``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence


class VariableCountMismatch(ValueError):
    """Operands live in Laurent rings with different variable counts."""


def _same_ring(a: "LaurentPoly", b: "LaurentPoly") -> None:
    if a.nvars != b.nvars:
        raise VariableCountMismatch(
            f"operands have {a.nvars} and {b.nvars} variables"
        )


class LaurentPoly:
    """An element of Z[t1^{+-1}, ..., tn^{+-1}]."""

    __slots__ = ("_nvars", "_terms", "_key")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: dict[tuple[int, ...], int] = {}
        for exps, coeff in (terms or {}).items():
            vec = tuple(int(e) for e in exps)
            if len(vec) != nvars:
                raise ValueError(
                    f"exponent vector {vec} has length {len(vec)}, expected {nvars}"
                )
            c = int(coeff)
            if c:
                clean[vec] = clean.get(vec, 0) + c
                if clean[vec] == 0:
                    del clean[vec]
        self._nvars = nvars
        self._terms = clean
        self._key = tuple(sorted(clean.items()))

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, c: int, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int, power: int = 1) -> "LaurentPoly":
        """The monomial t_i^power, with i in 1..nvars."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} out of range 1..{nvars}")
        exps = [0] * nvars
        exps[i - 1] = power
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, coeff: int, exps: Sequence[int]) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): coeff})

    # -- basic queries ------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], int]]:
        return iter(self._key)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self._nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._nvars == other._nvars and self._key == other._key

    def __hash__(self) -> int:
        return hash((self._nvars, self._key))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring operations ----------------------------------------------

    def _coerce(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.constant(other, self._nvars)
        return other

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = self._coerce(other)
        _same_ring(self, other)
        out = dict(self._terms)
        for exps, c in other._terms.items():
            out[exps] = out.get(exps, 0) + c
        return LaurentPoly(self._nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self._nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = self._coerce(other)
        _same_ring(self, other)
        out: dict[tuple[int, ...], int] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = out.get(key, 0) + ca * cb
        return LaurentPoly(self._nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers of general polynomials are undefined")
        result = LaurentPoly.one(self._nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- evaluation ---------------------------------------------------

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        """Exact value at a point with all coordinates nonzero."""
        if len(point) != self._nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, expected {self._nvars}"
            )
        coords = [Fraction(p) for p in point]
        for i, p in enumerate(coords):
            if p == 0:
                raise ValueError(
                    f"coordinate {i + 1} is zero; negative exponents are undefined at 0"
                )
        total = Fraction(0)
        for exps, c in self._terms.items():
            val = Fraction(c)
            for p, e in zip(coords, exps):
                val *= p ** e
            total += val
        return total

    def augmentation(self) -> int:
        """Sum of all coefficients (every t_i sent to 1)."""
        return sum(self._terms.values())

    # -- text form ------------------------------------------------------
    #
    # Grammar: signed integer-coefficient monomials c*t1^a1*...*tn^an
    # joined by + / -, with zero exponents omitted.  The parser accepts
    # everything the printer emits (and implicit coefficient/exponent 1).

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for exps, coeff in self._key:
            mag = abs(coeff)
            factors = []
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                factors.append(f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}")
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            sign = "-" if coeff < 0 else "+"
            parts.append(f"{sign} {body}")
        head = parts[0]
        out = ("-" if head[0] == "-" else "") + head[2:]
        for part in parts[1:]:
            out += " " + part
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({self._nvars}, {str(self)!r})"


_TERM_RE = re.compile(
    r"^(?P<coeff>\d+)?(?P<stars>\*?)(?P<body>(?:t\d+(?:\^~?\d+)?)(?:\*t\d+(?:\^~?\d+)?)*)?$"
)
_FACTOR_RE = re.compile(r"t(\d+)(?:\^(~?\d+))?")


def parse_poly(text: str, nvars: int) -> LaurentPoly:
    """Parse the textual form produced by ``str(LaurentPoly)``."""
    compact = "".join(text.split())
    if not compact:
        raise ValueError("empty polynomial text")
    # Protect exponent minus signs before splitting on +/- separators.
    compact = compact.replace("^-", "^~")
    tokens = re.split(r"([+-])", compact)
    if tokens[0] == "":
        tokens = tokens[1:]
    else:
        tokens = ["+"] + tokens
    if len(tokens) % 2 != 0:
        raise ValueError(f"malformed polynomial text: {text!r}")
    terms: dict[tuple[int, ...], int] = {}
    for sign_tok, chunk in zip(tokens[::2], tokens[1::2]):
        if sign_tok not in "+-" or not chunk:
            raise ValueError(f"malformed polynomial text: {text!r}")
        m = _TERM_RE.match(chunk)
        if not m or (m.group("coeff") is None and not m.group("body")):
            raise ValueError(f"malformed term {chunk!r} in {text!r}")
        if m.group("coeff") is not None and m.group("body") and not m.group("stars"):
            raise ValueError(f"missing '*' between coefficient and variables in {chunk!r}")
        coeff = int(m.group("coeff") or 1)
        if sign_tok == "-":
            coeff = -coeff
        exps = [0] * nvars
        for var, power in _FACTOR_RE.findall(m.group("body") or ""):
            idx = int(var)
            if not 1 <= idx <= nvars:
                raise ValueError(f"variable t{idx} out of range for {nvars} variables")
            e = int(power.replace("~", "-")) if power else 1
            exps[idx - 1] += e
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return LaurentPoly(nvars, terms)


def one_minus_var(i: int, nvars: int) -> LaurentPoly:
    """The element 1 - t_i."""
    return LaurentPoly.one(nvars) - LaurentPoly.variable(i, nvars)


@dataclass(frozen=True)
class PolyMatrix:
    """Rectangular matrix over a fixed Laurent ring."""

    rows: int
    cols: int
    nvars: int
    entries: tuple[tuple[LaurentPoly, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")
            for p in row:
                if p.nvars != self.nvars:
                    raise VariableCountMismatch(
                        f"entry has {p.nvars} variables, matrix has {self.nvars}"
                    )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LaurentPoly]], nvars: int | None = None) -> "PolyMatrix":
        if not rows or not rows[0]:
            if nvars is None:
                raise ValueError("nvars required for empty matrices")
            return cls(len(rows), 0 if not rows else len(rows[0]), nvars, tuple(tuple(r) for r in rows))
        nv = rows[0][0].nvars if nvars is None else nvars
        return cls(len(rows), len(rows[0]), nv, tuple(tuple(r) for r in rows))

    @classmethod
    def zero(cls, rows: int, cols: int, nvars: int) -> "PolyMatrix":
        z = LaurentPoly.zero(nvars)
        return cls(rows, cols, nvars, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        if self.nvars != other.nvars:
            raise VariableCountMismatch("matrices over different rings")
        zero = LaurentPoly.zero(self.nvars)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(tuple(row))
        return PolyMatrix(self.rows, other.cols, self.nvars, tuple(out))

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for row in self.entries for p in row)

    def evaluate(self, point: Sequence[Fraction | int]) -> list[list[Fraction]]:
        """Entrywise exact evaluation."""
        return [[p.evaluate(point) for p in row] for row in self.entries]

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(p) for p in row) for row in self.entries) + "]"
