"""Shared hypothesis strategies and small helpers."""

import hypothesis.strategies as st
from hypothesis import settings

from pvtower.abgroup import IntMatrix
from pvtower.exterior import Covector
from pvtower.ring import LaurentPoly

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def poly_strategy(nvars: int, max_terms: int = 4, max_exp: int = 3, max_coeff: int = 6):
    exponents = st.tuples(*[st.integers(-max_exp, max_exp) for _ in range(nvars)])
    term = st.tuples(exponents, st.integers(-max_coeff, max_coeff))
    return st.lists(term, max_size=max_terms).map(
        lambda terms: LaurentPoly(nvars, _accumulate(terms))
    )


def _accumulate(terms):
    out = {}
    for exps, coeff in terms:
        out[exps] = out.get(exps, 0) + coeff
    return out


def covector_strategy(n: int, nvars: int | None = None):
    nv = n if nvars is None else nvars
    return st.tuples(*[poly_strategy(nv, max_terms=2, max_exp=2, max_coeff=3) for _ in range(n)]).map(
        lambda entries: Covector(entries, nv)
    )


def int_matrix_strategy(max_dim: int = 5, max_entry: int = 9):
    def build(shape):
        rows, cols = shape
        return st.lists(
            st.lists(st.integers(-max_entry, max_entry), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        ).map(lambda e: IntMatrix.from_rows(e, cols))

    return st.tuples(
        st.integers(1, max_dim), st.integers(1, max_dim)
    ).flatmap(build)
