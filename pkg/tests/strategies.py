"""Hypothesis strategies for exact polynomials and forms."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from holocalc.exterior import Form, Poly, basis

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
nonzero_rationals = rationals.filter(bool)


def exponents(n: int, max_degree: int = 2):
    return st.lists(st.integers(0, max_degree), min_size=n, max_size=n).map(tuple)


def polys(n: int, max_degree: int = 2, max_terms: int = 3):
    return st.dictionaries(exponents(n, max_degree), rationals, max_size=max_terms).map(lambda t: Poly(n, t))


def forms(n: int, k: int, max_degree: int = 2, max_terms: int = 4):
    return st.dictionaries(st.sampled_from(basis(n, k)), polys(n, max_degree),
                           max_size=max_terms).map(lambda t: Form(n, k, t))


def constant_forms(n: int, k: int):
    return st.dictionaries(st.sampled_from(basis(n, k)), rationals).map(lambda t: Form(n, k, t))


@st.composite
def form_of_some_degree(draw, n_min: int = 1, n_max: int = 6, max_degree: int = 2):
    n = draw(st.integers(n_min, n_max))
    k = draw(st.integers(0, n))
    return draw(forms(n, k, max_degree))


def points(n: int):
    return st.lists(rationals, min_size=n, max_size=n)


def fractions_matrix(rows: int, cols: int, bound: int = 4):
    entry = st.integers(-bound, bound).map(Fraction)
    return st.lists(st.lists(entry, min_size=cols, max_size=cols), min_size=rows, max_size=rows)
