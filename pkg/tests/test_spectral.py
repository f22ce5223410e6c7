import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from holocalc import checks, spectral
from holocalc.spectral import CohomologyInput, IndicialDatum, IndicialRootError, Surd

small = st.fractions(min_value=-50, max_value=50, max_denominator=12)
radicands = st.integers(1, 60)


def test_indicial_roots_examples():
    assert spectral.indicial_roots_functions(0, 7) == (0, -5)
    assert spectral.indicial_roots_functions(6, 7) == (1, -6)
    assert spectral.indicial_roots_functions(14, 7) == (2, -7)
    hi, lo = spectral.indicial_roots_functions(1, 7)
    assert hi == Surd(Fraction(-5, 2), Fraction(1, 2), 29)
    assert lo == Surd(Fraction(-5, 2), Fraction(-1, 2), 29)
    assert float(hi) == pytest.approx(-2.5 + math.sqrt(29) / 2)


def test_indicial_domain_errors():
    with pytest.raises(ValueError):
        spectral.indicial_roots_functions(-1, 7)
    with pytest.raises(ValueError):
        spectral.indicial_roots_functions(1, 1)


@given(st.fractions(min_value=0, max_value=200, max_denominator=6), st.integers(2, 12))
def test_indicial_roots_solve_the_quadratic(delta, m):
    for lam in spectral.indicial_roots_functions(delta, m):
        x = float(lam)
        assert x * (x + m - 2) == pytest.approx(float(delta), abs=1e-8)


@given(small, small, radicands, small, small, radicands)
def test_surd_comparison_agrees_with_floats(p, q, d, r, s, e):
    a, b = Surd(p, q, d), Surd(r, s, e)
    fa, fb = float(a), float(b)
    if abs(fa - fb) > 1e-9:
        assert (a < b) == (fa < fb)
    else:
        assert (a == b) == (fa == fb) or abs(fa - fb) < 1e-9


def test_surd_canonical_form():
    assert Surd(0, 1, 8) == Surd(0, 2, 2)
    assert hash(Surd(0, 1, 8)) == hash(Surd(0, 2, 2))
    assert Surd(1, 1, 4) == 3
    assert Surd.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert Surd.sqrt(2) > Fraction(141, 100)
    with pytest.raises(ValueError):
        Surd.sqrt(-1)
    with pytest.raises(ValueError):
        Surd(0, 1, 2) + Surd(0, 1, 3)


def test_surd_json():
    assert Surd(Fraction(1, 2)).to_json() == "1/2"
    assert Surd(1, 1, 2).to_json() == {"p": 1, "q": 1, "sqrt": 2}


def test_index_jump_examples():
    roots = [IndicialDatum(0), IndicialDatum(-5), IndicialDatum(Fraction(-5, 2), 2)]
    assert spectral.index_jump(roots, -6, 1) == 4
    assert spectral.index_jump(roots, -3, -1) == 2
    with pytest.raises(IndicialRootError):
        spectral.index_jump(roots, -5, 1)
    with pytest.raises(ValueError):
        spectral.index_jump(roots, 1, -1)


@given(st.integers(0, 2 ** 32 - 1))
def test_index_additivity(seed):
    ok, detail = checks.index_additivity(random.Random(seed), 5, 1)
    assert ok, detail


def test_excluded_windows():
    w = spectral.excluded_window(2, 6)
    assert [(x.kind, x.lo, x.hi) for x in w["windows"]] == [("harmonic", -2, -2), ("closed_coclosed", -4, -2)]
    assert w["windows"][0].empty
    w = spectral.excluded_window(1, 6)
    assert [(x.lo, x.hi) for x in w["windows"]] == [(-3, -1), (-5, -1)]
    assert w["log_rate"] == -4
    mid = spectral.excluded_window(3, 6)
    assert mid["critical_rate"] == -3 and mid["windows"] == []


def test_excluded_window_mirror():
    for n in range(2, 9):
        for k in range(n + 1):
            if 2 * k > n:
                a, b = spectral.excluded_window(k, n), spectral.excluded_window(n - k, n)
                assert a["mirrored_from"] == n - k
                assert a["windows"] == b["windows"]
    with pytest.raises(ValueError):
        spectral.excluded_window(7, 6)


def test_log_terms():
    assert spectral.log_terms_possible(-4, 6)
    assert not spectral.log_terms_possible(-3, 6)


def test_window_contains_surds():
    w = spectral.Window("harmonic", Fraction(-3), Fraction(-1))
    assert w.contains(Surd(-2, Fraction(1, 2), 2))
    assert not w.contains(Surd(-1, Fraction(1, 100), 2))


def test_cohomology_table():
    for (n, k, dims), want in checks.COHOMOLOGY_TABLE:
        assert spectral.l2_cohomology(CohomologyInput.from_dims(n, k, dims)) == want


def test_cohomology_validation():
    with pytest.raises(ValueError):
        CohomologyInput.from_dims(6, 2, (1, 1, 1))
    with pytest.raises(ValueError):
        CohomologyInput.from_dims(6, 2, (1, 1, 2, 0))
    with pytest.raises(ValueError):
        CohomologyInput.from_dims(6, 2, (0, 1, 0, 1))
    with pytest.raises(ValueError):
        CohomologyInput.from_dims(6, 2, (-1, 1, 0, 0))


def test_small_delta_check():
    roots = [IndicialDatum(-2), IndicialDatum(Fraction(-9, 4))]
    assert spectral.check_small_delta(Fraction(1, 8), 2, roots)
    assert not spectral.check_small_delta(Fraction(1, 2), 2, roots)
    assert spectral.lichnerowicz_gap(7) == 6
