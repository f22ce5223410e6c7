import random

import pytest
from hypothesis import given, settings, strategies as st

from holocalc import checks, seifert
from holocalc.exterior import Form, Metric, Poly, codifferential, d
from holocalc.seifert import FiberedChart, InvariantForm

seeds = st.integers(0, 2 ** 32 - 1)


def run(check, seed, size=3):
    ok, detail = check(random.Random(seed), size, 1)
    assert ok, detail


def test_split_last_examples():
    alpha, beta = seifert.split_last(Form.e(3, 1, 3) + Form.e(3, 1, 2))
    # e^13 = -e^3 ^ e^1
    assert alpha == -Form.e(3, 1)
    assert beta == Form.e(3, 1, 2)
    alpha, beta = seifert.split_last(Form.scalar(3, 2))
    assert alpha is None and beta == Form.scalar(3, 2)


def test_codifferential_example_on_flat_chart():
    c = FiberedChart.flat(3)
    beta = InvariantForm.basic(c, Form(3, 1, {(1,): Poly.var(3, 1)}))
    assert seifert.adapted_codiff(c, beta) == Form.scalar(3, -1)
    assert seifert.adapted_codiff_total(c, beta) == Form.scalar(3, -1)


def test_adapted_d_kills_theta_and_dtheta_enters_d():
    a = Form(2, 1, {(2,): Poly.var(2, 1)})
    c = FiberedChart.flat(2, a)
    theta = InvariantForm(c.theta())
    assert seifert.adapted_d(c, theta).total.is_zero()
    # d theta = d a = e^12 as a form on the total space
    assert c.total_d(c.theta()) == c.lift(Form.e(2, 1, 2))


def test_coordinate_round_trip():
    a = Form(3, 1, {(1,): Poly.var(3, 2)})
    c = FiberedChart.flat(3, a)
    gamma = Form.e(4, 1, 4) + Form.e(4, 2, 3)
    assert c.from_coordinates(c.to_coordinates(gamma)) == gamma


def test_flat_connection_reduces_to_base_codifferential():
    c = FiberedChart.flat(4)
    b = Form(4, 2, {(1, 2): Poly.var(4, 3) * Poly.var(4, 1), (3, 4): Poly.var(4, 2)})
    assert seifert.adapted_codiff(c, InvariantForm.basic(c, b)) == codifferential(b)


def test_invariant_forms_reject_fibre_dependence():
    with pytest.raises(ValueError):
        InvariantForm(Form(3, 1, {(1,): Poly.var(3, 3)}))


def test_basic_only_operators_reject_theta_parts():
    c = FiberedChart.flat(2)
    gamma = InvariantForm.from_parts(c, Form.scalar(2, 1), None)
    assert not gamma.is_basic()
    with pytest.raises(ValueError):
        seifert.transverse_star(c, gamma)
    with pytest.raises(ValueError):
        seifert.adapted_codiff(c, gamma)


def test_chart_validation():
    with pytest.raises(ValueError):
        FiberedChart(3, Form.e(3, 1, 2), Metric.euclidean(3))
    with pytest.raises(ValueError):
        FiberedChart(3, Form.zero(3, 1), Metric.euclidean(2))


def test_parts_round_trip():
    c = FiberedChart.flat(3, Form(3, 1, {(2,): Poly.var(3, 1)}))
    alpha, beta = Form.e(3, 1), Form.e(3, 2, 3)
    gamma = InvariantForm.from_parts(c, alpha, beta)
    assert gamma.parts(c) == (alpha, beta)


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_codifferential_formulas_agree(seed):
    run(checks.codiff_forms_agree, seed, size=3)


def test_star_fibre_law_all_basis_forms():
    run(checks.star_fibre_law, 0)


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_adapted_d_squared_zero(seed):
    run(checks.adapted_d_squared, seed, size=3)


def test_total_d_squared_zero_with_curved_connection():
    rng = random.Random(3)
    c = seifert.random_chart(rng, 4)
    gamma = Form(5, 1, {(1,): Poly.var(5, 2) ** 2, (5,): Poly.var(5, 3)})
    assert c.total_d(c.total_d(gamma)).is_zero()
    assert d(d(c.to_coordinates(gamma))).is_zero()
