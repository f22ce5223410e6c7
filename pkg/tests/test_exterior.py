import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from holocalc import linalg
from holocalc.exterior import (Form, Metric, Poly, basis, codifferential, contract, d, flat,
                               form_from_json, form_to_json, hodge_star, inner, laplacian,
                               sharp, unit_vector, wedge)
from holocalc.g2 import standard_phi
from strategies import constant_forms, form_of_some_degree, forms, points, polys, rationals

X = [None] + [Poly.var(7, i) for i in range(1, 8)]


def e(n, *idx):
    return Form.e(n, *idx)


# -- Poly ------------------------------------------------------------------

@given(polys(3), polys(3), points(3))
def test_poly_ring_ops_commute_with_evaluation(p, q, x):
    assert (p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x)
    assert (p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x)


@given(polys(3), polys(3), st.integers(1, 3))
def test_poly_product_rule(p, q, i):
    assert (p * q).diff(i) == p.diff(i) * q + p * q.diff(i)


def test_poly_float_evaluation():
    p = X[1] * X[2] + Poly.constant(7, Fraction(1, 2))
    assert p.evaluate([0.5, 2.0, 0, 0, 0, 0, 0]) == pytest.approx(1.5)


# -- wedge and contraction ---------------------------------------------------

def test_wedge_examples():
    assert wedge(e(3, 1), e(3, 2)) == e(3, 1, 2)
    assert wedge(e(3, 2), e(3, 1)) == -e(3, 1, 2)
    assert wedge(e(3, 3), e(3, 1, 2)) == e(3, 1, 2, 3)
    a = Form(2, 1, {(1,): Poly.var(2, 1)})
    b = Form(2, 1, {(2,): Poly.var(2, 2)})
    assert wedge(a, b) == Form(2, 2, {(1, 2): Poly.var(2, 1) * Poly.var(2, 2)})


def test_wedge_of_basis_elements_matches_permutation_sign():
    n = 5
    for a in basis(n, 2):
        for b in basis(n, 2):
            w = wedge(e(n, *a), e(n, *b))
            seq = a + b
            if len(set(seq)) < 4:
                assert w.is_zero()
                continue
            inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if seq[i] > seq[j])
            assert w == e(n, *sorted(seq)) * (-1) ** inversions


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n), st.integers(0, n))
                                 .filter(lambda t: t[1] + t[2] <= t[0])
                                 .flatmap(lambda t: st.tuples(forms(t[0], t[1]), forms(t[0], t[2])))))
def test_graded_commutativity(ab):
    a, b = ab
    assert wedge(a, b) == wedge(b, a) * (-1) ** (a.k * b.k)


@settings(max_examples=50)
@given(st.tuples(forms(6, 1), forms(6, 2), forms(6, 2)))
def test_wedge_associative(abc):
    a, b, c = abc
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_contraction_examples():
    assert contract(unit_vector(2, 1), e(2, 1, 2)) == e(2, 2)
    assert contract(unit_vector(2, 2), e(2, 1, 2)) == -e(2, 1)
    assert contract(unit_vector(7, 1), standard_phi()) == e(7, 2, 3) + e(7, 4, 5) + e(7, 6, 7)


@settings(max_examples=50)
@given(st.lists(rationals, min_size=5, max_size=5), constant_forms(5, 2), constant_forms(5, 1))
def test_contraction_is_an_antiderivation(v, a, b):
    lhs = contract(v, wedge(a, b))
    rhs = wedge(contract(v, a), b) + wedge(a, contract(v, b)) * (-1) ** a.k
    assert lhs == rhs


# -- Hodge star ----------------------------------------------------------------

def inner_oracle(a, b, g):
    """<a, b> for constant forms from minors of g^-1, computed without the module."""
    ginv = linalg.inverse(g.matrix)
    total = Fraction(0)
    for i, pa in a.terms.items():
        for j, pb in b.terms.items():
            minor = [[ginv[r - 1][c - 1] for c in j] for r in i]
            total += pa.constant_value() * pb.constant_value() * linalg.det(minor)
    return total


def star_oracle(b, g, sqrt_det):
    """Solve a ^ X = <a, b> vol_g for X over all basis a."""
    n, k = b.n, b.k
    comp = basis(n, n - k)
    rows, rhs = [], []
    for i in basis(n, k):
        a = e(n, *i)
        rows.append([wedge(a, e(n, *j)).top_coeff().constant_value() for j in comp])
        rhs.append(inner_oracle(a, b, g) * sqrt_det)
    x = linalg.solve(rows, rhs)
    return Form(n, n - k, dict(zip(comp, x)))


def test_star_examples():
    assert hodge_star(e(3, 1)) == e(3, 2, 3)
    g = Metric.diagonal([1, 4])
    assert hodge_star(e(2, 1), g) == e(2, 2) * 2
    assert hodge_star(e(2, 1), g) == star_oracle(e(2, 1), g, 2)


def test_star_of_phi0_matches_oracle():
    psi = hodge_star(standard_phi())
    assert psi == star_oracle(standard_phi(), Metric.euclidean(7), 1)
    assert psi == Form(7, 4, {(1, 2, 4, 7): -1, (1, 2, 5, 6): -1, (1, 3, 4, 6): -1, (1, 3, 5, 7): 1,
                              (2, 3, 4, 5): 1, (2, 3, 6, 7): 1, (4, 5, 6, 7): 1})


@pytest.mark.parametrize("diag", [[1, 4, 9], [4, 1, 1, 9], [1, 1, 4, 4, 1]])
def test_star_nonflat_metric_matches_oracle(diag):
    g = Metric.diagonal(diag)
    n = len(diag)
    for k in range(n + 1):
        for i in basis(n, k):
            assert hodge_star(e(n, *i), g) == star_oracle(e(n, *i), g, g.sqrt_det)


def test_star_defining_contract_small():
    for n in range(1, 6):
        g = Metric.euclidean(n)
        for k in range(n + 1):
            for i in basis(n, k):
                for j in basis(n, k):
                    assert wedge(e(n, *i), hodge_star(e(n, *j))) == Form.volume(n) * inner(e(n, *i), e(n, *j), g)


def test_star_of_one_is_volume_and_orientation_flips():
    assert hodge_star(Form.scalar(4, 1)) == Form.volume(4)
    assert hodge_star(Form.scalar(4, 1), Metric.euclidean(4, orientation=-1)) == -Form.volume(4)


@given(form_of_some_degree(n_max=7))
def test_double_star(a):
    assert hodge_star(hodge_star(a)) == a * (-1) ** (a.k * (a.n - a.k))


def test_irrational_volume_is_rejected():
    with pytest.raises(ValueError):
        hodge_star(e(2, 1), Metric.diagonal([1, 2]))


# -- d, d*, Laplacian ------------------------------------------------------------

def test_d_examples():
    assert d(Form(7, 1, {(1,): X[2]})) == -e(7, 1, 2)
    assert d(Form.scalar(7, X[1] * X[2])) == Form(7, 1, {(1,): X[2], (2,): X[1]})


@given(form_of_some_degree(max_degree=3))
def test_d_squared_zero(a):
    if a.k + 2 <= a.n:
        assert d(d(a)).is_zero()


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1)).flatmap(
    lambda t: st.tuples(forms(t[0], t[1]), forms(t[0], max(0, t[0] - 1 - t[1]) and 1)))))
def test_leibniz(ab):
    a, b = ab
    if a.k + b.k + 1 <= a.n:
        assert d(wedge(a, b)) == wedge(d(a), b) + wedge(a, d(b)) * (-1) ** a.k


def test_codifferential_examples():
    assert codifferential(e(7, 3) * 5).is_zero()
    f = Form.scalar(7, X[1] ** 2)
    assert codifferential(d(f)) == Form.scalar(7, -2)
    assert laplacian(f) == Form.scalar(7, -2)
    # d* = (-1)^{n(k-1)+1} * d * ; on 1-forms in odd dimension the sign is -1
    gamma = Form(7, 1, {(1,): X[1] * X[2]})
    assert codifferential(gamma) == -hodge_star(d(hodge_star(gamma)))
    with pytest.raises(ValueError):
        codifferential(Form.scalar(3, 1))


@settings(max_examples=40)
@given(forms(4, 1, max_degree=3), polys(4, max_degree=3))
def test_codifferential_is_formal_adjoint_up_to_divergence(gamma, f):
    # <df, gamma> - f d*gamma is a divergence: d*(f gamma) = f d*gamma - <df, gamma>
    g = Metric.euclidean(4)
    lhs = codifferential(gamma * f)
    rhs = codifferential(gamma) * f - Form.scalar(4, inner(d(Form.scalar(4, f)), gamma, g))
    assert lhs == rhs


def test_flat_sharp_inverse():
    g = Metric.diagonal([1, 4, 9])
    v = [Poly.constant(3, 1), Poly.var(3, 2), Poly.constant(3, 2)]
    assert sharp(flat(v, g), g) == v


@given(form_of_some_degree())
def test_json_round_trip(a):
    assert form_from_json(json.loads(json.dumps(form_to_json(a)))) == a


def test_json_rejects_malformed():
    with pytest.raises(ValueError):
        form_from_json({"n": 3})
