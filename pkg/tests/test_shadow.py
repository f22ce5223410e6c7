import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holocalc import _kernels, g2, sampling, shadow
from holocalc.exterior import Form, Metric, basis, d, hodge_star, wedge
from holocalc.g2 import G2Data, standard_phi

seeds = st.integers(0, 2 ** 32 - 1)
needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba backend unavailable")


@needs_numba
@settings(max_examples=20, deadline=None)
@given(seeds)
def test_numba_and_numpy_poly_eval_agree(seed):
    rng = random.Random(seed)
    f = shadow.CompiledForm(sampling.form(rng, 5, 2, 3, 6, 3))
    pts = np.random.default_rng(seed).normal(size=(16, 5))
    a = _kernels.poly_eval_numpy(f.exps, f.coeffs, f.ptr, pts)
    b = _kernels.poly_eval_numba(f.exps, f.coeffs, f.ptr, pts)
    assert np.allclose(a, b, rtol=1e-13, atol=1e-13)
    z = pts + 1e-3j
    assert np.allclose(_kernels.poly_eval_numpy(f.exps, f.coeffs, f.ptr, z),
                       _kernels.poly_eval_numba(f.exps, f.coeffs, f.ptr, z), rtol=1e-13, atol=1e-13)


@needs_numba
@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(0, 3), st.integers(0, 3))
def test_numba_and_numpy_wedge_agree(seed, k, l):
    nrng = np.random.default_rng(seed)
    tab = shadow.wedge_table(7, k, l)
    a = nrng.normal(size=(4, len(basis(7, k))))
    b = nrng.normal(size=(4, len(basis(7, l))))
    out_len = len(basis(7, k + l))
    assert np.allclose(_kernels.wedge_numpy(a, b, *tab, out_len), _kernels.wedge_numba(a, b, *tab, out_len))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_dense_wedge_matches_exact(seed):
    rng = random.Random(seed)
    k, l = rng.randint(0, 3), rng.randint(0, 3)
    a, b = sampling.constant_form(rng, 7, k), sampling.constant_form(rng, 7, l)
    assert np.allclose(shadow.wedge(shadow.dense(a), shadow.dense(b), 7, k, l), shadow.dense(wedge(a, b)))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_dense_star_matches_exact(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    k = rng.randint(0, n)
    diag = [rng.choice([1, 4, 9]) for _ in range(n)]
    a = sampling.constant_form(rng, n, k)
    exact = shadow.dense(hodge_star(a, Metric.diagonal(diag)))
    assert np.allclose(shadow.hodge_star(shadow.dense(a), np.diag(np.array(diag, float)), k), exact)


def test_dense_d_at_matches_exact_d():
    rng = random.Random(4)
    f = sampling.form(rng, 7, 2, 3, 6, 2)
    pt = [0.3, -0.2, 0.1, 0.5, 0.0, -0.4, 0.2]
    cf = shadow.CompiledForm(f)
    assert np.allclose(shadow.d_at(cf, pt, 7, 2), shadow.dense(d(f), pt), atol=1e-12)


def test_hitchin_map_matches_exact_at_rational_metric_points():
    phi = standard_phi() * 8
    assert np.allclose(shadow.hitchin_psi(shadow.dense(phi)), shadow.dense(G2Data(phi).psi))
    assert np.allclose(shadow.metric_from_phi(shadow.dense(phi)), 4 * np.eye(7))
    # conformal field u^3 phi0 at a point where u is irrational-free
    u = g2.Poly.constant(7, 1) + g2.Poly.var(7, 1)
    ph, ps = g2.conformal_field(u)
    pt = [1.0, 0, 0, 0, 0, 0, 0]
    assert np.allclose(shadow.hitchin_psi(shadow.dense(ph, pt)), shadow.dense(ps, pt))


def test_hitchin_q_is_quadratic_at_zero():
    assert np.abs(shadow.hitchin_q(np.zeros(35))).max() < 1e-12


def test_loglog_slope():
    assert shadow.loglog_slope([1, 2, 4], [3, 12, 48]) == pytest.approx(2)


def test_rho_hat_shadow_matches_exact():
    G = G2Data.flat()
    rng = random.Random(2)
    r = sampling.constant_form(rng, 7, 3)
    assert np.allclose(shadow.rho_hat_flat(shadow.dense(r)), shadow.dense(g2.rho_hat(G, r)))
