"""Floating-point shadow of the exact calculus.

Used wherever an exact answer would need irrational or non-polynomial values:
fractional powers of a general h, the nonlinear Hitchin map phi -> psi away
from phi0, and order-of-vanishing (slope) tests. Dense k-forms are numpy
vectors in the lexicographic basis. Derivatives of non-polynomial fields at a
point use complex-step differentiation, which is exact to rounding.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .exterior import Form, Poly, basis, merge_sign

COMPLEX_STEP = 1e-30


@lru_cache(maxsize=None)
def _positions(n: int, k: int) -> dict[tuple[int, ...], int]:
    return {idx: i for i, idx in enumerate(basis(n, k))}


@lru_cache(maxsize=None)
def wedge_table(n: int, k: int, l: int):
    """(left, right, dest, sign) index arrays for dense k-form ^ l-form."""
    pk, pl, po = _positions(n, k), _positions(n, l), _positions(n, k + l)
    rows = []
    for a, ia in pk.items():
        for b, ib in pl.items():
            s = merge_sign(a, b)
            if s:
                rows.append((ia, ib, po[tuple(sorted(a + b))], s))
    arr = np.array(rows, dtype=np.int64).reshape(-1, 4)
    return arr[:, 0].copy(), arr[:, 1].copy(), arr[:, 2].copy(), arr[:, 3].astype(np.float64)


def wedge(a: np.ndarray, b: np.ndarray, n: int, k: int, l: int) -> np.ndarray:
    left, right, dest, sign = wedge_table(n, k, l)
    out = _kernels.wedge(np.atleast_2d(a), np.atleast_2d(b), left, right, dest, sign, len(basis(n, k + l)))
    return out[0] if np.ndim(a) == 1 else out


@lru_cache(maxsize=None)
def _contract_matrices(n: int, k: int) -> np.ndarray:
    """C[i] maps dense k-forms to dense (k-1)-forms by e_i ⌟ ."""
    src, dst = _positions(n, k), _positions(n, k - 1)
    out = np.zeros((n, len(dst), len(src)))
    for idx, j in src.items():
        for pos, i in enumerate(idx):
            rest = idx[:pos] + idx[pos + 1:]
            out[i - 1, dst[rest], j] = -1.0 if pos % 2 else 1.0
    return out


@lru_cache(maxsize=None)
def _star_data(n: int, k: int):
    idx = basis(n, k)
    rows = np.array(idx, dtype=np.int64).reshape(len(idx), k) - 1
    comp = _positions(n, n - k)
    target = np.array([comp[tuple(i for i in range(1, n + 1) if i not in t)] for t in idx], dtype=np.int64)
    signs = np.array([merge_sign(t, tuple(i for i in range(1, n + 1) if i not in t)) for t in idx], dtype=np.float64)
    return rows, target, signs


def hodge_star(a: np.ndarray, g: np.ndarray, k: int, orientation: int = 1) -> np.ndarray:
    """Dense Hodge star for a constant metric matrix g (real or complex)."""
    n = g.shape[0]
    rows, target, signs = _star_data(n, k)
    ginv = np.linalg.inv(g)
    vol = orientation * np.sqrt(np.linalg.det(g))
    if k == 0:
        raised = a
    else:
        sub = ginv[rows[:, None, :, None], rows[None, :, None, :]]
        raised = np.linalg.det(sub) @ a
    out = np.zeros(len(basis(n, n - k)), dtype=np.result_type(raised, vol))
    out[target] = signs * vol * raised
    return out


class CompiledForm:
    """Polynomial-coefficient form packed for batch float evaluation."""

    def __init__(self, a: Form):
        self.n, self.k = a.n, a.k
        pos = _positions(a.n, a.k)
        exps, coeffs, ptr = [], [], [0]
        for idx in basis(a.n, a.k):
            p = a.terms.get(idx)
            if p is not None:
                for e, c in sorted(p.terms.items()):
                    exps.append(e)
                    coeffs.append(float(c))
            ptr.append(len(exps))
        self.exps = np.array(exps, dtype=np.int64).reshape(-1, a.n)
        self.coeffs = np.array(coeffs, dtype=np.float64)
        self.ptr = np.array(ptr, dtype=np.int64)
        self.size = len(pos)

    def __call__(self, points) -> np.ndarray:
        pts = np.asarray(points)
        single = pts.ndim == 1
        out = _kernels.poly_eval(self.exps, self.coeffs, self.ptr, np.atleast_2d(pts))
        return out[0] if single else out


def compile_poly(p: Poly) -> CompiledForm:
    return CompiledForm(Form.scalar(p.n, p))


def dense(a: Form, point: Sequence[float] | None = None) -> np.ndarray:
    """Dense float vector of a form, evaluated at a point when it is not constant."""
    return CompiledForm(a)(np.zeros(a.n) if point is None else np.asarray(point, dtype=float))


# -- the Hitchin map -------------------------------------------------------

@lru_cache(maxsize=None)
def _phi0_dense() -> np.ndarray:
    from .g2 import standard_phi

    return dense(standard_phi())


@lru_cache(maxsize=None)
def _top_pairing(n: int, k: int) -> np.ndarray:
    """P with a ^ b = (a @ P @ b) e^{1..n} for a k-form and an (n-k)-form."""
    left, right, _, sign = wedge_table(n, k, n - k)
    out = np.zeros((len(basis(n, k)), len(basis(n, n - k))))
    out[left, right] = sign
    return out


def bilinear(phi: np.ndarray) -> np.ndarray:
    """Raw B_ij = top coefficient of (e_i ⌟ phi) ^ (e_j ⌟ phi) ^ phi."""
    c = _contract_matrices(7, 3) @ phi
    t = wedge(c, np.broadcast_to(phi, (7, len(phi))), 7, 2, 3)
    return c @ _top_pairing(7, 2) @ t.T


@lru_cache(maxsize=None)
def _calibration() -> float:
    return float(bilinear(_phi0_dense())[0, 0].real)


def metric_from_phi(phi: np.ndarray) -> np.ndarray:
    """g_phi for a dense (possibly complex-perturbed) positive 3-form."""
    b = bilinear(phi) / _calibration()
    s = np.linalg.det(b) ** (1.0 / 9.0)
    return b / s


def hitchin_psi(phi: np.ndarray) -> np.ndarray:
    """psi = *_phi phi for a dense 3-form on R^7."""
    return hodge_star(phi, metric_from_phi(phi), 3)


def hitchin_q(rho: np.ndarray) -> np.ndarray:
    """Q(rho) = psi(phi0 + rho) - psi0 - rho_hat(rho) at phi0."""
    phi0 = _phi0_dense()
    return hitchin_psi(phi0 + rho) - hitchin_psi(phi0) - rho_hat_flat(rho)


@lru_cache(maxsize=None)
def _rho_hat_matrix() -> np.ndarray:
    from .g2 import G2Data

    G = G2Data.flat()
    mix = 4 / 3 * np.array(G.p3["1"], dtype=float) + np.array(G.p3["7"], dtype=float) - np.array(G.p3["27"], dtype=float)
    star = np.stack([hodge_star(col, np.eye(7), 3) for col in np.eye(35)], axis=1)
    return star @ mix


def rho_hat_flat(rho: np.ndarray) -> np.ndarray:
    return _rho_hat_matrix() @ rho


# -- derivatives of non-polynomial fields ----------------------------------

def d_at(field: Callable[[np.ndarray], np.ndarray], point: Sequence[float], n: int, k: int) -> np.ndarray:
    """d of a real-analytic k-form field at a point, by complex-step partials."""
    p = np.asarray(point, dtype=float)
    partials = []
    for i in range(n):
        z = p.astype(complex)
        z[i] += 1j * COMPLEX_STEP
        partials.append(np.imag(field(z)) / COMPLEX_STEP)
    partials = np.array(partials)
    es = np.eye(n)
    return wedge(es, partials, n, 1, k).sum(axis=0)


def frobenius(a: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(a) ** 2)))


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log y against log x."""
    lx, ly = np.log(np.asarray(xs, dtype=float)), np.log(np.asarray(ys, dtype=float))
    return float(np.polyfit(lx, ly, 1)[0])

