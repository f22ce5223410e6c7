"""Float kernels for the shadow evaluators, with numba and numpy backends.

The numba versions are used when numba imports cleanly and the environment
variable HOLOCALC_DISABLE_NUMBA is unset (or "0"). Both backends are always
importable so they can be compared directly.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("HOLOCALC_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")


def poly_eval_numpy(exps, coeffs, ptr, points):
    """Evaluate packed polynomials at many points.

    exps: (m, n) int exponents, coeffs: (m,), ptr: (ncomp + 1,) row offsets,
    points: (npts, n) real or complex. Returns (npts, ncomp).
    """
    points = np.asarray(points)
    ncomp = len(ptr) - 1
    out = np.zeros((points.shape[0], ncomp), dtype=np.result_type(points.dtype, coeffs.dtype))
    if exps.shape[0] == 0:
        return out
    monos = np.prod(points[:, None, :] ** exps[None, :, :], axis=2) * coeffs[None, :]
    owner = np.repeat(np.arange(ncomp), np.diff(ptr))
    for j in range(ncomp):
        if ptr[j + 1] > ptr[j]:
            out[:, j] = monos[:, owner == j].sum(axis=1)
    return out


def wedge_numpy(a, b, left, right, dest, sign, out_len):
    """Dense wedge of batches a (npts, la) and b (npts, lb) via a product table."""
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    out = np.zeros((a.shape[0], out_len), dtype=np.result_type(a.dtype, b.dtype))
    contrib = sign[None, :] * a[:, left] * b[:, right]
    np.add.at(out, (np.arange(a.shape[0])[:, None], dest[None, :]), contrib)
    return out


try:
    if _DISABLED:
        raise ImportError("numba disabled by HOLOCALC_DISABLE_NUMBA")
    from numba import njit

    @njit(cache=True)
    def _poly_eval_nb(exps, coeffs, ptr, points, out):
        npts = points.shape[0]
        n = points.shape[1]
        ncomp = ptr.shape[0] - 1
        for p in range(npts):
            for j in range(ncomp):
                acc = out[p, j] * 0
                for m in range(ptr[j], ptr[j + 1]):
                    term = out[p, j] * 0 + coeffs[m]
                    for v in range(n):
                        e = exps[m, v]
                        for _ in range(e):
                            term = term * points[p, v]
                    acc += term
                out[p, j] = acc
        return out

    @njit(cache=True)
    def _wedge_nb(a, b, left, right, dest, sign, out):
        for r in range(a.shape[0]):
            for t in range(left.shape[0]):
                out[r, dest[t]] += sign[t] * a[r, left[t]] * b[r, right[t]]
        return out

    def poly_eval_numba(exps, coeffs, ptr, points):
        points = np.ascontiguousarray(points)
        dtype = np.result_type(points.dtype, coeffs.dtype)
        out = np.zeros((points.shape[0], len(ptr) - 1), dtype=dtype)
        return _poly_eval_nb(exps, coeffs.astype(dtype), ptr, points.astype(dtype), out)

    def wedge_numba(a, b, left, right, dest, sign, out_len):
        a = np.atleast_2d(a)
        b = np.atleast_2d(b)
        dtype = np.result_type(a.dtype, b.dtype)
        out = np.zeros((a.shape[0], out_len), dtype=dtype)
        return _wedge_nb(a.astype(dtype), b.astype(dtype), left, right, dest, sign.astype(dtype), out)

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False
    poly_eval_numba = None
    wedge_numba = None

BACKEND = "numba" if HAVE_NUMBA else "numpy"

if HAVE_NUMBA:
    poly_eval = poly_eval_numba
    wedge = wedge_numba
else:
    poly_eval = poly_eval_numpy
    wedge = wedge_numpy
