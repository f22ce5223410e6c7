"""Exact linear algebra over the rationals.

Matrices are plain lists of rows holding :class:`fractions.Fraction` entries.
Everything here is small (at most a few hundred columns), so a textbook
Gauss-Jordan elimination is fast enough and keeps results exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Sequence

Matrix = list[list[Fraction]]


class InconsistentSystem(ValueError):
    """Raised when a linear system has no solution."""


class SingularMatrix(ValueError):
    """Raised when an inverse is requested for a singular matrix."""


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns. The input is not modified."""
    m = [row[:] for row in a]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            inv = 1 / piv
            m[r] = [x * inv for x in m[r]]
        row_r = m[r]
        nz = [j for j in range(c, ncols) if row_r[j] != 0]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f != 0:
                    row_i = m[i]
                    for j in nz:
                        row_i[j] -= f * row_r[j]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    if not a:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    r, pivots = rref(a)
    n = len(a[0])
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence[Fraction]) -> list[Fraction]:
    """One solution of ``a x = b`` (free variables set to zero)."""
    if not a:
        return []
    n = len(a[0])
    aug = [row[:] + [Fraction(bi)] for row, bi in zip(a, b)]
    r, pivots = rref(aug)
    if n in pivots:
        raise InconsistentSystem("linear system has no solution")
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = r[i][n]
    return x


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [row[:] + e for row, e in zip(a, identity(n))]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in r]


def det(a: Matrix) -> Fraction:
    m = [row[:] for row in a]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        piv = m[c][c]
        out *= piv
        for i in range(c + 1, n):
            f = m[i][c] / piv
            if f:
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
    return out


def is_positive_definite(a: Matrix) -> bool:
    """Sylvester's criterion on leading principal minors."""
    n = len(a)
    return all(det([row[:k] for row in a[:k]]) > 0 for k in range(1, n + 1))


def exact_root(q: Fraction, k: int) -> Fraction | None:
    """Rational k-th root of ``q`` if it exists (real root for odd k)."""
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    sign = 1
    if q < 0:
        if k % 2 == 0:
            return None
        sign, q = -1, -q
    num = _int_root(q.numerator, k)
    den = _int_root(q.denominator, k)
    if num is None or den is None:
        return None
    return sign * Fraction(num, den)


def _int_root(n: int, k: int) -> int | None:
    if k == 2:
        r = isqrt(n)
    else:
        r = int(round(n ** (1.0 / k))) if n < 2**1000 else _newton_root(n, k)
        # float guess can be off by one for large n
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**k == n:
                return cand
        r = _newton_root(n, k)
    return r if r**k == n else None


def _newton_root(n: int, k: int) -> int:
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y
