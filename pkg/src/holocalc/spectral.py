"""Indicial roots, excluded windows, index jumps and weighted L2 cohomology.

Rates are exact quadratic surds p + q sqrt(D). Comparisons between surds with
different radicands are decided by repeated squaring, never by floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import isqrt
from typing import Iterable, Sequence

Number = int | Fraction


class IndicialRootError(ValueError):
    """A weight coincides with an indicial root."""


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _sign_surd(x: Fraction, y: Fraction, a: int) -> int:
    """sign(x + y sqrt(a)) for a >= 0."""
    s = _sign(y) if a else 0
    sx = _sign(x)
    if s == 0 or s == sx:
        return sx if sx else s
    if sx == 0:
        return s
    # opposite signs: compare squares
    return sx * _sign(x * x - y * y * a)


def _sign_two_surds(x: Fraction, y: Fraction, a: int, z: Fraction, b: int) -> int:
    """sign(x + y sqrt(a) + z sqrt(b))."""
    s = _sign_surd(Fraction(0), y, a)
    t = _sign_surd(Fraction(0), z, b)
    # sign of the irrational part y sqrt(a) + z sqrt(b)
    if s == 0 or t == 0 or s == t:
        irr = s or t
    else:
        irr = s * _sign(y * y * a - z * z * b)
    sx = _sign(x)
    if irr == 0 or irr == sx:
        return sx if sx else irr
    if sx == 0:
        return irr
    # x^2 - (y sqrt a + z sqrt b)^2 = x^2 - y^2 a - z^2 b - 2 y z sqrt(ab)
    return sx * _sign_surd(x * x - y * y * a - z * z * b, -2 * y * z, a * b)


def _squarefree(n: int, limit: int = 10**5) -> tuple[int, int]:
    """n = s^2 * r with r free of small square factors."""
    s, r = 1, n
    f = 2
    while f * f <= r and f <= limit:
        while r % (f * f) == 0:
            r //= f * f
            s *= f
        f += 1
    root = isqrt(r)
    if root * root == r:
        s, r = s * root, 1
    return s, r


@total_ordering
@dataclass(frozen=True)
class Surd:
    """p + q sqrt(d), d a positive integer (d = 1 only with q = 0)."""

    p: Fraction
    q: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        if self.d < 1:
            raise ValueError("radicand must be positive")
        if self.q and self.d > 1:
            # canonical radicand keeps equal values hashing equally
            s, r = _squarefree(self.d)
            object.__setattr__(self, "q", self.q * s)
            object.__setattr__(self, "d", r)
        if self.d == 1 and self.q:
            object.__setattr__(self, "p", self.p + self.q)
            object.__setattr__(self, "q", Fraction(0))
        if not self.q:
            object.__setattr__(self, "d", 1)

    @classmethod
    def of(cls, x) -> "Surd":
        return x if isinstance(x, Surd) else cls(Fraction(x))

    @classmethod
    def sqrt(cls, x: Number) -> "Surd":
        x = Fraction(x)
        if x < 0:
            raise ValueError("square root of a negative rational")
        num = x.numerator * x.denominator
        s, r = _squarefree(num)
        return cls(Fraction(0), Fraction(s, x.denominator), r)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def _combine(self, other: "Surd", sign: int) -> "Surd":
        other = Surd.of(other)
        if other.q == 0 or self.q == 0 or other.d == self.d:
            d = self.d if self.q else other.d
            return Surd(self.p + sign * other.p, self.q + sign * other.q, d)
        raise ValueError("cannot add surds with different radicands")

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return Surd.of(other) - self

    def __neg__(self):
        return Surd(-self.p, -self.q, self.d)

    def __mul__(self, c):
        if isinstance(c, Surd):
            if not c.is_rational:
                raise ValueError("surd products are not closed in this representation")
            c = c.p
        c = Fraction(c)
        return Surd(self.p * c, self.q * c, self.d)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    def sign(self) -> int:
        return _sign_surd(self.p, self.q, self.d)

    def compare(self, other) -> int:
        other = Surd.of(other)
        return _sign_two_surds(self.p - other.p, self.q, self.d, -other.q, other.d)

    def __eq__(self, other):
        try:
            return self.compare(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self.compare(other) < 0

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __float__(self):
        return float(self.p) + float(self.q) * self.d ** 0.5

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        sign = "+" if self.q > 0 else "-"
        return f"{self.p} {sign} {abs(self.q)}*sqrt({self.d})"

    def to_json(self):
        if self.q == 0:
            return _frac_json(self.p)
        return {"p": _frac_json(self.p), "q": _frac_json(self.q), "sqrt": self.d}


def _frac_json(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class IndicialDatum:
    rate: Surd
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "rate", Surd.of(self.rate))
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be at least 1")


def indicial_roots_functions(delta: Number, m: int) -> tuple[Surd, Surd]:
    """Roots of lambda (lambda + m - 2) = delta, largest first."""
    delta = Fraction(delta)
    if delta < 0:
        raise ValueError("link eigenvalue must be nonnegative")
    if m < 2:
        raise ValueError("cone dimension must be at least 2")
    disc = Surd.sqrt(Fraction((m - 2) ** 2) + 4 * delta)
    base = Fraction(-(m - 2), 2)
    return base + disc / 2, base - disc / 2


def lichnerowicz_gap(m: int) -> Fraction:
    """Smallest nonzero link eigenvalue allowed by the Lichnerowicz-type bound (link dim m - 1)."""
    return Fraction(m - 1)


@dataclass(frozen=True)
class Window:
    kind: str
    lo: Fraction
    hi: Fraction

    @property
    def empty(self) -> bool:
        return self.lo >= self.hi

    def contains(self, rate) -> bool:
        r = Surd.of(rate)
        return r > self.lo and r < self.hi

    def to_json(self) -> dict:
        return {"kind": self.kind, "lo": _frac_json(self.lo), "hi": _frac_json(self.hi), "empty": self.empty}


def excluded_window(k: int, n: int) -> dict:
    """Rate windows free of homogeneous basic k-forms on a cone over an n-dimensional link.

    For k above n/2 the statements for n - k apply.
    """
    if not 0 <= k <= n:
        raise ValueError("degree out of range")
    kk = n - k if 2 * k > n else k
    out: dict = {"k": k, "n": n, "mirrored_from": kk if kk != k else None, "windows": [],
                 "critical_rate": None, "log_rate": Fraction(-n, 2) - 1}
    if 2 * kk <= n - 2:
        out["windows"].append(Window("harmonic", Fraction(-n + kk + 2), Fraction(-kk)))
    if 2 * kk < n:
        out["windows"].append(Window("closed_coclosed", Fraction(-n + kk), Fraction(-kk)))
    else:
        # k = n/2: harmonic forms of rate -k are closed and coclosed
        out["critical_rate"] = Fraction(-kk)
    return out


def log_terms_possible(rate, n: int) -> bool:
    return Surd.of(rate) == Fraction(-n, 2) - 1


def index_jump(roots: Iterable[IndicialDatum], nu, nu_prime) -> int:
    """N(nu, nu') = sum of multiplicities of roots strictly between the weights."""
    lo, hi = Surd.of(nu), Surd.of(nu_prime)
    if not lo < hi:
        raise ValueError("need nu < nu'")
    total = 0
    for r in roots:
        if r.rate == lo or r.rate == hi:
            raise IndicialRootError(f"weight is an indicial root: {r.rate}")
        if lo < r.rate < hi:
            total += r.multiplicity
    return total


@dataclass(frozen=True)
class CohomologyInput:
    n: int
    k: int
    compact: int
    full: int
    restriction: int
    compact_image: int

    def __post_init__(self):
        vals = (self.compact, self.full, self.restriction, self.compact_image)
        if any(v < 0 for v in vals):
            raise ValueError("dimensions must be nonnegative")
        if self.compact_image > min(self.compact, self.full):
            raise ValueError("im(H^k_c -> H^k) exceeds dim H^k_c or dim H^k")
        if self.restriction > self.full:
            raise ValueError("im(H^k -> H^k(link)) exceeds dim H^k")
        if not 0 <= self.k <= self.n + 1:
            raise ValueError("degree out of range")

    @classmethod
    def from_dims(cls, n: int, k: int, dims: Sequence[int]) -> "CohomologyInput":
        if len(dims) != 4:
            raise ValueError("need four dimensions: H^k_c, H^k, im(H^k -> H^k(link)), im(H^k_c -> H^k)")
        return cls(n, k, *map(int, dims))


def l2_cohomology(c: CohomologyInput) -> tuple[int, int]:
    """(dim at rate -k - delta, dim at rate -k + delta) for small delta > 0."""
    if 2 * c.k < c.n:
        return c.compact, c.compact + c.restriction
    if 2 * c.k == c.n:
        return c.compact_image, c.compact_image + 2 * c.restriction
    return c.compact_image, c.full


def check_small_delta(delta, k: int, roots: Iterable[IndicialDatum]) -> bool:
    """True if -k is the only root in [-k - delta, -k + delta]."""
    lo, hi = Surd.of(Fraction(-k) - Fraction(delta)), Surd.of(Fraction(-k) + Fraction(delta))
    for r in roots:
        if lo <= r.rate <= hi and r.rate != Fraction(-k):
            return False
    return True
