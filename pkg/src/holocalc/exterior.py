"""Exact exterior algebra on a flat chart of R^n.

A :class:`Form` stores its coefficients in a dict keyed by strictly
increasing index tuples (1-based, ``(1, 2)`` is e^1 ^ e^2) whose values are
:class:`Poly` polynomials in the chart coordinates x_1..x_n with
:class:`~fractions.Fraction` coefficients. No floating point is used.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

from . import linalg

Scalar = Fraction
Number = Union[int, Fraction]


class Poly:
    """Multivariate polynomial in n variables with rational coefficients."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], Number] | None = None):
        self.n = n
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != n:
                    raise ValueError(f"exponent {exp} does not have length {n}")
                c = Fraction(c)
                if c:
                    clean[tuple(exp)] = clean.get(tuple(exp), Fraction(0)) + c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.n = n
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, n: int, c: Number) -> "Poly":
        c = Fraction(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def var(cls, n: int, i: int) -> "Poly":
        """The coordinate x_i (1-based)."""
        exp = [0] * n
        exp[i - 1] = 1
        return cls._raw(n, {tuple(exp): Fraction(1)})

    @classmethod
    def coerce(cls, n: int, x: "Poly | Number") -> "Poly":
        if isinstance(x, Poly):
            if x.n != n:
                raise ValueError(f"polynomial in {x.n} variables used in dimension {n}")
            return x
        return cls.constant(n, x)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.n, Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __add__(self, other):
        other = Poly.coerce(self.n, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(self.n, other))

    def __rsub__(self, other):
        return Poly.coerce(self.n, other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            if not c:
                return Poly._raw(self.n, {})
            return Poly._raw(self.n, {e: v * c for e, v in self.terms.items()})
        if other.n != self.n:
            raise ValueError("polynomials live in different dimensions")
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly._raw(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, i: int) -> "Poly":
        """Partial derivative with respect to x_i (1-based)."""
        j = i - 1
        out = {}
        for e, c in self.terms.items():
            if e[j]:
                e2 = e[:j] + (e[j] - 1,) + e[j + 1:]
                out[e2] = c * e[j]
        return Poly._raw(self.n, out)

    def evaluate(self, point: Sequence):
        """Value at a point; exact for rational points, float for float points."""
        total = 0
        for e, c in self.terms.items():
            term = c if not isinstance(point[0], float) else float(c)
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def _mask(idx: Iterable[int]) -> int:
    m = 0
    for i in idx:
        m |= 1 << i
    return m


def merge_sign(left: tuple[int, ...], right: tuple[int, ...]) -> int:
    """Sign of the shuffle sorting ``left + right``; 0 if they overlap."""
    ml = _mask(left)
    if ml & _mask(right):
        return 0
    inv = 0
    for j in right:
        inv += (ml >> (j + 1)).bit_count()
    return -1 if inv & 1 else 1


def sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``idx`` and the sorted tuple (0 on repeats)."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


def complement(idx: tuple[int, ...], n: int) -> tuple[int, ...]:
    s = set(idx)
    return tuple(i for i in range(1, n + 1) if i not in s)


def basis(n: int, k: int) -> list[tuple[int, ...]]:
    """Lexicographically ordered basis index tuples of degree k."""
    return list(combinations(range(1, n + 1), k))


class Form:
    """Differential k-form on R^n with polynomial coefficients."""

    __slots__ = ("n", "k", "terms")

    def __init__(self, n: int, k: int, terms: Mapping[Sequence[int], "Poly | Number"] | None = None):
        if not 0 <= k <= n:
            raise ValueError(f"degree {k} out of range for dimension {n}")
        self.n = n
        self.k = k
        out: dict[tuple[int, ...], Poly] = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != k or any(not 1 <= i <= n for i in idx):
                raise ValueError(f"bad index tuple {idx} for a {k}-form on R^{n}")
            sign, key = sort_sign(idx)
            if not sign:
                continue
            p = Poly.coerce(n, c) * sign
            acc = out.get(key)
            p = p if acc is None else acc + p
            if p.is_zero():
                out.pop(key, None)
            else:
                out[key] = p
        self.terms = out

    @classmethod
    def _raw(cls, n: int, k: int, terms: dict) -> "Form":
        f = cls.__new__(cls)
        f.n, f.k, f.terms = n, k, terms
        return f

    @classmethod
    def zero(cls, n: int, k: int) -> "Form":
        return cls._raw(n, k, {})

    @classmethod
    def scalar(cls, n: int, c: "Poly | Number") -> "Form":
        return cls(n, 0, {(): c})

    @classmethod
    def e(cls, n: int, *idx: int, coeff: "Poly | Number" = 1) -> "Form":
        """Basis form e^{i1} ^ ... ^ e^{ik} (indices may be unsorted)."""
        return cls(n, len(idx), {idx: coeff})

    @classmethod
    def volume(cls, n: int) -> "Form":
        return cls.e(n, *range(1, n + 1))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(p.is_constant() for p in self.terms.values())

    def coeff(self, idx: Sequence[int]) -> Poly:
        sign, key = sort_sign(idx)
        p = self.terms.get(key)
        if p is None or not sign:
            return Poly.constant(self.n, 0)
        return p * sign

    def top_coeff(self) -> Poly:
        """Coefficient of e^{1..n} for a top-degree form."""
        if self.k != self.n:
            raise ValueError("not a top-degree form")
        return self.coeff(tuple(range(1, self.n + 1)))

    def _check(self, other: "Form"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Form") -> "Form":
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        if self.k != other.k:
            raise ValueError(f"cannot add forms of degree {self.k} and {other.k}")
        out = dict(self.terms)
        for key, p in other.terms.items():
            acc = out.get(key)
            q = p if acc is None else acc + p
            if q.is_zero():
                out.pop(key, None)
            else:
                out[key] = q
        return Form._raw(self.n, self.k, out)

    __radd__ = __add__

    def __neg__(self) -> "Form":
        return Form._raw(self.n, self.k, {key: -p for key, p in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, c: "Poly | Number") -> "Form":
        if isinstance(c, Form):
            return NotImplemented
        out = {}
        for key, p in self.terms.items():
            q = p * c
            if not q.is_zero():
                out[key] = q
        return Form._raw(self.n, self.k, out)

    __rmul__ = __mul__

    def __truediv__(self, c: Number) -> "Form":
        return self * (1 / Fraction(c))

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if self.n != other.n:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.k == other.k and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.k, frozenset(self.terms.items())))

    def map_coeffs(self, fn) -> "Form":
        out = {}
        for key, p in self.terms.items():
            q = fn(p)
            if not q.is_zero():
                out[key] = q
        return Form._raw(self.n, self.k, out)

    def evaluate(self, point: Sequence) -> "Form":
        """Freeze the coefficients at a rational point (constant form)."""
        return Form(self.n, self.k, {key: p.evaluate(point) for key, p in self.terms.items()})

    def vector(self) -> list[Poly]:
        """Coefficients in the lexicographic basis of degree k."""
        zero = Poly.constant(self.n, 0)
        return [self.terms.get(key, zero) for key in basis(self.n, self.k)]

    @classmethod
    def from_vector(cls, n: int, k: int, vec: Sequence["Poly | Number"]) -> "Form":
        return cls(n, k, dict(zip(basis(n, k), vec)))

    def constant_vector(self) -> list[Fraction]:
        return [p.constant_value() for p in self.vector()]

    def __repr__(self):
        if not self.terms:
            return f"0 ({self.k}-form on R^{self.n})"
        parts = []
        for key in sorted(self.terms):
            name = "e" + "".join(str(i) for i in key) if key else "1"
            parts.append(f"({self.terms[key]})*{name}")
        return " + ".join(parts)


def wedge(a: Form, b: Form) -> Form:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    k = a.k + b.k
    if k > a.n:
        raise ValueError(f"degree {k} exceeds dimension {a.n}")
    out: dict[tuple[int, ...], Poly] = {}
    for ia, pa in a.terms.items():
        for ib, pb in b.terms.items():
            s = merge_sign(ia, ib)
            if not s:
                continue
            key = tuple(sorted(ia + ib))
            p = pa * pb
            if s < 0:
                p = -p
            acc = out.get(key)
            q = p if acc is None else acc + p
            if q.is_zero():
                out.pop(key, None)
            else:
                out[key] = q
    return Form._raw(a.n, k, out)


def wedge_all(*forms: Form) -> Form:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def contract(v: Sequence["Poly | Number"], a: Form) -> Form:
    """Interior product v ⌟ a for a vector field with components v_1..v_n."""
    if a.k == 0:
        raise ValueError("cannot contract a vector into a 0-form")
    if len(v) != a.n:
        raise ValueError(f"vector has {len(v)} components, expected {a.n}")
    comps = [Poly.coerce(a.n, c) for c in v]
    out: dict[tuple[int, ...], Poly] = {}
    for key, p in a.terms.items():
        for s, i in enumerate(key):
            vi = comps[i - 1]
            if vi.is_zero():
                continue
            rest = key[:s] + key[s + 1:]
            q = p * vi
            if s % 2:
                q = -q
            acc = out.get(rest)
            q = q if acc is None else acc + q
            if q.is_zero():
                out.pop(rest, None)
            else:
                out[rest] = q
    return Form._raw(a.n, a.k - 1, out)


def unit_vector(n: int, i: int) -> list[Fraction]:
    return [Fraction(int(j == i)) for j in range(1, n + 1)]


def d(a: Form) -> Form:
    """Exterior derivative in chart coordinates."""
    n = a.n
    if a.k == n:
        raise ValueError(f"d of a top-degree form on R^{n} has no target degree")
    out: dict[tuple[int, ...], Poly] = {}
    for key, p in a.terms.items():
        for i in range(1, n + 1):
            if i in key:
                continue
            dp = p.diff(i)
            if dp.is_zero():
                continue
            s = merge_sign((i,), key)
            nk = tuple(sorted((i,) + key))
            q = dp if s > 0 else -dp
            acc = out.get(nk)
            q = q if acc is None else acc + q
            if q.is_zero():
                out.pop(nk, None)
            else:
                out[nk] = q
    return Form._raw(n, a.k + 1, out)


class Metric:
    """Constant symmetric positive-definite metric with an orientation sign.

    ``sqrt_det`` holds the exact square root of the determinant when it is
    rational and ``None`` otherwise; only the determinant is kept then.
    """

    __slots__ = ("n", "matrix", "orientation", "inverse", "det", "sqrt_det", "_minors")

    def __init__(self, matrix: Sequence[Sequence[Number]], orientation: int = 1):
        m = linalg.to_matrix(matrix)
        n = len(m)
        if any(len(row) != n for row in m):
            raise ValueError("metric matrix must be square")
        if any(m[i][j] != m[j][i] for i in range(n) for j in range(n)):
            raise ValueError("metric matrix must be symmetric")
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        self.det = linalg.det(m)
        if self.det == 0:
            raise linalg.SingularMatrix("metric is singular")
        if not linalg.is_positive_definite(m):
            raise ValueError("metric is not positive definite")
        self.n = n
        self.matrix = m
        self.orientation = orientation
        self.inverse = linalg.inverse(m)
        self.sqrt_det = linalg.exact_root(self.det, 2)
        self._minors: dict[int, dict] = {}

    @classmethod
    def euclidean(cls, n: int, orientation: int = 1) -> "Metric":
        return cls(linalg.identity(n), orientation)

    @classmethod
    def diagonal(cls, entries: Sequence[Number], orientation: int = 1) -> "Metric":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], orientation)

    def is_euclidean(self) -> bool:
        return self.matrix == linalg.identity(self.n)

    def volume_scale(self) -> Fraction:
        if self.sqrt_det is None:
            raise ValueError(
                f"volume form needs sqrt({self.det}), which is irrational; "
                "choose a metric with a rational square-root determinant"
            )
        return self.orientation * self.sqrt_det

    def volume_form(self) -> Form:
        return Form.volume(self.n) * self.volume_scale()

    def inverse_minors(self, k: int) -> dict[tuple[int, ...], dict[tuple[int, ...], Fraction]]:
        """det(g^{-1}[I, K]) for all basis tuples I, K of degree k (cached)."""
        if k not in self._minors:
            table = {}
            inv = self.inverse
            for i_idx in basis(self.n, k):
                row = {}
                for k_idx in basis(self.n, k):
                    sub = [[inv[a - 1][b - 1] for b in k_idx] for a in i_idx]
                    v = linalg.det(sub) if k else Fraction(1)
                    if v:
                        row[k_idx] = v
                table[i_idx] = row
            self._minors[k] = table
        return self._minors[k]

    def raise_indices(self, a: Form) -> dict[tuple[int, ...], Poly]:
        if self.is_euclidean():
            return dict(a.terms)
        table = self.inverse_minors(a.k)
        out: dict[tuple[int, ...], Poly] = {}
        for i_idx, row in table.items():
            acc = None
            for k_idx, m in row.items():
                p = a.terms.get(k_idx)
                if p is not None:
                    acc = p * m if acc is None else acc + p * m
            if acc is not None and not acc.is_zero():
                out[i_idx] = acc
        return out


def inner(a: Form, b: Form, g: Metric) -> Poly:
    """Pointwise inner product <a, b>_g (coefficientwise polynomial)."""
    a._check(b)
    if a.k != b.k:
        raise ValueError("inner product needs forms of equal degree")
    raised = g.raise_indices(b)
    out = Poly.constant(a.n, 0)
    for key, p in a.terms.items():
        q = raised.get(key)
        if q is not None:
            out = out + p * q
    return out


def hodge_star(a: Form, g: Metric | None = None) -> Form:
    """Hodge star characterised by beta ^ *a = <beta, a>_g vol_g."""
    n = a.n
    g = g or Metric.euclidean(n)
    if g.n != n:
        raise ValueError("metric and form dimensions differ")
    scale = g.volume_scale()
    out: dict[tuple[int, ...], Poly] = {}
    for key, p in g.raise_indices(a).items():
        comp = complement(key, n)
        s = merge_sign(key, comp) * scale
        out[comp] = p * s
    return Form._raw(n, n - a.k, {kk: v for kk, v in out.items() if not v.is_zero()})


def codifferential(a: Form, g: Metric | None = None) -> Form:
    """d* = (-1)^{n(k-1)+1} * d * on k-forms (Riemannian, constant metric)."""
    n, k = a.n, a.k
    if k == 0:
        raise ValueError("codifferential of a 0-form has no target degree")
    sign = -1 if (n * (k - 1) + 1) % 2 else 1
    return hodge_star(d(hodge_star(a, g)), g) * sign


def laplacian(a: Form, g: Metric | None = None) -> Form:
    """Hodge Laplacian dd* + d*d (positive convention)."""
    out = Form.zero(a.n, a.k)
    if a.k > 0:
        out = out + d(codifferential(a, g))
    if a.k < a.n:
        out = out + codifferential(d(a), g)
    return out


def flat(v: Sequence["Poly | Number"], g: Metric | None = None) -> Form:
    """Musical isomorphism X -> X^flat."""
    n = len(v)
    comps = [Poly.coerce(n, c) for c in v]
    if g is None or g.is_euclidean():
        return Form(n, 1, {(i + 1,): comps[i] for i in range(n)})
    return Form(n, 1, {(i + 1,): sum((comps[j] * g.matrix[i][j] for j in range(n)), Poly.constant(n, 0)) for i in range(n)})


def sharp(a: Form, g: Metric | None = None) -> list[Poly]:
    """Musical isomorphism gamma -> gamma^sharp (components of the vector)."""
    if a.k != 1:
        raise ValueError("sharp needs a 1-form")
    n = a.n
    comps = [a.coeff((i,)) for i in range(1, n + 1)]
    if g is None or g.is_euclidean():
        return comps
    return [sum((comps[j] * g.inverse[i][j] for j in range(n)), Poly.constant(n, 0)) for i in range(n)]


def frame_change(a: Form, matrix: Sequence[Sequence[Number]]) -> Form:
    """Substitute e^i -> sum_j A[i][j] e^j in a constant-coefficient form."""
    n = a.n
    images = [Form(n, 1, {(j + 1,): matrix[i][j] for j in range(n)}) for i in range(n)]
    out = Form.zero(n, a.k)
    for key, p in a.terms.items():
        term = Form.scalar(n, p)
        for i in key:
            term = wedge(term, images[i - 1])
        out = out + term
    return out


def embed(a: Form, n_new: int, index_map: Sequence[int] | None = None) -> Form:
    """Push a form on R^n into R^{n_new} (coordinates x_i -> x_{index_map[i]})."""
    index_map = list(index_map or range(1, a.n + 1))
    out = Form.zero(n_new, a.k)
    for key, p in a.terms.items():
        newp = {}
        for exp, c in p.terms.items():
            e = [0] * n_new
            for i, k in enumerate(exp):
                e[index_map[i] - 1] += k
            newp[tuple(e)] = c
        out = out + Form(n_new, a.k, {tuple(index_map[i - 1] for i in key): Poly(n_new, newp)})
    return out


def restrict(a: Form, n_new: int) -> Form:
    """Inverse of :func:`embed` with the identity map; extra indices must be absent."""
    out = {}
    for key, p in a.terms.items():
        if any(i > n_new for i in key):
            raise ValueError("form involves coordinates outside the target chart")
        newp = {}
        for exp, c in p.terms.items():
            if any(exp[n_new:]):
                raise ValueError("coefficient depends on coordinates outside the target chart")
            newp[exp[:n_new]] = c
        out[key] = Poly(n_new, newp)
    return Form(n_new, a.k, out)


# -- JSON wire format -------------------------------------------------------

def form_to_json(a: Form) -> dict:
    terms = []
    for key in sorted(a.terms):
        poly = [
            {"exp": list(exp), "num": c.numerator, "den": c.denominator}
            for exp, c in sorted(a.terms[key].terms.items())
        ]
        terms.append({"idx": list(key), "poly": poly})
    return {"n": a.n, "k": a.k, "terms": terms}


def form_from_json(obj: Mapping) -> Form:
    try:
        n, k = int(obj["n"]), int(obj["k"])
        terms = {}
        for t in obj["terms"]:
            poly = Poly(n, {tuple(m["exp"]): Fraction(int(m["num"]), int(m.get("den", 1))) for m in t["poly"]})
            idx = tuple(t["idx"])
            if idx in terms:
                raise ValueError(f"duplicate index tuple {idx}")
            terms[idx] = poly
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed form JSON: {exc}") from exc
    return Form(n, k, terms)
