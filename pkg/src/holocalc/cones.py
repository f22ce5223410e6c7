"""Symbolic algebra of forms on a cone over a nearly-Kähler link.

Elements are sums of c r^a (dr)^b G with G one of the structure monomials
1, omega, ReOmega, ImOmega, omega^2, omega^3. Products, the link Hodge star
and the flat-model identities behind them are generated from the SU(3) model
on R^6 with module :mod:`exterior`, then checked against the rewrite rules.
The cone is oriented by dr ^ r^6 vol_link.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .exterior import Form, hodge_star, wedge

GENERATORS = ("1", "w", "ReO", "ImO", "w2", "w3")
DEGREE = {"1": 0, "w": 2, "ReO": 3, "ImO": 3, "w2": 4, "w3": 6}

# rewrite rules for products of structure monomials (omitted pairs vanish)
PRODUCT_RULES: dict[tuple[str, str], tuple[Fraction, str]] = {
    ("w", "w"): (Fraction(1), "w2"),
    ("w", "w2"): (Fraction(1), "w3"),
    ("w2", "w"): (Fraction(1), "w3"),
    ("ReO", "ImO"): (Fraction(2, 3), "w3"),
    ("ImO", "ReO"): (Fraction(-2, 3), "w3"),
}

# nearly-Kähler differential on generators; dReO = 0 is forced by d^2 = 0
D_RULES: dict[str, dict[str, Fraction]] = {
    "1": {},
    "w": {"ReO": Fraction(3)},
    "ReO": {},
    "ImO": {"w2": Fraction(-2)},
}


class ConeAlgebraError(ValueError):
    pass


# -- flat SU(3) model on R^6 ----------------------------------------------

def _complex_volume() -> tuple[Form, Form]:
    # (e1 + i e2) ^ (e3 + i e4) ^ (e5 + i e6), expanded over real/imaginary choices
    re, im = Form.zero(6, 3), Form.zero(6, 3)
    for choice in product((0, 1), repeat=3):
        idx = tuple(2 * j + 1 + c for j, c in enumerate(choice))
        power = sum(choice) % 4
        term = Form.e(6, *idx)
        if power == 0:
            re = re + term
        elif power == 1:
            im = im + term
        elif power == 2:
            re = re - term
        else:
            im = im - term
    return re, im


@lru_cache(maxsize=None)
def flat_model() -> dict[str, Form]:
    """omega0 = e12 + e34 + e56 and Omega0 = (e1 + i e2)(e3 + i e4)(e5 + i e6) on R^6."""
    w = Form(6, 2, {(1, 2): 1, (3, 4): 1, (5, 6): 1})
    re, im = _complex_volume()
    w2 = wedge(w, w)
    return {"1": Form.scalar(6, 1), "w": w, "ReO": re, "ImO": im, "w2": w2, "w3": wedge(w2, w)}


def _as_multiple(a: Form, candidates) -> tuple[Fraction, str] | None:
    if a.is_zero():
        return None
    model = flat_model()
    for name in candidates:
        g = model[name]
        if g.k != a.k:
            continue
        key = next(iter(g.terms))
        c = a.coeff(key).constant_value() / g.coeff(key).constant_value()
        if a == g * c:
            return c, name
    raise ConeAlgebraError(f"{a} is not a multiple of a structure monomial")


@lru_cache(maxsize=None)
def link_star_table() -> dict[str, tuple[Fraction, str]]:
    """*_link G = c G' for every structure monomial, computed on the flat model."""
    model = flat_model()
    return {name: _as_multiple(hodge_star(g), GENERATORS) for name, g in model.items()}


@lru_cache(maxsize=None)
def product_table() -> dict[tuple[str, str], tuple[Fraction, str]]:
    """Nonzero products of structure monomials, computed on the flat model."""
    model = flat_model()
    out = {}
    for a in GENERATORS:
        for b in GENERATORS:
            if DEGREE[a] + DEGREE[b] > 6:
                continue
            r = _as_multiple(wedge(model[a], model[b]), GENERATORS)
            if r is not None:
                out[(a, b)] = r
    return out


def check_rules() -> None:
    """The flat model reproduces the stated product rules (ignoring units)."""
    table = {k: v for k, v in product_table().items() if "1" not in k}
    if table != PRODUCT_RULES:
        raise ConeAlgebraError(f"flat model products {table} disagree with the rewrite rules")


# -- the graded algebra ----------------------------------------------------

Key = tuple[int, int, str]


@dataclass(frozen=True)
class ConeElement:
    """Finite sum of c r^a dr^b G, keyed by (a, b, G)."""

    terms: tuple[tuple[Key, Fraction], ...]

    @classmethod
    def from_dict(cls, terms: dict[Key, Fraction]) -> "ConeElement":
        clean = {}
        for (a, b, g), c in terms.items():
            if b not in (0, 1) or g not in DEGREE:
                raise ConeAlgebraError(f"bad term key {(a, b, g)}")
            if b + DEGREE[g] > 7:
                raise ConeAlgebraError("degree exceeds 7")
            if c:
                clean[(a, b, g)] = Fraction(c)
        return cls(tuple(sorted(clean.items())))

    @classmethod
    def term(cls, c=1, a: int = 0, b: int = 0, g: str = "1") -> "ConeElement":
        return cls.from_dict({(a, b, g): Fraction(c)})

    @classmethod
    def zero(cls) -> "ConeElement":
        return cls(())

    def as_dict(self) -> dict[Key, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {b + DEGREE[g] for (_, b, g), _ in self.terms}

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ConeAlgebraError(f"inhomogeneous element with degrees {sorted(degs)}")
        return degs.pop()

    def __add__(self, other: "ConeElement") -> "ConeElement":
        out = self.as_dict()
        for k, c in other.terms:
            out[k] = out.get(k, 0) + c
        return ConeElement.from_dict(out)

    def __neg__(self) -> "ConeElement":
        return self * -1

    def __sub__(self, other: "ConeElement") -> "ConeElement":
        return self + (-other)

    def __mul__(self, c) -> "ConeElement":
        return ConeElement.from_dict({k: v * Fraction(c) for k, v in self.terms})

    __rmul__ = __mul__

    def __xor__(self, other: "ConeElement") -> "ConeElement":
        return cone_wedge(self, other)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b, g), c in self.terms:
            bits = [str(c)]
            if a:
                bits.append(f"r^{a}")
            if b:
                bits.append("dr")
            if g != "1":
                bits.append(g)
            parts.append("*".join(bits))
        return " + ".join(parts)


def _mul_generators(g1: str, g2: str) -> tuple[Fraction, str] | None:
    if g1 == "1":
        return Fraction(1), g2
    if g2 == "1":
        return Fraction(1), g1
    return PRODUCT_RULES.get((g1, g2))


def cone_wedge(x: ConeElement, y: ConeElement) -> ConeElement:
    out: dict[Key, Fraction] = {}
    for (a1, b1, g1), c1 in x.terms:
        for (a2, b2, g2), c2 in y.terms:
            if b1 and b2:
                continue
            prod = _mul_generators(g1, g2)
            if prod is None:
                continue
            c, g = prod
            # move dr (from y) past g1
            sign = -1 if (b2 * DEGREE[g1]) % 2 else 1
            key = (a1 + a2, b1 + b2, g)
            out[key] = out.get(key, 0) + sign * c * c1 * c2
    return ConeElement.from_dict(out)


def _d_generator(g: str) -> ConeElement:
    if g in D_RULES:
        return ConeElement.from_dict({(0, 0, h): c for h, c in D_RULES[g].items()})
    # powers of omega through the Leibniz rule
    w = ConeElement.term(g="w")
    lower = {"w2": "w", "w3": "w2"}[g]
    low = ConeElement.term(g=lower)
    return cone_wedge(_d_generator("w"), low) + cone_wedge(w, _d_generator(lower))


def cone_d(x: ConeElement) -> ConeElement:
    """d with d(r^a) = a r^(a-1) dr and the nearly-Kähler rules on generators."""
    out = ConeElement.zero()
    for (a, b, g), c in x.terms:
        if a and not b:
            out = out + ConeElement.term(c * a, a - 1, 1, g)
        dg = _d_generator(g)
        if not dg.is_zero():
            # d(r^a dr^b G) picks up (-1)^b when passing dr
            head = ConeElement.term(c * (-1) ** b, a, b)
            out = out + cone_wedge(head, dg)
    return out


def check_d_squared() -> None:
    for g in GENERATORS:
        for b in (0, 1):
            if b + DEGREE[g] > 7:
                continue
            x = ConeElement.term(1, 3, b, g)
            if not cone_d(cone_d(x)).is_zero():
                raise ConeAlgebraError(f"d^2 != 0 on r^3 dr^{b} {g}")


def cone_star(x: ConeElement) -> ConeElement:
    """Hodge star of g_C = dr^2 + r^2 g_link oriented by dr ^ r^6 vol_link.

    *(r^a G) = (-1)^p r^(a+6-2p) dr ^ *G and *(r^a dr ^ G) = r^(a+6-2p) *G.
    """
    table = link_star_table()
    out: dict[Key, Fraction] = {}
    for (a, b, g), c in x.terms:
        p = DEGREE[g]
        s, h = table[g]
        if b:
            key, coeff = (a + 6 - 2 * p, 0, h), c * s
        else:
            key, coeff = (a + 6 - 2 * p, 1, h), c * s * (-1) ** p
        out[key] = out.get(key, 0) + coeff
    return ConeElement.from_dict(out)


def cone_phi() -> ConeElement:
    """phi_C = r^2 dr ^ omega + r^3 ReOmega."""
    return ConeElement.term(1, 2, 1, "w") + ConeElement.term(1, 3, 0, "ReO")


def cone_psi() -> ConeElement:
    check_rules()
    return cone_star(cone_phi())


def expected_psi() -> ConeElement:
    """1/2 r^4 omega^2 - r^3 dr ^ ImOmega."""
    return ConeElement.term(Fraction(1, 2), 4, 0, "w2") + ConeElement.term(-1, 3, 1, "ImO")


def to_flat(x: ConeElement, r0) -> Form:
    """Value at radius r0 as a constant form on R^7 = span(dr) + R^6, dr -> e1."""
    r0 = Fraction(r0)
    model = flat_model()
    out = None
    for (a, b, g), c in x.terms:
        base = model[g]
        shifted = Form(7, base.k, {tuple(i + 1 for i in k): v.constant_value() for k, v in base.terms.items()})
        if base.k == 0:
            shifted = Form.scalar(7, base.coeff(()).constant_value())
        term = wedge(Form.e(7, 1), shifted) if b else shifted
        term = term * (c * r0 ** a)
        out = term if out is None else out + term
    if out is None:
        raise ConeAlgebraError("to_flat of the zero element needs a degree")
    return out


def cone_torsion(r0=1):
    """Torsion classes of phi_C at radius r0 via the pointwise solver."""
    from .g2 import G2Data, torsion_from_derivatives

    G = G2Data(to_flat(cone_phi(), r0))
    dphi = cone_d(cone_phi())
    dpsi = cone_d(cone_psi())
    dphi_f = to_flat(dphi, r0) if not dphi.is_zero() else Form.zero(7, 4)
    dpsi_f = to_flat(dpsi, r0) if not dpsi.is_zero() else Form.zero(7, 5)
    return torsion_from_derivatives(G, dphi_f, dpsi_f)


# -- primitive (1,1)-forms on the flat model -------------------------------

def primitive_check(kappa: Form) -> bool:
    """kappa ^ omega0^2 = 0 and kappa ^ Omega0 = 0 (both real parts)."""
    if kappa.n != 6 or kappa.k != 2:
        raise ValueError("primitive_check needs a 2-form on R^6")
    m = flat_model()
    return all(wedge(kappa, m[g]).is_zero() for g in ("w2", "ReO", "ImO"))
