"""G2-structure calculus on R^7.

The model 3-form is

    phi0 = e123 + e145 + e167 + e246 - e257 - e347 - e356

and every other structure is handled through :class:`G2Data`, which recovers
the metric from phi, computes psi = *phi and caches exact projector matrices
for the type decompositions of 2- and 3-forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .exterior import (
    Form,
    Metric,
    Poly,
    basis,
    codifferential,
    contract,
    d,
    flat,
    hodge_star,
    inner,
    unit_vector,
    wedge,
)

N = 7

PHI0_TERMS: dict[tuple[int, int, int], int] = {
    (1, 2, 3): 1,
    (1, 4, 5): 1,
    (1, 6, 7): 1,
    (2, 4, 6): 1,
    (2, 5, 7): -1,
    (3, 4, 7): -1,
    (3, 5, 6): -1,
}

# coefficient of tau1 ^ phi in d(phi); the conformal family phi = u^3 phi0
# fixes it, since d(u^3 phi0) = 3 (du/u) ^ phi while d(u^4 psi0) = 4 (du/u) ^ psi
TAU1_PHI_COEFF = 3


class NotG2Error(ValueError):
    """The 3-form is not a (positively oriented) G2-structure at this point."""


class IrrationalMetricError(ValueError):
    """The recovered metric needs an irrational root; use the float shadow."""


class TorsionInconsistency(ValueError):
    """The tau1 components read off from d(phi) and d(psi) disagree."""


def standard_phi(terms: dict | None = None) -> Form:
    return Form(N, 3, terms or PHI0_TERMS)


def bilinear_form(phi: Form) -> list[list[Fraction]]:
    """Raw B_ij with (e_i ⌟ phi) ^ (e_j ⌟ phi) ^ phi = B_ij e^{1..7}."""
    if not phi.is_constant():
        raise ValueError("bilinear_form needs a constant 3-form; evaluate the field first")
    n = phi.n
    contractions = [contract(unit_vector(n, i), phi) for i in range(1, n + 1)]
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        tail = wedge(contractions[i], phi)
        for j in range(i, n):
            v = wedge(contractions[j], tail).top_coeff().constant_value()
            out[i][j] = out[j][i] = v
    return out


_CALIBRATION: Fraction | None = None


def _calibration() -> Fraction:
    # the model form must come out Euclidean: B(phi0) = c * identity
    global _CALIBRATION
    if _CALIBRATION is None:
        b = bilinear_form(standard_phi())
        c = b[0][0]
        if b != [[c if i == j else 0 for j in range(N)] for i in range(N)]:
            raise AssertionError("model 3-form does not define a conformally flat bilinear form")
        _CALIBRATION = c
    return _CALIBRATION


def metric_from_phi(phi: Form, point: Sequence | None = None) -> tuple[Metric, Form]:
    """Recover (g_phi, vol_phi) from a 3-form, optionally evaluated at a point.

    With B = raw / c normalised so that B(phi0) = I, one has
    B = sqrt(det g) g, hence sqrt(det g) = det(B)^(1/9). A negative root means
    phi induces the opposite orientation.
    """
    if phi.n != N or phi.k != 3:
        raise ValueError("metric_from_phi needs a 3-form on R^7")
    if point is not None:
        phi = phi.evaluate(point)
    c = _calibration()
    b = [[x / c for x in row] for row in bilinear_form(phi)]
    # B is definite for either orientation; its sign is the orientation of phi
    if not (linalg.is_positive_definite(b) or linalg.is_positive_definite([[-x for x in row] for row in b])):
        raise NotG2Error("not a G2-structure at this point")
    s = linalg.exact_root(linalg.det(b), 9)
    if s is None:
        raise IrrationalMetricError("metric of this 3-form is not rational; use the float shadow")
    g = Metric([[x / s for x in row] for row in b], orientation=1 if s > 0 else -1)
    return g, g.volume_form()


def _span_matrix(vectors: list[list[Fraction]]) -> list[list[Fraction]]:
    return [list(col) for col in zip(*vectors)]


def _projectors(blocks: list[list[list[Fraction]]]) -> list[list[list[Fraction]]]:
    """Projectors onto each block of a direct-sum decomposition given by bases."""
    cols = [v for blk in blocks for v in blk]
    m = _span_matrix(cols)
    minv = linalg.inverse(m)
    out = []
    start = 0
    for blk in blocks:
        stop = start + len(blk)
        # P = M[:, block] @ M^-1[block, :]
        out.append(linalg.matmul([row[start:stop] for row in m], minv[start:stop]))
        start = stop
    return out


def apply_matrix(p: list[list[Fraction]], a: Form) -> Form:
    """Apply a matrix acting on coefficient vectors in the lexicographic basis."""
    vec = a.vector()
    zero = Poly.constant(a.n, 0)
    out = []
    for row in p:
        acc = zero
        for c, v in zip(row, vec):
            if c and not v.is_zero():
                acc = acc + v * c
        out.append(acc)
    return Form.from_vector(a.n, a.k, out)


@dataclass(frozen=True)
class G2Data:
    """Pointwise G2-structure: phi, g_phi, vol_phi, psi and type projectors."""

    phi: Form
    metric: Metric = field(init=False)
    vol: Form = field(init=False)
    psi: Form = field(init=False)

    def __post_init__(self):
        if not self.phi.is_constant():
            raise ValueError("G2Data is pointwise; evaluate the 3-form field first")
        g, vol = metric_from_phi(self.phi)
        object.__setattr__(self, "metric", g)
        object.__setattr__(self, "vol", vol)
        object.__setattr__(self, "psi", hodge_star(self.phi, g))

    @classmethod
    def flat(cls) -> "G2Data":
        return _flat()

    @classmethod
    def at(cls, phi_field: Form, point: Sequence) -> "G2Data":
        return cls(phi_field.evaluate(point))

    def star(self, a: Form) -> Form:
        return hodge_star(a, self.metric)

    def vector_basis(self) -> list[list[Fraction]]:
        return [unit_vector(N, i) for i in range(1, N + 1)]

    @cached_property
    def basis7_2(self) -> list[Form]:
        return [contract(v, self.phi) for v in self.vector_basis()]

    @cached_property
    def basis14(self) -> list[Form]:
        # kernel of sigma -> sigma ^ psi
        cols = [wedge(Form.e(N, *i), self.psi).constant_vector() for i in basis(N, 2)]
        kernel = linalg.nullspace(_span_matrix(cols))
        return [Form.from_vector(N, 2, v) for v in kernel]

    @cached_property
    def basis7_3(self) -> list[Form]:
        return [contract(v, self.psi) for v in self.vector_basis()]

    @cached_property
    def basis27(self) -> list[Form]:
        # kernel of rho -> (rho ^ phi, rho ^ psi)
        cols = []
        for i in basis(N, 3):
            e = Form.e(N, *i)
            cols.append(wedge(e, self.phi).constant_vector() + wedge(e, self.psi).constant_vector())
        kernel = linalg.nullspace(_span_matrix(cols))
        return [Form.from_vector(N, 3, v) for v in kernel]

    @cached_property
    def p2(self) -> dict[str, list[list[Fraction]]]:
        blocks = [[f.constant_vector() for f in self.basis7_2], [f.constant_vector() for f in self.basis14]]
        p7, p14 = _projectors(blocks)
        return {"7": p7, "14": p14}

    @cached_property
    def p3(self) -> dict[str, list[list[Fraction]]]:
        blocks = [
            [self.phi.constant_vector()],
            [f.constant_vector() for f in self.basis7_3],
            [f.constant_vector() for f in self.basis27],
        ]
        p1, p7, p27 = _projectors(blocks)
        return {"1": p1, "7": p7, "27": p27}

    def gram(self, k: int) -> list[list[Fraction]]:
        """Matrix of the induced inner product on k-forms in the lexicographic basis."""
        forms = [Form.e(N, *i) for i in basis(N, k)]
        return [[inner(a, b, self.metric).constant_value() for b in forms] for a in forms]

    def __hash__(self):
        return hash(self.phi)


_FLAT: G2Data | None = None


def _flat() -> G2Data:
    global _FLAT
    if _FLAT is None:
        _FLAT = G2Data(standard_phi())
    return _FLAT


def _resolve(G: G2Data | None) -> G2Data:
    return G if G is not None else _flat()


def project2(G: G2Data | None, sigma: Form) -> tuple[Form, Form]:
    G = _resolve(G)
    if sigma.k != 2:
        raise ValueError("project2 needs a 2-form")
    return apply_matrix(G.p2["7"], sigma), apply_matrix(G.p2["14"], sigma)


def project3(G: G2Data | None, rho: Form) -> tuple[Form, Form, Form]:
    G = _resolve(G)
    if rho.k != 3:
        raise ValueError("project3 needs a 3-form")
    return tuple(apply_matrix(G.p3[t], rho) for t in ("1", "7", "27"))


def rho_hat(G: G2Data | None, rho: Form) -> Form:
    """Linearisation of phi -> psi at G: rho -> *(4/3 pi1 rho + pi7 rho - pi27 rho)."""
    G = _resolve(G)
    r1, r7, r27 = project3(G, rho)
    return G.star(r1 * Fraction(4, 3) + r7 - r27)


def curl(G: G2Data | None, gamma: Form) -> Form:
    """curl gamma = *(d gamma ^ psi) on 1-forms."""
    G = _resolve(G)
    if gamma.k != 1:
        raise ValueError("curl acts on 1-forms")
    return G.star(wedge(d(gamma), G.psi))


def vector_of(G: G2Data | None, gamma: Form) -> list[Poly]:
    """gamma^sharp with respect to g_phi."""
    from .exterior import sharp

    return sharp(gamma, _resolve(G).metric)


def seven_part_vector(G: G2Data | None, rho: Form) -> list[Poly]:
    """X with pi7 rho = X ⌟ psi (coordinates in the vector basis)."""
    G = _resolve(G)
    coords = _coordinates(G.basis7_3, project3(G, rho)[1])
    return coords


def _coordinates(basis_forms: list[Form], a: Form) -> list[Poly]:
    # solve a = sum_i c_i b_i with c_i polynomial, basis forms constant
    m = _span_matrix([b.constant_vector() for b in basis_forms])
    pinv = _left_inverse(m)
    vec = a.vector()
    zero = Poly.constant(a.n, 0)
    out = []
    for row in pinv:
        acc = zero
        for c, v in zip(row, vec):
            if c and not v.is_zero():
                acc = acc + v * c
        out.append(acc)
    return out


def _left_inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    mt = linalg.transpose(m)
    return linalg.matmul(linalg.inverse(linalg.matmul(mt, m)), mt)


# -- torsion ---------------------------------------------------------------

@dataclass(frozen=True)
class TorsionClasses:
    tau0: Fraction
    tau1: Form
    tau2: Form
    tau3: Form

    def is_zero(self) -> bool:
        return self.tau0 == 0 and self.tau1.is_zero() and self.tau2.is_zero() and self.tau3.is_zero()


def synthesize_derivatives(G: G2Data | None, t: TorsionClasses) -> tuple[Form, Form]:
    """(d phi, d psi) at a point from given torsion classes."""
    G = _resolve(G)
    dphi = G.psi * t.tau0 + wedge(t.tau1, G.phi) * TAU1_PHI_COEFF + G.star(t.tau3)
    dpsi = wedge(t.tau1, G.psi) * 4 + wedge(t.tau2, G.phi)
    return dphi, dpsi


def torsion_from_derivatives(G: G2Data | None, dphi: Form, dpsi: Form) -> TorsionClasses:
    """Solve the two linear systems for the torsion classes at a point."""
    G = _resolve(G)
    if not (dphi.is_constant() and dpsi.is_constant()):
        raise ValueError("torsion_from_derivatives is pointwise; pass constant forms")
    es = [Form.e(N, i) for i in range(1, N + 1)]

    cols4 = [G.psi.constant_vector()]
    cols4 += [(wedge(e, G.phi) * TAU1_PHI_COEFF).constant_vector() for e in es]
    cols4 += [G.star(b).constant_vector() for b in G.basis27]
    x4 = linalg.solve(_span_matrix(cols4), _vec(dphi, 4))
    tau0 = x4[0]
    tau1_a = Form.from_vector(N, 1, x4[1:8])
    tau3 = sum((b * c for b, c in zip(G.basis27, x4[8:])), Form.zero(N, 3))

    cols5 = [(wedge(e, G.psi) * 4).constant_vector() for e in es]
    cols5 += [wedge(b, G.phi).constant_vector() for b in G.basis14]
    x5 = linalg.solve(_span_matrix(cols5), _vec(dpsi, 5))
    tau1_b = Form.from_vector(N, 1, x5[:7])
    tau2 = sum((b * c for b, c in zip(G.basis14, x5[7:])), Form.zero(N, 2))

    if tau1_a != tau1_b:
        raise TorsionInconsistency(f"tau1 from d(phi) is {tau1_a} but from d(psi) is {tau1_b}")
    return TorsionClasses(tau0, tau1_a, tau2, tau3)


def _vec(a: Form, k: int) -> list[Fraction]:
    if a.is_zero():
        return [Fraction(0)] * len(basis(N, k))
    if a.k != k:
        raise ValueError(f"expected a {k}-form")
    return a.constant_vector()


def dpsi_at(phi_field: Form, point: Sequence, G: G2Data | None = None) -> Form:
    """d(psi) at a point via the chain rule: sum_i e^i ^ rho_hat(d_i phi)."""
    G = G or G2Data.at(phi_field, point)
    out = Form.zero(N, 5)
    for i in range(1, N + 1):
        partial = phi_field.map_coeffs(lambda p, i=i: p.diff(i)).evaluate(point)
        if not partial.is_zero():
            out = out + wedge(Form.e(N, i), rho_hat(G, partial))
    return out


def torsion_decompose(phi_field: Form, point: Sequence | None = None) -> TorsionClasses:
    """Torsion classes of a polynomial 3-form field at a point (origin by default)."""
    point = point if point is not None else [Fraction(0)] * N
    G = G2Data.at(phi_field, point)
    dphi = d(phi_field).evaluate(point)
    return torsion_from_derivatives(G, dphi, dpsi_at(phi_field, point, G))


# -- 0- and 1-form identities ----------------------------------------------

def dirac_flat(f: Poly, gamma: Form, G: G2Data | None = None) -> tuple[Poly, Form]:
    """(f, gamma) -> (d* gamma, df + curl gamma) on a flat chart."""
    G = _resolve(G)
    df = d(Form.scalar(N, f))
    return codifferential(gamma, G.metric).coeff(()), df + curl(G, gamma)


def dirac_three_form(f: Poly, gamma: Form, G: G2Data | None = None) -> Form:
    """(f, gamma) -> pi_{1+7}(*d(f phi) + d*(gamma ^ psi)) in Omega^3_{1+7}."""
    G = _resolve(G)
    raw = G.star(d(G.phi * f)) + d(G.star(wedge(gamma, G.psi)))
    r1, r7, _ = project3(G, raw)
    return r1 + r7


# a phi + X ⌟ psi in Omega^3_{1+7} corresponds to (7/6 a, -X^flat) once the
# domain is rescaled by (f, gamma) -> (f, -2 gamma); both Dirac models then agree
ISO_SCALAR = Fraction(7, 6)
ISO_VECTOR = Fraction(-1)
ISO_GAMMA_SCALE = -2


def three_form_to_pair(rho: Form, G: G2Data | None = None) -> tuple[Poly, Form]:
    """Isomorphism Omega^3_{1+7} -> Omega^0 + Omega^1 matching the two Dirac models."""
    G = _resolve(G)
    r1, r7, r27 = project3(G, rho)
    if not r27.is_zero():
        raise ValueError("3-form has a 27 component")
    a = _coordinates([G.phi], r1)[0]
    x = _coordinates(G.basis7_3, r7)
    return a * ISO_SCALAR, flat(x, G.metric) * ISO_VECTOR


def dirac_via_three_forms(f: Poly, gamma: Form, G: G2Data | None = None) -> tuple[Poly, Form]:
    """Second Dirac model read back through the isomorphisms above."""
    return three_form_to_pair(dirac_three_form(f, gamma * ISO_GAMMA_SCALE, G), G)


def conformal_field(u: Poly, frame: Sequence[Sequence] | None = None) -> tuple[Form, Form]:
    """(phi, psi) = (u^3 A*phi0, u^4 A*psi0): a polynomial G2 field with polynomial dual.

    Valid wherever u > 0; A defaults to the identity.
    """
    from .exterior import frame_change

    base = standard_phi() if frame is None else frame_change(standard_phi(), frame)
    G = G2Data(base)
    return G.phi * (u ** 3), G.psi * (u ** 4)
