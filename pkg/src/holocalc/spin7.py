"""The circle-invariant Spin(7) ansatz Phi = eps theta ^ phi + h^(2/3) psi.

The 8-chart has coordinates x1..x7 and t = x8 with dt = e^8. Basic data live
on R^7 and are lifted with :func:`lift`. Fractional powers of h are kept exact
by writing h = w^3, so h^(2/3) = w^2 and h^(1/3) = w. Anything that needs
psi(phi) for a general (non-polynomial) field goes through :mod:`shadow`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import linalg, shadow
from .exterior import Form, Metric, Poly, basis, d, embed, flat, restrict, wedge
from .g2 import G2Data, _coordinates, rho_hat, standard_phi

N = 7
M = 8

ORIGIN = (Fraction(0),) * N


class InadmissibleError(ValueError):
    """Input data violate the open or closed conditions of the ansatz."""


def lift(a: Form) -> Form:
    return embed(a, M)


def drop(a: Form) -> Form:
    return restrict(a, N)


def dt() -> Form:
    return Form.e(M, M)


def vol8() -> Form:
    """theta ^ vol_B with theta = dt."""
    return wedge(dt(), lift(Form.volume(N)))


def split_dt(a: Form) -> tuple[Form, Form]:
    """a = dt ^ alpha + beta with alpha, beta basic; returns base forms."""
    alpha: dict = {}
    beta: dict = {}
    for key, p in a.terms.items():
        if key[-1] == M:
            sign = -1 if (len(key) - 1) % 2 else 1
            alpha[key[:-1]] = p * sign
        else:
            beta[key] = p
    return drop(Form(M, a.k - 1, alpha)), drop(Form(M, a.k, beta))


def _point_g2(phi: Form, point: Sequence) -> G2Data:
    try:
        return G2Data.at(phi, point)
    except ValueError as exc:
        raise InadmissibleError(f"phi is not a G2-structure at {list(map(str, point))}: {exc}") from exc


@dataclass(frozen=True)
class Spin7Triple:
    """(theta, h = w^3, phi) plus the collapsing parameter eps.

    ``psi`` must be supplied for non-constant phi; it is checked against the
    recovered dual 4-form at each point in ``check_points``.
    """

    theta: Form
    w: Poly
    phi: Form
    psi: Form | None = None
    eps: Fraction = Fraction(1)
    check_points: tuple = (ORIGIN,)
    fibre_coeff: Fraction = field(init=False)

    def __post_init__(self):
        th = self.theta
        if th.n != M or th.k != 1:
            raise InadmissibleError("theta must be a 1-form on the 8-chart")
        if any(exp[-1] for p in th.terms.values() for exp in p.terms):
            raise InadmissibleError("theta must be independent of the fibre coordinate")
        c = th.coeff((M,))
        if not c.is_constant() or c.constant_value() == 0:
            raise InadmissibleError("theta(xi) must be a nonzero constant")
        object.__setattr__(self, "fibre_coeff", c.constant_value())
        object.__setattr__(self, "eps", Fraction(self.eps))
        if self.eps < 0:
            raise InadmissibleError("eps must be nonnegative")
        if self.w.n != N or self.phi.n != N or self.phi.k != 3:
            raise InadmissibleError("w and phi must live on the 7-dimensional base")
        for p in self.check_points:
            if self.w.evaluate(p) <= 0:
                raise InadmissibleError(f"h = w^3 is not positive at {list(map(str, p))}")
            G = _point_g2(self.phi, p)
            if self.psi is not None and self.psi.evaluate(p) != G.psi:
                raise InadmissibleError("psi does not match the dual 4-form of phi")
        if self.psi is None:
            if not self.phi.is_constant():
                raise InadmissibleError("pass psi explicitly for a non-constant phi")
            object.__setattr__(self, "psi", G2Data(self.phi).psi)

    @classmethod
    def flat(cls, eps=1) -> "Spin7Triple":
        return cls(dt(), Poly.constant(N, 1), standard_phi(), eps=Fraction(eps))

    @property
    def h(self) -> Poly:
        return self.w ** 3

    @property
    def a(self) -> Form:
        """Basic part of theta."""
        return split_dt(self.theta)[1]

    @property
    def d_theta(self) -> Form:
        return drop(d(self.theta))

    def with_eps(self, eps) -> "Spin7Triple":
        return Spin7Triple(self.theta, self.w, self.phi, self.psi, Fraction(eps), self.check_points)

    def with_theta(self, theta: Form) -> "Spin7Triple":
        return Spin7Triple(theta, self.w, self.phi, self.psi, self.eps, self.check_points)


def assemble_phi(T: Spin7Triple) -> Form:
    """Phi_eps = eps theta ^ phi + h^(2/3) psi on the 8-chart."""
    return wedge(T.theta, lift(T.phi)) * T.eps + lift(T.psi * (T.w ** 2))


def metric(T: Spin7Triple, point: Sequence | None = None) -> Metric:
    """g = h^(1/3) g_B + eps^2 h^(-1) theta^2 in the coframe (e^1..e^7, theta).

    Exact at a point, or everywhere when w and phi are constant. Oriented by
    theta ^ vol_B.
    """
    if point is None:
        if not (T.w.is_constant() and T.phi.is_constant()):
            raise ValueError("metric of a non-constant triple needs a point")
        point = ORIGIN
    if T.eps == 0:
        raise InadmissibleError("eps = 0 gives a degenerate metric")
    w = T.w.evaluate(point)
    if w <= 0:
        raise InadmissibleError("h must be positive")
    gb = _point_g2(T.phi, point).metric
    m = [[w * x for x in row] + [Fraction(0)] for row in gb.matrix]
    m.append([Fraction(0)] * N + [T.eps ** 2 / w ** 3])
    # theta ^ e^{1..7} = -e^{1..7} ^ theta
    return Metric(m, -gb.orientation)


def gh_residual(T: Spin7Triple) -> tuple[Form, Form]:
    """(d phi, d(h^(2/3) psi) + eps d theta ^ phi)."""
    r1 = d(T.phi)
    r2 = d(T.psi * (T.w ** 2)) + wedge(T.d_theta, T.phi) * T.eps
    return r1, r2


def leibniz_expansion(T: Spin7Triple) -> Form:
    """eps d theta ^ phi - eps theta ^ d phi + d(h^(2/3) psi), assembled on the 8-chart."""
    out = lift(wedge(T.d_theta, T.phi)) * T.eps
    out = out - wedge(T.theta, lift(d(T.phi))) * T.eps
    return out + lift(d(T.psi * (T.w ** 2)))


def split_d_phi(T: Spin7Triple) -> tuple[Form, Form]:
    """d Phi_eps = dt ^ A + B; with c = theta(xi) one has

    A = -eps c r1 and B = r2 - eps a ^ r1 in terms of the residuals (r1, r2).
    """
    return split_dt(d(assemble_phi(T)))


def is_torsion_free(T: Spin7Triple) -> bool:
    return d(assemble_phi(T)).is_zero()


def monopole_residual(T: Spin7Triple, point: Sequence | None = None) -> Form:
    """*(* d(3/2 h^(2/3)) + eps d theta ^ psi) = d(3/2 w^2) + eps *(d theta ^ psi).

    A polynomial 1-form when phi is constant, otherwise its value at a point.
    """
    dw2 = d(Form.scalar(N, T.w ** 2)) * Fraction(3, 2)
    dth = T.d_theta
    if T.phi.is_constant():
        G = G2Data(T.phi)
        return dw2 + G.star(wedge(dth, G.psi)) * T.eps
    if point is None:
        raise ValueError("monopole residual of a non-constant phi needs a point")
    G = _point_g2(T.phi, point)
    return dw2.evaluate(point) + G.star(wedge(dth.evaluate(point), G.psi)) * T.eps


def dtheta_types(T: Spin7Triple, point: Sequence) -> tuple[Form, Form]:
    """(U^flat, kappa0) with d theta = U ⌟ phi + kappa0 at a point."""
    from .g2 import project2

    G = _point_g2(T.phi, point)
    s7, s14 = project2(G, T.d_theta.evaluate(point))
    u = _coordinates(G.basis7_2, s7)
    return flat(u, G.metric), s14


def predicted_torsion(T: Spin7Triple, point: Sequence) -> tuple[Form, Form]:
    """Torsion predicted for a solution of the system at a point.

    tau2 = -eps h^(-2/3) kappa0 and U^flat = -(1/(3 eps)) h^(-1/3) dh = -(1/eps) w dw.
    """
    if T.eps == 0:
        raise InadmissibleError("prediction needs eps > 0")
    w = T.w.evaluate(point)
    _, kappa0 = dtheta_types(T, point)
    tau2 = kappa0 * (-T.eps / w ** 2)
    dw = d(Form.scalar(N, T.w)).evaluate(point)
    return tau2, dw * (-w / T.eps)


# -- the map Psi and its linearisation at xi0 = (phi0, 1, 0) ---------------

@dataclass(frozen=True)
class Perturbation:
    rho: Form
    f: Poly
    kappa: Form

    def __post_init__(self):
        if self.rho.k != 3 or self.kappa.k != 2 or self.f.n != N:
            raise ValueError("perturbation is (3-form, function, 2-form) on R^7")

    @classmethod
    def zero(cls) -> "Perturbation":
        return cls(Form.zero(N, 3), Poly.constant(N, 0), Form.zero(N, 2))

    def __add__(self, other: "Perturbation") -> "Perturbation":
        return Perturbation(self.rho + other.rho, self.f + other.f, self.kappa + other.kappa)

    def __mul__(self, c) -> "Perturbation":
        return Perturbation(self.rho * c, self.f * c, self.kappa * c)

    __rmul__ = __mul__


def psi_map(phi: Form, w: Poly, kappa: Form, psi: Form | None = None) -> Form:
    """Psi(phi, h, kappa) = d(h^(2/3) psi) + kappa ^ phi with h = w^3."""
    if not d(phi).is_zero():
        raise InadmissibleError("Psi needs a closed phi")
    if not d(kappa).is_zero():
        raise InadmissibleError("Psi needs a closed kappa")
    _point_g2(phi, ORIGIN)
    if psi is None:
        if not phi.is_constant():
            raise InadmissibleError("pass psi explicitly for a non-constant phi")
        psi = G2Data(phi).psi
    return d(psi * (w ** 2)) + wedge(kappa, phi)


def linearize(z: Perturbation) -> Form:
    """L0(rho, f, kappa) = d(rho_hat + 2/3 f psi0) + kappa ^ phi0."""
    G = G2Data.flat()
    return d(rho_hat(G, z.rho) + G.psi * (z.f * Fraction(2, 3))) + wedge(z.kappa, G.phi)


def psi_map_shadow(phi: Form, h: Callable, kappa: Form, point: Sequence[float]) -> np.ndarray:
    """Float Psi at a point for a polynomial phi and an analytic positive h.

    ``h`` maps a (complex) point to a scalar; psi(phi) uses the float Hitchin map.
    """
    phi_c = shadow.CompiledForm(phi)

    def field(x):
        return h(x) ** (2.0 / 3.0) * shadow.hitchin_psi(phi_c(x))

    p = np.asarray(point, dtype=float)
    return shadow.d_at(field, p, N, 4) + shadow.wedge(shadow.dense(kappa, p), phi_c(p), N, 2, 3)


def _shifted(z: Perturbation, t: float = 1.0):
    phi = standard_phi() + z.rho * Fraction(t)
    fc = shadow.compile_poly(z.f)
    return phi, (lambda x: 1.0 + t * fc(x)[0]), z.kappa * Fraction(t)


def nonlinear_remainder(z: Perturbation, point: Sequence[float] = (0.0,) * N, t=1) -> np.ndarray:
    """Psi(xi0 + t z) - Psi(xi0) - t L0(z) at a point, in the float shadow."""
    phi, h, kappa = _shifted(z, t)
    val = psi_map_shadow(phi, h, kappa, point)
    return val - float(t) * shadow.dense(linearize(z), point)


def derivative_errors(z: Perturbation, steps: Sequence[float], point=(0.0,) * N) -> list[float]:
    """|(Psi(xi0 + s z) - Psi(xi0))/s - L0 z| for each step s."""
    lin = shadow.dense(linearize(z), point)
    out = []
    for s in steps:
        phi, h, kappa = _shifted(z, s)
        out.append(shadow.frobenius(psi_map_shadow(phi, h, kappa, point) / s - lin))
    return out


def remainder_norms(z: Perturbation, ts: Sequence, point=(0.0,) * N) -> list[float]:
    return [shadow.frobenius(nonlinear_remainder(z, point, t)) for t in ts]


def q_profile(rho: np.ndarray, ts: Sequence[float]) -> list[float]:
    """|Q(t rho)| / t^2 for a constant dense 3-form rho."""
    return [shadow.frobenius(shadow.hitchin_q(t * rho)) / t ** 2 for t in ts]


# -- infinitesimal deformations -------------------------------------------

@dataclass(frozen=True)
class InfinitesimalSolution:
    kappa0: Form
    a0: Form
    rho0: Form

    @property
    def theta0(self) -> Form:
        return dt() + lift(self.a0)

    @property
    def zeta0(self) -> Perturbation:
        return Perturbation(self.rho0, Poly.constant(N, 0), self.kappa0)


def is_type14(kappa: Form, G: G2Data | None = None) -> bool:
    G = G or G2Data.flat()
    return G.star(kappa) == -wedge(kappa, G.phi)


def linear_primitive(kappa: Form) -> Form:
    """a = 1/2 sum kappa_ij (x_i e^j - x_j e^i), so that da = kappa for constant kappa."""
    out = Form.zero(N, 1)
    for (i, j), p in kappa.terms.items():
        c = p.constant_value() / 2
        out = out + Form(N, 1, {(j,): Poly.var(N, i) * c, (i,): Poly.var(N, j) * -c})
    return out


_INF_SYSTEM: tuple | None = None


def _infinitesimal_system():
    # unknowns: coefficient of x_m e_I in rho0, for m = 1..7 and I a 3-index
    global _INF_SYSTEM
    if _INF_SYSTEM is None:
        G = G2Data.flat()
        units = [(m, idx) for idx in basis(N, 3) for m in range(1, N + 1)]
        hats = {idx: rho_hat(G, Form.e(N, *idx)) for idx in basis(N, 3)}
        cols = []
        for m, idx in units:
            em = Form.e(N, m)
            d_rho = wedge(em, Form.e(N, *idx))
            d_hat = wedge(em, hats[idx])
            cols.append(_vec(d_rho, 4) + _vec(d_hat, 5))
        _INF_SYSTEM = (units, [list(r) for r in zip(*cols)])
    return _INF_SYSTEM


def _vec(a: Form, k: int) -> list[Fraction]:
    if a.is_zero():
        return [Fraction(0)] * len(basis(N, k))
    return a.constant_vector()


def solve_infinitesimal(kappa0: Form) -> InfinitesimalSolution:
    """Linear rho0 with d rho0 = 0 and d rho0_hat = *kappa0, for constant kappa0 of type 14."""
    if kappa0.k != 2 or kappa0.n != N or not kappa0.is_constant():
        raise InadmissibleError("kappa0 must be a constant 2-form on R^7")
    G = G2Data.flat()
    if not is_type14(kappa0, G):
        raise InadmissibleError("kappa0 is not of type 14")
    units, mat = _infinitesimal_system()
    rhs = [Fraction(0)] * len(basis(N, 4)) + _vec(G.star(kappa0), 5)
    try:
        x = linalg.solve(mat, rhs)
    except linalg.InconsistentSystem as exc:
        raise InadmissibleError("no linear solution; check conventions") from exc
    terms: dict = {}
    for (m, idx), c in zip(units, x):
        if c:
            terms[idx] = terms.get(idx, Poly.constant(N, 0)) + Poly.var(N, m) * c
    rho0 = Form(N, 3, terms)
    return InfinitesimalSolution(kappa0, linear_primitive(kappa0), rho0)


def infinitesimal_residuals(sol: InfinitesimalSolution) -> tuple[Form, Form]:
    """(d rho0, d rho0_hat - * d theta0)."""
    G = G2Data.flat()
    dth = drop(d(sol.theta0))
    return d(sol.rho0), d(rho_hat(G, sol.rho0)) - G.star(dth)


def error_identity_exact(sol: InfinitesimalSolution, eps) -> Form:
    """Polynomial part of Psi(xi0 + eps zeta0) - d Q(eps rho0) - eps^2 d theta0 ^ rho0.

    psi(phi0 + eps rho0) = psi0 + eps rho0_hat + Q(eps rho0), and the Q terms
    on the two sides are the same object, so what remains must vanish.
    """
    eps = Fraction(eps)
    G = G2Data.flat()
    dth = drop(d(sol.theta0))
    lhs = d(G.psi + rho_hat(G, sol.rho0) * eps) + wedge(dth * eps, G.phi + sol.rho0 * eps)
    rhs = wedge(dth, sol.rho0) * (eps * eps)
    return lhs - rhs


def error_identity_shadow(sol: InfinitesimalSolution, eps, point: Sequence[float]) -> float:
    """Max deviation of Psi(xi0 + eps zeta0) from d Q(eps rho0) + eps^2 d theta0 ^ rho0 at a point."""
    e = float(eps)
    z = sol.zeta0
    phi, h, kappa = _shifted(z, eps)
    lhs = psi_map_shadow(phi, h, kappa, point)
    rho_c = shadow.CompiledForm(sol.rho0)
    dq = shadow.d_at(lambda x: shadow.hitchin_q(e * rho_c(x)), point, N, 4)
    tail = e * e * shadow.dense(wedge(drop(d(sol.theta0)), sol.rho0), point)
    return float(np.max(np.abs(lhs - dq - tail)))
