"""Verification suites shared by the CLI and the acceptance tests.

A check is a function ``(rng, size, eps) -> (ok, detail)``. ``size`` scales the
number of random cases; every check draws from its own generator so results do
not depend on which other checks ran.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import catalog, cones, g2, linalg, sampling, seifert, shadow, spectral, spin7
from .exterior import (Form, Metric, Poly, basis, codifferential, contract, d, flat,
                       hodge_star, inner, laplacian, sharp, unit_vector, wedge)

CheckFn = Callable[[random.Random, int, Fraction], tuple[bool, str]]


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str
    elapsed_ms: float

    def to_json(self, timings: bool = False) -> dict:
        out = {"name": self.name, "status": self.status, "detail": self.detail}
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def _count_bad(cases, pred) -> int:
    return sum(1 for c in cases if not pred(c))


def _verdict(bad: int, total: int, what: str) -> tuple[bool, str]:
    return bad == 0, f"{total - bad}/{total} {what}"


# -- exterior -----------------------------------------------------------------

def star_contract(rng, size, eps, n_max: int = 7):
    """a ^ *b = <a, b> vol over all basis pairs, Euclidean, n <= n_max."""
    bad = total = 0
    for n in range(1, n_max + 1):
        g = Metric.euclidean(n)
        vol = Form.volume(n)
        for k in range(n + 1):
            es = [Form.e(n, *i) for i in basis(n, k)]
            stars = [hodge_star(b) for b in es]
            for a in es:
                for b, sb in zip(es, stars):
                    total += 1
                    if wedge(a, sb) != vol * inner(a, b, g):
                        bad += 1
    return _verdict(bad, total, "basis pairs")


def double_star(rng, size, eps, n_max: int = 8):
    """** = (-1)^{k(n-k)} on every basis form, n <= n_max."""
    bad = total = 0
    for n in range(1, n_max + 1):
        for k in range(n + 1):
            sign = (-1) ** (k * (n - k))
            for i in basis(n, k):
                a = Form.e(n, *i)
                total += 1
                bad += hodge_star(hodge_star(a)) != a * sign
    return _verdict(bad, total, "basis forms")


def d_squared(rng, size, eps):
    cases = []
    for _ in range(size):
        n = rng.randint(2, 7)
        cases.append(sampling.form(rng, n, rng.randint(0, n - 2), 3, 4, 3))
    return _verdict(_count_bad(cases, lambda a: d(d(a)).is_zero()), len(cases), "forms")


def leibniz(rng, size, eps):
    bad = 0
    for _ in range(size):
        n = rng.randint(2, 7)
        k = rng.randint(0, n - 1)
        l = rng.randint(0, n - 1 - k)
        a, b = sampling.form(rng, n, k, 2, 3, 2), sampling.form(rng, n, l, 2, 3, 2)
        bad += d(wedge(a, b)) != wedge(d(a), b) + wedge(a, d(b)) * (-1) ** k
    return _verdict(bad, size, "pairs")


# -- g2 -----------------------------------------------------------------------

def projector_ranks(rng, size, eps):
    G = g2.G2Data.flat()
    r2 = [linalg.rank(G.p2[t]) for t in ("7", "14")]
    r3 = [linalg.rank(G.p3[t]) for t in ("1", "7", "27")]
    return r2 == [7, 14] and r3 == [1, 7, 27], f"ranks {r2} on 2-forms, {r3} on 3-forms"


def projector_algebra(rng, size, eps):
    """Completeness, idempotence and g_phi-orthogonality on random 2- and 3-forms."""
    G = g2.G2Data.flat()
    bad = 0
    for _ in range(size):
        s = sampling.form(rng, 7, 2, 2, 5, 2)
        parts = g2.project2(G, s)
        ok = sum(parts, Form.zero(7, 2)) == s
        ok &= all(g2.project2(G, p)[i] == p for i, p in enumerate(parts))
        ok &= g2.project2(G, parts[0])[1].is_zero() and g2.project2(G, parts[1])[0].is_zero()
        ok &= inner(parts[0], parts[1], G.metric).is_zero()
        r = sampling.form(rng, 7, 3, 2, 6, 2)
        parts = g2.project3(G, r)
        ok &= sum(parts, Form.zero(7, 3)) == r
        for i, p in enumerate(parts):
            again = g2.project3(G, p)
            ok &= all((q == p) if j == i else q.is_zero() for j, q in enumerate(again))
        ok &= all(inner(parts[i], parts[j], G.metric).is_zero() for i in range(3) for j in range(i + 1, 3))
        bad += not ok
    return _verdict(bad, size, "random 2-form/3-form pairs")


def type_characterizations(rng, size, eps):
    """Omega^2_14: *s = -s ^ phi and s ^ psi = 0; Omega^3_27: r ^ phi = 0 = r ^ psi."""
    G = g2.G2Data.flat()
    ok = all(G.star(b) == -wedge(b, G.phi) and wedge(b, G.psi).is_zero() for b in G.basis14)
    ok &= all(wedge(b, G.phi).is_zero() and wedge(b, G.psi).is_zero() for b in G.basis27)
    ok &= all(G.star(wedge(Form.e(7, i), G.psi)) == contract(unit_vector(7, i), G.phi) for i in range(1, 8))
    return ok, "14-, 27- and 7-type characterizations on basis elements"


def dtheta_identities(rng, size, eps):
    """kappa ^ phi = 2U^flat ^ psi + kappa0 ^ phi and *(kappa ^ psi) = 3U^flat over a basis."""
    G = g2.G2Data.flat()
    bad = 0
    for i in basis(7, 2):
        kappa = Form.e(7, *i)
        s7, s14 = g2.project2(G, kappa)
        u = g2._coordinates(G.basis7_2, s7)
        uf = flat(u, G.metric)
        bad += wedge(kappa, G.phi) != wedge(uf, G.psi) * 2 + wedge(s14, G.phi)
        bad += G.star(wedge(kappa, G.psi)) != uf * 3
    return _verdict(bad, 2 * 21, "identities on the 2-form basis")


def _identity_sample(rng, size):
    return [(sampling.poly(rng, 7, 3, 3), sampling.form(rng, 7, 1, 3, 4, 2)) for _ in range(size)]


def identity_diff(rng, size, eps):
    """pi1 d(X ⌟ phi) = -3/7 (d*gamma) phi and pi7 d(X ⌟ phi) = -1/2 *(curl gamma ^ phi).

    The curl-term sign is the one that holds with curl gamma = *(d gamma ^ psi).
    """
    G = g2.G2Data.flat()
    bad = 0
    for _, gam in _identity_sample(rng, size):
        p1, p7, _ = g2.project3(G, d(contract(sharp(gam), G.phi)))
        ds = codifferential(gam).coeff(())
        bad += p1 != G.phi * (ds * Fraction(-3, 7))
        bad += p7 != G.star(wedge(g2.curl(G, gam), G.phi)) * Fraction(-1, 2)
    return _verdict(bad, 2 * size, "identities")


def identity_seven(rng, size, eps):
    """d*(gamma ^ psi) - d*(gamma ^ phi) = -*(curl gamma ^ phi) - (d*gamma) phi, no 27 part."""
    G = g2.G2Data.flat()
    bad = 0
    for _, gam in _identity_sample(rng, size):
        lhs = d(G.star(wedge(gam, G.psi))) - codifferential(wedge(gam, G.phi))
        rhs = -G.star(wedge(g2.curl(G, gam), G.phi)) - G.phi * codifferential(gam).coeff(())
        bad += lhs != rhs or not g2.project3(G, lhs)[2].is_zero()
    return _verdict(bad, size, "pairs")


def identity_dirac(rng, size, eps):
    """Both Dirac models agree and D^2 is the flat Laplacian componentwise."""
    bad = 0
    for f, gam in _identity_sample(rng, size):
        a, b = g2.dirac_flat(f, gam)
        a2, b2 = g2.dirac_flat(a, b)
        bad += a2 != laplacian(Form.scalar(7, f)).coeff(()) or b2 != laplacian(gam)
        bad += g2.dirac_via_three_forms(f, gam) != (a, b)
    return _verdict(bad, 2 * size, "pairs x (D^2, model agreement)")


def random_torsion(rng, G: g2.G2Data) -> g2.TorsionClasses:
    r = sampling.rational
    return g2.TorsionClasses(
        r(rng),
        sampling.constant_form(rng, 7, 1),
        sum((b * r(rng) for b in G.basis14), Form.zero(7, 2)),
        sum((b * r(rng) for b in G.basis27), Form.zero(7, 3)),
    )


def torsion_round_trip(rng, size, eps):
    G = g2.G2Data.flat()
    bad = 0
    for _ in range(size):
        t = random_torsion(rng, G)
        bad += g2.torsion_from_derivatives(G, *g2.synthesize_derivatives(G, t)) != t
    flat_zero = g2.torsion_decompose(g2.standard_phi()).is_zero()
    ok, detail = _verdict(bad, size, "round trips")
    return ok and flat_zero, f"{detail}; flat phi0 torsion-free: {flat_zero}"


def conformal_torsion(rng, size, eps):
    """phi = u^3 phi0 has tau1 = du/u and no other torsion."""
    u = Poly.constant(7, 1) + Poly.var(7, 1) * Fraction(1, 2) + Poly.var(7, 3)
    phi, psi = g2.conformal_field(u)
    pt = [Fraction(1, 3), 0, Fraction(1, 5), 0, 0, 0, 0]
    t = g2.torsion_decompose(phi, pt)
    du = d(Form.scalar(7, u)).evaluate(pt) * (1 / u.evaluate(pt))
    dpsi_ok = g2.dpsi_at(phi, pt) == d(psi).evaluate(pt)
    ok = t.tau0 == 0 and t.tau1 == du and t.tau2.is_zero() and t.tau3.is_zero() and dpsi_ok
    return ok, f"tau1 = du/u: {t.tau1 == du}; chain-rule d psi matches: {dpsi_ok}"


def hitchin_derivative(rng, size, eps):
    """Complex-step derivative of the float Hitchin map equals rho_hat."""
    nrng = np.random.default_rng(rng.randrange(2 ** 32))
    rho = nrng.normal(size=35)
    z = shadow._phi0_dense() + 1j * shadow.COMPLEX_STEP * rho
    err = float(np.abs(np.imag(shadow.hitchin_psi(z)) / shadow.COMPLEX_STEP - shadow.rho_hat_flat(rho)).max())
    return err < 1e-12, f"max deviation {err:.2e}"


# -- seifert --------------------------------------------------------------------

def codiff_forms_agree(rng, size, eps):
    bad = 0
    for _ in range(size):
        n = rng.randint(2, 5)
        c = seifert.random_chart(rng, n)
        beta = seifert.InvariantForm.basic(c, sampling.form(rng, n, rng.randint(1, n), 2, 3, 2))
        bad += seifert.adapted_codiff(c, beta) != seifert.adapted_codiff_total(c, beta)
    return _verdict(bad, size, "random basic forms")


def star_fibre_law(rng, size, eps):
    """*_M beta = (-1)^k theta ^ *beta on every basic basis form."""
    bad = total = 0
    for n in (2, 3, 4, 5, 6, 7):
        c = seifert.random_chart(rng, n)
        for k in range(n + 1):
            for i in basis(n, k):
                b = seifert.InvariantForm.basic(c, Form.e(n, *i))
                ts = seifert.transverse_star(c, b)
                lhs = c.total_star(b.total)
                total += 1
                bad += lhs != wedge(c.theta(), c.lift(ts)) * (-1) ** k or ts != hodge_star(Form.e(n, *i))
    return _verdict(bad, total, "basis forms")


def adapted_d_squared(rng, size, eps):
    """d_nabla on basic forms is the base d, so it squares to zero."""
    bad = 0
    for _ in range(size):
        n = rng.randint(2, 6)
        c = seifert.random_chart(rng, n)
        beta = seifert.InvariantForm.basic(c, sampling.form(rng, n, rng.randint(0, n - 2), 2, 3, 2))
        once = seifert.adapted_d(c, beta)
        bad += not once.is_basic() or not seifert.adapted_d(c, once).total.is_zero()
    return _verdict(bad, size, "basic forms")


# -- spin7 ----------------------------------------------------------------------

def random_triple(rng, eps) -> spin7.Spin7Triple:
    """theta = c dt + a, w = 1 + small, phi conformal to phi0 (so d phi != 0 in general)."""
    c = sampling.nonzero_rational(rng)
    a = sampling.form(rng, 7, 1, 2, 3, 2)
    theta = spin7.dt() * c + spin7.lift(a)
    w = Poly.constant(7, 1) + sampling.poly(rng, 7, 2, 2) * Fraction(1, 10)
    w = w - Poly.constant(7, w.evaluate(spin7.ORIGIN) - 1)
    u = Poly.constant(7, 1) + sampling.poly(rng, 7, 1, 2) * Fraction(1, 10)
    u = u - Poly.constant(7, u.evaluate(spin7.ORIGIN) - 1)
    phi, psi = g2.conformal_field(u)
    return spin7.Spin7Triple(theta, w, phi, psi, Fraction(eps))


def gh_equivalence(rng, size, eps):
    """d Phi_eps equals its Leibniz expansion and splits as (-eps c r1, r2 - eps a ^ r1)."""
    bad = 0
    for _ in range(size):
        T = random_triple(rng, eps)
        r1, r2 = spin7.gh_residual(T)
        A, B = spin7.split_d_phi(T)
        ok = d(spin7.assemble_phi(T)) == spin7.leibniz_expansion(T)
        ok &= A == r1 * (-T.eps * T.fibre_coeff)
        ok &= B == r2 - wedge(T.a, r1) * T.eps
        bad += not ok
    return _verdict(bad, size, "random triples")


def cayley_square(rng, size, eps):
    P = spin7.assemble_phi(spin7.Spin7Triple.flat())
    ok = wedge(P, P) == spin7.vol8() * 14
    return ok, "Phi0 ^ Phi0 = 14 vol8" if ok else "Phi0 ^ Phi0 != 14 vol8"


def eps_scaling(rng, size, eps):
    """gh_residual(theta, h, phi, eps) = gh_residual(eps theta, h, phi, 1)."""
    e = Fraction(eps) if eps else Fraction(1, 2)
    bad = 0
    for _ in range(size):
        T = random_triple(rng, e)
        S = T.with_theta(T.theta * e).with_eps(1)
        bad += spin7.gh_residual(T) != spin7.gh_residual(S)
    return _verdict(bad, size, f"triples at eps = {e}")


def monopole_flat(rng, size, eps):
    T = spin7.Spin7Triple.flat(eps or 1)
    w = Poly.constant(7, 1) + sampling.poly(rng, 7, 2, 3) * Fraction(1, 10)
    T2 = spin7.Spin7Triple(spin7.dt(), w, g2.standard_phi(), eps=Fraction(eps or 1),
                           check_points=())
    expected = d(Form.scalar(7, w ** 2)) * Fraction(3, 2)
    ok = spin7.monopole_residual(T).is_zero() and spin7.monopole_residual(T2) == expected
    return ok, "flat residual 0 and flat-theta residual d(3/2 w^2)"


def linearization_exact(rng, size, eps):
    bad = 0
    for _ in range(size):
        z1 = spin7.Perturbation(sampling.form(rng, 7, 3, 2, 3, 2), sampling.poly(rng, 7, 2, 2),
                                sampling.constant_form(rng, 7, 2, 0.3))
        z2 = spin7.Perturbation(sampling.form(rng, 7, 3, 2, 3, 2), sampling.poly(rng, 7, 2, 2),
                                sampling.constant_form(rng, 7, 2, 0.3))
        c = sampling.rational(rng)
        bad += spin7.linearize(z1 + z2 * c) != spin7.linearize(z1) + spin7.linearize(z2) * c
    return _verdict(bad, size, "random pairs")


def _slope_perturbation(rng) -> spin7.Perturbation:
    return spin7.Perturbation(sampling.form(rng, 7, 3, 2, 5, 2) * Fraction(1, 10),
                              sampling.poly(rng, 7, 2, 3) * Fraction(1, 10), Form.zero(7, 2))


SLOPE1_TOL = 0.05
SLOPE2_TOL = 0.1
# generic point: at the origin a perturbation without linear terms has no first derivatives
SLOPE_POINT = (0.1, -0.2, 0.15, 0.05, -0.1, 0.2, 0.1)


def derivative_slope(rng, size, eps):
    z = _slope_perturbation(rng)
    hs = [1e-2, 1e-3, 1e-4]
    s = shadow.loglog_slope(hs, spin7.derivative_errors(z, hs, SLOPE_POINT))
    return abs(s - 1) <= SLOPE1_TOL, f"finite-difference slope {s:.4f} (1 +- {SLOPE1_TOL})"


def remainder_slope(rng, size, eps):
    z = _slope_perturbation(rng)
    # small t, where cubic terms no longer bend the log-log line
    ts = [0.1, 0.05, 0.025, 0.0125]
    s = shadow.loglog_slope(ts, spin7.remainder_norms(z, ts, SLOPE_POINT))
    return abs(s - 2) <= SLOPE2_TOL, f"quadratic-remainder slope {s:.4f} (2 +- {SLOPE2_TOL})"


def quadratic_bound(rng, size, eps):
    nrng = np.random.default_rng(rng.randrange(2 ** 32))
    prof = spin7.q_profile(nrng.normal(size=35) * 0.1, [1, 1e-1, 1e-2, 1e-3, 1e-4])
    ok = max(prof) < 10 * min(prof) and all(np.isfinite(prof))
    return ok, f"|Q(t rho)|/t^2 in [{min(prof):.3g}, {max(prof):.3g}]"


def infinitesimal_solutions(rng, size, eps, n_basis: int = 14):
    G = g2.G2Data.flat()
    bad = 0
    basis14 = G.basis14[:n_basis]
    for b in basis14:
        sol = spin7.solve_infinitesimal(b)
        r1, r2 = spin7.infinitesimal_residuals(sol)
        bad += not (r1.is_zero() and r2.is_zero())
    return _verdict(bad, len(basis14), "type-14 basis elements solved exactly")


def error_identity(rng, size, eps):
    e = Fraction(eps) if eps else Fraction(1, 4)
    G = g2.G2Data.flat()
    # small kappa keeps phi0 + eps rho0 positive near the sample point
    kappa = sum((b * sampling.rational(rng) for b in G.basis14), Form.zero(7, 2)) * Fraction(1, 20)
    sol = spin7.solve_infinitesimal(kappa)
    exact = spin7.error_identity_exact(sol, e).is_zero()
    dev = spin7.error_identity_shadow(sol, e, [0.1, 0.2, -0.1, 0.3, 0.0, 0.1, -0.2])
    return exact and dev < 1e-9, f"exact part zero: {exact}; shadow deviation {dev:.2e} at eps = {e}"


# -- cones ----------------------------------------------------------------------

def cone_rules(rng, size, eps):
    cones.check_rules()
    cones.check_d_squared()
    t = cones.link_star_table()
    return True, "flat-model products match the rewrite rules; d^2 = 0; star " + \
        ", ".join(f"*{k} = {c} {g}" for k, (c, g) in t.items())


def cone_torsion_free(rng, size, eps):
    phi, psi = cones.cone_phi(), cones.cone_psi()
    ok = cones.cone_d(phi).is_zero() and cones.cone_d(psi).is_zero()
    ok &= psi == cones.expected_psi() and cones.cone_star(psi) == phi
    ok &= all(g2.G2Data(cones.to_flat(phi, r)).psi == cones.to_flat(psi, r) for r in (1, 2))
    ok &= cones.cone_torsion(1).is_zero()
    return ok, f"psi_C = {psi}"


# -- spectral -------------------------------------------------------------------

def indicial_roots(rng, size, eps):
    got = {dl: spectral.indicial_roots_functions(dl, 7) for dl in (0, 6, 14)}
    want = {0: (0, -5), 6: (1, -6), 14: (2, -7)}
    ok = all(tuple(got[k]) == tuple(spectral.Surd.of(x) for x in v) for k, v in want.items())
    return ok, "; ".join(f"delta={k}: {tuple(map(str, v))}" for k, v in got.items())


def index_additivity(rng, size, eps):
    bad = 0
    for _ in range(size):
        roots = [spectral.IndicialDatum(Fraction(rng.randint(-40, 40), 4), rng.randint(1, 3))
                 for _ in range(rng.randint(0, 8))]
        taken = {r.rate for r in roots}
        ws = set()
        while len(ws) < 3:
            w = Fraction(2 * rng.randint(-30, 30) + 1, 8)
            if spectral.Surd.of(w) not in taken:
                ws.add(w)
        a, b, c = sorted(ws)
        j = spectral.index_jump
        bad += j(roots, a, c) != j(roots, a, b) + j(roots, b, c)
    return _verdict(bad, size, "random root lists")


COHOMOLOGY_TABLE = [
    ((6, 2, (1, 1, 1, 0)), (1, 2)),
    ((6, 3, (2, 3, 1, 1)), (1, 3)),
    ((6, 4, (0, 2, 0, 0)), (0, 2)),
    ((7, 2, (3, 4, 2, 1)), (3, 5)),
    ((7, 5, (1, 4, 2, 1)), (1, 4)),
]


def cohomology_cases(rng, size, eps):
    bad = 0
    for (n, k, dims), want in COHOMOLOGY_TABLE:
        bad += spectral.l2_cohomology(spectral.CohomologyInput.from_dims(n, k, dims)) != want
    return _verdict(bad, len(COHOMOLOGY_TABLE), "tabulated inputs")


# -- catalog --------------------------------------------------------------------

def canonical_zeta_range(rng, size, eps, n_max: int = 200):
    bad = 0
    for n in range(2, n_max + 1):
        z = catalog.canonical_zeta(n)
        ok = all(catalog.an_flags(z).values())
        if n >= 3:
            ok &= z.weight == catalog.canonical_weight(n)
        ok &= catalog.an_record(n, z.zeta).labels["b2"] == n - 2
        bad += not ok
    return _verdict(bad, n_max - 1, "n in 2..%d" % n_max)


def catalog_spot(rng, size, eps):
    ok = catalog.wcp2_from_weights(1, 1, 1) == (2, 2, 2)
    ok &= catalog.wcp2_from_weights(1, 1, 3) == (4, 4, 2)
    rec = catalog.s3r4_action(2, 2, 1, 3)
    ok &= rec.valid and rec.labels.get("cone") == "Y^{2,1}"
    ok &= not catalog.s3r4_action(2, 2, 2, 2).valid
    return ok, f"(1,1,1) -> (2,2,2); (2,2,1,3) -> {rec.labels.get('cone')}"


def moment_map_checks(rng, size, eps):
    Q = catalog.Quaternion
    ok = all(x == Q() for x in catalog.an_moment_map([catalog.ONE] * 4))
    bad = 0
    for _ in range(size):
        u = [Q(*(sampling.rational(rng) for _ in range(4))) for _ in range(rng.randint(2, 5))]
        mu = catalog.an_moment_map(u)
        bad += not all(m.is_imaginary for m in mu)
        g = [Q(Fraction(3, 5), Fraction(4, 5)) if rng.random() < 0.5 else Q(Fraction(5, 13), Fraction(-12, 13))
             for _ in u]
        bad += catalog.an_moment_map(catalog.torus_act(g, u)) != mu
        p, q = u[0], u[1]
        bad += p * q != catalog.matrix_product(p, q) or (p * q).conj() != q.conj() * p.conj()
    return ok and bad == 0, f"mu(1,..,1) = 0: {ok}; {bad} failures over {size} random tuples"


SUITES: dict[str, list[tuple[str, CheckFn]]] = {
    "exterior": [
        ("exterior.star_contract", star_contract),
        ("exterior.double_star", double_star),
        ("exterior.d_squared", d_squared),
        ("exterior.leibniz", leibniz),
    ],
    "g2": [
        ("g2.projector_ranks", projector_ranks),
        ("g2.projector_algebra", projector_algebra),
        ("g2.type_characterizations", type_characterizations),
        ("g2.dtheta_identities", dtheta_identities),
        ("g2.identity_diff", identity_diff),
        ("g2.identity_seven", identity_seven),
        ("g2.identity_dirac", identity_dirac),
        ("g2.torsion_round_trip", torsion_round_trip),
        ("g2.conformal_torsion", conformal_torsion),
        ("g2.hitchin_derivative", hitchin_derivative),
    ],
    "seifert": [
        ("seifert.codiff_forms_agree", codiff_forms_agree),
        ("seifert.star_fibre_law", star_fibre_law),
        ("seifert.adapted_d_squared", adapted_d_squared),
    ],
    "spin7": [
        ("spin7.cayley_square", cayley_square),
        ("spin7.gh_equivalence", gh_equivalence),
        ("spin7.eps_scaling", eps_scaling),
        ("spin7.monopole_flat", monopole_flat),
        ("spin7.linearization_exact", linearization_exact),
        ("spin7.derivative_slope", derivative_slope),
        ("spin7.remainder_slope", remainder_slope),
        ("spin7.quadratic_bound", quadratic_bound),
        ("spin7.infinitesimal_solutions", infinitesimal_solutions),
        ("spin7.error_identity", error_identity),
    ],
    "cone": [
        ("cone.rules", cone_rules),
        ("cone.torsion_free", cone_torsion_free),
    ],
    "spectral": [
        ("spectral.indicial_roots", indicial_roots),
        ("spectral.index_additivity", index_additivity),
        ("spectral.cohomology_cases", cohomology_cases),
    ],
    "catalog": [
        ("catalog.canonical_zeta_range", canonical_zeta_range),
        ("catalog.spot_values", catalog_spot),
        ("catalog.moment_map", moment_map_checks),
    ],
}


def run_check(name: str, fn: CheckFn, seed: int, size: int, eps) -> CheckResult:
    rng = random.Random(f"{seed}:{name}")
    t0 = time.perf_counter()
    try:
        ok, detail = fn(rng, size, Fraction(eps))
        status = "pass" if ok else "fail"
    except Exception as exc:  # reported, not raised: one broken check should not hide the rest
        status, detail = "error", f"{type(exc).__name__}: {exc}"
    return CheckResult(name, status, detail, (time.perf_counter() - t0) * 1000)


def run_suites(names, seed: int = 0, size: int = 5, eps=1) -> list[CheckResult]:
    out = []
    for suite in names:
        for name, fn in SUITES[suite]:
            out.append(run_check(name, fn, seed, size, eps))
    return sorted(out, key=lambda r: r.name)
