"""Circle-invariant forms on a model Seifert chart R^n x S^1.

Forms on the total space are stored in the adapted coframe (e^1..e^n, theta)
with theta in slot n+1, where theta = dt + a for a base 1-form a. Coefficients
never depend on t. The total metric is g_B + theta^2, oriented by
theta ^ vol_B.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exterior import Form, Metric, d, embed, hodge_star, restrict, wedge


def _is_t_free(a: Form) -> bool:
    return all(exp[-1] == 0 for p in a.terms.values() for exp in p.terms)


def split_last(a: Form) -> tuple[Form | None, Form]:
    """Write a form on R^{m} as e^m ^ alpha + beta with alpha, beta free of e^m.

    Both parts are returned on R^m; alpha is None for 0-forms.
    """
    m = a.n
    alpha: dict = {}
    beta: dict = {}
    for key, p in a.terms.items():
        if key and key[-1] == m:
            # e^I ^ e^m = (-1)^|I| e^m ^ e^I
            sign = -1 if (len(key) - 1) % 2 else 1
            alpha[key[:-1]] = p * sign
        else:
            beta[key] = p
    al = Form(m, a.k - 1, alpha) if a.k > 0 else None
    return al, Form(m, a.k, beta)


@dataclass(frozen=True)
class FiberedChart:
    """Chart R^n x S^1 with connection theta = dt + a and flat base metric g_B."""

    n: int
    a: Form
    g_base: Metric

    def __post_init__(self):
        if self.a.k != 1 or self.a.n != self.n:
            raise ValueError("connection part a must be a 1-form on the base")
        if self.g_base.n != self.n:
            raise ValueError("base metric has the wrong dimension")

    @classmethod
    def flat(cls, n: int, a: Form | None = None, g_base: Metric | None = None) -> "FiberedChart":
        return cls(n, a if a is not None else Form.zero(n, 1), g_base or Metric.euclidean(n))

    @property
    def dim(self) -> int:
        return self.n + 1

    @property
    def metric(self) -> Metric:
        """Total metric diag(g_B, 1) in the adapted coframe, oriented by theta ^ vol_B."""
        m = [row[:] + [0] for row in self.g_base.matrix] + [[0] * self.n + [1]]
        # theta ^ e^{1..n} = (-1)^n e^{1..n} ^ theta
        orient = self.g_base.orientation * (-1 if self.n % 2 else 1)
        return Metric(m, orient)

    @property
    def d_theta(self) -> Form:
        return d(self.a)

    def theta(self) -> Form:
        """theta in the adapted coframe of the total space."""
        return Form.e(self.dim, self.dim)

    def lift(self, base: Form) -> Form:
        return embed(base, self.dim)

    def drop(self, a: Form) -> Form:
        return restrict(a, self.n)

    def _substitute(self, a: Form, sign: int) -> Form:
        # replaces the last coframe element e^{n+1} by e^{n+1} + sign * a
        alpha, beta = split_last(a)
        if alpha is None:
            return a
        shift = self.lift(self.a) * sign
        return wedge(self.theta() + shift, alpha) + beta

    def to_coordinates(self, a: Form) -> Form:
        """Adapted coframe (theta) to coordinate coframe (dt)."""
        return self._substitute(a, 1)

    def from_coordinates(self, a: Form) -> Form:
        """Coordinate coframe (dt) to adapted coframe (theta = dt + a)."""
        return self._substitute(a, -1)

    def total_d(self, a: Form) -> Form:
        """d_M on the total space, computed in coordinates."""
        return self.from_coordinates(d(self.to_coordinates(a)))

    def total_star(self, a: Form) -> Form:
        return hodge_star(a, self.metric)

    def total_codiff(self, a: Form) -> Form:
        """d*_M = (-1)^{m(k-1)+1} *_M d_M *_M with m = n + 1."""
        m, k = self.dim, a.k
        if k == 0:
            return Form.zero(m, 0)
        sign = -1 if (m * (k - 1) + 1) % 2 else 1
        return self.total_star(self.total_d(self.total_star(a))) * sign


@dataclass(frozen=True)
class InvariantForm:
    """gamma = theta ^ alpha + beta, stored as one adapted-coframe form."""

    total: Form

    def __post_init__(self):
        if not _is_t_free(self.total):
            raise ValueError("invariant forms cannot depend on the fibre coordinate")

    @classmethod
    def from_parts(cls, c: FiberedChart, alpha: Form | None, beta: Form | None) -> "InvariantForm":
        if alpha is None and beta is None:
            raise ValueError("need at least one part")
        k = beta.k if beta is not None else alpha.k + 1
        out = Form.zero(c.dim, k)
        if alpha is not None:
            out = out + wedge(c.theta(), c.lift(alpha))
        if beta is not None:
            out = out + c.lift(beta)
        return cls(out)

    @classmethod
    def basic(cls, c: FiberedChart, beta: Form) -> "InvariantForm":
        return cls(c.lift(beta))

    @property
    def k(self) -> int:
        return self.total.k

    def parts(self, c: FiberedChart) -> tuple[Form | None, Form]:
        alpha, beta = split_last(self.total)
        return (c.drop(alpha) if alpha is not None else None), c.drop(beta)

    def alpha(self, c: FiberedChart) -> Form | None:
        """xi ⌟ gamma as a base form."""
        return self.parts(c)[0]

    def is_basic(self) -> bool:
        alpha, _ = split_last(self.total)
        return alpha is None or alpha.is_zero()


def _require_basic(gamma: InvariantForm):
    if not gamma.is_basic():
        raise ValueError("operator is defined on basic forms only")


def adapted_d(c: FiberedChart, gamma: InvariantForm) -> InvariantForm:
    """d_nabla gamma = d gamma - d theta ^ (xi ⌟ gamma)."""
    out = c.total_d(gamma.total)
    alpha = gamma.alpha(c)
    if alpha is not None and not alpha.is_zero():
        out = out - c.lift(wedge(c.d_theta, alpha))
    return InvariantForm(out)


def transverse_star(c: FiberedChart, beta: InvariantForm) -> Form:
    """*beta = *_M(theta ^ beta), returned as a base form."""
    _require_basic(beta)
    out = c.total_star(wedge(c.theta(), beta.total))
    if split_last(out)[0] is not None and not split_last(out)[0].is_zero():
        raise AssertionError("transverse star produced a non-basic form")
    return c.drop(out)


def adapted_codiff(c: FiberedChart, beta: InvariantForm) -> Form:
    """d*_nabla beta = (-1)^{n(k-1)+1} * d * beta with the transverse star."""
    _require_basic(beta)
    n, k = c.n, beta.k
    if k == 0:
        return Form.zero(n, 0)
    sign = -1 if (n * (k - 1) + 1) % 2 else 1
    inner = InvariantForm.basic(c, transverse_star(c, beta))
    return transverse_star(c, InvariantForm.basic(c, c.drop(c.total_d(inner.total)))) * sign


def adapted_codiff_total(c: FiberedChart, beta: InvariantForm) -> Form:
    """d*_nabla via d*_M gamma - (-1)^{k(n+1-k)} theta ^ *_M(d theta ^ *_M gamma)."""
    _require_basic(beta)
    n, k = c.n, beta.k
    if k == 0:
        return Form.zero(n, 0)
    gamma = beta.total
    sign = -1 if (k * (n + 1 - k)) % 2 else 1
    out = c.total_codiff(gamma)
    dual = c.total_star(gamma)
    if dual.k + 2 <= c.dim:
        corr = wedge(c.theta(), c.total_star(wedge(c.lift(c.d_theta), dual)))
        out = out - corr * sign
    alpha, rest = split_last(out)
    if alpha is not None and not alpha.is_zero():
        raise AssertionError("total-space expression for d*_nabla is not basic")
    return c.drop(rest)


def random_chart(rng, n: int, a_terms: int = 2) -> FiberedChart:
    """Chart with a random linear connection part and Euclidean base."""
    from .sampling import form

    return FiberedChart.flat(n, form(rng, n, 1, max_degree=1, n_terms=a_terms))

