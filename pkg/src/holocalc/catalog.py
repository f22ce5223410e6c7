"""Combinatorial example catalogs.

Three families: the A_n zeta-vectors giving Spin(7)-admissible quaternionic
Kähler quotients of HP^n, weighted projective planes from the HP^2 circle
quotients, and circle actions on S^3 x R^4 (with the Y^{p,q} subfamily).
Quaternions are exact over Fractions so moment-map spot checks are exact.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

CATALOG_SCHEMA = "holocalc-catalog/1"
DEFAULT_N_MAX = 50
DEFAULT_MAX_WEIGHT = 30


class CatalogError(ValueError):
    """Parameters outside the domain of a catalog operation."""


class ParityObstruction(CatalogError):
    """Even-sum weights whose halves are not integral."""


# -- quaternions -------------------------------------------------------------

@dataclass(frozen=True)
class Quaternion:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def of(cls, x) -> "Quaternion":
        if isinstance(x, Quaternion):
            return x
        if isinstance(x, (tuple, list)):
            return cls(*x)
        return cls(x)

    @property
    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def __add__(self, o):
        o = Quaternion.of(o)
        return Quaternion(*(x + y for x, y in zip(self.components, o.components)))

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, o):
        return self + (-Quaternion.of(o))

    def __rsub__(self, o):
        return Quaternion.of(o) - self

    def __mul__(self, o):
        o = Quaternion.of(o)
        a1, b1, c1, d1 = self.components
        a2, b2, c2, d2 = o.components
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, o):
        return Quaternion.of(o) * self

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm2(self) -> Fraction:
        return sum((x * x for x in self.components), Fraction(0))

    @property
    def is_imaginary(self) -> bool:
        return self.a == 0

    def __str__(self):
        return f"{self.a} + {self.b}i + {self.c}j + {self.d}k"

    def to_json(self) -> list:
        return [_num_json(x) for x in self.components]


ONE = Quaternion(1)
I = Quaternion(0, 1)
J = Quaternion(0, 0, 1)
K = Quaternion(0, 0, 0, 1)


def left_matrix(q: Quaternion) -> list[list[Fraction]]:
    """Real 4x4 matrix of x -> q x in the basis 1, i, j, k."""
    a, b, c, d = q.components
    return [
        [a, -b, -c, -d],
        [b, a, -d, c],
        [c, d, a, -b],
        [d, -c, b, a],
    ]


def matrix_product(p: Quaternion, q: Quaternion) -> Quaternion:
    """p q computed through the left-multiplication matrix; an independent oracle."""
    m = left_matrix(p)
    v = q.components
    return Quaternion(*(sum(m[r][s] * v[s] for s in range(4)) for r in range(4)))


def _num_json(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- A_n family --------------------------------------------------------------

@dataclass(frozen=True)
class ZetaVector:
    n: int
    zeta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "zeta", tuple(int(z) for z in self.zeta))
        if self.n < 2:
            raise CatalogError("n must be at least 2")
        if len(self.zeta) != self.n - 1:
            raise CatalogError(f"zeta must have length n - 1 = {self.n - 1}, got {len(self.zeta)}")

    @property
    def weight(self) -> int:
        """|zeta| = sum i zeta_i."""
        return sum(i * z for i, z in enumerate(self.zeta, start=1))

    def lift(self) -> tuple[int, ...]:
        """One integer lift with lift_i - lift_{i+1} = zeta_i and last entry 0."""
        out = [0]
        for z in reversed(self.zeta):
            out.append(out[-1] + z)
        return tuple(reversed(out))


def an_genericity(z: ZetaVector) -> bool:
    """Every contiguous partial sum of zeta is nonzero."""
    m = len(z.zeta)
    for i in range(m):
        s = 0
        for j in range(i, m):
            s += z.zeta[j]
            if s == 0:
                return False
    return True


def an_admissibility(z: ZetaVector) -> bool:
    return gcd(z.weight, z.n) == 1


def primitivity(z: ZetaVector) -> bool:
    g = 0
    for x in z.zeta:
        g = gcd(g, x)
    return g == 1


def canonical_zeta(n: int) -> ZetaVector:
    if n < 2:
        raise CatalogError("n must be at least 2")
    if n == 2:
        return ZetaVector(2, (1,))
    zeta = [2] + [1] * (n - 2)
    if n % 2 == 0:
        zeta[n // 2 - 1] = 2
    return ZetaVector(n, tuple(zeta))


def canonical_weight(n: int) -> int:
    """Closed form of |canonical_zeta(n)| for n >= 3."""
    return n * (n - 1) // 2 + 1 if n % 2 else n * n // 2 + 1


@dataclass
class ExampleRecord:
    family: str
    params: dict
    flags: dict[str, bool]
    labels: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    reasons: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(self.flags.values())

    def sort_key(self):
        return (self.family, _flatten(self.params))

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "valid": self.valid,
            "flags": dict(sorted(self.flags.items())),
            "labels": self.labels,
            "notes": list(self.notes),
            "reasons": list(self.reasons),
        }


def _flatten(obj) -> tuple:
    """Parameters as a flat numeric tuple, so n = 10 sorts after n = 2."""
    if isinstance(obj, dict):
        return tuple(x for key in sorted(obj) for x in _flatten(obj[key]))
    if isinstance(obj, (list, tuple)):
        return tuple(x for item in obj for x in _flatten(item))
    return (obj,)


def _connected_sum_label(b2: int) -> str:
    if b2 == 0:
        return "S^5"
    if b2 == 1:
        return "S^2xS^3"
    return f"#_{b2}(S^2xS^3)"


def an_flags(z: ZetaVector) -> dict[str, bool]:
    return {"generic": an_genericity(z), "admissible": an_admissibility(z), "primitive": primitivity(z)}


def an_record(n: int, zeta: Sequence[int]) -> ExampleRecord:
    z = ZetaVector(n, tuple(zeta))
    flags = an_flags(z)
    failing = [k for k, v in flags.items() if not v]
    if failing:
        raise CatalogError(f"A_{n - 1} zeta={z.zeta} fails: {', '.join(failing)}")
    b2 = n - 2
    notes = ["zeta lift is one choice with last entry 0; not canonical"]
    if b2 == 0:
        notes.append("b2 = 0: the connected sum of zero copies is read as S^5")
    return ExampleRecord(
        family="An",
        params={"n": n, "zeta": list(z.zeta), "weight": z.weight},
        flags=flags,
        labels={"b2": b2, "S": _connected_sum_label(b2), "zeta_lift": list(z.lift())},
        notes=notes,
    )


def an_moment_map(u: Sequence[Quaternion]) -> list[Quaternion]:
    """Components conj(u_l) i u_l - conj(u_{l+1}) i u_{l+1}, l = 1..n-1."""
    u = [Quaternion.of(x) for x in u]
    terms = [x.conj() * I * x for x in u]
    return [terms[l] - terms[l + 1] for l in range(len(u) - 1)]


def torus_act(angles: Sequence[Quaternion], u: Sequence[Quaternion]) -> list[Quaternion]:
    """Diagonal left action by unit complex numbers (given as quaternions a + b i)."""
    if any(g.c or g.d for g in angles):
        raise CatalogError("torus elements must lie in the complex line")
    return [g * Quaternion.of(x) for g, x in zip(angles, u)]


# -- weighted projective planes --------------------------------------------

def _check_positive_coprime(ps: Sequence[int]) -> None:
    if any(int(p) != p or p <= 0 for p in ps):
        raise CatalogError(f"weights must be positive integers, got {tuple(ps)}")
    g = 0
    for p in ps:
        g = gcd(g, int(p))
    if g != 1:
        raise CatalogError(f"weights {tuple(ps)} are not coprime (gcd {g})")


def wcp2_from_weights(p1: int, p2: int, p3: int) -> tuple[int, int, int]:
    """Weights q_i from p_j + p_k over cyclic (ijk), halved when the sum is even."""
    ps = (p1, p2, p3)
    _check_positive_coprime(ps)
    pair = [ps[(i + 1) % 3] + ps[(i + 2) % 3] for i in range(3)]
    if sum(ps) % 2:
        return tuple(pair)
    odd = [i + 1 for i, s in enumerate(pair) if s % 2]
    if odd:
        raise ParityObstruction(
            f"parity obstruction for p={ps}: 2q_{odd[0]} = {pair[odd[0] - 1]} is odd "
            "(even-sum normalization is an open question)"
        )
    return tuple(s // 2 for s in pair)


def hp2_quotient_record(p1: int, p2: int, p3: int) -> ExampleRecord:
    q = wcp2_from_weights(p1, p2, p3)
    return ExampleRecord(
        family="WCP2",
        params={"p": [p1, p2, p3]},
        flags={"coprime": True, "integral": True, "spin7_admissible": True},
        labels={
            "Q": f"WCP^2[{q[0]},{q[1]},{q[2]}]",
            "q": list(q),
            "S": "S^5",
            "M": "V_2(C^3) x_SU(2) su_2",
        },
        notes=["admissible: weighted projective planes are circle quotients of S^5"],
    )


def top_obstruction_vanishes(h5_orb_dim: int) -> bool:
    """c1 cup [phi] lives in H^5_orb(B); it vanishes automatically when that group is zero.

    For the bundle of anti-self-dual forms over a 4-orbifold the group is H^5_orb(Q) = 0.
    """
    if h5_orb_dim < 0:
        raise CatalogError("dimension must be nonnegative")
    return h5_orb_dim == 0


# -- circle actions on S^3 x R^4 ---------------------------------------------

def ypq_tag(p1: int, p2: int, q1: int, q2: int) -> tuple[int, int] | None:
    """(p, q) when the weights read p1 = p2 = p, q1 = p - q, q2 = p + q."""
    if p1 != p2:
        return None
    p = p1
    q = p - q1
    if q2 != p + q or not p > q > 0 or gcd(p, q) != 1:
        return None
    return p, q


def s3r4_action(p1: int, p2: int, q1: int, q2: int) -> ExampleRecord:
    params = [p1, p2, q1, q2]
    reasons = []
    positive = all(int(x) == x and x > 0 for x in params)
    if not positive:
        reasons.append("weights must be positive integers")
    balanced = p1 + p2 == q1 + q2
    if not balanced:
        reasons.append(f"p1 + p2 = {p1 + p2} != q1 + q2 = {q1 + q2}")
    coprime = True
    for i, p in enumerate((p1, p2), 1):
        for j, q in enumerate((q1, q2), 1):
            g = gcd(int(p), int(q))
            if g != 1:
                coprime = False
                reasons.append(f"gcd(p{i}, q{j}) = {g}")
    rec = ExampleRecord(
        family="S3R4",
        params={"p": [p1, p2], "q": [q1, q2]},
        flags={"positive": positive, "balanced": balanced, "coprime": coprime},
        reasons=reasons,
    )
    if rec.valid:
        rec.labels["M"] = "S^3xR^4"
        tag = ypq_tag(p1, p2, q1, q2)
        if tag:
            rec.labels["cone"] = f"Y^{{{tag[0]},{tag[1]}}}"
        elif p1 == p2 and q1 == q2 == p1:
            rec.notes.append("Y^{p,q} pattern with q = 0; outside the tagged range p > q > 0")
    return rec


# -- enumeration -------------------------------------------------------------

def catalog_an(n_max: int = DEFAULT_N_MAX) -> list[ExampleRecord]:
    if n_max < 2:
        raise CatalogError("n-max must be at least 2")
    return [an_record(n, canonical_zeta(n).zeta) for n in range(2, n_max + 1)]


def catalog_wcp2(max_weight: int = DEFAULT_MAX_WEIGHT) -> list[ExampleRecord]:
    """All coprime p1 <= p2 <= p3 <= max_weight; parity-obstructed triples are kept as invalid."""
    if max_weight < 1:
        raise CatalogError("max-weight must be positive")
    out = []
    for p1 in range(1, max_weight + 1):
        for p2 in range(p1, max_weight + 1):
            for p3 in range(p2, max_weight + 1):
                if gcd(gcd(p1, p2), p3) != 1:
                    continue
                try:
                    out.append(hp2_quotient_record(p1, p2, p3))
                except ParityObstruction as exc:
                    out.append(ExampleRecord(
                        family="WCP2",
                        params={"p": [p1, p2, p3]},
                        flags={"coprime": True, "integral": False, "spin7_admissible": False},
                        reasons=[str(exc)],
                    ))
    return out


def catalog_s3r4(max_weight: int) -> list[ExampleRecord]:
    """Balanced p1 <= p2, q1 <= q2 with entries up to max_weight (swaps give equivalent actions)."""
    if max_weight < 1:
        raise CatalogError("max must be positive")
    out = []
    r = range(1, max_weight + 1)
    for p1 in r:
        for p2 in range(p1, max_weight + 1):
            for q1 in r:
                q2 = p1 + p2 - q1
                if q1 <= q2 <= max_weight:
                    out.append(s3r4_action(p1, p2, q1, q2))
    return out


def records_to_json(records: Iterable[ExampleRecord]) -> str:
    """JSON array of records, each tagged with the catalog schema, in parameter order."""
    recs = sorted(records, key=ExampleRecord.sort_key)
    return json.dumps([{"schema": CATALOG_SCHEMA, **r.to_json()} for r in recs], indent=2, sort_keys=True)


def records_to_csv(records: Iterable[ExampleRecord]) -> str:
    recs = sorted(records, key=ExampleRecord.sort_key)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "params", "valid", "flags", "labels", "notes"])
    for r in recs:
        d = r.to_json()
        w.writerow([
            d["family"],
            json.dumps(d["params"], sort_keys=True),
            d["valid"],
            ";".join(f"{k}={int(v)}" for k, v in d["flags"].items()),
            json.dumps(d["labels"], sort_keys=True),
            " | ".join(d["notes"] + d["reasons"]),
        ])
    return buf.getvalue()
