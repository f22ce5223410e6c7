"""Seeded random rational polynomials and forms for identity checks."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .exterior import Form, Poly, basis


def rational(rng: random.Random, bound: int = 5, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def nonzero_rational(rng: random.Random, bound: int = 5, den: int = 3) -> Fraction:
    while True:
        q = rational(rng, bound, den)
        if q:
            return q


def monomial(rng: random.Random, n: int, max_degree: int) -> tuple[int, ...]:
    deg = rng.randint(0, max_degree)
    exp = [0] * n
    for _ in range(deg):
        exp[rng.randrange(n)] += 1
    return tuple(exp)


def poly(rng: random.Random, n: int, max_degree: int = 2, n_terms: int = 3) -> Poly:
    return Poly(n, {monomial(rng, n, max_degree): rational(rng) for _ in range(n_terms)})


def form(rng: random.Random, n: int, k: int, max_degree: int = 2, n_terms: int = 4,
         poly_terms: int = 2) -> Form:
    idx = basis(n, k)
    return Form(n, k, {rng.choice(idx): poly(rng, n, max_degree, poly_terms) for _ in range(n_terms)})


def constant_form(rng: random.Random, n: int, k: int, density: float = 1.0) -> Form:
    return Form(n, k, {i: rational(rng) for i in combinations(range(1, n + 1), k) if rng.random() < density})


def vector(rng: random.Random, n: int, max_degree: int = 1, n_terms: int = 2) -> list[Poly]:
    return [poly(rng, n, max_degree, n_terms) for _ in range(n)]
