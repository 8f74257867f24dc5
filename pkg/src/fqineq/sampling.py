"""Seeded random instances for tests and experiments."""
from __future__ import annotations

import random

from .galois_field import FieldSpec
from .laurent import LaurentPoly
from .multipoly import FQ, LAURENT, MultiPoly, monomials


def random_laurent(rng: random.Random, field: FieldSpec, lo: int, hi: int, density: float = 0.4) -> LaurentPoly:
    """Nonzero Laurent polynomial with exponents drawn from [lo, hi]."""
    while True:
        terms = {k: rng.randrange(1, field.q) for k in range(lo, hi + 1) if rng.random() < density}
        if terms:
            return LaurentPoly.from_dict(field, terms)


def random_form(rng: random.Random, field: FieldSpec, s: int, d: int, lo: int = -3, hi: int = 3,
                density: float = 0.5) -> MultiPoly:
    """Homogeneous degree-d form in s variables with Laurent coefficients."""
    monos = list(monomials(s, d))
    while True:
        terms = {e: random_laurent(rng, field, lo, hi) for e in monos if rng.random() < density}
        if terms:
            return MultiPoly(field, s, terms, LAURENT)


def random_chevalley_system(rng: random.Random, field: FieldSpec, n: int, degrees, max_terms: int = 6):
    """F_q polynomials without constant term, of the given total degrees."""
    out = []
    for deg in degrees:
        terms = {}
        # one monomial of full degree so the degree is exact
        e = [0] * n
        for _ in range(deg):
            e[rng.randrange(n)] += 1
        terms[tuple(e)] = rng.randrange(1, field.q)
        for _ in range(rng.randint(0, max_terms - 1)):
            e = [0] * n
            for _ in range(rng.randint(1, deg)):
                e[rng.randrange(n)] += 1
            terms[tuple(e)] = rng.randrange(1, field.q)
        out.append(MultiPoly(field, n, terms, FQ))
    return out
