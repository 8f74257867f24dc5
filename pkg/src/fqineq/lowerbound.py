"""Forms with large coefficients whose smallest nontrivial zero is large.

F_m(x) = Phi_m(L_1(x), ..., L_Delta(x)) where Phi_m stacks d norm forms with
weights 1, t, ..., t^(d-1), and the L_u are linear forms whose coefficients
are products of distinct monic irreducibles.  Since Phi_m is anisotropic over
F_q[t], F(x) = 0 forces L(x) = 0, which forces the irreducible products to
divide the coordinates of x; this pins ord x from below.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import HypothesisViolated, SizeExceeded, ZeroVector
from .galois_field import FieldSpec
from .laurent import LaurentPoly, vector_ord
from .multipoly import LAURENT, MultiPoly, expand_substitution, lift_point
from .normic import build_norm_form
from .planner import ProblemInstance, Variant
from .poly import Poly, enumerate_monic_irreducibles, minimal_degree_with
from .solver import DEFAULT_BUDGET, Mode, Outcome, solve_nontrivial

MAX_TERMS = 1 << 22


@dataclass(frozen=True)
class LowerBoundInstance:
    field: FieldSpec
    d: int
    D: int
    r: int
    s: int
    h_mult: int
    Delta: int
    delta: int
    pi_table: tuple  # pi[u][w][l], 0-based u, w, l
    varpi: tuple  # varpi[u][w]
    a: tuple  # a[u][v], v = 0..s-Delta
    L: tuple[MultiPoly, ...]
    phi: tuple[MultiPoly, ...]
    composed_forms: tuple[MultiPoly, ...]
    psi: MultiPoly
    H_ord: int
    lower_bound_ord: int

    def as_problem(self, eps_ord: int = 0) -> ProblemInstance:
        return ProblemInstance(self.field, Variant.GENERAL, self.s, self.composed_forms, eps_ord=eps_ord)


def _prod(polys, field):
    return reduce(lambda a, b: a * b, polys, Poly.constant(field, 1))


def construct_instance(field: FieldSpec, d: int, r: int, s: int, h_mult: int) -> LowerBoundInstance:
    if not 1 <= d <= 3:
        raise SizeExceeded(f"degree {d} outside 1..3")
    if r < 1 or h_mult < 1:
        raise ValueError("r and h_mult must be positive")
    D = d
    Delta = r * d * D
    if s <= Delta:
        raise HypothesisViolated(f"s = {s} is not larger than r*d*D = {Delta}")
    k = s - Delta
    need = h_mult * Delta * (k + 1)
    delta = minimal_degree_with(field, need)
    irr = enumerate_monic_irreducibles(field, delta)[:need]
    it = iter(irr)
    pi = tuple(tuple(tuple(next(it) for _ in range(h_mult)) for _ in range(k + 1)) for _ in range(Delta))
    varpi = tuple(tuple(_prod(pi[u][w], field) for w in range(k + 1)) for u in range(Delta))
    a = tuple(
        tuple(_prod([varpi[u][w] for w in range(k + 1) if w != v], field) for v in range(k + 1))
        for u in range(Delta)
    )

    def lp(p: Poly):
        return LaurentPoly.from_poly(p)

    L = []
    for u in range(Delta):
        terms = {}
        e = [0] * s
        e[k + u] = 1
        terms[tuple(e)] = lp(a[u][0])
        for v in range(1, k + 1):
            e = [0] * s
            e[v - 1] = 1
            terms[tuple(e)] = lp(a[u][v])
        L.append(MultiPoly(field, s, terms, LAURENT))

    psi = build_norm_form(field, D).psi
    phi = []
    for m in range(r):
        terms: dict = {}
        for j in range(d):
            start = m * d * D + j * D
            for exps, c in psi.terms.items():
                full = [0] * Delta
                full[start:start + D] = exps
                terms[tuple(full)] = LaurentPoly.monomial(field, j, c)
        phi.append(MultiPoly(field, Delta, terms, LAURENT))

    # every composed term is a product of d entries of L, one slot per factor
    size = (k + 1) ** d * len(psi.terms) * d * r
    if size > MAX_TERMS:
        raise SizeExceeded(f"composed forms would carry about {size} terms")
    composed = tuple(P.compose(L) for P in phi)

    H_ord = (d - 1) + delta * h_mult * d * k
    worst = max(c.ord for P in composed for c in P.terms.values())
    assert worst <= H_ord, f"coefficient ord {worst} exceeds H_ord {H_ord}"
    return LowerBoundInstance(
        field, d, D, r, s, h_mult, Delta, delta, pi, varpi, a, tuple(L), tuple(phi), composed,
        psi, H_ord, delta * h_mult * Delta,
    )


def sample_kernel_solution(inst: LowerBoundInstance, w) -> list[Poly]:
    """A polynomial vector with L_u(x) = 0 for every u, built from free data w."""
    w = list(w)
    k = inst.s - inst.Delta
    if len(w) != k:
        raise ValueError(f"need {k} free polynomials, got {len(w)}")
    if not any(bool(p) for p in w):
        raise ZeroVector("w must be nonzero")
    F, Delta, varpi = inst.field, inst.Delta, inst.varpi
    x = [_prod([varpi[u][v + 1] for u in range(Delta)], F) * w[v] for v in range(k)]
    for u in range(Delta):
        acc = Poly.zero(F)
        for v in range(k):
            others = _prod([varpi[u2][v + 1] for u2 in range(Delta) if u2 != u], F)
            acc = acc + varpi[u][0] * others * w[v]
        x.append(-acc)
    return x


class SearchStatus(str, enum.Enum):
    FOUND = "FOUND"
    NONE_BELOW = "NONE_BELOW"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


@dataclass(frozen=True)
class MinSearchResult:
    status: SearchStatus
    max_ord: int
    min_ord: int | None = None
    x: tuple | None = None
    evaluations: int = 0

    def __repr__(self):
        if self.status is SearchStatus.FOUND:
            return f"FOUND(min_ord={self.min_ord})"
        return f"{self.status.value}({self.max_ord})"


def exhaustive_min_search(inst: LowerBoundInstance, max_ord: int, budget: int = DEFAULT_BUDGET,
                          workers: int = 1) -> MinSearchResult:
    """Least k such that some nonzero x with every deg x_n <= k kills all forms.

    The forms have coefficients in F_q[t], so <F_j(x)> < 1 means F_j(x) = 0.
    """
    F, s, q = inst.field, inst.s, inst.field.q
    if q ** (s * (max_ord + 1)) > budget:
        return MinSearchResult(SearchStatus.BUDGET_EXCEEDED, max_ord)
    mode = Mode.PARALLEL if workers > 1 else Mode.DETERMINISTIC
    used = 0
    for k in range(max_ord + 1):
        Bs = (k,) * s
        eqs = [G for P in inst.composed_forms for G in expand_substitution(P, Bs).values()]
        n = s * (k + 1)
        rep = solve_nontrivial(eqs, n, budget=budget - used, mode=mode, field=F, workers=workers)
        used += rep.evaluations
        if rep.outcome is Outcome.FOUND:
            x = tuple(lift_point(list(rep.y), Bs))
            return MinSearchResult(SearchStatus.FOUND, max_ord, vector_ord(x), x, used)
        if rep.outcome is Outcome.BUDGET_EXCEEDED:
            return MinSearchResult(SearchStatus.BUDGET_EXCEEDED, max_ord, evaluations=used)
    return MinSearchResult(SearchStatus.NONE_BELOW, max_ord, evaluations=used)


def ord_space_bound(inst: LowerBoundInstance):
    """(1 - d + H_ord) * r * D / (s - Delta), as a Fraction."""
    return Fraction((1 - inst.d + inst.H_ord) * inst.r * inst.D, inst.s - inst.Delta)


def divides_all(inst: LowerBoundInstance, x) -> bool:
    """varpi[u][v] | x_v for all u and v >= 1, and varpi[u][0] | x_{s-Delta+u}."""
    k = inst.s - inst.Delta
    for u in range(inst.Delta):
        if not inst.varpi[u][0].divides(x[k + u]):
            return False
        for v in range(1, k + 1):
            if not inst.varpi[u][v].divides(x[v - 1]):
                return False
    return True

