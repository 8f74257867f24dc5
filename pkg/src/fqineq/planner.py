"""Reduction of small-value problems over F_q((1/t)) to polynomial systems over F_q.

Each x_j is written as sum_{b <= B_j} y_{j,b} t^b.  Asking that F(x) has
ord at most -M (or that its fractional part does) is asking that the t^m
coefficients G_m(y) vanish over a window of m.  The planner picks B_j and M
so that the y-system has more variables than the sum of its degrees, which
makes a nontrivial zero exist.  All magnitudes are handled as ord exponents,
so every comparison below is an exact integer (or Fraction) comparison.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import HypothesisViolated, NonChevalleyForm, ZeroCoefficient, ZeroVector
from .galois_field import FieldElement, FieldSpec
from .laurent import frac_ord, ord_of, vector_ord
from .multipoly import LAURENT, MultiPoly, expand_substitution, flat_index, lift_point
from .poly import MINUS_INFINITY, Poly
from .solver import DEFAULT_BUDGET, Mode, Outcome, SolveReport, solve_nontrivial


class Variant(str, enum.Enum):
    GENERAL = "general"
    DIAGONAL = "diagonal"
    DISTMOD = "distmod"


@dataclass(frozen=True)
class ProblemInstance:
    field: FieldSpec
    variant: Variant
    s: int
    forms: tuple = ()
    lambdas: tuple = ()  # DIAGONAL only
    d: int | None = None  # DIAGONAL only
    i: int = 1
    eps_ord: int | None = None
    nu: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "forms", tuple(self.forms))
        object.__setattr__(self, "lambdas", tuple(self.lambdas))
        if self.i < 1:
            raise ValueError("i must be a positive integer")
        for k, P in enumerate(self.forms):
            if P.nvars != self.s:
                raise ValueError(f"form {k + 1} has {P.nvars} variables, instance has s = {self.s}")

    def system_forms(self) -> tuple[MultiPoly, ...]:
        """The forms as polynomials; for DIAGONAL, sum_j lambda_j x_j^d."""
        if self.variant is not Variant.DIAGONAL:
            return self.forms
        terms = {}
        for j, lam in enumerate(self.lambdas):
            e = [0] * self.s
            e[j] = self.d
            terms[tuple(e)] = lam
        return (MultiPoly(self.field, self.s, terms, LAURENT),)


@dataclass(frozen=True)
class ReductionPlan:
    variant: Variant
    B: int
    Bs: tuple[int, ...]
    M: int
    h: int
    d: int
    nvars: int
    ranges: tuple[tuple[int, int], ...]  # per form, inclusive (lo, hi) window of m
    weights: tuple[int, ...]  # per form, the degree weight each equation costs
    bound_applies: bool
    refined: bool = False
    delta: int = 0  # sum of form degrees
    extras: dict = dc_field(default_factory=dict)

    @property
    def order(self) -> tuple[int, ...]:
        """Branching order for the propagating search: top t-degree layer first."""
        out = []
        for b in range(max(self.Bs), -1, -1):
            for j, Bj in enumerate(self.Bs):
                if b <= Bj:
                    out.append(flat_index(self.Bs, j, b))
        return tuple(out)

    def equation_count_bound(self) -> int:
        return sum(max(0, hi - lo + 1) * w for (lo, hi), w in zip(self.ranges, self.weights))


@dataclass(frozen=True)
class Equation:
    form: int
    m: int
    poly: MultiPoly


@dataclass(frozen=True)
class Certificate:
    x: tuple[Poly, ...]
    achieved: tuple  # ord F_j(x), or frac_ord for DISTMOD
    bound_ord: Fraction | None
    bound_applies: bool
    bound_holds: bool | None
    degrees_ok: bool
    values_ok: bool
    verified: bool
    measured: int | float | None = None  # ord x, or max ord(lambda_n x_n^d)


def _least_B(K: int, X: int) -> int:
    """Least B >= 0 with K*B > X, for K > 0."""
    return 0 if X < 0 else X // K + 1


def _check_forms(inst: ProblemInstance):
    if not inst.forms:
        raise ValueError("no forms given")
    for k, P in enumerate(inst.forms):
        if not P.terms or not P.is_chevalley() or P.total_degree < 1:
            raise NonChevalleyForm(f"form {k + 1} is not a Chevalley polynomial of positive degree")
    return [P.total_degree for P in inst.forms]


def _target(inst: ProblemInstance) -> int:
    if inst.eps_ord is None:
        raise ValueError(f"{inst.variant.value} instance needs eps_ord")
    return 1 - inst.eps_ord


def plan_general(inst: ProblemInstance) -> ReductionPlan:
    if inst.variant is not Variant.GENERAL:
        raise ValueError("plan_general needs a GENERAL instance")
    degs = _check_forms(inst)
    s, i, r = inst.s, inst.i, len(degs)
    d, delta = max(degs), sum(degs)
    if s <= delta * d**i:
        raise HypothesisViolated(f"s = {s} is not larger than delta * d^i = {delta * d**i}")
    h = max(P.max_coeff_ord() for P in inst.forms)
    M = _target(inst)
    K = s - delta * d**i
    B = _least_B(K, r * d**i * (h + M) - s)
    return ReductionPlan(
        Variant.GENERAL, B, (B,) * s, M, h, d, s * (B + 1),
        tuple((1 - M, dj * B + h) for dj in degs), (d**i,) * r,
        bound_applies=inst.eps_ord <= h - d, delta=delta,
    )


def plan_refined(inst: ProblemInstance) -> ReductionPlan:
    if inst.variant is not Variant.GENERAL:
        raise ValueError("plan_refined needs a GENERAL instance")
    degs = _check_forms(inst)
    s, i = inst.s, inst.i
    if i != 1:
        raise HypothesisViolated("the refined count is only available for i = 1 over F_q")
    Di = sum(dj**i for dj in degs)
    Di1 = sum(dj ** (i + 1) for dj in degs)
    if s <= Di1:
        raise HypothesisViolated(f"s = {s} is not larger than D_{i + 1} = {Di1}")
    d = max(degs)
    h = max(P.max_coeff_ord() for P in inst.forms)
    M = _target(inst)
    B = _least_B(s - Di1, Di * (h + M) - s)
    return ReductionPlan(
        Variant.GENERAL, B, (B,) * s, M, h, d, s * (B + 1),
        tuple((1 - M, dj * B + h) for dj in degs), tuple(dj**i for dj in degs),
        bound_applies=inst.eps_ord <= h - d, refined=True, delta=sum(degs),
        extras={"D_i": Di, "D_i+1": Di1},
    )


def diagonal_gate(inst: ProblemInstance) -> Fraction:
    """Largest eps_ord (as a rational) for which the diagonal bound is asserted."""
    d, i, s = inst.d, inst.i, inst.s
    hs = [ord_of(lam) for lam in inst.lambdas]
    h = max(hs)
    return -d + h * (1 - Fraction(s, d ** (i + 1))) + Fraction(sum(hs), d ** (i + 1))


def plan_diagonal(inst: ProblemInstance) -> ReductionPlan:
    if inst.variant is not Variant.DIAGONAL:
        raise ValueError("plan_diagonal needs a DIAGONAL instance")
    d, i, s = inst.d, inst.i, inst.s
    if d is None or d < 1:
        raise ValueError("diagonal instance needs a positive degree d")
    if len(inst.lambdas) != s:
        raise ValueError(f"{len(inst.lambdas)} coefficients for s = {s}")
    for j, lam in enumerate(inst.lambdas):
        if not lam:
            raise ZeroCoefficient(f"lambda_{j + 1} is zero")
    if s <= d ** (i + 1):
        raise HypothesisViolated(f"s = {s} is not larger than d^(i+1) = {d ** (i + 1)}")
    hs = [ord_of(lam) for lam in inst.lambdas]
    h = max(hs)
    M = _target(inst)
    shifts = [(h - hj) // d for hj in hs]
    B = _least_B(s - d ** (i + 1), d**i * (h + M) - s - sum(shifts))
    Bs = tuple(B + sh for sh in shifts)
    return ReductionPlan(
        Variant.DIAGONAL, B, Bs, M, h, d, sum(b + 1 for b in Bs),
        ((1 - M, d * B + h),), (d**i,),
        bound_applies=inst.eps_ord <= diagonal_gate(inst), delta=d,
        extras={"h_j": tuple(hs)},
    )


def plan_distmod(inst: ProblemInstance) -> ReductionPlan:
    if inst.variant is not Variant.DISTMOD:
        raise ValueError("plan_distmod needs a DISTMOD instance")
    degs = _check_forms(inst)
    if inst.nu is None or inst.nu < 0:
        raise ValueError("distmod instance needs a nonnegative nu")
    s, i, r = inst.s, inst.i, len(degs)
    d = max(degs)
    B = inst.nu
    w = r * d**i
    M = -(-s * (B + 1) // w)
    h = max(P.max_coeff_ord() for P in inst.forms)
    return ReductionPlan(
        Variant.DISTMOD, B, (B,) * s, M, h, d, s * (B + 1),
        ((1 - M, -1),) * r, (d**i,) * r,
        bound_applies=True, delta=sum(degs),
        extras={"target_ord": -(-B * s // w), "target": Fraction(-B * s, w)},
    )


def make_plan(inst: ProblemInstance, refined: bool = False) -> ReductionPlan:
    if inst.variant is Variant.GENERAL:
        return plan_refined(inst) if refined else plan_general(inst)
    if inst.variant is Variant.DIAGONAL:
        return plan_diagonal(inst)
    return plan_distmod(inst)


def build_system(inst: ProblemInstance, plan: ReductionPlan) -> list[Equation]:
    eqs = []
    weight = 0
    for j, P in enumerate(inst.system_forms()):
        lo, hi = plan.ranges[j]
        for m, G in expand_substitution(P, plan.Bs).items():
            if lo <= m <= hi:
                assert G.is_chevalley(), f"G_{j + 1},{m} has a constant term"
                eqs.append(Equation(j, m, G))
                weight += plan.weights[j]
    # more unknowns than the weighted equation count: Chevalley-Warning applies
    assert plan.nvars > weight, f"{plan.nvars} variables vs equation weight {weight}"
    return eqs


def lift_solution(y, plan: ReductionPlan) -> list[Poly]:
    y = list(y)
    if len(y) != plan.nvars:
        raise ValueError(f"expected {plan.nvars} coordinates, got {len(y)}")
    if not any(int(c) for c in y):
        raise ZeroVector("the zero vector lifts to x = 0")
    return lift_point(y, plan.Bs)


def bound_ord(inst: ProblemInstance, plan: ReductionPlan) -> Fraction | None:
    """Guaranteed ord bound on x (DIAGONAL: on max ord(lambda_n x_n^d))."""
    s, i, r, M, h, d = inst.s, inst.i, len(plan.ranges), plan.M, plan.h, plan.d
    if plan.variant is Variant.GENERAL:
        if plan.refined:
            Di, Di1 = plan.extras["D_i"], plan.extras["D_i+1"]
            return Fraction(Di * (h + M) - Di1, s - Di1)
        dd = d**i
        return Fraction(r * dd * (h + M) - plan.delta * dd, s - plan.delta * dd)
    if plan.variant is Variant.DIAGONAL:
        K = s - d ** (i + 1)
        hs = plan.extras["h_j"]
        return Fraction(sum(hs) + (d - 1) * K + (M - 1) * d ** (i + 1), K)
    return Fraction(plan.B)


def certify(inst: ProblemInstance, plan: ReductionPlan, x) -> Certificate:
    x = tuple(x)
    nonzero = any(bool(xn) for xn in x)
    degrees_ok = len(x) == inst.s and all(ord_of(xn) <= Bn for xn, Bn in zip(x, plan.Bs))
    values = [P(list(x)) for P in inst.system_forms()]
    if plan.variant is Variant.DISTMOD:
        achieved = tuple(frac_ord(v) for v in values)
    else:
        achieved = tuple(ord_of(v) for v in values)
    values_ok = all(a <= -plan.M for a in achieved)
    bound = bound_ord(inst, plan)
    if plan.variant is Variant.DIAGONAL:
        measured = max(
            (ord_of(lam) + inst.d * ord_of(xn) for lam, xn in zip(inst.lambdas, x) if xn),
            default=MINUS_INFINITY,
        )
    else:
        measured = vector_ord(x)
    holds = None
    if plan.bound_applies and nonzero:
        holds = measured <= bound
    verified = nonzero and degrees_ok and values_ok and holds is not False
    return Certificate(x, achieved, bound, plan.bound_applies, holds, degrees_ok, values_ok, verified, measured)


@dataclass(frozen=True)
class PipelineResult:
    plan: ReductionPlan
    equations: tuple[Equation, ...]
    report: SolveReport
    x: tuple[Poly, ...] | None
    certificate: Certificate | None

    @property
    def verified(self) -> bool:
        return self.certificate is not None and self.certificate.verified


def run_pipeline(inst: ProblemInstance, refined: bool = False, budget: int = DEFAULT_BUDGET,
                 mode=Mode.DETERMINISTIC, workers: int = 1) -> PipelineResult:
    """plan -> build -> solve -> lift -> certify."""
    plan = make_plan(inst, refined)
    eqs = build_system(inst, plan)
    mode = Mode(mode)
    report = solve_nontrivial(
        [e.poly for e in eqs], plan.nvars, budget=budget, mode=mode, field=inst.field,
        workers=workers, order=plan.order if mode is Mode.PROPAGATE else None,
    )
    if report.outcome is not Outcome.FOUND:
        return PipelineResult(plan, tuple(eqs), report, None, None)
    x = tuple(lift_solution(report.y, plan))
    return PipelineResult(plan, tuple(eqs), report, x, certify(inst, plan, x))


def y_from_x(x, plan: ReductionPlan, field: FieldSpec) -> list[FieldElement]:
    """Inverse of lift_solution."""
    out = []
    for xn, Bn in zip(x, plan.Bs):
        out.extend(FieldElement(field, xn.coeffs[b] if b < len(xn.coeffs) else 0) for b in range(Bn + 1))
    return out

