import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import laurent_mp
from fqineq.errors import HypothesisViolated, NonChevalleyForm, ZeroCoefficient, ZeroVector
from fqineq.galois_field import FieldElement, make_field
from fqineq.laurent import LaurentPoly
from fqineq.multipoly import LAURENT, MultiPoly
from fqineq.planner import (ProblemInstance, Variant, build_system, certify, lift_solution, plan_diagonal, diagonal_gate,
                            plan_distmod, plan_general, plan_refined, run_pipeline, y_from_x)
from fqineq.poly import MINUS_INFINITY, Poly
from fqineq.sampling import random_form


def example_form(F, s=5):
    # t^-1 x1 x2 + x3^2, padded with unused variables
    e12 = (1, 1) + (0,) * (s - 2)
    e3 = (0, 0, 2) + (0,) * (s - 3)
    return laurent_mp(F, s, {e12: {-1: 1}, e3: {0: 1}})


def general(F, forms, s, eps, i=1):
    return ProblemInstance(F, Variant.GENERAL, s, tuple(forms), eps_ord=eps, i=i)


def L(F, d):
    return LaurentPoly.from_dict(F, d)


# -- counting inequalities, evaluated directly for minimality checks ---------

def general_holds(s, i, degs, h, M, B):
    d = max(degs)
    return s * (B + 1) > d**i * sum(dj * B + h + M for dj in degs)


def refined_holds(s, i, degs, h, M, B):
    return s * (B + 1) > sum((dj * B + h + M) * dj**i for dj in degs)


def diagonal_holds(s, i, d, hs, M, B):
    h = max(hs)
    return (s - d ** (i + 1)) * B > d**i * (h + M) - s - sum((h - hj) // d for hj in hs)


# -- worked examples ---------------------------------------------------------

def test_general_eps0(F2):
    p = plan_general(general(F2, [example_form(F2)], 5, 0))
    assert (p.M, p.B) == (1, 0)


def test_general_eps_minus2(F2):
    p = plan_general(general(F2, [example_form(F2)], 5, -2))
    assert (p.M, p.B) == (3, 2)
    assert not general_holds(5, 1, [2], 0, 3, 1) and general_holds(5, 1, [2], 0, 3, 2)


def test_general_hypothesis(F2):
    with pytest.raises(HypothesisViolated):
        plan_general(general(F2, [example_form(F2, 4)], 4, 0))


def test_non_chevalley_rejected(F2):
    f = laurent_mp(F2, 5, {(0,) * 5: {0: 1}, (2, 0, 0, 0, 0): {0: 1}})
    with pytest.raises(NonChevalleyForm):
        plan_general(general(F2, [f], 5, 0))


def two_forms(F, s):
    lin = laurent_mp(F, s, {(1,) + (0,) * (s - 1): {0: 1}})
    quad = laurent_mp(F, s, {(0, 2) + (0,) * (s - 2): {0: 1}})
    return [lin, quad]


def test_refined_hypothesis(F2):
    with pytest.raises(HypothesisViolated):
        plan_refined(general(F2, two_forms(F2, 4), 4, 0))


def test_refined_degrees_one_and_two(F2):
    p = plan_refined(general(F2, two_forms(F2, 6), 6, 0))
    assert p.B == 0 and p.M == 1 and p.h == 0


def test_refined_equals_general_for_single_degree(F2):
    inst = general(F2, [example_form(F2)], 5, -2)
    assert plan_refined(inst).B == plan_general(inst).B


def test_refined_needs_i_equal_1(F2):
    with pytest.raises(HypothesisViolated):
        plan_refined(general(F2, [example_form(F2, 9)], 9, 0, i=2))


def diag(F, lams, d, eps, s=None):
    return ProblemInstance(F, Variant.DIAGONAL, s or len(lams), lambdas=tuple(lams), d=d, eps_ord=eps)


def test_diagonal_example(F2):
    p = plan_diagonal(diag(F2, [L(F2, {-1: 1})] + [L(F2, {0: 1})] * 4, 2, -1))
    assert (p.M, p.B, p.Bs, p.h) == (2, 0, (0,) * 5, 0)


def test_diagonal_constant_coefficients(F3):
    p = plan_diagonal(diag(F3, [L(F3, {0: 1})] * 6, 2, -3))
    assert set(p.Bs) == {p.B}


def test_diagonal_hypothesis_and_zero(F3):
    with pytest.raises(HypothesisViolated):
        plan_diagonal(diag(F3, [L(F3, {0: 1})] * 4, 2, 0))
    with pytest.raises(ZeroCoefficient):
        plan_diagonal(diag(F3, [L(F3, {0: 1})] * 4 + [LaurentPoly.zero(F3)], 2, 0))


def test_diagonal_gate_exact(F3):
    inst = diag(F3, [L(F3, {2: 1}), L(F3, {-1: 1}), L(F3, {0: 1}), L(F3, {1: 1}), L(F3, {0: 2})], 2, 0)
    hs = [2, -1, 0, 1, 0]
    gate = -2 + 2 * (1 - Fraction(5, 4)) + Fraction(sum(hs), 4)
    assert gate == -2 == diagonal_gate(inst)
    assert not plan_diagonal(diag(F3, inst.lambdas, 2, -1)).bound_applies
    assert not plan_diagonal(inst).bound_applies
    assert plan_diagonal(diag(F3, inst.lambdas, 2, -2)).bound_applies


def test_distmod_examples(F2):
    f = laurent_mp(F2, 1, {(2,): {0: 1}})
    p = plan_distmod(ProblemInstance(F2, Variant.DISTMOD, 1, (f,), nu=3))
    assert (p.B, p.M) == (3, 2)

    g = laurent_mp(F2, 1, {(1,): {-2: 1}})
    inst = ProblemInstance(F2, Variant.DISTMOD, 1, (g,), nu=1)
    p = plan_distmod(inst)
    assert (p.B, p.M) == (1, 2)
    eqs = build_system(inst, p)
    assert [(e.m, repr(e.poly)) for e in eqs] == [(-1, "x2")]
    x = lift_solution([FieldElement(F2, 1), FieldElement(F2, 0)], p)
    assert x == [Poly(F2, (1,))]
    c = certify(inst, p, x)
    assert c.achieved == (-2,) and c.verified


def test_distmod_polynomial_form_gives_empty_system(F2):
    f = laurent_mp(F2, 2, {(1, 1): {2: 1}, (0, 2): {0: 1}})
    inst = ProblemInstance(F2, Variant.DISTMOD, 2, (f,), nu=2)
    res = run_pipeline(inst)
    assert res.equations == () and res.verified
    assert res.certificate.achieved == (MINUS_INFINITY,)


def test_build_system_ranges(F2):
    inst = general(F2, [example_form(F2)], 5, 0)
    p = plan_general(inst)
    eqs = build_system(inst, p)
    assert [(e.m, repr(e.poly)) for e in eqs] == [(0, "x3^2")]

    inst = general(F2, [example_form(F2)], 5, -2)
    p = plan_general(inst)
    assert p.ranges == ((-2, 4),) and p.nvars == 15
    ms = [e.m for e in build_system(inst, p)]
    # t^-2 never occurs, so only six of the seven window slots carry an equation
    assert ms == [-1, 0, 1, 2, 3, 4]


def test_homogeneous_equations(F3):
    rng = random.Random(1)
    f = random_form(rng, F3, 5, 2)
    inst = general(F3, [f], 5, -1)
    for e in build_system(inst, plan_general(inst)):
        assert e.poly.is_homogeneous() and e.poly.total_degree == 2


def test_lift_examples(F2):
    p = plan_general(general(F2, [example_form(F2)], 5, 0))
    y = [FieldElement(F2, v) for v in (1, 0, 0, 0, 0)]
    assert lift_solution(y, p) == [Poly(F2, (1,))] + [Poly.zero(F2)] * 4
    with pytest.raises(ZeroVector):
        lift_solution([FieldElement(F2, 0)] * 5, p)


def test_lift_single_variable(F2):
    f = laurent_mp(F2, 1, {(1,): {-2: 1}})
    p = plan_distmod(ProblemInstance(F2, Variant.DISTMOD, 1, (f,), nu=1))
    assert lift_solution([FieldElement(F2, 1)] * 2, p) == [Poly(F2, (1, 1))]


def test_certify_examples(F2):
    inst = general(F2, [example_form(F2)], 5, 0)
    p = plan_general(inst)
    x = [Poly(F2, (1,))] + [Poly.zero(F2)] * 4
    c = certify(inst, p, x)
    assert c.achieved == (MINUS_INFINITY,) and c.verified
    # x3 = 1 leaves F(x) = 1, which is not below eps
    bad = certify(inst, p, [Poly.zero(F2)] * 2 + [Poly(F2, (1,))] + [Poly.zero(F2)] * 2)
    assert bad.achieved == (0,) and not bad.verified
    assert not certify(inst, p, [Poly.zero(F2)] * 5).verified


def test_certify_catches_degree_overflow(F2):
    inst = general(F2, [example_form(F2)], 5, 0)
    p = plan_general(inst)
    x = [Poly(F2, (0, 1))] + [Poly.zero(F2)] * 4
    assert not certify(inst, p, x).verified


def test_pipeline_end_to_end(F2):
    res = run_pipeline(general(F2, [example_form(F2)], 5, -2), budget=1 << 20)
    assert res.verified and res.plan.nvars == 15


# -- properties --------------------------------------------------------------

@given(st.data())
def test_general_minimality(data):
    s = data.draw(st.integers(2, 12))
    degs = data.draw(st.lists(st.integers(1, 3), min_size=1, max_size=3))
    F = make_field(2)
    d = max(degs)
    if s <= sum(degs) * d:
        return
    h = data.draw(st.integers(-3, 3))
    eps = data.draw(st.integers(-4, 2))
    forms = []
    for dj in degs:
        e = (dj,) + (0,) * (s - 1)
        forms.append(laurent_mp(F, s, {e: {h: 1}}))
    p = plan_general(general(F, forms, s, eps))
    assert general_holds(s, 1, degs, h, p.M, p.B)
    if p.B:
        assert not general_holds(s, 1, degs, h, p.M, p.B - 1)
    if p.bound_applies:
        K = s - sum(degs) * d
        assert K * p.B <= len(degs) * d * (h + p.M) - sum(degs) * d
    if s > sum(dj * dj for dj in degs):
        q = plan_refined(general(F, forms, s, eps))
        assert refined_holds(s, 1, degs, h, q.M, q.B)
        if q.B:
            assert not refined_holds(s, 1, degs, h, q.M, q.B - 1)
        assert q.B <= p.B


@given(st.data())
def test_diagonal_minimality(data):
    F = make_field(3)
    d = data.draw(st.integers(1, 3))
    s = data.draw(st.integers(d * d + 1, d * d + 4))
    hs = data.draw(st.lists(st.integers(-3, 3), min_size=s, max_size=s))
    eps = data.draw(st.integers(-4, 1))
    p = plan_diagonal(diag(F, [L(F, {hj: 1}) for hj in hs], d, eps))
    assert diagonal_holds(s, 1, d, hs, p.M, p.B)
    if p.B:
        assert not diagonal_holds(s, 1, d, hs, p.M, p.B - 1)
    assert p.Bs == tuple(p.B + (max(hs) - hj) // d for hj in hs)


@given(st.data())
def test_distmod_plan(data):
    F = make_field(2)
    s = data.draw(st.integers(1, 5))
    d = data.draw(st.integers(1, 3))
    nu = data.draw(st.integers(0, 5))
    f = laurent_mp(F, s, {(d,) + (0,) * (s - 1): {-1: 1}})
    p = plan_distmod(ProblemInstance(F, Variant.DISTMOD, s, (f,), nu=nu))
    assert d * p.M >= s * (nu + 1) > (p.M - 1) * d
    assert -p.M < p.extras["target"]


def random_general_instance(rng, F, eps_choices=(0, -1)):
    while True:
        f = random_form(rng, F, 5, 2)
        h = f.max_coeff_ord()
        ok = [e for e in eps_choices if e <= h - 2]
        if ok:
            return general(F, [f], 5, rng.choice(ok))


@pytest.mark.parametrize("seed", range(6))
def test_soundness_general(seed):
    rng = random.Random(seed)
    F = make_field(rng.choice([2, 3]))
    inst = random_general_instance(rng, F, (0, -1, -2))
    res = run_pipeline(inst, mode="propagate", budget=1 << 20)
    assert res.verified
    # the counting argument: more unknowns than weighted equations
    assert res.plan.nvars > res.plan.d * len(res.equations)


@pytest.mark.parametrize("seed", range(6))
def test_soundness_diagonal(seed):
    rng = random.Random(100 + seed)
    F = make_field(3)
    lams = [LaurentPoly.from_dict(F, {rng.randint(-2, 2): rng.randrange(1, 3)}) for _ in range(5)]
    res = run_pipeline(diag(F, lams, 2, -1), mode="propagate", budget=1 << 20)
    assert res.verified


@given(st.data())
def test_exactness_round_trip(data):
    F = make_field(data.draw(st.sampled_from([2, 3])))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    inst = random_general_instance(rng, F)
    p = plan_general(inst)
    ys = [FieldElement(F, rng.randrange(F.q)) for _ in range(p.nvars)]
    if not any(y.value for y in ys):
        return
    x = lift_solution(ys, p)
    assert y_from_x(x, p, F) == ys
    value = inst.forms[0](x)
    expected = {m: e.poly(ys).value for e in build_system(inst, p) for m in [e.m]}
    lo, hi = p.ranges[0]
    for m in range(lo, hi + 1):
        assert value.coeff(m).value == expected.get(m, 0)


def test_diagonal_form_construction(F3):
    inst = diag(F3, [L(F3, {-1: 1})] + [L(F3, {0: 1})] * 4, 2, -1)
    (P,) = inst.system_forms()
    assert isinstance(P, MultiPoly) and P.ring == LAURENT
    assert repr(P) == "t^-1*x1^2 + x2^2 + x3^2 + x4^2 + x5^2"
