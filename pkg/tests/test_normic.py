import random

import pytest
from hypothesis import given, strategies as st

from conftest import fq_mp
from fqineq.errors import SizeExceeded
from fqineq.galois_field import FieldElement, make_field
from fqineq.multipoly import MultiPoly
from fqineq.normic import build_norm_form, check_anisotropic
from fqineq.poly import Poly

CASES = [(2, 1, 1), (2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (3, 1, 3), (5, 1, 2), (2, 1, 4), (2, 2, 3)]


def psi_at(b, F, coords):
    return b.psi([FieldElement(F, c) for c in coords]).value


def test_degree_one(F2):
    assert build_norm_form(F2, 1).psi == fq_mp(F2, 1, {(1,): 1})


def test_quadratic_over_f2(F2):
    b = build_norm_form(F2, 2)
    assert b.psi == fq_mp(F2, 2, {(2, 0): 1, (1, 1): 1, (0, 2): 1})


def test_quadratic_over_f3(F3):
    b = build_norm_form(F3, 2)
    assert b.psi == fq_mp(F3, 2, {(2, 0): 1, (0, 2): 1})
    assert b.ext_field.modulus == Poly(F3, (1, 0, 1))


def test_size_limits(F2):
    with pytest.raises(SizeExceeded):
        build_norm_form(F2, 5)
    with pytest.raises(SizeExceeded):
        check_anisotropic(MultiPoly.variable(F2, 25, 0))


def test_anisotropy_examples(F2):
    assert check_anisotropic(fq_mp(F2, 2, {(2, 0): 1, (1, 1): 1, (0, 2): 1}))
    assert not check_anisotropic(fq_mp(F2, 2, {(1, 1): 1}))
    for q in (2, 3, 5):
        F = make_field(q)
        assert check_anisotropic(MultiPoly.variable(F, 1, 0))


@pytest.mark.parametrize("p,e,d", CASES)
def test_shape_and_anisotropy(p, e, d):
    F = make_field(p, e)
    b = build_norm_form(F, d)
    assert b.psi.nvars == d and b.psi.is_homogeneous() and b.psi.total_degree == d
    assert check_anisotropic(b.psi)


@pytest.mark.parametrize("p,e,d", CASES)
def test_norm_consistency_exhaustive(p, e, d):
    F = make_field(p, e)
    b = build_norm_form(F, d)
    ext = b.ext_field
    for a in ext.elements():
        assert psi_at(b, F, ext.coords(a)) == ext.norm(a).value


@pytest.mark.parametrize("p,e,d", CASES)
def test_multiplicative(p, e, d):
    F = make_field(p, e)
    b = build_norm_form(F, d)
    ext = b.ext_field
    rng = random.Random(p * 100 + e * 10 + d)
    for _ in range(60):
        x = ext.from_coords([rng.randrange(F.q) for _ in range(d)])
        y = ext.from_coords([rng.randrange(F.q) for _ in range(d)])
        lhs = psi_at(b, F, ext.coords(ext.mul(x, y)))
        assert lhs == F.mul(psi_at(b, F, ext.coords(x)), psi_at(b, F, ext.coords(y)))


@given(st.sampled_from(CASES[1:7]), st.data())
def test_anisotropic_over_polynomials(case, data):
    p, e, d = case
    F = make_field(p, e)
    b = build_norm_form(F, d)
    xs = [Poly(F, tuple(data.draw(st.lists(st.integers(0, F.q - 1), max_size=4)))) for _ in range(d)]
    if not any(xs):
        return
    v = b.psi(xs)
    assert v
    # the top coefficient is psi at the leading-coefficient vector
    m = max(x.degree for x in xs if x)
    lead = [FieldElement(F, x.coeffs[m]) if x.degree == m else F.zero for x in xs]
    assert v.degree == d * m and v.coeffs[-1] == b.psi(lead).value
