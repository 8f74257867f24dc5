import os
import sys

import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from fqineq.galois_field import make_field  # noqa: E402
from fqineq.laurent import LaurentPoly  # noqa: E402
from fqineq.multipoly import FQ, LAURENT, MultiPoly  # noqa: E402
from fqineq.poly import Poly  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)]


@pytest.fixture(scope="session")
def F2():
    return make_field(2)


@pytest.fixture(scope="session")
def F3():
    return make_field(3)


@st.composite
def fields(draw, choices=SMALL_FIELDS):
    return make_field(*draw(st.sampled_from(choices)))


@st.composite
def elements(draw, F):
    return draw(st.integers(0, F.q - 1))


@st.composite
def polys(draw, F, max_deg=5):
    cs = draw(st.lists(st.integers(0, F.q - 1), max_size=max_deg + 1))
    return Poly(F, tuple(cs))


@st.composite
def laurents(draw, F, lo=-4, hi=4):
    exps = draw(st.lists(st.integers(lo, hi), max_size=5, unique=True))
    return LaurentPoly(F, tuple((k, draw(st.integers(1, F.q - 1))) for k in exps))


@st.composite
def multipolys(draw, F, nvars, max_deg=3, ring=FQ, chevalley=False, lo=-3, hi=3):
    nterms = draw(st.integers(1, 5))
    terms = {}
    for _ in range(nterms):
        exps = tuple(draw(st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars)))
        if sum(exps) > max_deg or (chevalley and sum(exps) == 0):
            continue
        if ring == FQ:
            terms[exps] = draw(st.integers(1, F.q - 1))
        else:
            c = draw(laurents(F, lo, hi))
            if c:
                terms[exps] = c
    return MultiPoly(F, nvars, terms, ring)


def laurent_mp(F, nvars, spec):
    """MultiPoly over Laurent coefficients from {exps: {exp: coeff}}."""
    return MultiPoly(F, nvars, {e: LaurentPoly.from_dict(F, c) for e, c in spec.items()}, LAURENT)


def fq_mp(F, nvars, spec):
    return MultiPoly(F, nvars, dict(spec), FQ)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s[1:s.index("]")])):
            terminalreporter.write_line(line)
