"""Sparse multivariate polynomials over F_q or over Laurent coefficients.

The coefficient ring is tagged ``"fq"`` (coefficients stored as integer
codes) or ``"laurent"`` (coefficients are :class:`LaurentPoly`).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import ArityMismatch, FieldMismatch, RingMismatch, ZeroPolynomial
from .galois_field import FieldElement, FieldSpec
from .laurent import LaurentPoly, format_laurent
from .poly import MINUS_INFINITY, Poly

FQ = "fq"
LAURENT = "laurent"


def grlex_key(exps):
    return (-sum(exps), tuple(-e for e in exps))


class MultiPoly:
    __slots__ = ("field", "nvars", "ring", "terms")

    def __init__(self, field: FieldSpec, nvars: int, terms=None, ring: str = FQ):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        if ring not in (FQ, LAURENT):
            raise ValueError(f"unknown coefficient ring {ring!r}")
        self.field = field
        self.nvars = nvars
        self.ring = ring
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(x) for x in exps)
            if len(exps) != nvars:
                raise ArityMismatch(f"exponent vector {exps} has length != {nvars}")
            if any(x < 0 for x in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = self._coerce(c)
            if c:
                clean[exps] = c
        self.terms = clean

    def _coerce(self, c):
        F = self.field
        if self.ring == FQ:
            if isinstance(c, FieldElement):
                F.check(c)
                return c.value
            if isinstance(c, (LaurentPoly, Poly)):
                raise RingMismatch("F_q polynomial given a non-constant coefficient")
            return F.element(c).value if F.e == 1 else int(c)
        if isinstance(c, LaurentPoly):
            if c.field != F:
                raise FieldMismatch(f"{c.field} vs {F}")
            return c
        if isinstance(c, Poly):
            return LaurentPoly.from_poly(c)
        if isinstance(c, FieldElement):
            return LaurentPoly.monomial(F, 0, c)
        return LaurentPoly.monomial(F, 0, F.element(c))

    # -- constructors ---------------------------------------------------------

    @classmethod
    def variable(cls, field, nvars: int, i: int, ring: str = FQ):
        exps = [0] * nvars
        exps[i] = 1
        one = 1 if ring == FQ else LaurentPoly.monomial(field, 0, 1)
        return cls(field, nvars, {tuple(exps): one}, ring)

    @classmethod
    def constant(cls, field, nvars: int, c, ring: str = FQ):
        return cls(field, nvars, {(0,) * nvars: c}, ring)

    def _new(self, terms, ring=None):
        out = MultiPoly.__new__(MultiPoly)
        out.field, out.nvars, out.ring = self.field, self.nvars, ring or self.ring
        out.terms = terms
        return out

    def to_laurent(self) -> "MultiPoly":
        if self.ring == LAURENT:
            return self
        F = self.field
        return self._new({e: LaurentPoly.monomial(F, 0, FieldElement(F, c)) for e, c in self.terms.items()}, LAURENT)

    def coefficient(self, exps):
        c = self.terms.get(tuple(exps))
        if self.ring == FQ:
            return FieldElement(self.field, c or 0)
        return c if c is not None else LaurentPoly.zero(self.field)

    # -- coefficient helpers --------------------------------------------------

    def _cadd(self, a, b):
        return self.field.add(a, b) if self.ring == FQ else a + b

    def _cmul(self, a, b):
        return self.field.mul(a, b) if self.ring == FQ else a * b

    def _cneg(self, a):
        return self.field.neg(a) if self.ring == FQ else -a

    # -- arithmetic -----------------------------------------------------------

    def _compatible(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            if other.nvars != self.nvars:
                raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        return MultiPoly.constant(self.field, self.nvars, other, self.ring if not isinstance(other, (LaurentPoly, Poly)) else LAURENT)

    def _unify(self, other):
        other = self._compatible(other)
        a, b = self, other
        if a.ring != b.ring:
            a, b = a.to_laurent(), b.to_laurent()
        return a, b

    def __add__(self, other):
        a, b = self._unify(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            v = a._cadd(terms[e], c) if e in terms else c
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return a._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: self._cneg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._compatible(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._unify(other)
        terms: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = a._cmul(c1, c2)
                if e in terms:
                    v = a._cadd(terms[e], v)
                if v:
                    terms[e] = v
                else:
                    terms.pop(e, None)
        return a._new(terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.constant(self.field, self.nvars, 1, self.ring)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self, other
        if a.ring != b.ring:
            a, b = a.to_laurent(), b.to_laurent()
        return a.field == b.field and a.nvars == b.nvars and a.terms == b.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # -- structure ------------------------------------------------------------

    @property
    def total_degree(self):
        return max((sum(e) for e in self.terms), default=MINUS_INFINITY)

    def is_chevalley(self) -> bool:
        return (0,) * self.nvars not in self.terms

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def max_coeff_ord(self):
        if self.ring == FQ:
            return 0 if self.terms else MINUS_INFINITY
        return max((c.ord for c in self.terms.values()), default=MINUS_INFINITY)

    def min_coeff_exponent(self):
        if self.ring == FQ:
            return 0 if self.terms else MINUS_INFINITY
        return min((c.min_exponent for c in self.terms.values()), default=MINUS_INFINITY)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return mp_eval(self, point)

    def compose(self, polys) -> "MultiPoly":
        """Substitute x_i -> polys[i] (all polys share one arity)."""
        polys = list(polys)
        if len(polys) != self.nvars:
            raise ArityMismatch(f"need {self.nvars} substitutes, got {len(polys)}")
        if not polys:
            raise ArityMismatch("nothing to substitute")
        m = polys[0].nvars
        ring = LAURENT if self.ring == LAURENT or any(p.ring == LAURENT for p in polys) else FQ
        src = self if self.ring == ring else self.to_laurent()
        out = MultiPoly(self.field, m, {}, ring)
        cache: dict = {}
        for exps, c in src.terms.items():
            term = MultiPoly.constant(self.field, m, c, ring)
            for i, k in enumerate(exps):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = polys[i] ** k
                    term = term * cache[(i, k)]
            out = out + term
        return out

    def __repr__(self):
        return format_multipoly(self)


def format_multipoly(F: MultiPoly, var: str = "x") -> str:
    if not F.terms:
        return "0"
    parts = []
    for exps, c in F.sorted_terms():
        mono = "*".join(f"{var}{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(exps) if k)
        if F.ring == FQ:
            cs = F.field.format(c)
            if F.field.e > 1 and "+" in cs:
                cs = f"({cs})"
            is_one = c == 1
        else:
            cs = format_laurent(c)
            if len(c.support) > 1:
                cs = f"({cs})"
            is_one = c.support == ((0, 1),)
        if not mono:
            parts.append(cs)
        elif is_one:
            parts.append(mono)
        else:
            parts.append(f"{cs}*{mono}")
    return " + ".join(parts)


@dataclass(frozen=True)
class DegreeInfo:
    total_degree: int | float
    is_chevalley: bool
    is_homogeneous: bool
    max_coeff_ord: int | float


def degree_info(F: MultiPoly) -> DegreeInfo:
    return DegreeInfo(F.total_degree, F.is_chevalley(), F.is_homogeneous(), F.max_coeff_ord())


# -- evaluation --------------------------------------------------------------


def mp_eval(F: MultiPoly, point):
    point = list(point)
    if len(point) != F.nvars:
        raise ArityMismatch(f"point has {len(point)} coordinates, polynomial has {F.nvars} variables")
    Fd = F.field
    kinds = set()
    for x in point:
        if isinstance(x, FieldElement):
            kinds.add("fq")
        elif isinstance(x, Poly):
            kinds.add("poly")
        elif isinstance(x, LaurentPoly):
            kinds.add("laurent")
        else:
            raise RingMismatch(f"cannot evaluate at {type(x).__name__}")
        if x.field != Fd:
            raise FieldMismatch(f"{x.field} vs {Fd}")

    if F.ring == FQ and kinds <= {"fq"}:
        vals = [x.value for x in point]
        acc = 0
        for exps, c in F.terms.items():
            v = c
            for x, k in zip(vals, exps):
                if k:
                    v = Fd.mul(v, Fd.pow(x, k))
            acc = Fd.add(acc, v)
        return FieldElement(Fd, acc)

    if F.ring == FQ and kinds <= {"fq", "poly"}:
        pts = [Poly.constant(Fd, x) if isinstance(x, FieldElement) else x for x in point]
        zero = Poly.zero(Fd)
        coef = lambda c: Poly(Fd, (c,))  # noqa: E731
    else:
        pts = [
            LaurentPoly.monomial(Fd, 0, x) if isinstance(x, FieldElement)
            else LaurentPoly.from_poly(x) if isinstance(x, Poly) else x
            for x in point
        ]
        zero = LaurentPoly.zero(Fd)
        if F.ring == FQ:
            coef = lambda c: LaurentPoly.monomial(Fd, 0, FieldElement(Fd, c))  # noqa: E731
        else:
            coef = lambda c: c  # noqa: E731

    powers: dict = {}
    acc = zero
    for exps, c in F.terms.items():
        v = coef(c)
        for i, k in enumerate(exps):
            if k:
                if (i, k) not in powers:
                    powers[(i, k)] = pts[i] ** k
                v = v * powers[(i, k)]
        acc = acc + v
    return acc


# -- substitution x_j = sum_b y_{j,b} t^b --------------------------------------


def flat_offsets(Bs) -> list[int]:
    offs, acc = [], 0
    for b in Bs:
        offs.append(acc)
        acc += b + 1
    return offs


def flat_index(Bs, j: int, b: int) -> int:
    if not 0 <= b <= Bs[j]:
        raise IndexError(f"coefficient {b} out of range for x_{j + 1}")
    return flat_offsets(Bs)[j] + b


def _mono_mul(a: tuple, b: tuple) -> tuple:
    # sparse monomials: sorted tuples of (var, exp)
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, k in b:
        d[v] = d.get(v, 0) + k
    return tuple(sorted(d.items()))


def _graded_mul(F: FieldSpec, A: dict, B: dict) -> dict:
    out: dict = {}
    for m1, p1 in A.items():
        for m2, p2 in B.items():
            tgt = out.setdefault(m1 + m2, {})
            for mono1, c1 in p1.items():
                for mono2, c2 in p2.items():
                    mono = _mono_mul(mono1, mono2)
                    v = F.add(tgt.get(mono, 0), F.mul(c1, c2))
                    if v:
                        tgt[mono] = v
                    else:
                        tgt.pop(mono, None)
    return {m: p for m, p in out.items() if p}


def expand_substitution(F: MultiPoly, Bs) -> dict[int, MultiPoly]:
    """Collect F(x(y)) by powers of t, where x_j = sum_{b<=Bs[j]} y_{j,b} t^b.

    Returns {m: G_m} over F_q in sum(Bs[j] + 1) variables; y_{j,b} sits at
    flat index ``flat_index(Bs, j, b)``.  Zero coefficients are omitted.
    """
    if not F.terms:
        raise ZeroPolynomial("cannot expand the zero polynomial")
    Bs = [int(b) for b in Bs]
    if len(Bs) != F.nvars:
        raise ArityMismatch(f"{len(Bs)} degree bounds for {F.nvars} variables")
    if any(b < 0 for b in Bs):
        raise ValueError("degree bounds must be nonnegative")
    Fd = F.field
    L = F.to_laurent()
    offs = flat_offsets(Bs)
    n = sum(b + 1 for b in Bs)

    xs = [{b: {((offs[j] + b, 1),): 1} for b in range(Bs[j] + 1)} for j in range(F.nvars)]
    powers: dict = {}

    def power(j, k):
        if (j, k) not in powers:
            powers[(j, k)] = xs[j] if k == 1 else _graded_mul(Fd, power(j, k - 1), xs[j])
        return powers[(j, k)]

    acc: dict[int, dict] = {}
    for exps, c in L.terms.items():
        prod = {0: {(): 1}}
        for j, k in enumerate(exps):
            if k:
                prod = _graded_mul(Fd, prod, power(j, k))
        for e, ce in c.support:
            for m, p in prod.items():
                tgt = acc.setdefault(m + e, {})
                for mono, v in p.items():
                    w = Fd.add(tgt.get(mono, 0), Fd.mul(ce, v))
                    if w:
                        tgt[mono] = w
                    else:
                        tgt.pop(mono, None)

    out = {}
    for m in sorted(acc):
        if not acc[m]:
            continue
        terms = {}
        for mono, v in acc[m].items():
            dense = [0] * n
            for var, k in mono:
                dense[var] = k
            terms[tuple(dense)] = v
        out[m] = MultiPoly(Fd, n, terms, FQ)
    return out


def lift_point(ys, Bs) -> list[Poly]:
    """Assemble x_j = sum_b y_{j,b} t^b from a flat coefficient vector."""
    offs = flat_offsets(Bs)
    out = []
    for j, b in enumerate(Bs):
        cs = ys[offs[j]: offs[j] + b + 1]
        F = cs[0].field if cs else None
        out.append(Poly(F, tuple(c.value for c in cs)))
    return out


def monomials(nvars: int, degree: int):
    """All exponent vectors of the given total degree."""
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)
