"""Finite-support Laurent polynomials standing in for elements of F_q((1/t)).

Magnitudes are never materialised: <a> = gamma^ord(a) is compared through
ord alone, and <<a>> through ``frac_ord``.  A genuine Laurent series may be
truncated below exponent -M - d*B before being handed to the reduction; those
coefficients never reach the equation system, so <F(x)> < eps is unaffected.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import FieldMismatch
from .galois_field import FieldElement, FieldSpec
from .poly import MINUS_INFINITY, Poly


@dataclass(frozen=True)
class LaurentPoly:
    field: FieldSpec
    support: tuple[tuple[int, int], ...]  # (exponent, code), exponents decreasing

    def __post_init__(self):
        terms = {}
        for k, c in self.support:
            if c:
                terms[int(k)] = int(c)
        object.__setattr__(self, "support", tuple(sorted(terms.items(), reverse=True)))

    @classmethod
    def from_dict(cls, field, terms: dict) -> "LaurentPoly":
        return cls(field, tuple((k, field.element(c).value) for k, c in terms.items()))

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def monomial(cls, field, exponent: int, c=1):
        return cls(field, ((exponent, field.element(c).value),))

    @classmethod
    def from_poly(cls, f: Poly) -> "LaurentPoly":
        return cls(f.field, tuple((k, c) for k, c in enumerate(f.coeffs)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.support)

    def coeff(self, k: int) -> FieldElement:
        return FieldElement(self.field, self.as_dict().get(k, 0))

    def __bool__(self):
        return bool(self.support)

    @property
    def ord(self):
        return self.support[0][0] if self.support else MINUS_INFINITY

    @property
    def min_exponent(self):
        return self.support[-1][0] if self.support else MINUS_INFINITY

    def polynomial_part(self) -> Poly:
        d = {k: c for k, c in self.support if k >= 0}
        if not d:
            return Poly.zero(self.field)
        return Poly(self.field, tuple(d.get(k, 0) for k in range(max(d) + 1)))

    def fractional_part(self) -> "LaurentPoly":
        return LaurentPoly(self.field, tuple((k, c) for k, c in self.support if k < 0))

    def is_polynomial(self) -> bool:
        return all(k >= 0 for k, _ in self.support)

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return LaurentPoly.from_poly(other)
        if isinstance(other, (int, FieldElement)):
            return LaurentPoly.monomial(self.field, 0, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._lift(other)
        F = self.field
        d = self.as_dict()
        for k, c in other.support:
            d[k] = F.add(d.get(k, 0), c)
        return LaurentPoly(F, tuple(d.items()))

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return LaurentPoly(F, tuple((k, F.neg(c)) for k, c in self.support))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        F = self.field
        d: dict[int, int] = {}
        for k1, c1 in self.support:
            for k2, c2 in other.support:
                k = k1 + k2
                d[k] = F.add(d.get(k, 0), F.mul(c1, c2))
        return LaurentPoly(F, tuple(d.items()))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out, base = LaurentPoly.monomial(self.field, 0, 1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.field, tuple((e + k, c) for e, c in self.support))

    def scale(self, c: int) -> "LaurentPoly":
        F = self.field
        return LaurentPoly(F, tuple((k, F.mul(c, x)) for k, x in self.support))

    def __repr__(self):
        return format_laurent(self)


def format_laurent(a: LaurentPoly, var: str = "t") -> str:
    if not a.support:
        return "0"
    F = a.field
    parts = []
    for k, c in a.support:
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        cs = F.format(c)
        if F.e > 1 and "+" in cs:
            cs = f"({cs})"
        if not mono:
            parts.append(cs)
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{cs}*{mono}")
    return " + ".join(parts)


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def ord_of(a) -> int | float:
    if isinstance(a, Poly):
        return a.degree
    if isinstance(a, FieldElement):
        return 0 if a.value else MINUS_INFINITY
    return a.ord


def frac_ord(a) -> int | float:
    """Exponent of <<a>>: the largest negative exponent present.

    Subtracting the polynomial part is optimal since any other choice of
    polynomial leaves a term of nonnegative exponent behind.
    """
    if isinstance(a, (Poly, FieldElement)):
        return MINUS_INFINITY
    for k, _ in a.support:
        if k < 0:
            return k
    return MINUS_INFINITY


def vector_ord(xs) -> int | float:
    """ord of a vector, i.e. the exponent of max_n <x_n>."""
    return max((ord_of(x) for x in xs), default=MINUS_INFINITY)
