"""Norm forms of F_{q^d}/F_q: anisotropic forms of degree d in d variables."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import SizeExceeded
from .galois_field import FieldElement, FieldSpec
from .multipoly import FQ, MultiPoly
from .poly import Poly, enumerate_monic_irreducibles, format_poly
from .solver import count_zeros

MAX_NORM_DEGREE = 4


@dataclass(frozen=True)
class ExtensionRing:
    """F_q[u]/(g) for a monic irreducible g: a model of F_{q^d} over F_q.

    Elements are Poly of degree < d; coordinates are their coefficients in
    the basis 1, u, ..., u^(d-1).
    """

    base: FieldSpec
    modulus: Poly

    @property
    def degree(self) -> int:
        return self.modulus.degree

    @property
    def order(self) -> int:
        return self.base.q ** self.degree

    def from_coords(self, cs) -> Poly:
        return Poly(self.base, tuple(int(c) for c in cs))

    def coords(self, a: Poly) -> tuple[int, ...]:
        return tuple(a.coeffs[k] if k < len(a.coeffs) else 0 for k in range(self.degree))

    def mul(self, a: Poly, b: Poly) -> Poly:
        return (a * b) % self.modulus

    def pow(self, a: Poly, k: int) -> Poly:
        out, base = Poly.constant(self.base, 1), a % self.modulus
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def elements(self):
        q, d = self.base.q, self.degree
        for code in range(q**d):
            cs = []
            for _ in range(d):
                code, r = divmod(code, q)
                cs.append(r)
            yield self.from_coords(cs)

    def norm(self, a: Poly) -> FieldElement:
        """alpha^((q^d - 1)/(q - 1)), the product of the Frobenius conjugates."""
        q = self.base.q
        v = self.pow(a, (q**self.degree - 1) // (q - 1))
        if v.degree not in (0, float("-inf")):
            raise ArithmeticError(f"norm {v} left the base field; is {self.modulus} irreducible?")
        return v.coeff(0)


@dataclass(frozen=True)
class NormFormBundle:
    psi: MultiPoly
    ext_field: ExtensionRing
    basis_note: str


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for k in range(n):
        minor = [r[:k] + r[k + 1:] for r in rows[1:]]
        term = rows[0][k] * _det(minor)
        if k % 2:
            term = -term
        total = term if total is None else total + term
    return total


def build_norm_form(field: FieldSpec, d: int) -> NormFormBundle:
    if not 1 <= d <= MAX_NORM_DEGREE:
        raise SizeExceeded(f"norm form degree must lie in 1..{MAX_NORM_DEGREE}, got {d}")
    if field.q**d > 1 << 20:
        raise SizeExceeded(f"q^d = {field.q}^{d} exceeds 2^20")
    g = enumerate_monic_irreducibles(field, d)[0]
    ext = ExtensionRing(field, g)
    # column k of the multiplication matrix holds the coordinates of alpha * u^k,
    # with alpha = x1 + x2 u + ... + xd u^(d-1)
    xs = [MultiPoly.variable(field, d, i, FQ) for i in range(d)]
    zero = MultiPoly(field, d, {}, FQ)
    cols = []
    for k in range(d):
        col = [zero] * d
        for i in range(d):
            prod = ext.coords(ext.mul(Poly.t(field, i), Poly.t(field, k)))
            for r, c in enumerate(prod):
                if c:
                    col[r] = col[r] + xs[i] * MultiPoly.constant(field, d, c, FQ)
        cols.append(col)
    rows = [[cols[k][r] for k in range(d)] for r in range(d)]
    psi = _det(rows)
    # u already names the generator of a non-prime base field
    w = "w" if field.e > 1 else "u"
    note = f"basis 1, {w}, ..., {w}^{d - 1} with {w} a root of {format_poly(g, 'T')}" if d > 1 else "basis 1"
    return NormFormBundle(psi, ext, note)


def check_anisotropic(psi: MultiPoly) -> bool:
    """True iff psi has no zero in F_q^n besides the origin."""
    n, q = psi.nvars, psi.field.q
    if q**n > 1 << 24:
        raise SizeExceeded(f"q^n = {q}^{n} exceeds 2^24")
    return count_zeros([psi], n, budget=1 << 24, field=psi.field) == 1
