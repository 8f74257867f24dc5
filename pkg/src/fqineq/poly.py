"""Dense univariate polynomials over F_q and monic irreducible enumeration."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ConstantPolynomial, DivisionByZero, FieldMismatch, SizeExceeded
from .galois_field import FieldElement, FieldSpec

MINUS_INFINITY = float("-inf")

MAX_ENUMERATION = 1 << 24


def _strip(cs) -> tuple[int, ...]:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Poly:
    """Polynomial in t; ``coeffs[k]`` is the code of the t^k coefficient."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def constant(cls, field, c):
        return cls(field, (field.element(c).value,))

    @classmethod
    def t(cls, field, k: int = 1):
        return cls(field, (0,) * k + (1,))

    @classmethod
    def from_elements(cls, field, elements):
        return cls(field, tuple(field.element(c).value for c in elements))

    @classmethod
    def monic_from_code(cls, field, degree: int, code: int):
        """The monic polynomial of the given degree whose lower coefficients
        are the base-q digits of ``code`` (constant term least significant)."""
        q, cs = field.q, []
        for _ in range(degree):
            code, r = divmod(code, q)
            cs.append(r)
        return cls(field, tuple(cs) + (1,))

    # -- basic properties -----------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INFINITY

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def coeff(self, k: int) -> FieldElement:
        return FieldElement(self.field, self.coeffs[k] if 0 <= k < len(self.coeffs) else 0)

    @property
    def lead(self) -> int:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _check(self, other: "Poly"):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _lift(self, other):
        if isinstance(other, (int, FieldElement)):
            return Poly.constant(self.field, other)
        self._check(other)
        return other

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = F.add(out[k], c)
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out, base = Poly.constant(self.field, 1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    def shift(self, k: int) -> "Poly":
        return Poly(self.field, (0,) * k + self.coeffs) if self.coeffs else self

    def divmod(self, other: "Poly"):
        self._check(other)
        if not other.coeffs:
            raise DivisionByZero("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lead = F.inv(other.coeffs[-1])
        if len(rem) - 1 < db:
            return Poly(F, ()), self
        quot = [0] * (len(rem) - db)
        b = other.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                f = F.mul(c, inv_lead)
                quot[k - db] = f
                for i, y in enumerate(b):
                    if y:
                        rem[k - db + i] = F.sub(rem[k - db + i], F.mul(f, y))
        return Poly(F, quot), Poly(F, rem[:db])

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def divides(self, other: "Poly") -> bool:
        return not (other % self).coeffs

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def gcd(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self, other
        while b.coeffs:
            a, b = b, a % b
        return a.monic()

    def __call__(self, x):
        """Horner evaluation at a field element (or anything supporting + and *)."""
        if isinstance(x, FieldElement):
            F = self.field
            F.check(x)
            acc = 0
            for c in reversed(self.coeffs):
                acc = F.add(F.mul(acc, x.value), c)
            return FieldElement(F, acc)
        acc = Poly.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- display --------------------------------------------------------------

    def __repr__(self):
        return format_poly(self)


def format_poly(f: Poly, var: str = "t") -> str:
    F = f.field
    if not f.coeffs:
        return "0"
    parts = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if not c:
            continue
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


def poly_arith(f: Poly, g: Poly, op: str):
    f._check(g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "divmod":
        return f.divmod(g)
    if op == "gcd":
        return f.gcd(g)
    raise ValueError(f"unknown op {op!r}")


def find_factor(f: Poly):
    """A monic proper factor of f found by trial division, or None."""
    if not isinstance(f.degree, int) or f.degree < 1:
        raise ConstantPolynomial("irreducibility is undefined for constants")
    F, n = f.field, f.degree
    for k in range(1, n // 2 + 1):
        for code in range(F.q**k):
            g = Poly.monic_from_code(F, k, code)
            if g.divides(f):
                return g
    return None


def is_irreducible(f: Poly) -> bool:
    return find_factor(f) is None


def _check_enum_size(field: FieldSpec, degree: int):
    if degree < 1:
        raise ValueError("degree must be positive")
    if field.q**degree > MAX_ENUMERATION:
        raise SizeExceeded(f"q^degree = {field.q}^{degree} exceeds {MAX_ENUMERATION}")


@lru_cache(maxsize=None)
def _irreducibles(field: FieldSpec, degree: int) -> tuple[Poly, ...]:
    # Sieve-free trial division, but only by irreducibles of lower degree;
    # this is the same predicate as is_irreducible and much cheaper.
    divisors = [g for k in range(1, degree // 2 + 1) for g in _irreducibles(field, k)]
    out = []
    for code in range(field.q**degree):
        f = Poly.monic_from_code(field, degree, code)
        if not any(g.divides(f) for g in divisors):
            out.append(f)
    return tuple(out)


def enumerate_monic_irreducibles(field: FieldSpec, degree: int) -> list[Poly]:
    _check_enum_size(field, degree)
    return list(_irreducibles(field, degree))


def mobius(n: int) -> int:
    out, f = 1, 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            out = -out
        f += 1
    return -out if n > 1 else out


def count_monic_irreducibles(field: FieldSpec, degree: int) -> int:
    if degree < 1:
        raise ValueError("degree must be positive")
    q = field.q
    total = sum(mobius(degree // d) * q**d for d in range(1, degree + 1) if degree % d == 0)
    return total // degree


def minimal_degree_with(field: FieldSpec, count: int) -> int:
    """Least degree carrying at least ``count`` monic irreducibles."""
    n = 1
    while count_monic_irreducibles(field, n) < count:
        n += 1
    return n
