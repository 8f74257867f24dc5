"""Exact arithmetic in F_q, q = p^e.

Elements are stored as integer codes ``0 <= code < q``: the base-p digits of
the code are the coordinates with respect to 1, u, ..., u^(e-1), lowest index
least significant.  Enumeration order is increasing code, so F_4 lists as
0, 1, u, u+1.  The extension modulus is the monic irreducible whose code
(c_0 + c_1 p + ... + c_{e-1} p^(e-1)) is least.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DivisionByZero, FieldMismatch, NotPrime, SizeExceeded

MAX_ORDER = 1 << 20
MAX_DEGREE = 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^e; raises NotPrime when q is not a prime power."""
    fs = prime_factors(q) if q > 1 else []
    if len(fs) != 1:
        raise NotPrime(f"{q} is not a prime power")
    p, e = fs[0], 0
    while q > 1:
        q //= p
        e += 1
    return p, e


def _digits(code: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        code, r = divmod(code, p)
        out.append(r)
    return out


def _undigits(ds, p: int) -> int:
    code = 0
    for c in reversed(ds):
        code = code * p + c
    return code


def _fp_polymod(a: list[int], m: list[int], p: int) -> list[int]:
    # m monic, coefficients low-first
    a = list(a)
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k] % p
        if c:
            for i in range(dm + 1):
                a[k - dm + i] = (a[k - dm + i] - c * m[i]) % p
    a = [c % p for c in a[:dm]]
    return a


def _fp_irreducible(m: list[int], p: int) -> bool:
    """Trial division over F_p by all monic polynomials of degree <= deg/2."""
    n = len(m) - 1
    for k in range(1, n // 2 + 1):
        for code in range(p**k):
            div = _digits(code, p, k) + [1]
            if not any(_fp_polymod(m, div, p)):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    modulus: tuple[int, ...]  # monic, low-first, length e + 1

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def __repr__(self):
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    # -- element construction -------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        return self.element(value)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            self.check(value)
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coords(value))
        value = int(value)
        if self.e == 1:
            return FieldElement(self, value % self.p)
        if not 0 <= value < self.q:
            raise ValueError(f"code {value} out of range for {self}")
        return FieldElement(self, value)

    def check(self, a: "FieldElement"):
        if a.field != self:
            raise FieldMismatch(f"{a.field} vs {self}")

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of u (equal to 0 in a prime field, where the modulus is t)."""
        return FieldElement(self, self.p if self.e > 1 else 0)

    def coords(self, code: int) -> tuple[int, ...]:
        return tuple(_digits(code, self.p, self.e))

    def from_coords(self, cs) -> int:
        cs = list(cs)
        if len(cs) != self.e:
            raise ValueError(f"expected {self.e} coordinates, got {len(cs)}")
        return _undigits([int(c) % self.p for c in cs], self.p)

    # -- scalar arithmetic on codes -------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p = self.p
        out, scale = 0, 1
        while a:
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if a == 0:
            return 1 if k == 0 else 0
        if self.e == 1:
            return pow(a, k, self.p)
        return int(self._exp[(self._log[a] * k) % (self.q - 1)])

    def _slow_mul(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        da, db = _digits(a, p, e), _digits(b, p, e)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return _undigits(_fp_polymod(prod, list(self.modulus), p), p)

    def _slow_pow(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            k >>= 1
        return r

    @cached_property
    def _tables(self):
        q = self.q
        ords = prime_factors(q - 1)
        for g in range(2, q):
            if all(self._slow_pow(g, (q - 1) // r) != 1 for r in ords):
                break
        else:  # q == 2 is never an extension field, so this is unreachable
            raise AssertionError("no primitive element")
        exp = np.empty(q - 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for k in range(q - 1):
            exp[k] = x
            log[x] = k
            x = self._slow_mul(x, g)
        return exp, log

    @property
    def _exp(self):
        return self._tables[0]

    @property
    def _log(self):
        return self._tables[1]

    # -- vectorised arithmetic on numpy arrays of codes -----------------------

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p, out, scale = self.p, 0, 1
        for _ in range(self.e):
            out = out + ((a // scale + b // scale) % p) * scale
            scale *= p
        return out

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p, out, scale = self.p, 0, 1
        for _ in range(self.e):
            out = out + ((-(a // scale)) % p) * scale
            scale *= p
        return out

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a * b) % self.p
        exp, log = self._exp, self._log
        r = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, r)

    def vpow(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return np.ones_like(a)
        if self.e == 1:
            out = np.ones_like(a)
            base = a.copy()
            while k:
                if k & 1:
                    out = (out * base) % self.p
                base = (base * base) % self.p
                k >>= 1
            return out
        exp, log = self._exp, self._log
        return np.where(a == 0, 0, exp[(log[a] * k) % (self.q - 1)])

    def vsum_groups(self, values, groups, ngroups: int):
        """Field sum of ``values`` bucketed by integer ``groups``."""
        values = np.asarray(values, dtype=np.int64)
        p, out, scale = self.p, np.zeros(ngroups, dtype=np.int64), 1
        for _ in range(self.e):
            digit = (values // scale) % p
            s = np.bincount(groups, weights=digit, minlength=ngroups)
            out += (np.rint(s).astype(np.int64) % p) * scale
            scale *= p
        return out

    # -- display --------------------------------------------------------------

    def format(self, code: int) -> str:
        if self.e == 1:
            return str(code)
        parts = []
        for k, c in reversed(list(enumerate(self.coords(code)))):
            if not c:
                continue
            mono = "" if k == 0 else ("u" if k == 1 else f"u^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return "+".join(parts) if parts else "0"


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    @property
    def residue(self) -> tuple[int, ...]:
        return self.field.coords(self.value)

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            self.field.check(b)
            return b.value
        if isinstance(b, int):
            return b % self.field.p  # the integer b means b * 1
        return NotImplemented

    def __add__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return v
        return FieldElement(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return v
        return FieldElement(self.field, self.field.sub(self.value, v))

    def __rsub__(self, b):
        return (-self) + b

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return v
        return FieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return v
        return FieldElement(self.field, self.field.div(self.value, v))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return self.field.format(self.value)


def make_field(p: int, e: int = 1) -> FieldSpec:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not 1 <= e <= MAX_DEGREE:
        raise SizeExceeded(f"extension degree {e} outside [1, {MAX_DEGREE}]")
    if p**e > MAX_ORDER:
        raise SizeExceeded(f"{p}^{e} exceeds {MAX_ORDER}")
    return _make_field(p, e)


_FIELDS: dict[tuple[int, int], FieldSpec] = {}


def _make_field(p: int, e: int) -> FieldSpec:
    key = (p, e)
    if key not in _FIELDS:
        for code in range(p**e):
            m = _digits(code, p, e) + [1]
            if _fp_irreducible(m, p):
                _FIELDS[key] = FieldSpec(p, e, tuple(m))
                break
    return _FIELDS[key]


def field_of_order(q: int) -> FieldSpec:
    p, e = prime_power(q)
    return make_field(p, e)


def field_arith(a: FieldElement, b, op: str) -> FieldElement:
    if op == "pow":
        if not isinstance(b, int) or b < 0:
            raise ValueError("pow needs a non-negative integer exponent")
        return a**b
    if not isinstance(b, FieldElement):
        raise TypeError("second operand must be a FieldElement")
    a.field.check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def enumerate_elements(field: FieldSpec) -> list[FieldElement]:
    return [FieldElement(field, v) for v in range(field.q)]
