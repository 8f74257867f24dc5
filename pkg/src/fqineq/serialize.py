"""JSON form files and reports.

Conventions:
  field element   int for prime fields, list of e base-p digits otherwise
                  (constant coordinate first)
  Laurent poly    [[exponent, element], ...], exponents decreasing
  Poly            list of elements, constant term first
  MultiPoly       {"nvars": n, "ring": "laurent" | "fq", "terms": [[exps, coeff], ...]}
                  terms in graded-lex order (highest first)

Canonical text (``dumps``) indents objects by two spaces, keeps lists that
hold no objects on one line, and writes keys in the order used here, so
parse -> dump reproduces canonical files byte for byte.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction

from .errors import ParseError
from .galois_field import FieldSpec, make_field
from .laurent import LaurentPoly
from .multipoly import FQ, LAURENT, MultiPoly
from .planner import ProblemInstance, Variant
from .poly import Poly


def _has_dict(v) -> bool:
    return isinstance(v, dict) or (isinstance(v, list) and any(_has_dict(x) for x in v))


def _dump(v, indent: int) -> str:
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_dump(x, indent + 2)}" for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(v, list) and _has_dict(v):
        items = [inner + _dump(x, indent + 2) for x in v]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(v)


def dumps(obj) -> str:
    return _dump(obj, 0) + "\n"


# -- encoding ----------------------------------------------------------------


def enc_elem(F: FieldSpec, code: int):
    return code if F.e == 1 else list(F.coords(code))


def enc_laurent(a: LaurentPoly):
    return [[k, enc_elem(a.field, c)] for k, c in a.support]


def enc_poly(f: Poly):
    return [enc_elem(f.field, c) for c in f.coeffs]


def enc_multipoly(P: MultiPoly):
    terms = []
    for exps, c in P.sorted_terms():
        terms.append([list(exps), enc_elem(P.field, c) if P.ring == FQ else enc_laurent(c)])
    return {"nvars": P.nvars, "ring": P.ring, "terms": terms}


def enc_ord(v):
    """ord values: integers, "-inf", or exact fractions as "a/b"."""
    if v is None:
        return None
    if isinstance(v, float) and math.isinf(v):
        return "-inf"
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return int(v)


def enc_instance(inst: ProblemInstance):
    F = inst.field
    out = {"field": {"p": F.p, "e": F.e}, "variant": inst.variant.value, "s": inst.s, "i": inst.i}
    if inst.variant is Variant.DIAGONAL:
        out["forms"] = {"d": inst.d, "lambdas": [enc_laurent(lam) for lam in inst.lambdas]}
    else:
        out["forms"] = [enc_multipoly(P.to_laurent()) for P in inst.forms]
    if inst.variant is Variant.DISTMOD:
        out["target"] = {"nu": inst.nu}
    else:
        out["target"] = {"eps_ord": inst.eps_ord}
    return out


# -- decoding ----------------------------------------------------------------


def _need(obj, key, path):
    if not isinstance(obj, dict):
        raise ParseError(path, "expected an object")
    if key not in obj:
        raise ParseError(path, f"missing key {key!r}")
    return obj[key]


def _int(v, path):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(path, f"expected an integer, got {v!r}")
    return v


def _list(v, path):
    if not isinstance(v, list):
        raise ParseError(path, f"expected a list, got {type(v).__name__}")
    return v


def dec_elem(F: FieldSpec, v, path):
    if F.e == 1:
        x = _int(v, path)
        if not 0 <= x < F.p:
            raise ParseError(path, f"{x} is not a residue mod {F.p}")
        return x
    ds = _list(v, path)
    if len(ds) != F.e:
        raise ParseError(path, f"expected {F.e} digits, got {len(ds)}")
    for k, x in enumerate(ds):
        if not 0 <= _int(x, f"{path}[{k}]") < F.p:
            raise ParseError(f"{path}[{k}]", f"{x} is not a digit mod {F.p}")
    return F.from_coords(ds)


def dec_laurent(F: FieldSpec, v, path) -> LaurentPoly:
    terms = {}
    for k, item in enumerate(_list(v, path)):
        p = f"{path}[{k}]"
        pair = _list(item, p)
        if len(pair) != 2:
            raise ParseError(p, "expected [exponent, coefficient]")
        e = _int(pair[0], f"{p}[0]")
        if e in terms:
            raise ParseError(p, f"repeated exponent {e}")
        terms[e] = dec_elem(F, pair[1], f"{p}[1]")
    return LaurentPoly(F, tuple(terms.items()))


def dec_multipoly(F: FieldSpec, v, path, nvars=None) -> MultiPoly:
    n = _int(_need(v, "nvars", path), f"{path}.nvars")
    if nvars is not None and n != nvars:
        raise ParseError(f"{path}.nvars", f"expected {nvars} variables, got {n}")
    ring = _need(v, "ring", path)
    if ring not in (FQ, LAURENT):
        raise ParseError(f"{path}.ring", f"unknown ring {ring!r}")
    terms = {}
    for k, item in enumerate(_list(_need(v, "terms", path), f"{path}.terms")):
        p = f"{path}.terms[{k}]"
        pair = _list(item, p)
        if len(pair) != 2:
            raise ParseError(p, "expected [exponents, coefficient]")
        exps = tuple(_int(x, f"{p}[0][{i}]") for i, x in enumerate(_list(pair[0], f"{p}[0]")))
        if len(exps) != n or any(x < 0 for x in exps):
            raise ParseError(f"{p}[0]", f"expected {n} nonnegative exponents")
        if exps in terms:
            raise ParseError(f"{p}[0]", "repeated monomial")
        c = dec_elem(F, pair[1], f"{p}[1]") if ring == FQ else dec_laurent(F, pair[1], f"{p}[1]")
        terms[exps] = c
    return MultiPoly(F, n, terms, ring)


def dec_instance(obj, path="$") -> ProblemInstance:
    fd = _need(obj, "field", path)
    try:
        F = make_field(_int(_need(fd, "p", f"{path}.field"), f"{path}.field.p"),
                       _int(_need(fd, "e", f"{path}.field"), f"{path}.field.e"))
    except ValueError as exc:
        raise ParseError(f"{path}.field", str(exc)) from None
    variant = _need(obj, "variant", path)
    try:
        variant = Variant(variant)
    except ValueError:
        raise ParseError(f"{path}.variant", f"unknown variant {variant!r}") from None
    s = _int(_need(obj, "s", path), f"{path}.s")
    if s < 1:
        raise ParseError(f"{path}.s", "s must be positive")
    i = _int(obj.get("i", 1), f"{path}.i")
    if i < 1:
        raise ParseError(f"{path}.i", "i must be positive")
    forms = _need(obj, "forms", path)
    target = _need(obj, "target", path)
    kw = {}
    if variant is Variant.DIAGONAL:
        d = _int(_need(forms, "d", f"{path}.forms"), f"{path}.forms.d")
        lams = _list(_need(forms, "lambdas", f"{path}.forms"), f"{path}.forms.lambdas")
        if len(lams) != s:
            raise ParseError(f"{path}.forms.lambdas", f"expected {s} coefficients, got {len(lams)}")
        kw["d"] = d
        kw["lambdas"] = [dec_laurent(F, v, f"{path}.forms.lambdas[{k}]") for k, v in enumerate(lams)]
    else:
        kw["forms"] = [
            dec_multipoly(F, v, f"{path}.forms[{k}]", nvars=s).to_laurent()
            for k, v in enumerate(_list(forms, f"{path}.forms"))
        ]
    if variant is Variant.DISTMOD:
        kw["nu"] = _int(_need(target, "nu", f"{path}.target"), f"{path}.target.nu")
    else:
        kw["eps_ord"] = _int(_need(target, "eps_ord", f"{path}.target"), f"{path}.target.eps_ord")
    return ProblemInstance(F, variant, s, i=i, **kw)


def loads_instance(text: str, source: str = "<input>") -> ProblemInstance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return dec_instance(obj)


def load_instance(path) -> ProblemInstance:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read(), str(path))


def dumps_instance(inst: ProblemInstance) -> str:
    return dumps(enc_instance(inst))
