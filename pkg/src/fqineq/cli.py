"""Command line entry point.

Exit codes: 0 verified, 1 unreadable input, 2 budget exhausted,
3 hypothesis of the reduction not met, 4 no verified witness.
"""
from __future__ import annotations

import argparse
import dataclasses
import random
import sys

from .errors import (BudgetExceeded, HypothesisViolated, NonChevalleyForm, ParseError, SizeExceeded,
                     ZeroCoefficient)
from .galois_field import field_of_order
from .laurent import vector_ord
from .lowerbound import (SearchStatus, construct_instance, divides_all, exhaustive_min_search, ord_space_bound,
                         sample_kernel_solution)
from .normic import build_norm_form, check_anisotropic
from .planner import Variant, run_pipeline
from .poly import Poly, count_monic_irreducibles, enumerate_monic_irreducibles
from .serialize import dumps, dumps_instance, enc_multipoly, enc_ord, enc_poly, load_instance
from .solver import DEFAULT_BUDGET, Mode, Outcome

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_HYPOTHESIS, EXIT_UNVERIFIED = 0, 1, 2, 3, 4


def _emit(obj, out):
    text = dumps(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(msg, code):
    print(f"fqineq: {msg}", file=sys.stderr)
    return code


def _mode(args):
    if getattr(args, "strategy", "lex") == "propagate":
        return Mode.PROPAGATE
    return Mode.PARALLEL if args.workers > 1 else Mode.DETERMINISTIC


def _pipeline(args, variant: Variant):
    try:
        inst = load_instance(args.input)
    except ParseError as exc:
        return _fail(str(exc), EXIT_PARSE)
    except OSError as exc:
        return _fail(f"cannot read {args.input}: {exc}", EXIT_PARSE)
    if inst.variant is not variant:
        return _fail(f"{args.input}: expected a {variant.value} instance, got {inst.variant.value}", EXIT_PARSE)
    if variant is Variant.DISTMOD and args.nu is not None:
        inst = dataclasses.replace(inst, nu=args.nu)
    if variant is not Variant.DISTMOD and args.eps_ord is not None:
        inst = dataclasses.replace(inst, eps_ord=args.eps_ord)
    try:
        res = run_pipeline(inst, refined=getattr(args, "refined", False), budget=args.budget,
                           mode=_mode(args), workers=args.workers)
    except (HypothesisViolated, NonChevalleyForm, ZeroCoefficient) as exc:
        return _fail(f"{type(exc).__name__}: {exc}", EXIT_HYPOTHESIS)

    plan, rep, cert = res.plan, res.report, res.certificate
    summary = {
        "field": repr(inst.field),
        "variant": inst.variant.value,
        "s": inst.s,
        "i": inst.i,
        "degrees": [P.total_degree for P in inst.system_forms()],
    }
    if variant is Variant.DISTMOD:
        summary["nu"] = inst.nu
    else:
        summary["eps_ord"] = inst.eps_ord
    plan_out = {"B": plan.B, "Bs": list(plan.Bs), "M": plan.M, "h": plan.h, "nvars": plan.nvars,
                "equations": len(res.equations), "m_ranges": [list(r) for r in plan.ranges],
                "refined": plan.refined, "bound_applies": plan.bound_applies}
    report = {"instance": summary, "plan": plan_out,
              "solver": {"outcome": rep.outcome.value, "evaluations": rep.evaluations, "mode": rep.mode.value}}
    if variant is Variant.DISTMOD:
        target = plan.extras["target"]
        report["guarantee"] = {"frac_ord_at_most": -plan.M, "target_ord": plan.extras["target_ord"],
                               "target": enc_ord(target), "strictly_below_target": -plan.M < target}
    if cert is not None:
        report["certificate"] = {
            "x": [repr(p) for p in cert.x],
            "x_coeffs": [enc_poly(p) for p in cert.x],
            "achieved": [enc_ord(a) for a in cert.achieved],
            "measured": enc_ord(cert.measured),
            "bound_ord": enc_ord(cert.bound_ord),
            "bound_applies": cert.bound_applies,
            "bound_holds": cert.bound_holds,
            "verified": cert.verified,
        }
    _emit(report, args.out)
    if rep.outcome is Outcome.BUDGET_EXCEEDED:
        return _fail("solver budget exhausted", EXIT_BUDGET)
    if cert is None or not cert.verified:
        return _fail("no verified witness", EXIT_UNVERIFIED)
    return EXIT_OK


def cmd_solve(args):
    return _pipeline(args, Variant.GENERAL)


def cmd_diagonal(args):
    return _pipeline(args, Variant.DIAGONAL)


def cmd_distmod(args):
    return _pipeline(args, Variant.DISTMOD)


def _random_w(rng, F, k, max_deg=3):
    while True:
        w = [Poly(F, tuple(rng.randrange(F.q) for _ in range(rng.randint(0, max_deg + 1)))) for _ in range(k)]
        if any(w):
            return w


def cmd_lowerbound(args):
    try:
        F = field_of_order(args.q)
        inst = construct_instance(F, args.d, args.r, args.s, args.h_mult)
    except HypothesisViolated as exc:
        return _fail(f"HypothesisViolated: {exc}", EXIT_HYPOTHESIS)
    except (SizeExceeded, ValueError) as exc:
        return _fail(str(exc), EXIT_PARSE)
    if args.instance_out:
        with open(args.instance_out, "w", encoding="utf-8") as fh:
            fh.write(dumps_instance(inst.as_problem()))
    rng = random.Random(args.seed)
    k = inst.s - inst.Delta
    ok_zero = ok_div = ok_ord = True
    min_seen = None
    for _ in range(args.samples):
        x = sample_kernel_solution(inst, _random_w(rng, F, k))
        ok_zero &= all(not P(x) for P in inst.composed_forms)
        ok_div &= divides_all(inst, x)
        o = vector_ord(x)
        ok_ord &= o >= inst.lower_bound_ord
        min_seen = o if min_seen is None else min(min_seen, o)
    report = {
        "instance": {"field": repr(F), "d": inst.d, "D": inst.D, "r": inst.r, "s": inst.s, "h_mult": inst.h_mult,
                     "Delta": inst.Delta, "delta": inst.delta},
        "H_ord": inst.H_ord,
        "lower_bound_ord": inst.lower_bound_ord,
        "ord_space_bound": enc_ord(ord_space_bound(inst)),
        "forms": [repr(P) for P in inst.composed_forms],
        "samples": {"count": args.samples, "seed": args.seed, "forms_vanish": ok_zero,
                    "divisible": ok_div, "ord_at_least_bound": ok_ord, "min_ord_seen": min_seen},
    }
    code = EXIT_OK if ok_zero and ok_div and ok_ord else EXIT_UNVERIFIED
    if args.probe is not None:
        res = exhaustive_min_search(inst, args.probe, budget=args.budget, workers=args.workers)
        report["probe"] = {"status": res.status.value, "max_ord": res.max_ord, "min_ord": res.min_ord,
                           "evaluations": res.evaluations,
                           "x": [repr(p) for p in res.x] if res.x else None}
        if res.status is SearchStatus.BUDGET_EXCEEDED:
            _emit(report, args.out)
            return _fail("probe budget exhausted", EXIT_BUDGET)
        if res.status is SearchStatus.FOUND and res.min_ord < inst.lower_bound_ord:
            code = EXIT_UNVERIFIED
    _emit(report, args.out)
    return code


def cmd_normic(args):
    try:
        F = field_of_order(args.q)
        b = build_norm_form(F, args.d)
    except (SizeExceeded, ValueError) as exc:
        return _fail(str(exc), EXIT_PARSE)
    _emit({"field": repr(F), "d": args.d, "psi": repr(b.psi), "psi_terms": enc_multipoly(b.psi),
           "basis": b.basis_note, "anisotropic": check_anisotropic(b.psi)}, args.out)
    return EXIT_OK


def cmd_irreducibles(args):
    try:
        F = field_of_order(args.q)
        count = count_monic_irreducibles(F, args.degree)
        polys = None if args.count_only else [repr(f) for f in enumerate_monic_irreducibles(F, args.degree)]
    except (SizeExceeded, ValueError) as exc:
        return _fail(str(exc), EXIT_PARSE)
    out = {"field": repr(F), "degree": args.degree, "count": count}
    if polys is not None:
        out["polynomials"] = polys
    _emit(out, args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; keep 2 free for budget exhaustion
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser():
    ap = _Parser(prog="fqineq", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max solver evaluations")
        p.add_argument("--workers", type=int, default=1, help="worker processes (1 = deterministic)")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=0)

    for name, fn, help_ in [("solve", cmd_solve, "small values of forms"),
                            ("diagonal", cmd_diagonal, "small values of a diagonal form"),
                            ("distmod", cmd_distmod, "small fractional parts")]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--input", required=True)
        if name == "distmod":
            p.add_argument("--nu", type=int, help="override the height exponent")
        else:
            p.add_argument("--eps-ord", type=int, help="override the target exponent")
        if name == "solve":
            p.add_argument("--refined", action="store_true", help="use the per-degree variable count")
        p.add_argument("--strategy", choices=["lex", "propagate"], default="lex",
                       help="lex: least witness by enumeration; propagate: pruned depth-first search")
        common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("lowerbound", help="build a hard instance and check its kernel")
    for flag in ("--q", "--d", "--r", "--s"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--h-mult", type=int, default=1)
    p.add_argument("--probe", type=int, help="exhaustively search solutions up to this ord")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--instance-out", help="write the instance as a form file")
    common(p)
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("normic", help="print the norm form")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_normic)

    p = sub.add_parser("irreducibles", help="list or count monic irreducibles")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_irreducibles)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        return _fail(str(exc), EXIT_BUDGET)


if __name__ == "__main__":
    sys.exit(main())
