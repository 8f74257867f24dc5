"""Sweep eps_ord over random quadratic forms and tabulate the chosen B against the achieved ord x.

    python scripts/sweep_small_values.py --q 3 --count 40 --seed 1
"""
import argparse
import random
import statistics
import time
from collections import defaultdict

from fqineq import ProblemInstance, Variant, make_field, run_pipeline
from fqineq.laurent import vector_ord
from fqineq.sampling import random_form


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=2, choices=[2, 3])
    ap.add_argument("--s", type=int, default=5)
    ap.add_argument("--count", type=int, default=30)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--eps", type=int, nargs="+", default=[0, -1, -2, -3])
    args = ap.parse_args()

    rng = random.Random(args.seed)
    F = make_field(args.q)
    rows = defaultdict(list)
    for _ in range(args.count):
        f = random_form(rng, F, args.s, 2)
        for eps in args.eps:
            t0 = time.perf_counter()
            res = run_pipeline(ProblemInstance(F, Variant.GENERAL, args.s, (f,), eps_ord=eps),
                               mode="propagate", budget=1 << 22)
            dt = time.perf_counter() - t0
            if res.verified:
                rows[eps].append((res.plan.B, vector_ord(res.x), res.report.evaluations, dt))

    print(f"GF({args.q}), s={args.s}, {args.count} forms")
    print(f"{'eps':>4} {'solved':>6} {'mean B':>7} {'mean ord x':>10} {'slack':>6} {'nodes':>8} {'sec':>6}")
    for eps in args.eps:
        r = rows[eps]
        if not r:
            print(f"{eps:>4} {0:>6}")
            continue
        Bs, ords, nodes, secs = zip(*r)
        slack = statistics.mean(b - o for b, o in zip(Bs, ords))
        print(f"{eps:>4} {len(r):>6} {statistics.mean(Bs):>7.2f} {statistics.mean(ords):>10.2f} "
              f"{slack:>6.2f} {statistics.mean(nodes):>8.0f} {sum(secs):>6.2f}")


if __name__ == "__main__":
    main()
