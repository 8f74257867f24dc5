"""Build a hard instance, sample its kernel and probe for small zeros.

    python scripts/lowerbound_demo.py --q 2 --d 2 --s 5 --probe 2
"""
import argparse
import random
import time

from fqineq import make_field
from fqineq.laurent import vector_ord
from fqineq.lowerbound import construct_instance, divides_all, exhaustive_min_search, sample_kernel_solution
from fqineq.poly import Poly


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--r", type=int, default=1)
    ap.add_argument("--s", type=int, default=5)
    ap.add_argument("--h-mult", type=int, default=1)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--probe", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    F = make_field(args.q)
    t0 = time.perf_counter()
    inst = construct_instance(F, args.d, args.r, args.s, args.h_mult)
    print(f"built in {time.perf_counter() - t0:.2f}s: Delta={inst.Delta} delta={inst.delta} "
          f"H_ord={inst.H_ord} lower_bound_ord={inst.lower_bound_ord}")
    for P in inst.composed_forms:
        print(f"  form: {len(P.terms)} terms, max coefficient ord "
              f"{max(c.ord for c in P.terms.values())}")

    rng = random.Random(args.seed)
    k = inst.s - inst.Delta
    ords = []
    for _ in range(args.samples):
        w = [Poly(F, tuple(rng.randrange(F.q) for _ in range(rng.randint(1, 5)))) for _ in range(k)]
        if not any(w):
            continue
        x = sample_kernel_solution(inst, w)
        assert all(not P(x) for P in inst.composed_forms) and divides_all(inst, x)
        ords.append(vector_ord(x))
    print(f"kernel samples: {len(ords)}, min ord {min(ords)}, max ord {max(ords)}")

    t0 = time.perf_counter()
    res = exhaustive_min_search(inst, args.probe)
    print(f"probe up to ord {args.probe}: {res!r}, {res.evaluations} evaluations, "
          f"{time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
