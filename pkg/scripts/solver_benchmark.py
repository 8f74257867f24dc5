"""Time the three search strategies on random Chevalley systems of growing size.

    python scripts/solver_benchmark.py --q 2 --sizes 8 12 16 18
"""
import argparse
import random
import time

from fqineq import make_field
from fqineq.sampling import random_chevalley_system
from fqineq.solver import Mode, solve_nontrivial, verify_zero


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 12, 16])
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--workers", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    F = make_field(args.q)
    rng = random.Random(args.seed)
    print(f"{'n':>3} {'mode':>13} {'mean evals':>11} {'mean sec':>9}")
    for n in args.sizes:
        systems = []
        for _ in range(args.trials):
            degs = [2] * ((n - 1) // 2)
            systems.append(random_chevalley_system(rng, F, n, degs, max_terms=3 * n))
        for mode in Mode:
            evals, secs = 0, 0.0
            for sys_ in systems:
                t0 = time.perf_counter()
                rep = solve_nontrivial(sys_, n, mode=mode, workers=args.workers, budget=1 << 26)
                secs += time.perf_counter() - t0
                evals += rep.evaluations
                assert rep.found and verify_zero(sys_, rep.y)
            print(f"{n:>3} {mode.value:>13} {evals / len(systems):>11.0f} {secs / len(systems):>9.4f}")


if __name__ == "__main__":
    main()
