"""Nontrivial common zeros of polynomial systems over F_q.

Three search strategies share one contract (a FOUND witness is nonzero and
kills every polynomial; NOT_FOUND means F_q^n minus the origin is exhausted):

``deterministic``
    Lexicographic enumeration, first coordinate most significant.  Leading
    coordinates are fixed one at a time with the system partially evaluated,
    so subtrees where some polynomial collapses to a nonzero constant are
    skipped wholesale; the trailing block is evaluated with numpy.  The
    witness is the lexicographically least zero and ``evaluations`` is its
    lexicographic rank, exactly as plain point-by-point enumeration reports.
``parallel``
    The same enumeration split into blocks by leading coordinates and farmed
    out to worker processes; the first block to report a zero wins.
``propagate``
    Depth-first search over a caller-supplied variable order.  At every node
    the polynomials that have become affine in the unassigned variables are
    row reduced; inconsistent nodes are cut and uniquely determined variables
    are assigned at once.  ``evaluations`` counts search nodes.  With the
    identity order the witness is again the lexicographically least zero.
"""
from __future__ import annotations

import enum
import itertools
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass

import numpy as np

from .errors import ArityMismatch, BudgetExceeded, FieldMismatch
from .galois_field import FieldElement, FieldSpec
from .multipoly import FQ

DEFAULT_BUDGET = 1 << 24
BLOCK = 1 << 14


class Outcome(str, enum.Enum):
    FOUND = "FOUND"
    NOT_FOUND = "NOT_FOUND"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


class Mode(str, enum.Enum):
    DETERMINISTIC = "deterministic"
    PARALLEL = "parallel"
    PROPAGATE = "propagate"


@dataclass(frozen=True)
class SolveReport:
    outcome: Outcome
    y: tuple[FieldElement, ...] | None
    evaluations: int
    mode: Mode

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND


class _System:
    """Equations as {sparse monomial: code}, sparse monomial = ((var, exp), ...)."""

    def __init__(self, field: FieldSpec, n: int, polys):
        self.field = field
        self.n = n
        self.q = field.q
        eqs = []
        for k, P in enumerate(polys):
            if P.nvars != n:
                raise ArityMismatch(f"equation {k} has {P.nvars} variables, expected {n}")
            if P.ring != FQ:
                raise FieldMismatch(f"equation {k} does not have F_q coefficients")
            if P.field != field:
                raise FieldMismatch(f"equation {k} lives over {P.field}, not {field}")
            if P.terms:
                eqs.append({tuple((i, x) for i, x in enumerate(e) if x): c for e, c in P.terms.items()})
        # short equations first: cheaper rejections
        self.eqs = sorted(eqs, key=len)


def _substitute(F: FieldSpec, eq: dict, var: int, a: int) -> dict:
    out: dict = {}
    for mono, c in eq.items():
        if mono and mono[0][0] == var:
            if a == 0:
                continue
            c = F.mul(c, F.pow(a, mono[0][1]))
            mono = mono[1:]
        v = F.add(out.get(mono, 0), c)
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


class _Stop(Exception):
    pass


class _LexSearch:
    """Lexicographic scan of the box ``fixed`` x F_q^(n - len(fixed))."""

    def __init__(self, sys: _System, budget: int, count_only: bool = False):
        self.sys = sys
        self.budget = budget
        self.count_only = count_only
        self.tested = 0
        self.count = 0
        n, q = sys.n, sys.q
        self.k = 0
        while self.k < n and q ** (self.k + 1) <= BLOCK:
            self.k += 1
        self.grid = self._grid(self.k) if self.k else None

    def _grid(self, k):
        q = self.sys.q
        idx = np.arange(q**k, dtype=np.int64)
        cols = []
        for j in range(k):
            cols.append((idx // q ** (k - 1 - j)) % q)
        return np.stack(cols, axis=1)

    def run(self, fixed=()):
        sys = self.sys
        F = sys.field
        eqs = sys.eqs
        for var, a in enumerate(fixed):
            eqs = [_substitute(F, e, var, a) for e in eqs]
        self.witness = None
        try:
            self._dfs(list(fixed), eqs, all(a == 0 for a in fixed))
        except _Stop:
            pass
        return self.witness

    # points of a subtree, minus the origin when it lies inside
    def _size(self, depth, zero_prefix):
        return self.sys.q ** (self.sys.n - depth) - (1 if zero_prefix else 0)

    def _charge(self, npoints):
        self.tested += npoints
        if self.tested > self.budget:
            self.tested = self.budget
            self.exceeded = True
            raise _Stop

    def _dfs(self, prefix, eqs, zero_prefix):
        sys = self.sys
        F, n, q = sys.field, sys.n, sys.q
        depth = len(prefix)
        if any(not mono for e in eqs if len(e) == 1 for mono in e):
            # some equation is a nonzero constant: nothing below is a zero
            if not self.count_only:
                self._charge(self._size(depth, zero_prefix))
            return
        if all(not e for e in eqs):
            self._all_zero(prefix, zero_prefix)
            return
        if depth == n - self.k:
            self._block(prefix, eqs, zero_prefix)
            return
        for a in range(q):
            self._dfs(prefix + [a], [_substitute(F, e, depth, a) for e in eqs], zero_prefix and a == 0)

    def _all_zero(self, prefix, zero_prefix):
        n = self.sys.n
        size = self._size(len(prefix), zero_prefix)
        if self.count_only:
            self.count += size + (1 if zero_prefix else 0)
            return
        if size == 0:
            return
        rest = [0] * (n - len(prefix))
        if zero_prefix:
            rest[-1] = 1
        self._charge(1)
        self.witness = prefix + rest
        raise _Stop

    def _block(self, prefix, eqs, zero_prefix):
        F = self.sys.field
        off = len(prefix)
        grid = self.grid
        alive = np.arange(grid.shape[0]) if grid is not None else np.arange(1)
        if zero_prefix and not self.count_only:
            alive = alive[1:]
        for e in eqs:
            if alive.size == 0:
                break
            vals = np.zeros(alive.size, dtype=np.int64)
            for mono, c in e.items():
                v = np.full(alive.size, c, dtype=np.int64)
                for var, x in mono:
                    v = F.vmul(v, F.vpow(grid[alive, var - off], x))
                vals = F.vadd(vals, v)
            alive = alive[vals == 0]
        if self.count_only:
            self.count += alive.size
            return
        npoints = (grid.shape[0] if grid is not None else 1) - (1 if zero_prefix else 0)
        if alive.size:
            i = int(alive[0])
            rank = i if zero_prefix else i + 1
            self._charge(rank)
            self.witness = prefix + ([int(x) for x in grid[i]] if grid is not None else [])
            raise _Stop
        self._charge(npoints)


def _lex_solve(sys: _System, budget: int, fixed=()):
    s = _LexSearch(sys, budget)
    s.exceeded = False
    w = s.run(fixed)
    if w is not None:
        return Outcome.FOUND, w, s.tested
    if s.exceeded:
        return Outcome.BUDGET_EXCEEDED, None, s.tested
    return Outcome.NOT_FOUND, None, s.tested


def _chunk_task(sys, budget, fixed):
    return _lex_solve(sys, budget, fixed)


class _Propagator:
    def __init__(self, sys: _System, order, budget: int):
        F, n = sys.field, sys.n
        self.F, self.n, self.q = F, n, sys.q
        self.budget = budget
        self.nodes = 0
        order = list(range(n)) if order is None else [int(v) for v in order]
        if sorted(order) != list(range(n)):
            raise ValueError("order must be a permutation of the variables")
        self.order = order
        self.rank = np.empty(n, dtype=np.int64)
        self.rank[order] = np.arange(n)
        self.R = len(sys.eqs)
        D = max((sum(x for _, x in mono) for e in sys.eqs for mono in e), default=0)
        self.D = max(D, 1)
        coef, eq_id, slots = [], [], []
        for r, e in enumerate(sys.eqs):
            for mono, c in e.items():
                vs = [v for v, x in mono for _ in range(x)]
                slots.append(vs + [n] * (self.D - len(vs)))
                coef.append(c)
                eq_id.append(r)
        self.t_coef = np.array(coef, dtype=np.int64)
        self.t_eq = np.array(eq_id, dtype=np.int64)
        self.t_vars = np.array(slots, dtype=np.int64).reshape(len(coef), self.D)

    def _evaluate(self, val, assigned):
        F, n, R = self.F, self.n, self.R
        U = ~assigned[self.t_vars]
        V = np.where(U, 1, val[self.t_vars])
        prod = self.t_coef
        for d in range(self.D):
            prod = F.vmul(prod, V[:, d])
        cnt = U.sum(axis=1)
        live = prod != 0
        m0 = cnt == 0
        const = F.vsum_groups(prod[m0], self.t_eq[m0], R)
        nonlin = np.bincount(self.t_eq[(cnt >= 2) & live], minlength=R) > 0
        m1 = (cnt == 1) & live
        uvar = self.t_vars[m1][U[m1]]
        lin = F.vsum_groups(prod[m1], self.t_eq[m1] * n + uvar, R * n).reshape(R, n)
        return const, nonlin, lin

    def _reduce(self, A, b):
        """Row reduce [A | b], pivoting on the latest variable in the order.

        Returns None if inconsistent, else a list of forced (var, value).
        """
        F = self.F
        cols = np.nonzero(A.any(axis=0))[0]
        if cols.size == 0:
            return None if b.any() else []
        cols = cols[np.argsort(-self.rank[cols])]
        M = np.concatenate([A[:, cols], b[:, None]], axis=1)
        free_rows = np.ones(M.shape[0], dtype=bool)
        pivots = []
        for ci in range(cols.size):
            cand = np.nonzero(free_rows & (M[:, ci] != 0))[0]
            if cand.size == 0:
                continue
            r = cand[0]
            M[r] = F.vmul(M[r], F.inv(int(M[r, ci])))
            others = np.nonzero(M[:, ci] != 0)[0]
            others = others[others != r]
            if others.size:
                M[others] = F.vsub(M[others], F.vmul(M[others, ci][:, None], M[r][None, :]))
            free_rows[r] = False
            pivots.append((r, ci))
        if (M[free_rows, -1] != 0).any():
            return None
        forced = []
        for r, ci in pivots:
            coeffs = M[r, :-1]
            if np.count_nonzero(coeffs) == 1:
                forced.append((int(cols[ci]), int(F.neg(int(M[r, -1])))))
        return forced

    def solve(self):
        n = self.n
        val = np.zeros(n + 1, dtype=np.int64)
        val[n] = 1
        assigned = np.zeros(n + 1, dtype=bool)
        assigned[n] = True
        return self._search(val, assigned)

    def _search(self, val, assigned):
        n = self.n
        while True:
            self.nodes += 1
            if self.nodes > self.budget:
                self.nodes = self.budget
                raise _Stop
            const, nonlin, lin = self._evaluate(val, assigned)
            aff = ~nonlin
            forced = self._reduce(lin[aff], const[aff])
            if forced is None:
                return None
            if not forced:
                break
            for v, a in forced:
                val[v] = a
                assigned[v] = True
        if assigned[:n].all():
            return val[:n].copy() if val[:n].any() else None
        v = next(u for u in self.order if not assigned[u])
        for a in range(self.q):
            val2, asg2 = val.copy(), assigned.copy()
            val2[v] = a
            asg2[v] = True
            res = self._search(val2, asg2)
            if res is not None:
                return res
        return None


def solve_nontrivial(system, n: int, budget: int = DEFAULT_BUDGET, mode=Mode.DETERMINISTIC,
                     field: FieldSpec | None = None, workers: int = 2, order=None) -> SolveReport:
    """Find y in F_q^n, y != 0, with every polynomial of ``system`` vanishing."""
    system = list(system)
    mode = Mode(mode)
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if field is None:
        if not system:
            raise ValueError("an empty system needs an explicit field")
        field = system[0].field
    if n < 1:
        return SolveReport(Outcome.NOT_FOUND, None, 0, mode)
    sys = _System(field, n, system)

    def wrap(out, w, evals):
        y = tuple(FieldElement(field, int(a)) for a in w) if w is not None else None
        return SolveReport(out, y, evals, mode)

    if mode is Mode.DETERMINISTIC:
        return wrap(*_lex_solve(sys, budget))

    if mode is Mode.PROPAGATE:
        prop = _Propagator(sys, order, budget)
        try:
            w = prop.solve()
        except _Stop:
            return wrap(Outcome.BUDGET_EXCEEDED, None, prop.nodes)
        return wrap(Outcome.FOUND if w is not None else Outcome.NOT_FOUND, w, prop.nodes)

    return wrap(*_parallel_solve(sys, budget, max(1, workers)))


def _parallel_solve(sys: _System, budget: int, workers: int):
    q, n = sys.q, sys.n
    c = 0
    while c < n and q**c < 4 * workers:
        c += 1
    prefixes = list(itertools.product(range(q), repeat=c))
    share = max(1, -(-budget // len(prefixes)))
    total, exceeded = 0, False
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending = {pool.submit(_chunk_task, sys, share, pre) for pre in prefixes}
        try:
            while pending:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for fut in done:
                    out, w, evals = fut.result()
                    total += evals
                    if out is Outcome.FOUND:
                        for f in pending:
                            f.cancel()
                        return Outcome.FOUND, w, total
                    exceeded |= out is Outcome.BUDGET_EXCEEDED
        finally:
            for f in pending:
                f.cancel()
    return (Outcome.BUDGET_EXCEEDED if exceeded else Outcome.NOT_FOUND), None, total


def count_zeros(system, n: int, budget: int = DEFAULT_BUDGET, field: FieldSpec | None = None) -> int:
    """Number of common zeros in F_q^n, the origin included."""
    system = list(system)
    if field is None:
        if not system:
            raise ValueError("an empty system needs an explicit field")
        field = system[0].field
    if field.q**n > budget:
        raise BudgetExceeded(f"q^n = {field.q}^{n} exceeds budget {budget}")
    sys = _System(field, n, system)
    s = _LexSearch(sys, budget, count_only=True)
    s.run()
    return s.count


def verify_zero(system, y) -> bool:
    if not any(a.value for a in y):
        return False
    return all(not P(list(y)).value for P in system)
