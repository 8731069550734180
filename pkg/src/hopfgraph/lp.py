"""Exact maximin linear programming with optimality certificates.

``solve_maximin(A)`` computes

    t* = max_w min_s (A w)_s   over  w >= 0, sum(w) = 1

for a rational matrix ``A`` (rows are constraint sites, columns are pool
colorings), together with a distribution ``y`` over sites such that
``max_j (y^T A)_j = t*``. The pair ``(w, y)`` proves optimality.

After shifting ``A`` to a positive matrix ``B`` the problem becomes the
packing LP ``max 1^T y  s.t.  B^T y <= 1, y >= 0`` whose slack basis is
feasible. It is solved by the primal simplex method on an integer tableau
(fraction-free pivoting: every entry is the true value times the current
basis determinant).
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

POSITIVE = "POSITIVE"
NONPOSITIVE = "NONPOSITIVE-OPT"
UNBOUNDED = "UNBOUNDED-ERROR"

DEFAULT_PIVOT_BUDGET = int(os.environ.get("HOPFGRAPH_PIVOT_BUDGET", 200_000))


class PivotBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class LPSolution:
    status: str
    t_star: Fraction
    weights: tuple[Fraction, ...]
    dual: tuple[Fraction, ...]
    pivots: int = 0


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    reason: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


def _rows(A) -> list[list[Fraction]]:
    rows = getattr(A, "entries", A)
    return [[Fraction(x) for x in row] for row in rows]


class MaximinSolver:
    """Incremental maximin solver: columns can be added after a solve.

    Each column of ``A`` is a constraint of the packing LP, so a new column
    is a new tableau row. Its slack starts basic, possibly at a negative
    value, and the dual simplex method restores feasibility from the old
    optimal (hence dual feasible) basis. Column entries must stay within the
    range and denominators of the original matrix, otherwise the tableau is
    rebuilt from scratch.

    Tableau layout: column 0 is the right-hand side, columns ``1..m`` are the
    site variables ``y`` and the remaining ones are slacks, one per column of
    ``A``. Every entry is the true value times the basis determinant.
    """

    def __init__(self, A, pivot_budget: int | None = None, bland: bool = False):
        rows = _rows(A)
        m = len(rows)
        n = len(rows[0]) if m else 0
        if not m or not n or any(len(r) != n for r in rows):
            raise ValueError("maximin needs a nonempty rectangular matrix")
        self.budget = DEFAULT_PIVOT_BUDGET if pivot_budget is None else pivot_budget
        self.bland = bland
        self.m = m
        self.columns: list[list[Fraction]] = [[rows[s][j] for s in range(m)] for j in range(n)]
        self.total_pivots = 0
        self._build()

    def _build(self) -> None:
        cols, m = self.columns, self.m
        self.scale = lcm(*(x.denominator for c in cols for x in c))
        self.shift = 1 - min(min(int(x * self.scale) for x in c) for c in cols)
        n = len(cols)
        self.T = []
        for j, c in enumerate(cols):
            row = [1] + [int(x * self.scale) + self.shift for x in c] + [0] * n
            row[1 + m + j] = 1
            self.T.append(row)
        self.obj = [0] + [-1] * m + [0] * n
        self.basis = [1 + m + j for j in range(n)]
        self.det = 1

    def add_columns(self, cols) -> None:
        new = [[Fraction(x) for x in c] for c in cols]
        if any(len(c) != self.m for c in new):
            raise ValueError("column length does not match the number of sites")
        if not new:
            return
        self.columns += new
        fits = all((x * self.scale).denominator == 1 and int(x * self.scale) + self.shift >= 1
                   for c in new for x in c)
        if not fits:
            self._build()
            return
        m, det, T, basis = self.m, self.det, self.T, self.basis
        for c in new:
            for row in T:
                row.append(0)
            self.obj.append(0)
            raw = [1] + [int(x * self.scale) + self.shift for x in c] + [0] * (len(self.obj) - 1 - m)
            raw[-1] = 1
            # express the new constraint in the current basis, scaled by det
            row = [x * det for x in raw]
            for i, var in enumerate(basis):
                coef = raw[var]
                if coef:
                    row = [a - coef * b for a, b in zip(row, T[i])]
            T.append(row)
            basis.append(len(raw) - 1)

    def _pivot(self, leave: int, enter: int) -> None:
        if self.total_pivots >= self.budget:
            raise PivotBudgetExceeded(f"simplex exceeded {self.budget} pivots")
        self.total_pivots += 1
        T, det = self.T, self.det
        prow = T[leave]
        piv = prow[enter]
        rows = T + [self.obj]
        for i, row in enumerate(rows):
            if i == leave:
                continue
            f = row[enter]
            if f == 0:
                if piv != det:
                    row[:] = [x * piv // det for x in row]
            else:
                row[:] = [(x * piv - f * y) // det for x, y in zip(row, prow)]
        if piv < 0:
            # dual pivots are negative; keep the stored determinant positive
            for row in rows:
                row[:] = [-x for x in row]
            piv = -piv
        self.det = piv
        self.basis[leave] = enter

    def solve(self) -> LPSolution:
        start = self.total_pivots
        T, basis = self.T, self.basis
        width = len(self.obj)
        # dual simplex: most infeasible row first, lowest index after a dual
        # degenerate pivot (same anti-cycling argument as below)
        dual_degenerate = False
        while True:
            bad = [i for i in range(len(T)) if T[i][0] < 0]
            if not bad:
                break
            if self.bland or dual_degenerate:
                r = min(bad, key=basis.__getitem__)
            else:
                r = min(bad, key=lambda i: T[i][0])
            prow, obj = T[r], self.obj
            enter = None
            for k in range(1, width):
                a = prow[k]
                if a >= 0:
                    continue
                # compare obj[k]/-a with obj[enter]/-prow[enter]
                if enter is None or obj[k] * -prow[enter] < obj[enter] * -a:
                    enter = k
            if enter is None:
                raise RuntimeError("packing LP became infeasible")
            dual_degenerate = self.obj[enter] == 0
            self._pivot(r, enter)
        # primal simplex
        degenerate = False
        while True:
            obj = self.obj
            if self.bland or degenerate:
                enter = next((k for k in range(1, width) if obj[k] < 0), None)
            else:
                enter = min(range(1, width), key=obj.__getitem__)
                if obj[enter] >= 0:
                    enter = None
            if enter is None:
                break
            leave = None
            for i, row in enumerate(T):
                a = row[enter]
                if a <= 0:
                    continue
                if leave is None:
                    leave = i
                    continue
                lhs = row[0] * T[leave][enter]
                cur = T[leave][0] * a
                if lhs < cur or (lhs == cur and basis[i] < basis[leave]):
                    leave = i
            if leave is None:
                # cannot happen for a positive B; kept as a guard
                return LPSolution(UNBOUNDED, Fraction(0), (), (), self.total_pivots - start)
            self._pivot(leave, enter)
            degenerate = T[leave][0] == 0
        return self._extract(self.total_pivots - start)

    def _extract(self, pivots: int) -> LPSolution:
        m, det, obj = self.m, self.det, self.obj
        z = Fraction(obj[0], det)  # = 1 / value(B)
        y = [Fraction(0)] * m
        for i, var in enumerate(self.basis):
            if var <= m:
                y[var - 1] = Fraction(self.T[i][0], det)
        u = [Fraction(obj[1 + m + j], det) for j in range(len(self.columns))]
        weights = tuple(x / z for x in u)
        dual = tuple(x / z for x in y)
        t_star = (1 / z - self.shift) / self.scale
        status = POSITIVE if t_star > 0 else NONPOSITIVE
        return LPSolution(status, t_star, weights, dual, pivots)


def solve_maximin(A, pivot_budget: int | None = None, bland: bool = False) -> LPSolution:
    """Optimal maximin value, weights and site dual of ``A``.

    Entering columns follow the steepest reduced cost while pivots make
    progress and Bland's lowest-index rule after any degenerate pivot (or
    always with ``bland=True``). A cycle would consist of degenerate pivots
    only, all chosen by Bland's rule, which cannot cycle.
    """
    return MaximinSolver(A, pivot_budget, bland).solve()


def verify_certificate(A, sol: LPSolution) -> CertificateCheck:
    """Re-check a solution from scratch in exact arithmetic.

    Checks, in order: shapes, primal sign, primal value, primal normalisation,
    dual sign and normalisation, dual feasibility, and zero duality gap.
    """
    rows = _rows(A)
    m = len(rows)
    n = len(rows[0]) if m else 0
    w, y, t = list(sol.weights), list(sol.dual), Fraction(sol.t_star)
    if sol.status == UNBOUNDED:
        return CertificateCheck(False, "solver reported failure")
    if len(w) != n or len(y) != m:
        return CertificateCheck(False, "shape mismatch")
    if any(x < 0 for x in w):
        return CertificateCheck(False, "primal infeasible")
    values = [sum((a * x for a, x in zip(r, w)), Fraction(0)) for r in rows]
    if min(values) != t:
        return CertificateCheck(False, "primal value mismatch")
    if sum(w) != 1:
        return CertificateCheck(False, "primal infeasible")
    if any(x < 0 for x in y) or sum(y) != 1:
        return CertificateCheck(False, "dual infeasible")
    col_values = [sum((rows[s][j] * y[s] for s in range(m)), Fraction(0)) for j in range(n)]
    if max(col_values) > t:
        return CertificateCheck(False, "dual infeasible")
    if max(col_values) != t:
        return CertificateCheck(False, "duality gap")
    if (t > 0) != (sol.status == POSITIVE):
        return CertificateCheck(False, "status does not match sign of t_star")
    return CertificateCheck(True)


def site_values(A, weights: Sequence[Fraction]) -> list[Fraction]:
    return [sum((Fraction(a) * x for a, x in zip(r, weights)), Fraction(0)) for r in _rows(A)]
