"""Dense two-phase simplex over an exact ordered field, with Bland's rule.

Entries may be ``Fraction`` or :class:`~macwilliams.cyclotomic.CycNum`
(real elements of Q(xi)); nothing is ever rounded.  Problems have the shape

    maximize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.

:func:`verify_certificate` re-derives optimality of a returned basis from
the original data alone, so the answer does not depend on trusting the
pivot sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


class Infeasible(ArithmeticError):
    pass


class Unbounded(ArithmeticError):
    pass


def sgn(v) -> int:
    if isinstance(v, (int, Fraction)):
        return (v > 0) - (v < 0)
    return v.sign()


def is_zero(v) -> bool:
    if isinstance(v, (int, Fraction)):
        return v == 0
    return v.is_zero()


@dataclass
class LinearProgram:
    c: list
    A_ub: list = field(default_factory=list)
    b_ub: list = field(default_factory=list)
    A_eq: list = field(default_factory=list)
    b_eq: list = field(default_factory=list)

    @property
    def num_vars(self) -> int:
        return len(self.c)

    def standard_columns(self) -> tuple[list[list], list, list]:
        """Equality form [A_ub I; A_eq 0] (x, s) = b with cost (c, 0)."""
        n, mu = self.num_vars, len(self.A_ub)
        rows = []
        for i, row in enumerate(self.A_ub):
            rows.append(list(row) + [Fraction(int(i == k)) for k in range(mu)])
        for row in self.A_eq:
            rows.append(list(row) + [Fraction(0)] * mu)
        cost = list(self.c) + [Fraction(0)] * mu
        return rows, list(self.b_ub) + list(self.b_eq), cost


@dataclass
class Solution:
    value: object
    x: list
    basis: list  # column indices in the equality form
    pivots: int


def solve(lp: LinearProgram, max_pivots: int = 100_000) -> Solution:
    rows, b, cost = lp.standard_columns()
    m, N = len(rows), len(cost)
    # flip rows so that b >= 0, then add one artificial per row
    T = []
    for i in range(m):
        if sgn(b[i]) < 0:
            T.append([-v for v in rows[i]] + [-b[i]])
        else:
            T.append(list(rows[i]) + [b[i]])
    for i in range(m):
        art = [Fraction(int(i == k)) for k in range(m)]
        T[i] = T[i][:N] + art + [T[i][N]]
    width = N + m
    basis = [N + i for i in range(m)]
    pivots = 0

    def objective_row(weights: Sequence) -> list:
        z = [Fraction(0)] * (width + 1)
        for j in range(width):
            z[j] = weights[j]
        for i, bv in enumerate(basis):
            w = weights[bv]
            if not is_zero(w):
                for j in range(width + 1):
                    if not is_zero(T[i][j]):
                        z[j] = z[j] - w * T[i][j]
        return z  # reduced costs; z[width] holds -objective

    def pivot(r: int, col: int, z: list) -> None:
        nonlocal pivots
        pivots += 1
        if pivots > max_pivots:
            raise ArithmeticError("pivot limit reached")
        inv = 1 / T[r][col]
        T[r] = [v * inv if not is_zero(v) else v for v in T[r]]
        for i in range(m):
            if i != r and not is_zero(T[i][col]):
                f = T[i][col]
                T[i] = [a - f * bb for a, bb in zip(T[i], T[r])]
        if not is_zero(z[col]):
            f = z[col]
            z[:] = [a - f * bb for a, bb in zip(z, T[r])]
        basis[r] = col

    def run(z: list, allowed: int) -> None:
        while True:
            enter = next((j for j in range(allowed) if sgn(z[j]) > 0), None)
            if enter is None:
                return
            best = None
            for i in range(m):
                if sgn(T[i][enter]) > 0:
                    ratio = T[i][width] / T[i][enter]
                    if best is None or sgn(ratio - best[0]) < 0 or (is_zero(ratio - best[0]) and basis[i] < best[1]):
                        best = (ratio, basis[i], i)
            if best is None:
                raise Unbounded(f"column {enter} is unbounded")
            pivot(best[2], enter, z)

    # phase 1: maximize -(sum of artificials)
    phase1 = [Fraction(0)] * N + [Fraction(-1)] * m
    z1 = objective_row(phase1)
    run(z1, width)
    if sgn(z1[width]) != 0:
        raise Infeasible(f"phase 1 ended with artificial mass {-z1[width]}")
    # drive remaining artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(basis):
        if basis[i] >= N:
            col = next((j for j in range(N) if not is_zero(T[i][j])), None)
            if col is None:
                del T[i], basis[i]
                m -= 1
                continue
            pivot(i, col, z1)
        i += 1
    for i in range(m):
        T[i] = T[i][:N] + [T[i][width]]
    width = N
    z2 = objective_row(cost)
    run(z2, N)
    x = [Fraction(0)] * N
    for i, bv in enumerate(basis):
        x[bv] = T[i][width]
    value = sum((cost[j] * x[j] for j in range(N)), Fraction(0))
    return Solution(value, x[: lp.num_vars], list(basis), pivots)


# -- independent optimality certificate -------------------------------------------------


def _solve_square(M: list[list], rhs: list) -> list:
    """Gauss-Jordan on a fresh copy; raises if singular."""
    n = len(M)
    A = [list(row) + [rhs[i]] for i, row in enumerate(M)]
    for col in range(n):
        r = next((i for i in range(col, n) if not is_zero(A[i][col])), None)
        if r is None:
            raise ArithmeticError("basis matrix is singular")
        A[col], A[r] = A[r], A[col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        for i in range(n):
            if i != col and not is_zero(A[i][col]):
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[col])]
    return [A[i][n] for i in range(n)]


@dataclass
class Certificate:
    optimal: bool
    value: object
    primal: list
    duals: list
    reasons: list


def verify_certificate(lp: LinearProgram, basis: Sequence[int]) -> Certificate:
    """Check primal feasibility and non-positive reduced costs for ``basis``.

    Rows that were redundant in the solve are recovered by selecting a
    maximal independent subset of constraint rows for the basis columns.
    """
    rows, b, cost = lp.standard_columns()
    reasons = []
    cols = list(basis)
    keep = _independent_rows([[row[j] for j in cols] for row in rows])
    if len(keep) != len(cols):
        return Certificate(False, None, [], [], [f"basis of size {len(cols)} has rank {len(keep)}"])
    B = [[rows[i][j] for j in cols] for i in keep]
    xB = _solve_square(B, [b[i] for i in keep])
    N = len(cost)
    x = [Fraction(0)] * N
    for j, v in zip(cols, xB):
        x[j] = v
    for j, v in enumerate(x):
        if sgn(v) < 0:
            reasons.append(f"x[{j}] = {v} < 0")
    for i, row in enumerate(rows):
        lhs = sum((row[j] * x[j] for j in range(N) if not is_zero(x[j])), Fraction(0))
        if not is_zero(lhs - b[i]):
            reasons.append(f"row {i} not satisfied")
    BT = [[B[r][k] for r in range(len(keep))] for k in range(len(cols))]
    y_keep = _solve_square(BT, [cost[j] for j in cols])
    y = [Fraction(0)] * len(rows)
    for i, v in zip(keep, y_keep):
        y[i] = v
    for j in range(N):
        red = cost[j] - sum((y[i] * rows[i][j] for i in range(len(rows)) if not is_zero(rows[i][j])), Fraction(0))
        if sgn(red) > 0:
            reasons.append(f"reduced cost of column {j} is positive")
    value = sum((cost[j] * x[j] for j in range(N)), Fraction(0))
    dual_value = sum((y[i] * b[i] for i in range(len(rows))), Fraction(0))
    if not is_zero(value - dual_value):
        reasons.append("primal and dual objective differ")
    return Certificate(not reasons, value, x[: lp.num_vars], y, reasons)


def _independent_rows(M: list[list]) -> list[int]:
    """Indices of a maximal set of linearly independent rows (greedy elimination)."""
    basis_rows: list[tuple[int, list]] = []  # (pivot column, reduced row)
    keep = []
    for idx, row in enumerate(M):
        r = list(row)
        for pc, br in basis_rows:
            if not is_zero(r[pc]):
                f = r[pc] / br[pc]
                r = [a - f * bb for a, bb in zip(r, br)]
        pc = next((j for j, v in enumerate(r) if not is_zero(v)), None)
        if pc is not None:
            basis_rows.append((pc, r))
            keep.append(idx)
    return keep
