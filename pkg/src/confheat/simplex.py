"""Dense primal simplex for small LPs: max c.x s.t. A x <= b, x >= 0, b >= 0.

The nonnegative right-hand side makes the all-slack basis feasible, so no
phase-1 is needed.  Pivoting is Dantzig's rule with smallest-index tie breaks;
after a long degenerate stall the solver switches to Bland's rule, which
guarantees termination.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SolverError


@dataclass(frozen=True)
class SimplexResult:
    value: float
    x: np.ndarray
    pivots: int


def solve_lp(c, A, b, tol: float = 1.0e-9, max_pivots: int | None = None) -> SimplexResult:
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    if A.ndim != 2:
        raise ValueError("A must be a matrix")
    m, n = A.shape
    if c.shape != (n,) or b.shape != (m,):
        raise ValueError("inconsistent LP shapes")
    if m and b.min() < -tol:
        raise ValueError("right-hand side must be nonnegative (slack basis start)")
    if m == 0:
        if np.any(c > tol):
            raise SolverError("unbounded LP: no constraints restrain a profitable variable")
        return SimplexResult(0.0, np.zeros(n), 0)

    if max_pivots is None:
        max_pivots = 200 * (m + n) + 2000

    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = np.maximum(b, 0.0)
    T[m, :n] = -c
    basis = np.arange(n, n + m)

    stall = 0
    stall_limit = 4 * (m + n) + 64
    bland = False
    last_obj = 0.0
    for pivots in range(max_pivots):
        red = T[m, :-1]
        if bland:
            candidates = np.nonzero(red < -tol)[0]
            if candidates.size == 0:
                break
            enter = int(candidates[0])
        else:
            enter = int(np.argmin(red))
            if red[enter] >= -tol:
                break
        col = T[:m, enter]
        pos = col > tol
        if not np.any(pos):
            raise SolverError("unbounded LP encountered")
        ratios = np.full(m, np.inf)
        ratios[pos] = T[:m, -1][pos] / col[pos]
        best = ratios.min()
        ties = np.nonzero(ratios <= best + tol * (1.0 + abs(best)))[0]
        leave = int(ties[np.argmin(basis[ties])])

        piv = T[leave, enter]
        T[leave, :] /= piv
        factors = T[:, enter].copy()
        factors[leave] = 0.0
        T -= np.outer(factors, T[leave, :])
        T[:, enter] = 0.0
        T[leave, enter] = 1.0
        basis[leave] = enter

        obj = T[m, -1]
        if obj > last_obj + tol:
            last_obj = obj
            stall = 0
        else:
            stall += 1
            if stall > stall_limit:
                bland = True
    else:
        raise SolverError(f"simplex exceeded {max_pivots} pivots")

    x = np.zeros(n + m)
    x[basis] = T[:m, -1]
    return SimplexResult(float(T[m, -1]), x[:n], pivots)
