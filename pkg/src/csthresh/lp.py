"""Dense standard-form LP solver with certificates, plus a tiny oracle.

Solves  min c.x  s.t.  Ax = b, x >= 0  by two-phase primal simplex with
Bland's anti-cycling rule on a dense tableau.  The pivot loop lives in a
compiled kernel (``_simplex_cy``) with a numpy fallback (``_simplex_py``);
set CSTHRESH_PURE_PYTHON=1 to force the fallback.  The tableau is
refactorized from the basis every 50 pivots to contain roundoff drift.

Every Optimal return is certified: primal feasibility against the original
(unreduced) system, near-nonnegativity of x, and a duality gap bound.  A
vertex-enumeration oracle for N <= 16 provides an independent ground truth
for tests.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

if os.environ.get("CSTHRESH_PURE_PYTHON"):
    from . import _simplex_py as _kernel
else:
    try:
        from . import _simplex_cy as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _simplex_py as _kernel

KERNEL_NAME: str = _kernel.KERNEL_NAME

__all__ = [
    "KERNEL_NAME",
    "LpStatus",
    "LinearProgram",
    "LpSolution",
    "LpNumericalError",
    "solve_lp",
    "vertex_enumerate_oracle",
]

_REFRESH_EVERY = 50
_MAX_TOTAL_PIVOTS = 200_000
_RANK_TOL = 1e-11
_STATS: dict = {}


class LpStatus(Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


class LpNumericalError(RuntimeError):
    """Solver could not certify a result at the requested tolerance."""


@dataclass(frozen=True)
class LinearProgram:
    objective: np.ndarray
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.objective, dtype=float)
        A = np.asarray(self.eq_matrix, dtype=float)
        b = np.asarray(self.eq_rhs, dtype=float)
        if A.ndim != 2 or c.ndim != 1 or b.ndim != 1:
            raise ValueError("bad shapes")
        if A.shape != (len(b), len(c)):
            raise ValueError("inconsistent dimensions")
        if not (np.isfinite(A).all() and np.isfinite(b).all()
                and np.isfinite(c).all()):
            raise ValueError("non-finite data")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "eq_matrix", A)
        object.__setattr__(self, "eq_rhs", b)


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    x: np.ndarray | None
    objective_value: float | None
    residuals: tuple[float, float, float]  # primal feas, dual feas, gap


def _row_reduce(A: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray, bool]:
    """Eliminate dependent rows; returns (A', b', consistent)."""
    A = A.copy()
    b = b.copy()
    m, n = A.shape
    r = 0
    for j in range(n):
        if r == m:
            break
        p = r + int(np.argmax(np.abs(A[r:, j])))
        if abs(A[p, j]) <= _RANK_TOL:
            continue
        if p != r:
            A[[r, p]] = A[[p, r]]
            b[[r, p]] = b[[p, r]]
        f = A[:, j] / A[r, j]
        f[r] = 0.0
        A -= np.outer(f, A[r])
        b -= f * b[r]
        r += 1
    scale = 1.0 + float(np.abs(b).max(initial=0.0))
    if r < m and np.abs(b[r:]).max(initial=0.0) > 1e-9 * scale:
        return A[:r], b[:r], False
    return A[:r], b[:r], True


def _refactor(Aext: np.ndarray, b: np.ndarray, cext: np.ndarray,
              basis: np.ndarray) -> np.ndarray:
    m, ncols = Aext.shape
    B = Aext[:, basis]
    try:
        body = np.linalg.solve(B, np.column_stack([Aext, b]))
        y = np.linalg.solve(B.T, cext[basis])
    except np.linalg.LinAlgError as exc:
        raise LpNumericalError("singular basis during refactorization") from exc
    T = np.empty((m + 1, ncols + 1))
    T[:m] = body
    T[m, :ncols] = cext - Aext.T @ y
    T[m, ncols] = -float(y @ b)
    return np.ascontiguousarray(T)


def _run_phase(Aext: np.ndarray, b: np.ndarray, cext: np.ndarray,
               basis: np.ndarray, tol: float) -> tuple[int, np.ndarray]:
    """Pivot to optimality/unboundedness with periodic refactorization."""
    m = Aext.shape[0]
    total = 0
    stalled = 0
    b_work = b
    perturbed = False
    T = _refactor(Aext, b_work, cext, basis)
    last_obj = -float(T[-1, -1])
    while True:
        status, done = _kernel.run_pivots(T, basis, tol, _REFRESH_EVERY, 0)
        total += done
        if status != _kernel.STATUS_BUDGET:
            if status == _kernel.STATUS_OPTIMAL:
                if perturbed:
                    # perturbation never touches reduced costs, so the
                    # basis stays optimal for the true rhs; x shifts by at
                    # most the perturbation itself
                    b_work = b
                    perturbed = False
                    stalled = 0
                # re-derive the tableau once more so the caller sees a
                # drift-free optimum; reopen only on a clearly negative
                # refreshed reduced cost to avoid ping-ponging at -tol
                T = _refactor(Aext, b_work, cext, basis)
                if float(T[-1, :-1].min(initial=0.0)) < -10.0 * tol:
                    last_obj = -float(T[-1, -1])
                    continue
            return status, T
        if total > _MAX_TOTAL_PIVOTS:
            raise LpNumericalError("pivot budget exhausted")
        T = _refactor(Aext, b_work, cext, basis)
        obj = -float(T[-1, -1])
        if not perturbed and obj >= last_obj - 1e-10 * (1.0 + abs(obj)):
            stalled += 1
            if stalled >= 2:
                # degenerate plateau: shift the rhs so every basic value
                # of the current basis becomes strictly positive, which
                # makes every later ratio test nondegenerate.  The scale
                # must sit well above tableau roundoff (else ties stay
                # noise-driven); the final refactor against the true rhs
                # recovers the exact vertex, so no bias survives.
                _STATS["perturbations"] = _STATS.get("perturbations", 0) + 1
                u = 1e-7 * (0.5 + np.random.default_rng(0).random(m))
                b_work = b + Aext[:, basis] @ u
                perturbed = True
                T = _refactor(Aext, b_work, cext, basis)
        else:
            stalled = 0
        last_obj = obj


def solve_lp(lp: LinearProgram, tol: float = 1e-9) -> LpSolution:
    """Certified two-phase simplex solve; deterministic for fixed input."""
    A0, b0, c = lp.eq_matrix, lp.eq_rhs, lp.objective
    n = len(c)
    A, b, consistent = _row_reduce(A0, b0)
    none = (0.0, 0.0, 0.0)
    if not consistent:
        return LpSolution(LpStatus.INFEASIBLE, None, None, none)
    m = A.shape[0]
    if m == 0:
        if np.any(c < -tol):
            return LpSolution(LpStatus.UNBOUNDED, None, None, none)
        return LpSolution(LpStatus.OPTIMAL, np.zeros(n), 0.0, none)
    neg = b < 0
    A = A.copy()
    b = b.copy()
    A[neg] *= -1.0
    b[neg] *= -1.0

    # phase 1: artificial basis, minimize infeasibility
    Aext = np.ascontiguousarray(np.hstack([A, np.eye(m)]))
    cext = np.concatenate([np.zeros(n), np.ones(m)])
    basis = np.arange(n, n + m, dtype=np.int64)
    status, T = _run_phase(Aext, b, cext, basis, tol)
    if status == _kernel.STATUS_UNBOUNDED:
        raise LpNumericalError("phase-1 reported unbounded")
    scale_b = 1.0 + float(np.abs(b).max(initial=0.0))
    if -float(T[m, n + m]) > 1e-8 * scale_b:
        return LpSolution(LpStatus.INFEASIBLE, None, None, none)

    # pivot leftover artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            row = np.abs(T[i, :n])
            j = int(np.argmax(row))
            if row[j] <= 1e-9:
                raise LpNumericalError("stuck artificial in full-rank system")
            piv_row = T[i] / T[i, j]
            factors = T[:, j].copy()
            factors[i] = 0.0
            T -= np.outer(factors, piv_row)
            T[i] = piv_row
            basis[i] = j

    # phase 2 on the real columns
    status, T = _run_phase(A, b, c, basis, tol)
    if status == _kernel.STATUS_UNBOUNDED:
        return LpSolution(LpStatus.UNBOUNDED, None, None, none)

    x = np.zeros(n)
    x[basis] = T[:m, n]
    obj = float(c @ x)
    B = A[:, basis]
    y = np.linalg.solve(B.T, c[basis])
    primal = float(np.abs(A0 @ x - b0).max(initial=0.0))
    dual = max(0.0, -float((c - A.T @ y).min(initial=0.0)))
    gap = abs(obj - float(y @ b))
    scale0 = 1.0 + float(np.abs(b0).max(initial=0.0))
    if (primal > 1e-8 * scale0 or float(x.min(initial=0.0)) < -1e-10
            or gap > 1e-8 * (1.0 + abs(obj))):
        raise LpNumericalError(
            f"certificates unattainable: primal={primal:g}, "
            f"xmin={float(x.min(initial=0.0)):g}, gap={gap:g}")
    x[x < 0.0] = np.where(x[x < 0.0] > -1e-10, 0.0, x[x < 0.0])
    return LpSolution(LpStatus.OPTIMAL, x, obj, (primal, dual, gap))


def vertex_enumerate_oracle(lp: LinearProgram) -> LpSolution:
    """Exact optimum for N <= 16 by enumerating basic feasible solutions.

    Ties on the objective resolve to the lexicographically smallest x.
    Unboundedness is detected separately on the recession cone
    {d >= 0, Ad = 0, sum d = 1} by the same enumeration.
    """
    A0, b0, c = lp.eq_matrix, lp.eq_rhs, lp.objective
    n = len(c)
    if n > 16:
        raise ValueError("oracle limited to N <= 16")
    A, b, consistent = _row_reduce(A0, b0)
    none = (0.0, 0.0, 0.0)
    if not consistent:
        return LpSolution(LpStatus.INFEASIBLE, None, None, none)
    m = A.shape[0]

    def best_vertex(Am, bm, cm):
        mm = Am.shape[0]
        best = None
        if mm == 0:
            return np.zeros(n), 0.0
        for cols in combinations(range(Am.shape[1]), mm):
            B = Am[:, list(cols)]
            try:
                xB = np.linalg.solve(B, bm)
            except np.linalg.LinAlgError:
                continue
            if float(np.abs(B @ xB - bm).max(initial=0.0)) > 1e-7:
                continue
            if float(xB.min(initial=0.0)) < -1e-9:
                continue
            x = np.zeros(Am.shape[1])
            x[list(cols)] = np.maximum(xB, 0.0)
            obj = float(cm @ x)
            if best is None or obj < best[1] - 1e-12 or (
                    obj < best[1] + 1e-12 and tuple(x) < tuple(best[0])):
                best = (x, obj)
        return best

    feas = best_vertex(A, b, c)
    if feas is None:
        return LpSolution(LpStatus.INFEASIBLE, None, None, none)

    # recession-cone probe for unboundedness
    Ar = np.vstack([A, np.ones((1, n))])
    br = np.concatenate([np.zeros(m), [1.0]])
    Ar, br, cone_ok = _row_reduce(Ar, br)
    if cone_ok:
        ray = best_vertex(Ar, br, c)
        if ray is not None and ray[1] < -1e-9:
            return LpSolution(LpStatus.UNBOUNDED, None, None, none)
    x, obj = feas
    return LpSolution(LpStatus.OPTIMAL, x, obj, none)
