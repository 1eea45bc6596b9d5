"""Empirical recovery experiments: instances, l1 solvers, NSP checks,
phase diagrams.

The measurement matrix is i.i.d. standard normal, which realizes a
uniformly random null space (rotation invariance).  Planted signals put
their k nonzeros on the last k indices with magnitudes bounded away from
zero; signs are random except in the nonnegative model.

The null-space property (NSP) checkers are exact at tiny sizes: each
support/sign pattern reduces to one small LP over a null-space basis, with
the normalization fixing the scale so "worst ratio <= 1" means failure.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np
from scipy.linalg import null_space

from .lp import (
    LinearProgram,
    LpNumericalError,
    LpStatus,
    solve_lp,
)
from .thresholds import ThresholdKind

__all__ = [
    "Instance",
    "PhaseCell",
    "gaussian_instance",
    "l1_solve",
    "nonneg_l1_solve",
    "recovery_success",
    "nsp_check_strong",
    "nsp_check_fixed_support",
    "nsp_strong_detail",
    "nsp_fixed_support_detail",
    "phase_diagram",
    "read_matrix_file",
]


@dataclass(frozen=True)
class Instance:
    A: np.ndarray
    x_true: np.ndarray
    y: np.ndarray
    model: ThresholdKind
    seed: int


@dataclass(frozen=True)
class PhaseCell:
    alpha: float
    beta: float
    n: int
    trials: int
    successes: int
    lp_failures: int
    seed: int


def gaussian_instance(n: int, m: int, k: int, model: ThresholdKind,
                      seed: int) -> Instance:
    """Random instance with a k-sparse planted signal on the last k indices.

    Nonzero magnitudes are |N(0,1)| + 0.1 (recovery is scale invariant, so
    bounding them away from 0 only avoids an ill-posed success predicate);
    signs are random except for the nonnegative model.
    """
    if not (0 <= k <= n and 1 <= m):
        raise ValueError(f"bad sizes n={n}, m={m}, k={k}")
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((m, n))
    x = np.zeros(n)
    if k > 0:
        mags = np.abs(rng.standard_normal(k)) + 0.1
        if model is ThresholdKind.WEAK_NONNEG:
            signs = np.ones(k)
        else:
            signs = rng.choice([-1.0, 1.0], size=k)
        x[n - k:] = signs * mags
    return Instance(A=A, x_true=x, y=A @ x, model=model, seed=seed)


class InfeasibleSystemError(RuntimeError):
    """The recovery program has no feasible point."""


def l1_solve(A: np.ndarray, y: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """min ||x||_1 s.t. Ax = y via the split x = u - v, u, v >= 0."""
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    m, n = A.shape
    lp = LinearProgram(np.ones(2 * n), np.hstack([A, -A]), y)
    sol = solve_lp(lp, tol)
    if sol.status is not LpStatus.OPTIMAL:
        raise InfeasibleSystemError(f"l1 program: {sol.status.value}")
    return sol.x[:n] - sol.x[n:]


def nonneg_l1_solve(A: np.ndarray, y: np.ndarray,
                    tol: float = 1e-9) -> np.ndarray:
    """min sum(x) s.t. Ax = y, x >= 0 (already standard form)."""
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    lp = LinearProgram(np.ones(A.shape[1]), A, y)
    sol = solve_lp(lp, tol)
    if sol.status is not LpStatus.OPTIMAL:
        raise InfeasibleSystemError(f"nonneg l1 program: {sol.status.value}")
    return sol.x


def recovery_success(x_true: np.ndarray, x_hat: np.ndarray) -> bool:
    """Relative l2 agreement at 1e-5 (scale invariant above norm 1)."""
    x_true = np.asarray(x_true, dtype=float)
    x_hat = np.asarray(x_hat, dtype=float)
    if x_true.shape != x_hat.shape:
        raise ValueError("length mismatch")
    err = float(np.linalg.norm(x_hat - x_true))
    return err <= 1e-5 * max(1.0, float(np.linalg.norm(x_true)))


def _nsp_lp(N: np.ndarray, support: tuple[int, ...], signs: np.ndarray,
            nonneg_offsupport: bool) -> tuple[str, np.ndarray | None]:
    """Worst-ratio LP for one (support, sign-row) pattern.

    Normalizes the signed mass on the support to -1 (i.e. signs.w_K = -1)
    and minimizes the off-support mass: sum |w_i| in the signed variants,
    sum w_i with w_i >= 0 in the nonnegative variant.  The pattern defeats
    recovery iff the LP is feasible with optimum <= 1.

    Returns ("holds" | "fails" | "boundary", witness w or None).
    """
    n, d = N.shape
    off = [i for i in range(n) if i not in support]
    q = len(off)
    # variables: v+ (d), v- (d), then per-off-support coordinate blocks
    if nonneg_offsupport:
        # w_off = s >= 0 directly: N_off (v+ - v-) - s = 0
        nvars = 2 * d + q
        rows = q + 1
        Amat = np.zeros((rows, nvars))
        rhs = np.zeros(rows)
        c = np.zeros(nvars)
        for r, i in enumerate(off):
            Amat[r, :d] = N[i]
            Amat[r, d:2 * d] = -N[i]
            Amat[r, 2 * d + r] = -1.0
            c[2 * d + r] = 1.0
    else:
        # t_i >= |w_i|: t - w - s1 = 0 and t + w - s2 = 0
        nvars = 2 * d + 3 * q
        rows = 2 * q + 1
        Amat = np.zeros((rows, nvars))
        rhs = np.zeros(rows)
        c = np.zeros(nvars)
        for r, i in enumerate(off):
            t_col = 2 * d + r
            s1 = 2 * d + q + 2 * r
            s2 = s1 + 1
            Amat[2 * r, :d] = -N[i]
            Amat[2 * r, d:2 * d] = N[i]
            Amat[2 * r, t_col] = 1.0
            Amat[2 * r, s1] = -1.0
            Amat[2 * r + 1, :d] = N[i]
            Amat[2 * r + 1, d:2 * d] = -N[i]
            Amat[2 * r + 1, t_col] = 1.0
            Amat[2 * r + 1, s2] = -1.0
            c[2 * d:2 * d + q] = 1.0
    norm_row = np.zeros(nvars)
    sig_N = signs @ N[list(support)]
    norm_row[:d] = sig_N
    norm_row[d:2 * d] = -sig_N
    Amat[-1] = norm_row
    rhs[-1] = -1.0
    sol = solve_lp(LinearProgram(c, Amat, rhs))
    if sol.status is LpStatus.INFEASIBLE:
        return "holds", None
    if sol.status is not LpStatus.OPTIMAL:
        raise LpNumericalError(f"nsp LP status {sol.status.value}")
    opt = sol.objective_value
    w = N @ (sol.x[:d] - sol.x[d:2 * d])
    if abs(opt - 1.0) <= 1e-9:
        return "boundary", w
    if opt < 1.0:
        return "fails", w
    return "holds", None


def _null_basis(A: np.ndarray) -> np.ndarray:
    return null_space(np.asarray(A, dtype=float))


def nsp_strong_detail(A: np.ndarray, k: int):
    """Verdict plus witness over every support and sign pattern."""
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    if n > 14 or k > 4:
        raise ValueError("budget: n <= 14 and k <= 4")
    N = _null_basis(A)
    if N.shape[1] == 0:
        return "holds", None
    verdict = "holds"
    for support in combinations(range(n), k):
        for signs in product((-1.0, 1.0), repeat=k):
            res, w = _nsp_lp(N, support, np.array(signs), False)
            if res == "fails":
                return "fails", (support, signs, w)
            if res == "boundary":
                verdict = "boundary"
    return verdict, None


def nsp_check_strong(A: np.ndarray, k: int) -> bool:
    """Every k-sparse signal is recovered iff this holds."""
    return nsp_strong_detail(A, k)[0] == "holds"


def nsp_fixed_support_detail(A: np.ndarray, k: int, variant: str):
    """NSP on the fixed support (last k indices).

    variant: "Sectional" quantifies over all sign patterns on the support;
    "WeakSigns" uses the planted all-negative pattern; "Nonnegative"
    restricts off-support null directions to be nonnegative.
    """
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    if n > 14 or k > 4:
        raise ValueError("budget: n <= 14 and k <= 4")
    if k == 0:
        return "holds", None
    N = _null_basis(A)
    if N.shape[1] == 0:
        return "holds", None
    support = tuple(range(n - k, n))
    if variant == "Sectional":
        sign_rows = [np.array(s) for s in product((-1.0, 1.0), repeat=k)]
        nonneg = False
    elif variant == "WeakSigns":
        sign_rows = [-np.ones(k)]
        nonneg = False
    elif variant == "Nonnegative":
        sign_rows = [-np.ones(k)]
        nonneg = True
    else:
        raise ValueError(f"unknown variant {variant!r}")
    verdict = "holds"
    for signs in sign_rows:
        res, w = _nsp_lp(N, support, signs, nonneg)
        if res == "fails":
            return "fails", (support, tuple(signs), w)
        if res == "boundary":
            verdict = "boundary"
    return verdict, None


def nsp_check_fixed_support(A: np.ndarray, k: int, variant: str) -> bool:
    return nsp_fixed_support_detail(A, k, variant)[0] == "holds"


def _trial_seed(master: int, ai: int, bi: int, trial: int) -> int:
    return int(np.random.SeedSequence([master, ai, bi, trial])
               .generate_state(1)[0])


def _run_cell(n: int, alpha: float, beta: float, trials: int,
              model: ThresholdKind, master_seed: int, ai: int,
              bi: int) -> PhaseCell:
    m = max(1, round(alpha * n))
    k = round(beta * n)
    successes = 0
    failures = 0
    for t in range(trials):
        inst = gaussian_instance(n, m, k, model, _trial_seed(master_seed, ai, bi, t))
        try:
            if model is ThresholdKind.WEAK_NONNEG:
                x_hat = nonneg_l1_solve(inst.A, inst.y)
            else:
                x_hat = l1_solve(inst.A, inst.y)
        except (LpNumericalError, InfeasibleSystemError):
            failures += 1
            continue
        if recovery_success(inst.x_true, x_hat):
            successes += 1
    return PhaseCell(alpha=alpha, beta=beta, n=n, trials=trials,
                     successes=successes, lp_failures=failures,
                     seed=master_seed)


def phase_diagram(n: int, alpha_grid: list[float], beta_grid: list[float],
                  trials: int, model: ThresholdKind, seed: int,
                  threads: int | None = None) -> list[PhaseCell]:
    """Success counts per (alpha, beta) cell; deterministic for a fixed
    seed regardless of worker count (every trial has its own derived
    seed, keyed by cell and trial index)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    for g in (alpha_grid, beta_grid):
        if any(not 0.0 < v <= 1.0 for v in g):
            raise ValueError("grid values must lie in (0, 1]")
    jobs = [(ai, bi) for ai in range(len(alpha_grid))
            for bi in range(len(beta_grid))]

    def run(job: tuple[int, int]) -> PhaseCell:
        ai, bi = job
        return _run_cell(n, alpha_grid[ai], beta_grid[bi], trials, model,
                         seed, ai, bi)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, jobs))
    return [run(j) for j in jobs]


def read_matrix_file(path: str) -> np.ndarray:
    """Plain-text matrix: first line "m n", then m whitespace-separated rows."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("first line must be 'm n'")
        m, n = int(header[0]), int(header[1])
        data = np.loadtxt(fh, ndmin=2)
    if data.shape != (m, n):
        raise ValueError(f"expected {m}x{n} matrix, got {data.shape}")
    return data
