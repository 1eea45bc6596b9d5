"""Pure-Python (numpy) simplex pivot kernel.

Fallback for the compiled kernel in ``_simplex_cy``; identical contract.
The tableau T has shape (m+1, ncols+1): m constraint rows with the rhs in
the last column, then the reduced-cost row with -objective in the corner.
``basis`` holds the basic column index of each constraint row.

Pricing is Dantzig (most negative reduced cost) while the iteration makes
progress; after a run of degenerate pivots it switches to Bland's rule
(lowest eligible index), which guarantees no cycling, and switches back on
the next nondegenerate step.
"""

from __future__ import annotations

import numpy as np

KERNEL_NAME = "python"

STATUS_OPTIMAL = 0
STATUS_UNBOUNDED = 1
STATUS_BUDGET = 2

_STALL_LIMIT = 25


def run_pivots(T: np.ndarray, basis: np.ndarray, tol: float,
               max_pivots: int, bland: int = 0) -> tuple[int, int]:
    """Run up to max_pivots pivots in place.

    Returns (status, pivots done); STATUS_BUDGET means the caller should
    refactorize and continue.
    """
    m = T.shape[0] - 1
    ncols = T.shape[1] - 1
    done = 0
    stall = 0
    while done < max_pivots:
        costs = T[m, :ncols]
        if bland or stall >= _STALL_LIMIT:
            neg = np.nonzero(costs < -tol)[0]
            enter = int(neg[0]) if len(neg) else -1
        else:
            j = int(np.argmin(costs))
            enter = j if costs[j] < -tol else -1
        if enter < 0:
            return STATUS_OPTIMAL, done
        col = T[:m, enter]
        rhs = T[:m, ncols]
        leave = -1
        best = np.inf
        for i in range(m):
            if col[i] > tol:
                r = rhs[i] / col[i]
                if r < best - 1e-12 or (r <= best + 1e-12 and
                                        (leave < 0 or basis[i] < basis[leave])):
                    if r < best:
                        best = r
                    leave = i
        if leave < 0:
            return STATUS_UNBOUNDED, done
        stall = stall + 1 if best <= 1e-12 else 0
        piv_row = T[leave] / T[leave, enter]
        factors = T[:, enter].copy()
        factors[leave] = 0.0
        T -= np.outer(factors, piv_row)
        T[leave] = piv_row
        basis[leave] = enter
        done += 1
    return STATUS_BUDGET, done
