# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled simplex pivot kernel; see _simplex_py for the contract.

Dantzig pricing with a switch to Bland's rule after a run of degenerate
pivots (anti-cycling), identical to the pure-Python kernel.
"""

import numpy as np

KERNEL_NAME = "cython"

STATUS_OPTIMAL = 0
STATUS_UNBOUNDED = 1
STATUS_BUDGET = 2

cdef int _STALL_LIMIT = 25


def run_pivots(double[:, ::1] T, long long[::1] basis, double tol,
               int max_pivots, int bland=0):
    cdef int m = T.shape[0] - 1
    cdef int ncols = T.shape[1] - 1
    cdef int done = 0
    cdef int stall = 0
    cdef int enter, leave, i, j
    cdef double best, r, piv, f, cmin
    while done < max_pivots:
        enter = -1
        if bland or stall >= _STALL_LIMIT:
            for j in range(ncols):
                if T[m, j] < -tol:
                    enter = j
                    break
        else:
            cmin = -tol
            for j in range(ncols):
                if T[m, j] < cmin:
                    cmin = T[m, j]
                    enter = j
        if enter < 0:
            return STATUS_OPTIMAL, done
        leave = -1
        best = 0.0
        for i in range(m):
            if T[i, enter] > tol:
                r = T[i, ncols] / T[i, enter]
                if leave < 0 or r < best - 1e-12 or (
                        r <= best + 1e-12 and basis[i] < basis[leave]):
                    if leave < 0 or r < best:
                        best = r
                    leave = i
        if leave < 0:
            return STATUS_UNBOUNDED, done
        if best <= 1e-12:
            stall += 1
        else:
            stall = 0
        piv = T[leave, enter]
        for j in range(ncols + 1):
            T[leave, j] /= piv
        for i in range(m + 1):
            if i == leave:
                continue
            f = T[i, enter]
            if f != 0.0:
                for j in range(ncols + 1):
                    T[i, j] -= f * T[leave, j]
        basis[leave] = enter
        done += 1
    return STATUS_BUDGET, done
