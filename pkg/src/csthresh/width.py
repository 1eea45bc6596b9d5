"""Gaussian widths of the l1-failure sets, per sampled direction vector.

For a standard normal sample h, each regime rearranges h into a scenario
vector sv (sorted magnitudes, or block-sorted variants) so that the width
of the failure set along h becomes a small optimization over the sphere:

    maximize sv.y   subject to  sum(last k of y) >= sum(first n-k of y),
                                sign constraints on y,  ||y|| <= 1.

The failure set is the one whose escape through a random subspace
(Gordon's theorem) certifies recovery: directions satisfying the
constraint above are exactly the null-space directions that defeat the
l1 program.

Offered here: the scenario rearrangement, the closed-form dual upper
bound B in two flavors (``Population`` uses the asymptotic cut count c
from the thresholds module; ``ExactDual`` minimizes the dual exactly per
sample), a combinatorial primal oracle for tiny n, and a deterministic
Monte Carlo estimator of E[B]/sqrt(n) compared against the Gordon budget
sqrt(m) - 1/(4 sqrt(m)).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from .thresholds import SolverConfig, ThresholdKind, solve_theta

__all__ = [
    "CMode",
    "ScenarioVector",
    "WidthReport",
    "scenario_vector",
    "select_c_exact",
    "dual_width_bound",
    "primal_width_oracle",
    "width_monte_carlo",
]


class CMode(Enum):
    POPULATION = "Population"
    EXACT_DUAL = "ExactDual"


@dataclass(frozen=True)
class ScenarioVector:
    values: np.ndarray  # first n-k entries sorted non-decreasing
    k: int
    kind: ThresholdKind

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def z(self) -> np.ndarray:
        out = np.ones(self.n)
        out[self.n - self.k:] = -1.0
        return out


@dataclass(frozen=True)
class WidthReport:
    kind: ThresholdKind
    n: int
    k: int
    samples: int
    c_mode: CMode
    mean_B_over_sqrt_n: float
    std_err: float
    gordon_budget: float
    passed: bool


def scenario_vector(kind: ThresholdKind, h: np.ndarray, k: int) -> ScenarioVector:
    """Rearrange a sample into the block structure the width bound expects.

    Strong sorts all magnitudes; the other kinds sort only the first n-k
    entries (magnitudes, or raw values for the nonnegative regime) and
    carry the last k through (magnitudes / raw / negated, by kind).
    """
    h = np.asarray(h, dtype=float)
    n = len(h)
    if not 0 < k < n:
        raise ValueError(f"need 0 < k < n, got k={k}, n={n}")
    if kind is ThresholdKind.STRONG:
        vals = np.sort(np.abs(h))
    elif kind is ThresholdKind.SECTIONAL:
        vals = np.concatenate([np.sort(np.abs(h[:n - k])), np.abs(h[n - k:])])
    elif kind is ThresholdKind.WEAK:
        vals = np.concatenate([np.sort(np.abs(h[:n - k])), h[n - k:]])
    elif kind is ThresholdKind.WEAK_NONNEG:
        vals = np.concatenate([np.sort(h[:n - k]), -h[n - k:]])
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return ScenarioVector(values=vals, k=k, kind=kind)


def select_c_exact(sv: ScenarioVector) -> int | None:
    """Largest cut count c in [0, n-k] whose dual multiplier stays valid.

    c zeroes out the c smallest free-block coordinates; validity needs
    nu(c) = (sv.z - prefix_c) / (n - c) >= sv[c-1] and nu(c) >= 0 (with an
    implicit -inf below index 0 so c = 0 is always a candidate).  Returns
    None when even c = 0 fails, i.e. sv.z < 0.
    """
    v = sv.values
    n, k = sv.n, sv.k
    svtz = float(v[:n - k].sum() - v[n - k:].sum())
    if svtz < 0.0:
        return None
    best = None
    prefix = 0.0
    for c in range(0, n - k + 1):
        if c > 0:
            prefix += v[c - 1]
        nu = (svtz - prefix) / (n - c)
        if nu < 0.0:
            continue
        if c > 0 and nu < v[c - 1]:
            continue
        best = c
    return best


def dual_width_bound(sv: ScenarioVector, c_mode: CMode = CMode.EXACT_DUAL,
                     population_c: int | None = None) -> float:
    """Upper bound B on the failure-set width along this sample.

    Population mode evaluates the closed-form bound at a supplied cut count c:
    B = sqrt(sum_{i>c} sv_i^2 - (sv.z - sum_{i<=c} sv_i)^2 / (n-c)),
    falling back to ||sv|| when the multiplier at c is negative.  ExactDual
    minimizes the Lagrange dual g(nu)^2 = sum_first max(sv_i - nu, 0)^2 +
    sum_last (sv_i + nu)^2 over nu >= 0 exactly (piecewise quadratic in nu
    with breakpoints at the sorted free-block values).
    """
    v = sv.values
    n, k = sv.n, sv.k
    first = v[:n - k]
    last = v[n - k:]
    if c_mode is CMode.POPULATION:
        if population_c is None:
            raise ValueError("Population mode requires population_c")
        c = min(max(int(population_c), 0), n - k)
        svtz = float(first.sum() - last.sum())
        nu = (svtz - float(v[:c].sum())) / (n - c)
        if nu < 0.0:
            return float(np.linalg.norm(v))
        tail_sq = float((v[c:] ** 2).sum())
        return math.sqrt(max(tail_sq - nu * nu * (n - c), 0.0))
    if c_mode is not CMode.EXACT_DUAL:
        raise ValueError(f"unknown c_mode {c_mode!r}")

    s_last = float(last.sum())
    sq_last = float((last ** 2).sum())

    # g(nu)^2 is piecewise quadratic in nu with breakpoints at the sorted
    # free-block values; on the segment where exactly the suffix first[t:]
    # stays unclipped, g^2 = sufsq[t] - 2 nu suf[t] + (n-t) nu^2 + sq_last
    # + 2 nu s_last and stationarity gives
    # nu = (suf[t] - s_last) / (n - t).  Minimum over all segment-interior
    # stationary points, all breakpoints, and nu = 0.
    q = n - k
    suf = np.concatenate([np.cumsum(first[::-1])[::-1], [0.0]])
    sufsq = np.concatenate([np.cumsum((first ** 2)[::-1])[::-1], [0.0]])
    cnt = np.arange(q, -1, -1, dtype=float)  # active count per segment t

    def g_sq_at(nu: np.ndarray, t: np.ndarray) -> np.ndarray:
        return (sufsq[t] - 2.0 * nu * suf[t] + cnt[t] * nu * nu
                + sq_last + 2.0 * nu * s_last + k * nu * nu)

    t_all = np.arange(q + 1)
    nu_star = (suf - s_last) / (cnt + k)
    lo = np.concatenate([[0.0], np.maximum(first, 0.0)])
    hi = np.concatenate([first, [np.inf]])
    ok = (nu_star >= 0.0) & (nu_star >= lo) & (nu_star <= hi)
    cand_nu = [nu_star[ok]]
    cand_t = [t_all[ok]]
    pos = np.nonzero(first >= 0.0)[0]
    cand_nu.append(first[pos])       # breakpoints, clipped set = first j+1
    cand_t.append(pos + 1)
    t0 = int(np.searchsorted(first, 0.0))
    cand_nu.append(np.array([0.0]))  # nu = 0 clips exactly the negatives
    cand_t.append(np.array([t0]))
    best = float(np.min(g_sq_at(np.concatenate(cand_nu),
                                np.concatenate(cand_t).astype(int))))
    return math.sqrt(max(best, 0.0))


def primal_width_oracle(sv: ScenarioVector) -> float:
    """Exact failure-set width at tiny n by active-set enumeration.

    Maximizes sv.y over the unit ball subject to the block inequality and
    the per-kind sign constraints (free block always y >= 0; support block
    y >= 0 only when its entries are magnitudes).  Every pattern of active
    constraints reduces to projecting sv onto a subspace.
    """
    v = sv.values
    n, k = sv.n, sv.k
    if n > 12:
        raise ValueError("oracle limited to n <= 12")
    if sv.kind in (ThresholdKind.STRONG, ThresholdKind.SECTIONAL):
        signed_idx = list(range(n))
    else:
        signed_idx = list(range(n - k))
    # direction of the block inequality: sum(last k) - sum(first n-k) >= 0
    a = np.ones(n)
    a[:n - k] = -1.0
    best = 0.0
    for r in range(len(signed_idx) + 1):
        for zero_set in combinations(signed_idx, r):
            mask = np.ones(n, dtype=bool)
            mask[list(zero_set)] = False
            for tight in (False, True):
                w = np.where(mask, v, 0.0)
                if tight:
                    ar = np.where(mask, a, 0.0)
                    denom = float(ar @ ar)
                    if denom < 1e-15:
                        continue
                    w = w - (float(ar @ w) / denom) * ar
                norm = float(np.linalg.norm(w))
                if norm <= best + 1e-15 or norm == 0.0:
                    continue
                y = w / norm
                if any(y[i] < -1e-12 for i in signed_idx):
                    continue
                if float(a @ y) < -1e-12:
                    continue
                best = norm
    return best


def _one_sample(kind: ThresholdKind, n: int, k: int, seed: int, idx: int,
                c_mode: CMode, population_c: int | None) -> float:
    rng = np.random.default_rng([seed, idx])
    h = rng.standard_normal(n)
    sv = scenario_vector(kind, h, k)
    return dual_width_bound(sv, c_mode, population_c)


def width_monte_carlo(kind: ThresholdKind, n: int, k: int, samples: int,
                      seed: int, m: int, c_mode: CMode = CMode.EXACT_DUAL,
                      threads: int | None = None) -> WidthReport:
    """Estimate E[B]/sqrt(n) and compare to the Gordon escape budget for m
    measurements.

    Each sample draws from an independent substream keyed by (seed, index),
    so the report is bit-identical for any worker count.
    """
    if samples < 2:
        raise ValueError("need samples >= 2")
    if not 0 < k < n:
        raise ValueError(f"need 0 < k < n, got k={k}, n={n}")
    population_c = None
    if c_mode is CMode.POPULATION:
        theta = solve_theta(kind, k / n, SolverConfig())
        population_c = min(max(round((1.0 - theta) * n), 0), n - k)
    idxs = range(samples)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vals = list(pool.map(
                lambda i: _one_sample(kind, n, k, seed, i, c_mode, population_c),
                idxs))
    else:
        vals = [_one_sample(kind, n, k, seed, i, c_mode, population_c)
                for i in idxs]
    arr = np.array(vals) / math.sqrt(n)
    mean = float(arr.mean())
    std_err = float(arr.std(ddof=1) / math.sqrt(samples))
    budget = math.sqrt(m) - 1.0 / (4.0 * math.sqrt(m))
    passed = mean + 3.0 * std_err < budget / math.sqrt(n)
    return WidthReport(kind=kind, n=n, k=k, samples=samples, c_mode=c_mode,
                       mean_B_over_sqrt_n=mean, std_err=std_err,
                       gordon_budget=budget, passed=passed)
