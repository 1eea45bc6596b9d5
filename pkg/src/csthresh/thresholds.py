"""Recovery-threshold curves for l1 minimization with Gaussian matrices.

Four regimes are covered, one per ``ThresholdKind``:

* ``STRONG`` -- every k-sparse signal is recovered,
* ``SECTIONAL`` -- every signal on a fixed support,
* ``WEAK`` -- a fixed support with fixed sign pattern,
* ``WEAK_NONNEG`` -- fixed support/signs plus a nonnegativity constraint
  in the solver.

For each kind, a scalar fixed-point equation in theta (the asymptotic
fraction of active dual coordinates) determines the undersampling bound
alpha_min(beta) = m/n needed at sparsity fraction beta = k/n.  This module
solves the theta equations by bracketed bisection, evaluates the alpha
formulas, and offers curve generation plus the inverse map alpha -> beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .scalars import (
    DomainError,
    erfinv,
    tail_m1_abs,
    tail_m1_gauss,
    tail_m2_abs,
    tail_m2_signed,
)

__all__ = [
    "ThresholdKind",
    "SolverConfig",
    "CurvePoint",
    "NoRootError",
    "theta_residual",
    "solve_theta",
    "alpha_bound",
    "curve",
    "invert_alpha",
    "beta_max",
]

_SQRT2 = math.sqrt(2.0)
_SQRT_2_PI = math.sqrt(2.0 / math.pi)


class ThresholdKind(Enum):
    STRONG = "Strong"
    SECTIONAL = "Sectional"
    WEAK = "WeakFixedSupportSigns"
    WEAK_NONNEG = "WeakNonnegative"


@dataclass(frozen=True)
class SolverConfig:
    eps: float = 0.0          # robustness slack; 0 = asymptotic limit curve
    theta_tol: float = 1e-12  # absolute tolerance of the theta root
    max_iter: int = 200

    def __post_init__(self) -> None:
        if not 0.0 <= self.eps < 1.0:
            raise ValueError("eps must lie in [0, 1)")
        if self.theta_tol <= 0.0:
            raise ValueError("theta_tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass(frozen=True)
class CurvePoint:
    kind: ThresholdKind
    beta: float
    theta_hat: float
    alpha_min: float
    eps: float
    residual: float = 0.0
    feasible: bool = True        # False: no root, alpha_min is the >1 extension
    multiple_roots: bool = False


class NoRootError(ValueError):
    """The theta equation has no sign change on (beta, 1)."""


def theta_residual(kind: ThresholdKind, theta: float, beta: float,
                   eps: float = 0.0) -> float:
    """Left-hand side of the fixed-point equation for the given kind.

    A root theta in (beta, 1) balances the expected weight of the large
    coordinates against the quantile term; the residual is positive below
    the root for the weak/nonnegative kinds and changes sign at the root
    for all kinds whenever one exists.
    """
    if not 0.0 < beta < 1.0:
        raise DomainError(f"beta must lie in (0,1), got {beta}")
    if not beta < theta <= 1.0:
        raise DomainError(f"theta must lie in (beta, 1], got {theta}")
    om = 1.0 - eps
    op = 1.0 + eps
    if kind is ThresholdKind.STRONG:
        lhs = om * (tail_m1_abs(theta) - 2.0 * tail_m1_abs(beta)) / theta
        return lhs - _SQRT2 * erfinv(op * (1.0 - theta))
    # remaining kinds work on the free block of size (1-beta)n
    theta_loc = (theta - beta) / (1.0 - beta)
    scaled = op * (1.0 - theta) / (1.0 - beta)
    if kind is ThresholdKind.SECTIONAL:
        core = tail_m1_abs(theta_loc) - _SQRT_2_PI * beta / (1.0 - beta)
        lhs = om * (1.0 - beta) * core / theta
        return lhs - _SQRT2 * erfinv(scaled)
    if kind is ThresholdKind.WEAK:
        lhs = om * (1.0 - beta) * tail_m1_abs(theta_loc) / theta
        return lhs - _SQRT2 * erfinv(scaled)
    if kind is ThresholdKind.WEAK_NONNEG:
        lhs = om * (1.0 - beta) * tail_m1_gauss(theta_loc) / theta
        return lhs - _SQRT2 * erfinv(2.0 * scaled - 1.0)
    raise ValueError(f"unknown kind {kind!r}")


def _alpha_at(kind: ThresholdKind, theta: float, beta: float) -> float:
    """Minimum undersampling ratio alpha at a solved theta."""
    if kind is ThresholdKind.STRONG:
        mean = tail_m1_abs(theta) - 2.0 * tail_m1_abs(beta)
        return tail_m2_abs(theta) - mean * mean / theta
    theta_loc = (theta - beta) / (1.0 - beta)
    if kind is ThresholdKind.SECTIONAL:
        mean = (1.0 - beta) * tail_m1_abs(theta_loc) - beta * _SQRT_2_PI
        return (1.0 - beta) * tail_m2_abs(theta_loc) + beta - mean * mean / theta
    if kind is ThresholdKind.WEAK:
        mean = (1.0 - beta) * tail_m1_abs(theta_loc)
        return (1.0 - beta) * tail_m2_abs(theta_loc) + beta - mean * mean / theta
    if kind is ThresholdKind.WEAK_NONNEG:
        mean = (1.0 - beta) * tail_m1_gauss(theta_loc)
        return (1.0 - beta) * tail_m2_signed(theta_loc) + beta - mean * mean / theta
    raise ValueError(f"unknown kind {kind!r}")


_PRESCAN = 256


def _solve_theta_detail(kind: ThresholdKind, beta: float,
                        cfg: SolverConfig) -> tuple[float, float, bool]:
    """Root, residual there, and a multiple-sign-change flag.

    256-point pre-scan locates sign changes (the residual need not be
    monotone); the largest root is the one the bound statements use, so
    bisection refines the right-most bracket.
    """
    lo = beta + 1e-12
    hi = 1.0 - 1e-12
    xs = [lo + (hi - lo) * i / (_PRESCAN - 1) for i in range(_PRESCAN)]
    vals: list[float | None] = []
    for x in xs:
        try:
            vals.append(theta_residual(kind, x, beta, cfg.eps))
        except DomainError:
            vals.append(None)
    brackets = []
    prev_x = prev_v = None
    for x, v in zip(xs, vals):
        if v is None:
            continue
        if prev_v is not None and (v == 0.0 or (prev_v > 0.0) != (v > 0.0)):
            brackets.append((prev_x, x))
        prev_x, prev_v = x, v
    if not brackets:
        raise NoRootError(
            f"no sign change for {kind.value} at beta={beta:g}, eps={cfg.eps:g}")
    a, b = brackets[-1]
    fa = theta_residual(kind, a, beta, cfg.eps)
    for _ in range(cfg.max_iter):
        mid = 0.5 * (a + b)
        fm = theta_residual(kind, mid, beta, cfg.eps)
        if fm == 0.0 or (b - a) <= cfg.theta_tol:
            a = b = mid
            break
        if (fa > 0.0) == (fm > 0.0):
            a, fa = mid, fm
        else:
            b = mid
    root = 0.5 * (a + b)
    return root, theta_residual(kind, root, beta, cfg.eps), len(brackets) > 1


def solve_theta(kind: ThresholdKind, beta: float,
                cfg: SolverConfig = SolverConfig()) -> float:
    """Root of the theta equation in (beta, 1); raises NoRootError if none."""
    return _solve_theta_detail(kind, beta, cfg)[0]


def alpha_bound(kind: ThresholdKind, beta: float,
                cfg: SolverConfig = SolverConfig()) -> CurvePoint:
    """Minimum alpha = m/n guaranteeing recovery at sparsity beta = k/n.

    When the theta equation has no root (beta beyond the kind's critical
    sparsity) the point is flagged infeasible and alpha_min continues the
    curve past 1: alpha_min = 1 - residual(theta -> 1), which meets the
    feasible branch continuously at the critical beta where both equal 1.
    """
    if beta == 0.0:
        return CurvePoint(kind, 0.0, 0.0, 0.0, cfg.eps)
    if not 0.0 < beta < 1.0:
        raise DomainError(f"beta must lie in (0,1), got {beta}")
    try:
        theta, res, multi = _solve_theta_detail(kind, beta, cfg)
    except NoRootError:
        r = theta_residual(kind, 1.0 - 1e-12, beta, cfg.eps)
        return CurvePoint(kind, beta, 1.0, 1.0 - r, cfg.eps,
                          residual=r, feasible=False)
    return CurvePoint(kind, beta, theta, _alpha_at(kind, theta, beta),
                      cfg.eps, residual=res, multiple_roots=multi)


def curve(kind: ThresholdKind, beta_grid: list[float],
          cfg: SolverConfig = SolverConfig()) -> list[CurvePoint]:
    """alpha_bound over a strictly increasing grid; infeasible points are
    flagged in place, never dropped."""
    prev = 0.0
    for b in beta_grid:
        if not 0.0 < b < 1.0:
            raise DomainError(f"grid value {b} outside (0,1)")
        if b <= prev:
            raise ValueError("beta grid must be strictly increasing")
        prev = b
    return [alpha_bound(kind, b, cfg) for b in beta_grid]


def invert_alpha(kind: ThresholdKind, alpha: float,
                 cfg: SolverConfig = SolverConfig()) -> float:
    """beta at which alpha_min(beta) equals the given alpha in (0, 1].

    alpha_min is continuous and strictly increasing in beta (including the
    flagged extension past the critical sparsity), so plain bisection on
    beta converges; tolerance 1e-9 on the alpha residual.
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    lo, hi = 1e-8, 1.0 - 1e-8
    f_lo = alpha_bound(kind, lo, cfg).alpha_min
    if f_lo > alpha:
        raise NoRootError(
            f"alpha={alpha:g} below the attainable range for {kind.value}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = alpha_bound(kind, mid, cfg).alpha_min
        if abs(f_mid - alpha) <= 1e-9:
            return mid
        if f_mid < alpha:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    return 0.5 * (lo + hi)


def beta_max(kind: ThresholdKind, cfg: SolverConfig = SolverConfig()) -> float:
    """Critical sparsity: the beta at which alpha_min reaches 1."""
    return invert_alpha(kind, 1.0, cfg)
