"""Threshold curves alpha_min(beta) for the four recovery guarantees."""

import math

import pytest

from csthresh.thresholds import (
    CurvePoint,
    NoRootError,
    SolverConfig,
    ThresholdKind,
    alpha_bound,
    beta_max,
    curve,
    invert_alpha,
    solve_theta,
    theta_residual,
)

K = ThresholdKind
ALL_KINDS = [K.STRONG, K.SECTIONAL, K.WEAK, K.WEAK_NONNEG]


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(eps=-0.1)
    with pytest.raises(ValueError):
        SolverConfig(theta_tol=0.0)
    with pytest.raises(ValueError):
        SolverConfig(max_iter=0)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_solved_theta_is_a_root(kind):
    for beta in (0.01, 0.05, 0.1, 0.2):
        if kind is K.STRONG and beta > beta_max(kind):
            continue
        theta = solve_theta(kind, beta)
        assert abs(theta_residual(kind, theta, beta, 0.0)) < 1e-9
        assert beta < theta < 1.0


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_alpha_strictly_increasing_in_beta(kind):
    bmax = beta_max(kind)
    grid = [bmax * i / 51 for i in range(1, 51)]
    pts = curve(kind, grid)
    alphas = [p.alpha_min for p in pts]
    assert all(b - a > 1e-9 for a, b in zip(alphas, alphas[1:]))
    assert all(0.0 < a <= 1.0 for a in alphas)


def test_guarantee_nesting_strong_weakest_budget():
    """A stronger guarantee never needs fewer measurements:
    Strong >= Sectional >= Weak >= WeakNonnegative at every beta."""
    for beta in (0.02, 0.05, 0.1, 0.2):
        vals = [alpha_bound(k, beta).alpha_min for k in ALL_KINDS]
        assert vals[0] >= vals[1] >= vals[2] >= vals[3]


def test_known_critical_sparsities():
    assert beta_max(K.STRONG) == pytest.approx(0.2390289, abs=1e-6)
    assert beta_max(K.SECTIONAL) == pytest.approx(0.5, abs=1e-6)
    assert beta_max(K.WEAK) > 0.999
    assert beta_max(K.WEAK_NONNEG) > 0.999


def test_weak_threshold_at_half_undersampling():
    assert invert_alpha(K.WEAK, 0.5) == pytest.approx(0.19284, abs=1e-4)


def test_beta_zero_limit():
    p = alpha_bound(K.WEAK, 0.0)
    assert p.alpha_min == 0.0 and p.feasible


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_invert_alpha_roundtrip(kind):
    for alpha in (0.3, 0.5, 0.7, 0.9):
        beta = invert_alpha(kind, alpha)
        assert alpha_bound(kind, beta).alpha_min == pytest.approx(alpha,
                                                                  abs=1e-8)


def test_infeasible_beta_is_flagged_not_raised():
    p = alpha_bound(K.STRONG, 0.3)
    assert not p.feasible
    assert p.alpha_min > 1.0
    assert p.theta_hat == 1.0


def test_flagged_continuation_is_monotone_through_critical_beta():
    bmax = beta_max(K.STRONG)
    pts = curve(K.STRONG, [bmax - 0.01, bmax - 0.001, bmax + 0.001,
                           bmax + 0.01])
    alphas = [p.alpha_min for p in pts]
    assert all(b > a for a, b in zip(alphas, alphas[1:]))
    assert pts[0].feasible and not pts[-1].feasible


def test_eps_continuity_and_monotonicity():
    """Robustness margin eps shrinks continuously to the eps=0 curve and a
    larger margin never lowers the required undersampling."""
    base = alpha_bound(K.WEAK, 0.1).alpha_min
    prev = base
    for eps in (1e-6, 1e-3, 1e-2, 0.1):
        a = alpha_bound(K.WEAK, 0.1, SolverConfig(eps=eps)).alpha_min
        assert a >= prev - 1e-12
        prev = a
    tiny = alpha_bound(K.WEAK, 0.1, SolverConfig(eps=1e-10)).alpha_min
    assert tiny == pytest.approx(base, abs=1e-6)


def test_curve_rejects_bad_grids():
    with pytest.raises(ValueError):
        curve(K.WEAK, [0.2, 0.1])
    with pytest.raises(ValueError):
        curve(K.WEAK, [0.1, 0.1])
    with pytest.raises(ValueError):
        curve(K.WEAK, [-0.1, 0.2])


def test_invert_alpha_out_of_range_raises():
    with pytest.raises(NoRootError):
        invert_alpha(K.STRONG, 1e-12)
