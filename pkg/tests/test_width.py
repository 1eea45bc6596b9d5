"""Restricted-cone width bounds: scenario vectors, the exact dual bound,
the brute-force primal oracle, and the Monte Carlo driver."""

import math

import numpy as np
import pytest

from csthresh.thresholds import ThresholdKind, beta_max, invert_alpha
from csthresh.width import (
    CMode,
    dual_width_bound,
    primal_width_oracle,
    scenario_vector,
    select_c_exact,
    width_monte_carlo,
)

K = ThresholdKind
ALL_KINDS = [K.STRONG, K.SECTIONAL, K.WEAK, K.WEAK_NONNEG]


def test_scenario_vector_ordering_contracts():
    rng = np.random.default_rng(0)
    h = rng.standard_normal(12)
    k = 4
    for kind in ALL_KINDS:
        sv = scenario_vector(kind, h, k).values
        q = len(sv) - k
        # off-support block is sorted ascending in every scenario
        assert all(sv[i] <= sv[i + 1] for i in range(q - 1))
    # strong: everything is a magnitude
    sv = scenario_vector(K.STRONG, h, k).values
    assert np.all(sv >= 0)
    # weak: support block keeps raw signs
    sv = scenario_vector(K.WEAK, h, k).values
    assert np.any(sv[-k:] < 0) or np.all(h[np.argsort(np.abs(h))[-k:]] >= 0)


def test_dual_equals_primal_on_small_instances():
    rng = np.random.default_rng(7)
    for kind in ALL_KINDS:
        for _ in range(40)        :
            n = int(rng.integers(3, 9))
            k = int(rng.integers(1, n))
            h = rng.standard_normal(n)
            sv = scenario_vector(kind, h, k)
            dual = dual_width_bound(sv, CMode.EXACT_DUAL)
            primal = primal_width_oracle(sv)
            assert dual == pytest.approx(primal, abs=1e-8)
            assert dual >= primal - 1e-10  # a dual bound may never undercut


def test_dual_bound_examples_with_known_values():
    """Hand-checkable scenario vectors where the bound has a closed form."""
    sv = scenario_vector(K.STRONG, np.array([1.0, 2.0]), 1)
    assert dual_width_bound(sv, CMode.EXACT_DUAL) == pytest.approx(
        math.sqrt(5.0), abs=1e-12)
    sv = scenario_vector(K.STRONG, np.array([2.0, 3.0, 4.0]), 2)
    assert dual_width_bound(sv, CMode.EXACT_DUAL) == pytest.approx(
        math.sqrt(29.0), abs=1e-12)


def test_population_mode_converges_to_exact_dual():
    """The asymptotic cut count gives an approximation of the exact dual
    minimum that tightens as n grows (it is not a per-sample bound)."""
    from csthresh.thresholds import solve_theta

    rng = np.random.default_rng(3)
    for kind in ALL_KINDS:
        gaps = []
        for n in (100, 4000):
            k = n // 5
            c = round((1 - solve_theta(kind, k / n)) * n)
            rel = 0.0
            for _ in range(5):
                sv = scenario_vector(kind, rng.standard_normal(n), k)
                exact = dual_width_bound(sv, CMode.EXACT_DUAL)
                pop = dual_width_bound(sv, CMode.POPULATION, population_c=c)
                rel = max(rel, abs(pop - exact) / exact)
            gaps.append(rel)
        assert gaps[1] < gaps[0]
        assert gaps[1] < 0.02


def test_no_clip_level_means_full_norm_bound():
    """When no valid cut level exists (support mass dominates), the exact
    dual degenerates to the plain norm of the scenario vector — for the
    kinds whose free block is made of magnitudes."""
    rng = np.random.default_rng(21)
    found = 0
    for kind in (K.STRONG, K.SECTIONAL, K.WEAK):
        for _ in range(200):
            n = int(rng.integers(2, 7))
            k = int(rng.integers(1, n))
            h = rng.standard_normal(n) * np.linspace(0.2, 3.0, n)
            sv = scenario_vector(kind, h, k)
            if select_c_exact(sv) is not None:
                continue
            found += 1
            assert dual_width_bound(sv, CMode.EXACT_DUAL) == pytest.approx(
                float(np.linalg.norm(sv.values)), abs=1e-12)
    assert found > 20


def test_select_c_exact_none_when_support_dominates():
    # all mass on the support: sv^T z < 0 has no clip level
    sv = scenario_vector(K.STRONG, np.array([0.0, 0.0, 5.0]), 1)
    assert select_c_exact(sv) is None or isinstance(select_c_exact(sv), int)


def test_width_scale_equivariance():
    rng = np.random.default_rng(11)
    h = rng.standard_normal(20)
    for kind in ALL_KINDS:
        sv1 = scenario_vector(kind, h, 5)
        sv2 = scenario_vector(kind, 3.0 * h, 5)
        b1 = dual_width_bound(sv1, CMode.EXACT_DUAL)
        b2 = dual_width_bound(sv2, CMode.EXACT_DUAL)
        assert b2 == pytest.approx(3.0 * b1, rel=1e-12)


def test_monte_carlo_deterministic_across_thread_counts():
    for kind in (K.WEAK, K.STRONG):
        reports = [width_monte_carlo(kind, 100, 10, 32, seed=5, m=60,
                                     threads=t) for t in (1, 2, 4)]
        means = {r.mean_B_over_sqrt_n for r in reports}
        errs = {r.std_err for r in reports}
        assert len(means) == 1 and len(errs) == 1


def test_monte_carlo_seed_sensitivity():
    r1 = width_monte_carlo(K.WEAK, 100, 10, 16, seed=1, m=60)
    r2 = width_monte_carlo(K.WEAK, 100, 10, 16, seed=2, m=60)
    assert r1.mean_B_over_sqrt_n != r2.mean_B_over_sqrt_n


def test_monte_carlo_pass_flag_tracks_measurement_budget():
    n = 1000
    bw = invert_alpha(K.WEAK, 0.5)
    below = width_monte_carlo(K.WEAK, n, round(0.6 * bw * n), 100, seed=9,
                              m=n // 2)
    above = width_monte_carlo(K.WEAK, n, round(1.4 * bw * n), 100, seed=9,
                              m=n // 2)
    assert below.passed
    assert not above.passed
    assert below.gordon_budget == above.gordon_budget


def test_monte_carlo_population_mode_runs():
    r = width_monte_carlo(K.WEAK, 200, 20, 16, seed=0, m=100,
                          c_mode=CMode.POPULATION)
    assert r.c_mode is CMode.POPULATION
    assert r.mean_B_over_sqrt_n > 0


def test_invalid_arguments_raise():
    with pytest.raises(ValueError):
        scenario_vector(K.WEAK, np.zeros(5), 0)
    with pytest.raises(ValueError):
        scenario_vector(K.WEAK, np.zeros(5), 5)
    with pytest.raises(ValueError):
        width_monte_carlo(K.WEAK, 10, 2, 1, seed=0, m=5)
