"""Planted-signal recovery, NSP certificates, and phase-diagram counting."""

import numpy as np
import pytest

from csthresh.recovery import (
    InfeasibleSystemError,
    gaussian_instance,
    l1_solve,
    nonneg_l1_solve,
    nsp_check_fixed_support,
    nsp_check_strong,
    nsp_fixed_support_detail,
    nsp_strong_detail,
    phase_diagram,
    read_matrix_file,
    recovery_success,
)
from csthresh.thresholds import ThresholdKind

K = ThresholdKind


def test_instance_determinism_and_structure():
    a = gaussian_instance(20, 10, 3, K.WEAK, seed=9)
    b = gaussian_instance(20, 10, 3, K.WEAK, seed=9)
    assert np.array_equal(a.A, b.A) and np.array_equal(a.x_true, b.x_true)
    assert np.count_nonzero(a.x_true) == 3
    assert np.all(a.x_true[:17] == 0)
    assert np.min(np.abs(a.x_true[17:])) >= 0.1
    nn = gaussian_instance(20, 10, 5, K.WEAK_NONNEG, seed=1)
    assert np.all(nn.x_true >= 0)


def test_l1_solve_recovers_easy_instance():
    inst = gaussian_instance(30, 25, 3, K.WEAK, seed=3)
    x = l1_solve(inst.A, inst.y)
    assert recovery_success(x, inst.x_true)


def test_nonneg_solver_uses_sign_information():
    """At an aggressive sparsity the sign-constrained program can succeed
    where plain l1 fails, and never does worse."""
    wins = plain = 0
    for seed in range(20):
        inst = gaussian_instance(40, 16, 8, K.WEAK_NONNEG, seed=seed)
        ok_nn = recovery_success(nonneg_l1_solve(inst.A, inst.y), inst.x_true)
        ok_l1 = recovery_success(l1_solve(inst.A, inst.y), inst.x_true)
        wins += ok_nn
        plain += ok_l1
        assert ok_nn or not ok_l1
    assert wins >= plain


def test_recovery_success_tolerance_is_relative():
    x = np.array([1.0, 0.0, -2.0])
    assert recovery_success(x + 1e-7, x)
    assert not recovery_success(x + 1e-3, x)


def test_nsp_strong_on_known_matrices():
    assert nsp_check_strong(np.eye(4), 2)
    assert not nsp_check_strong(np.array([[1.0, 1.0]]), 1)


def test_nsp_strong_matches_exhaustive_recovery():
    """Strong NSP at sparsity k holds iff every k-sparse signal on every
    support with every sign pattern is recovered by l1."""
    from itertools import combinations, product

    rng = np.random.default_rng(0)
    for trial in range(6):
        m, n, k = 4, 6, 2
        A = rng.standard_normal((m, n))
        nsp = nsp_check_strong(A, k)
        all_recovered = True
        for supp in combinations(range(n), k):
            for signs in product((-1.0, 1.0), repeat=k):
                x = np.zeros(n)
                x[list(supp)] = signs
                if not recovery_success(l1_solve(A, A @ x), x):
                    all_recovered = False
                    break
            if not all_recovered:
                break
        assert nsp == all_recovered


def test_nsp_variant_nesting():
    """Strong implies Sectional implies WeakSigns on the same support."""
    rng = np.random.default_rng(4)
    for trial in range(10):
        A = rng.standard_normal((5, 8))
        k = 2
        strong = nsp_check_strong(A, k)
        sect = nsp_check_fixed_support(A, k, "Sectional")
        weak = nsp_check_fixed_support(A, k, "WeakSigns")
        if strong:
            assert sect
        if sect:
            assert weak


def test_nsp_witness_is_a_certificate():
    """A failure witness is a null-space vector whose support mass beats its
    off-support mass."""
    rng = np.random.default_rng(0)
    A = rng.standard_normal((5, 8))
    verdict, witness = nsp_strong_detail(A, 4)
    assert verdict == "fails"
    support, signs, w = witness
    w = np.asarray(w)
    assert np.abs(A @ w).max() < 1e-7
    on = -np.sum(np.asarray(signs) * w[list(support)])
    off = np.abs(np.delete(w, list(support))).sum()
    assert on >= off - 1e-7


def test_nsp_budget_guard():
    with pytest.raises(ValueError):
        nsp_check_strong(np.eye(20), 2)
    with pytest.raises(ValueError):
        nsp_fixed_support_detail(np.eye(8), 5, "Sectional")


def test_phase_diagram_counts_and_determinism():
    cells = phase_diagram(40, [0.5], [0.1, 0.5], trials=8, model=K.WEAK,
                          seed=3)
    again = phase_diagram(40, [0.5], [0.1, 0.5], trials=8, model=K.WEAK,
                          seed=3, threads=4)
    assert [(c.successes, c.lp_failures) for c in cells] == \
           [(c.successes, c.lp_failures) for c in again]
    easy, hard = cells
    assert easy.successes > hard.successes
    assert easy.trials == 8 and easy.n == 40 and easy.seed == 3


def test_phase_diagram_grid_validation():
    with pytest.raises(ValueError):
        phase_diagram(20, [0.0], [0.1], 2, K.WEAK, 0)
    with pytest.raises(ValueError):
        phase_diagram(20, [0.5], [1.5], 2, K.WEAK, 0)


def test_read_matrix_file_roundtrip(tmp_path):
    A = np.arange(6, dtype=float).reshape(2, 3)
    p = tmp_path / "mat.txt"
    p.write_text("2 3\n0 1 2\n3 4 5\n")
    assert np.array_equal(read_matrix_file(str(p)), A)
    p.write_text("2\n0 1\n")
    with pytest.raises(ValueError):
        read_matrix_file(str(p))
