import numpy as np
import pytest

from jsrkit import (
    DimensionMismatch,
    DimensionOverflow,
    MatrixSet,
    check_lift_identities,
    check_w_product_identity,
    lift_LR,
    lift_set,
    lower_bound_r,
    noncompactness_radius,
    spectral_radius,
    unvec,
    vec,
)

import oracles


class TestVec:
    def test_column_major_order(self):
        x = np.array([[1, 2], [3, 4]], dtype=complex)
        assert np.array_equal(vec(x), np.array([1, 3, 2, 4], dtype=complex))

    def test_roundtrip(self):
        rng = np.random.default_rng(41)
        for d in (1, 2, 3, 5):
            x = oracles.random_set(rng, d, 1, complex_entries=True)[0]
            assert np.array_equal(unvec(vec(x), d), x)


class TestLiftLR:
    def test_matrix_is_kron(self):
        a = np.array([[1, 2], [3, 4]], dtype=complex)
        b = np.array([[0, 1], [1, 0]], dtype=complex)
        L = lift_LR(a, b)
        assert np.array_equal(L.matrix, np.kron(b.T, a))
        assert L.source_dim == 2

    def test_action_is_two_sided_multiply(self):
        rng = np.random.default_rng(42)
        for d in (2, 3, 4):
            a, b, x = (oracles.random_set(rng, d, 1, complex_entries=True)[0]
                       for _ in range(3))
            L = lift_LR(a, b)
            assert np.allclose(L.apply(x), a @ x @ b, atol=1e-12)
            assert np.allclose(unvec(L.matrix @ vec(x), d), a @ x @ b, atol=1e-12)

    def test_identity_lifts_to_identity(self):
        e = np.eye(3, dtype=complex)
        assert np.array_equal(lift_LR(e, e).matrix, np.eye(9, dtype=complex))

    def test_spectral_radius_factorizes(self):
        rng = np.random.default_rng(43)
        for _ in range(8):
            a = oracles.random_set(rng, 3, 1, complex_entries=True)[0]
            b = oracles.random_set(rng, 3, 1, complex_entries=True)[0]
            want = spectral_radius(a) * spectral_radius(b)
            got = spectral_radius(lift_LR(a, b).matrix)
            assert got == pytest.approx(want, rel=1e-7, abs=1e-10)

    def test_dimension_checks(self):
        with pytest.raises(DimensionMismatch):
            lift_LR(np.eye(2), np.eye(3))
        with pytest.raises(DimensionOverflow):
            lift_LR(np.eye(70), np.eye(70))


class TestLiftSet:
    def test_size_and_tags(self):
        M = MatrixSet.from_matrices(oracles.GOLDEN, name="g")
        L = lift_set(M)
        assert L.size == 4 and L.dim == 4
        assert L.name.endswith(":lift")

    def test_generator_order_is_row_major_pairs(self):
        M = MatrixSet.from_matrices(oracles.GOLDEN)
        L = lift_set(M)
        rng = np.random.default_rng(44)
        x = oracles.random_set(rng, 2, 1, complex_entries=True)[0]
        for i in range(2):
            for j in range(2):
                want = oracles.GOLDEN[i] @ x @ oracles.GOLDEN[j]
                got = unvec(L.gens[i * 2 + j] @ vec(x), 2)
                assert np.allclose(got, want, atol=1e-12)

    def test_word_product_acts_by_reversed_right_factors(self):
        # composing lifts multiplies left factors in order and right
        # factors in reverse order
        rng = np.random.default_rng(45)
        g = oracles.random_set(rng, 2, 2, complex_entries=True)
        M = MatrixSet.from_matrices(g)
        L = lift_set(M)
        x = oracles.random_set(rng, 2, 1, complex_entries=True)[0]
        word = (0 * 2 + 1, 1 * 2 + 0)  # (a0, b1) then (a1, b0)
        p = oracles.word_product(list(L.gens), word)
        want = g[0] @ g[1] @ x @ g[0] @ g[1]
        assert np.allclose(unvec(p @ vec(x), 2), want, atol=1e-11)

    def test_lower_bounds_square_exactly_per_depth(self):
        rng = np.random.default_rng(46)
        for _ in range(6):
            d = int(rng.integers(1, 4))
            m = int(rng.integers(1, 3))
            M = MatrixSet.from_matrices(oracles.random_set(rng, d, m))
            L = lift_set(M)
            for n in (1, 2, 3):
                rM = lower_bound_r(M, n).value
                rL = lower_bound_r(L, n).value
                assert rL == pytest.approx(rM**2, rel=1e-9, abs=1e-12)


class TestLiftIdentities:
    def test_golden_passes(self):
        M = MatrixSet.from_matrices(oracles.GOLDEN)
        rep = check_lift_identities(M, 4)
        assert rep.passed
        assert rep.r_exact_gap <= 1e-7
        assert rep.rho_sq_gap == 0.0
        lo, hi = rep.interval
        llo, lhi = rep.lifted_interval
        assert max(lo**2, llo) <= min(hi**2, lhi) * (1 + 1e-12)

    def test_random_sets_pass(self):
        rng = np.random.default_rng(47)
        for _ in range(5):
            M = MatrixSet.from_matrices(oracles.random_set(rng, 2, 2))
            rep = check_lift_identities(M, 3, budget=50_000)
            assert rep.passed, rep

    def test_dict_round(self):
        M = MatrixSet.from_matrices(oracles.DIAG_PAIR)
        d = check_lift_identities(M, 2, budget=20_000).to_dict()
        assert d["pass"] is True
        assert "r_exact_gap" in d and "lifted_interval" in d


class TestWProductIdentity:
    def test_residual_small_on_random_pairs(self):
        rng = np.random.default_rng(48)
        for _ in range(20):
            d = int(rng.integers(1, 5))
            a = oracles.random_set(rng, d, 1, complex_entries=True)[0]
            b = oracles.random_set(rng, d, 1, complex_entries=True)[0]
            resid = check_w_product_identity(a, b)
            scale = (np.linalg.norm(a) * np.linalg.norm(b)) ** 2
            assert resid <= 1e-10 * max(scale, 1e-30)

    def test_identity_pair_is_exact(self):
        e = np.eye(2, dtype=complex)
        assert check_w_product_identity(e, e) == 0.0


def test_noncompactness_radius_is_zero_for_bounded_sets():
    M = MatrixSet.from_matrices(oracles.GOLDEN)
    assert noncompactness_radius(M) == 0.0
