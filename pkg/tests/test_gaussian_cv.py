import numpy as np
import pytest

from optoring import gaussian_cv
from optoring.gaussian_cv import (
    PairingError,
    check_physical,
    log_negativity,
    partial_transpose,
    reduce,
    residual_contangle,
    symplectic_eigenvalues,
    symplectic_form,
    two_mode_logneg_invariant,
)

from conftest import random_physical_cov, random_symplectic, tmsv_cov


def vacuum(n: int) -> np.ndarray:
    return 0.5 * np.eye(2 * n)


class TestSymplecticForm:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_square_is_minus_identity(self, n):
        omega = symplectic_form(n)
        assert np.array_equal(omega @ omega, -np.eye(2 * n))
        assert np.array_equal(omega.T, -omega)

    def test_generator_is_symplectic(self, rng):
        # sanity gate on the test-side random symplectic builder
        for n in (2, 3):
            s = random_symplectic(n, rng)
            omega = symplectic_form(n)
            assert np.allclose(s @ omega @ s.T, omega, atol=1e-10)


class TestReduce:
    def test_block_diagonal_no_cross(self, rng):
        blocks = [random_physical_cov(1, rng) for _ in range(3)]
        c = np.zeros((6, 6))
        for j, b in enumerate(blocks):
            c[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = b
        out = reduce(c, (1, 2))
        assert np.array_equal(out[:2, :2], blocks[0])
        assert np.array_equal(out[2:, 2:], blocks[1])
        assert np.array_equal(out[:2, 2:], np.zeros((2, 2)))

    def test_pair_13_bookkeeping(self, rng):
        c = random_physical_cov(3, rng)
        out = reduce(c, (1, 3))
        assert np.array_equal(out[:2, :2], c[:2, :2])
        assert np.array_equal(out[2:, 2:], c[4:, 4:])
        assert np.array_equal(out[:2, 2:], c[:2, 4:])

    def test_order_is_lower_index_first(self, rng):
        c = random_physical_cov(3, rng)
        assert np.array_equal(reduce(c, (3, 1)), reduce(c, (1, 3)))

    def test_reduction_stays_physical(self, rng):
        for _ in range(20):
            c = random_physical_cov(3, rng)
            for pair in ((1, 2), (1, 3), (2, 3)):
                ok, _ = check_physical(reduce(c, pair))
                assert ok

    @pytest.mark.parametrize("pair", [(1, 1), (0, 2), (2, 4)])
    def test_bad_indices(self, rng, pair):
        c = random_physical_cov(3, rng)
        with pytest.raises(ValueError):
            reduce(c, pair)


class TestPartialTranspose:
    def test_vacuum_unchanged(self):
        c = vacuum(2)
        assert np.array_equal(partial_transpose(c, 1), c)

    def test_flips_momentum_couplings_only(self, rng):
        c = random_physical_cov(2, rng)
        flipped = partial_transpose(c, 1)
        # row/column of p1 change sign except the diagonal entry
        assert flipped[1, 1] == c[1, 1]
        assert np.array_equal(flipped[1, [0, 2, 3]], -c[1, [0, 2, 3]])
        assert np.array_equal(flipped[0, [2, 3]], c[0, [2, 3]])

    def test_involution_exact(self, rng):
        c = random_physical_cov(3, rng)
        for mode in (1, 2, 3):
            assert np.array_equal(partial_transpose(partial_transpose(c, mode), mode), c)

    def test_bad_index(self, rng):
        with pytest.raises(ValueError):
            partial_transpose(random_physical_cov(2, rng), 3)


class TestSymplecticEigenvalues:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_vacuum(self, n):
        assert np.allclose(symplectic_eigenvalues(vacuum(n)), 0.5)

    def test_thermal(self):
        c = gaussian_cv.thermal_cov([0.3, 1.7])
        assert np.allclose(symplectic_eigenvalues(c), [0.8, 2.2])

    def test_tmsv_state_is_pure(self):
        assert np.allclose(symplectic_eigenvalues(tmsv_cov(0.7)), [0.5, 0.5], rtol=1e-10)

    @pytest.mark.parametrize("r", [0.1, 0.5, 1.0])
    def test_tmsv_partial_transpose_spectrum(self, r):
        # diagonalizing the 4x4 by hand gives e^{-2r}/2 and e^{+2r}/2
        nus = symplectic_eigenvalues(partial_transpose(tmsv_cov(r), 1))
        assert np.allclose(nus, [0.5 * np.exp(-2 * r), 0.5 * np.exp(2 * r)], rtol=1e-10)

    def test_invariant_under_symplectic(self, rng):
        c = random_physical_cov(3, rng)
        s = random_symplectic(3, rng)
        before = symplectic_eigenvalues(c)
        after = symplectic_eigenvalues(s @ c @ s.T)
        assert np.allclose(before, after, rtol=1e-8)

    def test_corrupted_input_raises_pairing_error(self):
        corrupted = np.array([
            [1.0, 2.0, 0.3, 0.0],
            [0.0, 1.0, 0.0, 0.1],
            [0.5, 0.0, 2.0, 1.0],
            [0.2, 0.0, 0.0, 2.0],
        ])
        with pytest.raises(PairingError):
            symplectic_eigenvalues(corrupted)


class TestLogNegativity:
    def test_vacuum_and_thermal_are_zero(self):
        assert log_negativity(vacuum(2), "M1M2") == 0.0
        assert log_negativity(gaussian_cv.thermal_cov([0.5, 2.0]), "CM1") == 0.0

    @pytest.mark.parametrize("r", [0.1, 0.5, 1.0])
    def test_tmsv(self, r):
        assert log_negativity(tmsv_cov(r), "M1M2") == pytest.approx(2 * r, abs=1e-10)

    def test_invariant_under_transposed_side(self, rng):
        # negativity does not depend on which mode of the pair is flipped
        for _ in range(20):
            c = random_physical_cov(2, rng)
            mu1 = symplectic_eigenvalues(partial_transpose(c, 1))[0]
            mu2 = symplectic_eigenvalues(partial_transpose(c, 2))[0]
            e1 = max(0.0, -np.log(2 * mu1))
            e2 = max(0.0, -np.log(2 * mu2))
            assert e1 == pytest.approx(e2, abs=1e-9)

    def test_simon_criterion_consistency(self, rng):
        for _ in range(50):
            c = random_physical_cov(2, rng)
            mu = symplectic_eigenvalues(partial_transpose(c, 1))[0]
            e = log_negativity(c, "M1M2")
            assert (e > 0) == (mu < 0.5 - 1e-12)

    def test_monotone_under_isotropic_noise(self, rng):
        c = tmsv_cov(0.6)
        values = [log_negativity(c + t * np.eye(4), "M1M2") for t in np.linspace(0.0, 1.5, 16)]
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))

    def test_one_vs_two_on_product_state(self):
        c = np.zeros((6, 6))
        c[:4, :4] = tmsv_cov(0.5)
        c[4:, 4:] = vacuum(1)
        assert log_negativity(c, "1|23") == pytest.approx(1.0, abs=1e-10)
        assert log_negativity(c, "3|12") == 0.0

    def test_label_validation(self, rng):
        with pytest.raises(ValueError):
            log_negativity(random_physical_cov(2, rng), "1|23")
        with pytest.raises(ValueError):
            log_negativity(random_physical_cov(3, rng), "M1M2")
        with pytest.raises(ValueError):
            log_negativity(random_physical_cov(2, rng), "bogus")


class TestTwoModeInvariantFormula:
    def test_vacuum(self):
        assert two_mode_logneg_invariant(vacuum(2)) == 0.0

    def test_tmsv_half(self):
        assert two_mode_logneg_invariant(tmsv_cov(0.5)) == pytest.approx(1.0, abs=1e-10)

    def test_cross_method_agreement(self, rng):
        for _ in range(200):
            c = random_physical_cov(2, rng)
            assert two_mode_logneg_invariant(c) == pytest.approx(
                log_negativity(c, "M1M2"), abs=1e-9
            )


class TestResidualContangle:
    def test_product_of_thermals_is_zero(self):
        res = residual_contangle(gaussian_cv.thermal_cov([0.1, 0.7, 0.0]))
        assert res.r1 == res.r2 == res.r3 == res.r_min == 0.0

    def test_tmsv_with_spectator_vacuum(self):
        # all three residuals vanish: the split negativities match the
        # pairwise ones exactly for a pure two-mode state plus a spectator
        r = 0.4
        c = np.zeros((6, 6))
        c[:4, :4] = tmsv_cov(r)
        c[4:, 4:] = vacuum(1)
        res = residual_contangle(c)
        assert res.r3 == pytest.approx(0.0, abs=1e-9)
        assert res.r1 == pytest.approx(0.0, abs=1e-9)
        assert res.r2 == pytest.approx(0.0, abs=1e-9)

    def test_r_min_is_the_minimum(self, rng):
        res = residual_contangle(random_physical_cov(3, rng))
        assert res.r_min == min(res.r1, res.r2, res.r3)

    def test_rejects_two_modes(self, rng):
        with pytest.raises(ValueError):
            residual_contangle(random_physical_cov(2, rng))


class TestCheckPhysical:
    def test_vacuum_margin_zero(self):
        ok, margin = check_physical(vacuum(1))
        assert ok
        assert margin == pytest.approx(0.0, abs=1e-12)

    def test_below_uncertainty_fails(self):
        ok, margin = check_physical(np.diag([0.1, 0.1]))
        assert not ok
        assert margin < -1e-3

    def test_random_physical_pass(self, rng):
        for _ in range(20):
            ok, margin = check_physical(random_physical_cov(3, rng))
            assert ok
            assert margin >= -1e-9
