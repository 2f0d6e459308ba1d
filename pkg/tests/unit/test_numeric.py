"""
Tests for the numeric core: seeded RNG, matrix ops and the finite-difference oracle.
"""
import numpy as np
import pytest

from src.core.exceptions import OracleError, ParameterError, ShapeError
from src.core.numeric import (
    SeededRng,
    dropout_mask,
    finite_diff_grad,
    matmul,
    relative_error,
    relu,
    sigmoid,
    softmax_rows,
)


class TestSeededRng:
    def test_golden_stream_for_seed_one(self):
        rng = SeededRng(1)
        assert [rng.next_u64() for _ in range(4)] == [
            0x910A2DEC89025CC1,
            0xBEEB8DA1658EEC67,
            0xF893A2EEFB32555E,
            0x71C18690EE42C90B,
        ]

    def test_golden_uniform_for_seed_one(self):
        assert SeededRng(1).uniform() == (0x910A2DEC89025CC1 >> 11) / 2.0**53

    def test_same_seed_same_stream(self):
        a, b = SeededRng(42), SeededRng(42)
        assert [a.next_u64() for _ in range(10)] == [b.next_u64() for _ in range(10)]

    def test_different_seeds_differ(self):
        assert SeededRng(1).next_u64() != SeededRng(2).next_u64()

    def test_array_matches_scalar_calls(self):
        scalar, vector = SeededRng(99), SeededRng(99)
        expected = [scalar.next_u64() for _ in range(17)]
        assert [int(v) for v in vector.u64_array(17)] == expected
        # both generators end in the same state
        assert scalar.next_u64() == vector.next_u64()

    def test_uniform_array_matches_scalar_calls(self):
        scalar, vector = SeededRng(5), SeededRng(5)
        expected = [scalar.uniform() for _ in range(50)]
        np.testing.assert_array_equal(vector.uniform_array(50), expected)

    def test_gaussian_array_matches_scalar_calls(self):
        scalar, vector = SeededRng(8), SeededRng(8)
        expected = [scalar.gaussian() for _ in range(25)]
        np.testing.assert_allclose(vector.gaussian_array(25), expected, rtol=1e-12, atol=1e-14)

    def test_uniform_range(self, rng):
        u = rng.uniform_array(10_000)
        assert u.min() >= 0.0
        assert u.max() < 1.0
        assert abs(u.mean() - 0.5) < 0.02

    def test_gaussian_moments(self, rng):
        g = rng.gaussian_array(20_000)
        assert np.all(np.isfinite(g))
        assert abs(g.mean()) < 0.05
        assert abs(g.std() - 1.0) < 0.05

    def test_randint_is_inclusive(self, rng):
        draws = {rng.randint(3, 5) for _ in range(500)}
        assert draws == {3, 4, 5}

    def test_permutation(self, rng):
        order = rng.permutation(20)
        assert sorted(order) == list(range(20))
        assert order != list(range(20))

    def test_empty_array(self, rng):
        assert rng.u64_array(0).size == 0


class TestMatrixOps:
    def test_matmul(self):
        a = np.array([[1.0, 2.0], [3.0, 4.0]])
        b = np.array([[5.0], [6.0]])
        np.testing.assert_array_equal(matmul(a, b), [[17.0], [39.0]])

    def test_matmul_shape_error_carries_shapes(self):
        with pytest.raises(ShapeError) as info:
            matmul(np.zeros((2, 3)), np.zeros((2, 3)))
        assert info.value.shapes == ((2, 3), (2, 3))

    def test_matmul_is_associative(self, rng):
        for _ in range(50):
            a = rng.gaussian_array(4 * 6).reshape(4, 6)
            b = rng.gaussian_array(6 * 3).reshape(6, 3)
            c = rng.gaussian_array(3 * 5).reshape(3, 5)
            left, right = matmul(matmul(a, b), c), matmul(a, matmul(b, c))
            assert np.linalg.norm(left - right) <= 1e-9 * np.linalg.norm(left)

    def test_softmax_shift_invariance(self, rng):
        m = rng.gaussian_array(30).reshape(5, 6) * 10.0
        shifts = rng.gaussian_array(5).reshape(5, 1) * 100.0
        np.testing.assert_allclose(softmax_rows(m + shifts), softmax_rows(m), rtol=0, atol=1e-12)

    def test_softmax_rows_are_stochastic(self, rng):
        m = rng.gaussian_array(40).reshape(5, 8) * 50.0
        s = softmax_rows(m)
        np.testing.assert_allclose(s.sum(axis=1), 1.0, atol=1e-12)
        assert np.all(s >= 0.0)

    def test_softmax_survives_huge_logits(self):
        s = softmax_rows(np.array([[1000.0, 1000.0, -1000.0]]))
        np.testing.assert_allclose(s, [[0.5, 0.5, 0.0]], atol=1e-12)

    def test_softmax_does_not_mutate_input(self):
        m = np.array([[1.0, 2.0]])
        softmax_rows(m)
        np.testing.assert_array_equal(m, [[1.0, 2.0]])

    def test_relu(self):
        np.testing.assert_array_equal(relu(np.array([[-1.0, 0.0, 2.0]])), [[0.0, 0.0, 2.0]])

    def test_sigmoid_is_finite_for_extremes(self):
        s = sigmoid(np.array([[-1e6, 0.0, 1e6]]))
        assert np.all(np.isfinite(s))
        assert s[0, 0] > 0.0
        assert s[0, 1] == 0.5


class TestDropoutMask:
    def test_rate_zero_is_all_ones_and_consumes_nothing(self):
        rng = SeededRng(3)
        mask = dropout_mask((3, 4), 0.0, rng)
        np.testing.assert_array_equal(mask, np.ones((3, 4)))
        assert rng.next_u64() == SeededRng(3).next_u64()

    def test_values_are_inverted_dropout(self, rng):
        mask = dropout_mask((50, 50), 0.25, rng)
        assert set(np.unique(mask)) <= {0.0, 1.0 / 0.75}
        assert abs((mask == 0).mean() - 0.25) < 0.03

    @pytest.mark.parametrize("rate", [-0.1, 1.0, 1.5])
    def test_invalid_rate(self, rng, rate):
        with pytest.raises(ParameterError):
            dropout_mask((2, 2), rate, rng)

    def test_deterministic(self):
        np.testing.assert_array_equal(
            dropout_mask((4, 4), 0.5, SeededRng(10)),
            dropout_mask((4, 4), 0.5, SeededRng(10)),
        )


class TestFiniteDifferences:
    def test_quadratic_gradient(self):
        a = np.array([1.0, -2.0, 3.0])

        def f(x):
            return float(np.sum(a * x * x))

        at = np.array([0.5, 1.5, -1.0])
        np.testing.assert_allclose(finite_diff_grad(f, at), 2 * a * at, atol=1e-8)

    def test_constant_function_has_zero_gradient(self):
        np.testing.assert_array_equal(finite_diff_grad(lambda x: 4.2, np.array([1.0, -3.0, 7.0])), np.zeros(3))

    def test_product_gradient(self):
        grad = finite_diff_grad(lambda v: float(v[0] * v[1]), np.array([2.0, 5.0]))
        np.testing.assert_allclose(grad, [5.0, 2.0], atol=1e-6)

    def test_does_not_modify_point(self):
        at = np.array([1.0, 2.0])
        finite_diff_grad(lambda x: float(x.sum()), at)
        np.testing.assert_array_equal(at, [1.0, 2.0])

    def test_nonpositive_eps(self):
        with pytest.raises(ParameterError):
            finite_diff_grad(lambda x: 0.0, np.zeros(2), eps=0.0)

    def test_non_finite_function(self):
        with pytest.raises(OracleError):
            finite_diff_grad(lambda x: float("nan"), np.zeros(2))

    def test_relative_error(self):
        assert relative_error(np.zeros(3), np.zeros(3)) == 0.0
        assert relative_error(np.array([1.0, 0.0]), np.array([1.0, 0.0])) == 0.0
        assert relative_error(np.array([1.0]), np.array([-1.0])) == pytest.approx(1.0)
