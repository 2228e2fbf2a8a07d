import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from isowiener.constants import c_app, c_int
from isowiener.kernel import (covariance_matrix, increment_variance, kernel_double_integral,
                              kernel_eval, kernel_mean_embedding)

from oracles import duffy_double_integral, embedding_2d_closed, mc_mean

unit = st.floats(0.0, 1.0, allow_nan=False)


def point_pairs(d):
    return st.tuples(arrays(float, d, elements=unit), arrays(float, d, elements=unit))


def test_kernel_spot_values():
    assert kernel_eval([0.0, 0.0], [0.0, 0.0]) == 0.0
    assert kernel_eval([0.6, 0.8], [0.6, 0.8]) == pytest.approx(1.0, abs=1e-15)
    assert kernel_eval([0.3], [0.7]) == pytest.approx(0.3, abs=1e-15)


def test_increment_spot_values():
    assert increment_variance([0.2, 0.9], [0.2, 0.9]) == 0.0
    assert increment_variance([0.0, 0.0], [0.3, 0.4]) == pytest.approx(0.5, abs=1e-15)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        kernel_eval([0.1, 0.2], [0.1])
    with pytest.raises(ValueError):
        increment_variance([0.1], [0.1, 0.2])


def test_increment_identity_random_pairs():
    rng = np.random.default_rng(0)
    for _ in range(100):
        d = rng.integers(1, 6)
        x, y = rng.random(d), rng.random(d)
        lhs = increment_variance(x, y)
        rhs = kernel_eval(x, x) + kernel_eval(y, y) - 2 * kernel_eval(x, y)
        assert abs(lhs - rhs) < 1e-14


@given(point_pairs(3))
def test_kernel_symmetric(pair):
    x, y = pair
    assert kernel_eval(x, y) == kernel_eval(y, x)


@given(st.tuples(arrays(float, 2, elements=unit), arrays(float, 2, elements=unit),
                 arrays(float, 2, elements=unit)))
def test_increment_triangle_inequality(triple):
    x, y, z = triple
    assert increment_variance(x, y) >= 0
    assert increment_variance(x, z) <= increment_variance(x, y) + increment_variance(y, z) + 1e-15


def test_d1_reduces_to_min():
    g = np.linspace(0, 1, 41)
    for x in g:
        for y in g:
            assert abs(kernel_eval([x], [y]) - min(x, y)) < 1e-15


def test_covariance_small_cases():
    np.testing.assert_array_equal(covariance_matrix([[0.5]]), [[0.5]])
    np.testing.assert_allclose(covariance_matrix([[0.25], [0.75]]),
                               [[0.25, 0.25], [0.25, 0.75]], atol=1e-15)
    cov = covariance_matrix([[0.0, 0.0], [0.3, 0.7], [0.9, 0.2]])
    assert np.all(cov[0] == 0) and np.all(cov[:, 0] == 0)


def test_covariance_entries_and_diagonal():
    pts = np.random.default_rng(3).random((12, 3))
    cov = covariance_matrix(pts)
    np.testing.assert_array_equal(cov, cov.T)
    np.testing.assert_allclose(np.diag(cov), np.linalg.norm(pts, axis=1), rtol=0, atol=0)
    for i in range(12):
        for j in range(12):
            assert abs(cov[i, j] - kernel_eval(pts[i], pts[j])) < 1e-15


def test_covariance_positive_semidefinite():
    rng = np.random.default_rng(7)
    for _ in range(50):
        d, m = rng.integers(1, 4), rng.integers(1, 21)
        cov = covariance_matrix(rng.random((m, d)))
        assert np.linalg.eigvalsh(cov).min() >= -1e-9


@pytest.mark.parametrize("c", [0.0, 0.1, 0.5, 0.77, 1.0])
def test_embedding_1d_closed_form(c):
    assert abs(kernel_mean_embedding([c], 32) - (c - c * c / 2)) < 1e-12


def test_embedding_spot_values():
    assert kernel_mean_embedding([0.5], 32) == pytest.approx(0.375, abs=1e-12)
    assert kernel_mean_embedding([0.0], 32) == 0.0
    assert kernel_mean_embedding([1.0], 32) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("x", [(0.3, 0.4), (0.9, 0.1), (0.5, 0.5), (1.0, 0.0), (0.01, 0.99)])
def test_embedding_2d_closed_form(x):
    assert abs(kernel_mean_embedding(np.array(x), 32) - embedding_2d_closed(x)) < 1e-8


def test_embedding_3d_monte_carlo():
    x = np.array([0.2, 0.7, 0.45])
    k = lambda u: (np.linalg.norm(u, axis=1) + np.linalg.norm(x) - np.linalg.norm(u - x, axis=1)) / 2
    mean, se = mc_mean(k, 3, 2_000_000, 13)
    assert abs(kernel_mean_embedding(x, 32) - mean) < 4 * se


def test_embedding_vectorized_matches_scalar():
    pts = np.random.default_rng(1).random((5, 2))
    vec = kernel_mean_embedding(pts)
    for p, v in zip(pts, vec):
        assert v == pytest.approx(kernel_mean_embedding(p), abs=1e-14)


def test_embedding_invalid_order():
    with pytest.raises(ValueError):
        kernel_mean_embedding([0.5], 1)


def test_double_integral_d1():
    assert abs(kernel_double_integral(1) - 1 / 3) < 1e-10


@pytest.mark.parametrize("d", [1, 2, 3])
def test_double_integral_identity(d):
    assert abs(kernel_double_integral(d) - (2 * c_app(d) - c_int(d))) < 1e-10


@pytest.mark.parametrize("d", [1, 2])
def test_double_integral_direct_quadrature(d):
    def k(x, y):
        return (np.linalg.norm(x, axis=1) + np.linalg.norm(y, axis=1)
                - np.linalg.norm(x - y, axis=1)) / 2
    assert abs(duffy_double_integral(k, d, 12) - kernel_double_integral(d)) < 1e-6


def test_double_integral_unsupported():
    with pytest.raises(ValueError):
        kernel_double_integral(6)
