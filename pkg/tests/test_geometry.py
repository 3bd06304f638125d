import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nlamusic.geometry import (ArrayGeometry, nonuniform_progressive, steering_derivative,
                               steering_vector, uniform_linear)

from conftest import random_geometry


@pytest.mark.parametrize("M,hw", [(11, 10), (2, 1), (12, 11)])
def test_uniform_positions(M, hw):
    g = uniform_linear(M, hw)
    np.testing.assert_array_equal(g.p, 0.5 * np.arange(M))
    assert g.array_length == 0.5 * hw
    assert g.scheme == "uniform"
    assert np.all(g.q == 0)


def test_uniform_length_mismatch_rejected():
    with pytest.raises(ValueError, match="spans 10 half-wavelengths"):
        uniform_linear(11, 9)
    with pytest.raises(ValueError):
        uniform_linear(1, 0)


def test_geometric_growth_one_is_uniform():
    g = nonuniform_progressive(5, 5.0, "geometric", 1.0)
    np.testing.assert_allclose(g.spacings, 1.25, rtol=0, atol=1e-15)


def test_geometric_forced_first_spacing():
    g = nonuniform_progressive(3, 3.0, "geometric", 2.0)
    np.testing.assert_allclose(g.p, [0, 1, 3], atol=1e-15)


def test_geometric_series_spacings():
    # closed-form geometric-series sum fixes the first spacing
    r = 1.5
    d1 = 5.0 * (r - 1) / (r ** 4 - 1)
    assert d1 == pytest.approx(5 / (1 + 1.5 + 1.5 ** 2 + 1.5 ** 3), rel=1e-15)
    g = nonuniform_progressive(5, 5.0, "geometric", r)
    np.testing.assert_allclose(g.spacings, d1 * np.array([1, 1.5, 2.25, 3.375]), rtol=1e-13)
    assert abs(g.spacings.sum() - 5.0) <= 1e-12


def test_arithmetic_ratio_is_last_over_first():
    g = nonuniform_progressive(6, 4.0, "arithmetic", 3.0)
    d = g.spacings
    assert d[-1] / d[0] == pytest.approx(3.0)
    np.testing.assert_allclose(np.diff(d), np.diff(d)[0])


def test_shrinking_growth_rejected():
    with pytest.raises(ValueError, match="growth"):
        nonuniform_progressive(5, 5.0, "geometric", 0.9)
    with pytest.raises(ValueError):
        nonuniform_progressive(5, 5.0, "spiral", 1.2)
    with pytest.raises(ValueError):
        nonuniform_progressive(5, 0.0, "geometric", 1.2)


@given(M=st.integers(2, 20), hw=st.floats(0.5, 40), growth=st.floats(1.0, 3.0),
       scheme=st.sampled_from(["arithmetic", "geometric"]))
@settings(max_examples=200, deadline=None)
def test_progressive_invariants(M, hw, growth, scheme):
    L = 0.5 * hw
    g = nonuniform_progressive(M, L, scheme, growth)
    d = g.spacings
    assert g.M == M
    assert g.positions[0] == (0.0, 0.0)
    assert np.all(g.q == 0)
    assert np.all(d > 0)
    assert g.array_length == L
    assert abs(d.sum() - L) <= 1e-12
    assert np.all(np.diff(d) >= -1e-12 * L)
    if growth > 1.0 + 1e-9 and M > 2:
        assert np.all(np.diff(d) > 0)


@pytest.mark.parametrize("M", [2, 3, 5, 11, 12])
def test_uniform_matches_degenerate_geometric(M):
    u = uniform_linear(M, M - 1)
    g = nonuniform_progressive(M, (M - 1) / 2, "geometric", 1.0)
    np.testing.assert_allclose(u.p, g.p, rtol=0, atol=1e-12)


def test_geometry_is_hashable_and_validated():
    g = uniform_linear(4)
    assert hash(g) == hash(uniform_linear(4))
    with pytest.raises(ValueError):
        ArrayGeometry([(0.0, 0.0)])
    with pytest.raises(ValueError):
        ArrayGeometry([(0.0, 0.0), (1.0, np.nan)])


def test_steering_origin_and_known_values():
    g = uniform_linear(3)
    for th in (0.3, 1.0, 2.5):
        assert steering_vector(g, th)[0] == 1 + 0j
    np.testing.assert_allclose(steering_vector(g, np.pi / 3), [1, 1j, -1], atol=1e-15)
    np.testing.assert_allclose(steering_vector(g, np.pi / 2), [1, 1, 1], atol=1e-15)


def test_steering_matrix_shape_and_wavelength():
    g = uniform_linear(4)
    th = np.array([0.5, 1.0, 2.0])
    A = steering_vector(g, th)
    assert A.shape == (4, 3)
    np.testing.assert_array_equal(A[:, 1], steering_vector(g, 1.0))
    # doubling the wavelength halves the wavenumber
    np.testing.assert_allclose(steering_vector(g, 1.2, wavelength=2.0),
                               np.exp(1j * np.pi * g.p * np.cos(1.2)), atol=1e-14)


def test_steering_rejects_out_of_sector():
    g = uniform_linear(3)
    for th in (0.0, np.pi, -0.1, 4.0):
        with pytest.raises(ValueError):
            steering_vector(g, th)
    with pytest.raises(ValueError):
        steering_vector(g, 1.0, wavelength=0.0)


def test_derivative_known_values():
    g = uniform_linear(3)
    for th in (0.4, 2.0):
        assert steering_derivative(g, th, order=1)[0] == 0
        assert steering_derivative(g, th, order=2)[0] == 0
    np.testing.assert_allclose(steering_derivative(g, np.pi / 2, order=1),
                               [0, -1j * np.pi, -2j * np.pi], atol=1e-14)
    with pytest.raises(ValueError):
        steering_derivative(g, 1.0, order=3)


def test_derivatives_match_finite_differences(rng):
    h = 1e-6
    for _ in range(100):
        g = random_geometry(rng)
        th = rng.uniform(0.1, np.pi - 0.1)
        a_p, a_0, a_m = (steering_vector(g, th + h), steering_vector(g, th),
                         steering_vector(g, th - h))
        d1 = steering_derivative(g, th, order=1)
        fd1 = (a_p - a_m) / (2 * h)
        scale = np.max(np.abs(d1))
        if scale > 0:
            assert np.max(np.abs(fd1 - d1)) / scale <= 1e-5
        d2 = steering_derivative(g, th, order=2)
        h2 = 1e-4
        fd2 = (steering_vector(g, th + h2) - 2 * a_0 + steering_vector(g, th - h2)) / h2 ** 2
        scale = np.max(np.abs(d2))
        if scale > 0:
            assert np.max(np.abs(fd2 - d2)) / scale <= 1e-5


@given(theta=st.floats(1e-3, np.pi - 1e-3), seed=st.integers(0, 2 ** 32 - 1))
@settings(max_examples=100, deadline=None)
def test_steering_unit_modulus(theta, seed):
    g = random_geometry(np.random.default_rng(seed))
    np.testing.assert_allclose(np.abs(steering_vector(g, theta)), 1.0, rtol=0, atol=1e-14)
