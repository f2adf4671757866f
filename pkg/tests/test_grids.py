"""Angular/radial meshes, grid-Fourier transforms, interpolation, kinetic matrix."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scatter2d import (
    FourierCoefficients,
    RadialGrid,
    fourier_to_grid,
    grid_to_fourier,
    interpolate,
    kinetic_matrix,
    make_angular_grid,
)


def test_single_node_grid():
    grid = make_angular_grid(0)
    assert grid.n_nodes == 1
    np.testing.assert_array_equal(grid.nodes, [0.0])


def test_three_node_grid():
    grid = make_angular_grid(1)
    np.testing.assert_allclose(grid.nodes, [0.0, 2 * np.pi / 3, 4 * np.pi / 3], rtol=1e-15)


def test_node_spacing_uniform():
    grid = make_angular_grid(2)
    assert grid.n_nodes == 5
    assert np.all(np.diff(grid.nodes) > 0)
    np.testing.assert_allclose(np.diff(grid.nodes), 2 * np.pi / 5, rtol=1e-14)
    assert grid.nodes[-1] < 2 * np.pi


def test_negative_order_rejected():
    with pytest.raises(ValueError):
        make_angular_grid(-1)


def test_m_values_ordering():
    grid = make_angular_grid(3)
    np.testing.assert_array_equal(grid.m_values, [-3, -2, -1, 0, 1, 2, 3])


def test_kinetic_single_mode():
    np.testing.assert_array_equal(kinetic_matrix(make_angular_grid(0)), [[0.0]])


def test_kinetic_three_node_values():
    k = kinetic_matrix(make_angular_grid(1))
    expected = np.array(
        [
            [-2 / 3, 1 / 3, 1 / 3],
            [1 / 3, -2 / 3, 1 / 3],
            [1 / 3, 1 / 3, -2 / 3],
        ]
    )
    np.testing.assert_allclose(k, expected, atol=1e-14)


def test_kinetic_structure():
    k = kinetic_matrix(make_angular_grid(6))
    assert np.isrealobj(k)
    np.testing.assert_allclose(k, k.T, atol=1e-13)
    np.testing.assert_allclose(k.sum(axis=1), 0.0, atol=1e-11)
    # circulant: every row is a cyclic shift of the first
    for j in range(1, k.shape[0]):
        np.testing.assert_allclose(k[j], np.roll(k[0], j), atol=1e-13)


@pytest.mark.parametrize("m", range(-5, 6))
def test_kinetic_eigenfunctions(m):
    grid = make_angular_grid(5)
    k = kinetic_matrix(grid)
    mode = np.exp(1j * m * grid.nodes)
    np.testing.assert_allclose(k @ mode, -(m**2) * mode, atol=1e-11)


def test_forward_constant():
    grid = make_angular_grid(4)
    coeffs = grid_to_fourier(np.full(grid.n_nodes, 2.5 + 0j), grid)
    assert coeffs[0] == pytest.approx(2.5)
    for m in range(1, 5):
        assert abs(coeffs[m]) < 1e-15
        assert abs(coeffs[-m]) < 1e-15


def test_forward_single_mode():
    grid = make_angular_grid(3)
    coeffs = grid_to_fourier(np.exp(1j * grid.nodes), grid)
    assert coeffs[1] == pytest.approx(1.0)
    for m in (-3, -2, -1, 0, 2, 3):
        assert abs(coeffs[m]) < 1e-14


def test_inverse_constant_mode():
    grid = make_angular_grid(2)
    values = np.zeros(5, dtype=complex)
    values[2] = 1.0  # m = 0 slot
    np.testing.assert_allclose(
        fourier_to_grid(FourierCoefficients(values, 0.0), grid), np.ones(5), atol=1e-15
    )


def test_inverse_first_mode():
    grid = make_angular_grid(1)
    values = np.zeros(3, dtype=complex)
    values[2] = 1.0  # m = +1 slot
    expected = np.exp(1j * np.array([0.0, 2 * np.pi / 3, 4 * np.pi / 3]))
    np.testing.assert_allclose(fourier_to_grid(FourierCoefficients(values, 0.0), grid), expected, atol=1e-15)


@given(m_order=st.integers(0, 12), seed=st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_transform_round_trip(m_order, seed):
    grid = make_angular_grid(m_order)
    rng = np.random.default_rng(seed)
    samples = rng.standard_normal(grid.n_nodes) + 1j * rng.standard_normal(grid.n_nodes)
    back = fourier_to_grid(grid_to_fourier(samples, grid), grid)
    np.testing.assert_allclose(back, samples, rtol=1e-13, atol=1e-13)
    coeffs = grid_to_fourier(samples, grid)
    again = grid_to_fourier(fourier_to_grid(coeffs, grid), grid)
    np.testing.assert_allclose(again.values, coeffs.values, rtol=1e-13, atol=1e-13)


def test_transform_length_mismatch():
    grid = make_angular_grid(2)
    with pytest.raises(ValueError):
        grid_to_fourier(np.ones(4, dtype=complex), grid)
    coeffs = grid_to_fourier(np.ones(3, dtype=complex), make_angular_grid(1))
    with pytest.raises(ValueError):
        fourier_to_grid(coeffs, grid)


def test_coefficient_indexing():
    values = np.arange(5, dtype=complex)
    coeffs = FourierCoefficients(values, 1.5)
    assert coeffs.m_order == 2
    assert coeffs[-2] == 0.0
    assert coeffs[0] == 2.0
    assert coeffs[2] == 4.0
    with pytest.raises(IndexError):
        coeffs[3]
    with pytest.raises(ValueError):
        FourierCoefficients(np.arange(4, dtype=complex), 0.0)


def test_interpolate_reproduces_nodes():
    grid = make_angular_grid(5)
    rng = np.random.default_rng(7)
    samples = rng.standard_normal(grid.n_nodes) + 1j * rng.standard_normal(grid.n_nodes)
    for j, phi in enumerate(grid.nodes):
        assert interpolate(samples, grid, phi) == pytest.approx(samples[j], abs=1e-13)


def test_interpolate_constant():
    grid = make_angular_grid(3)
    samples = np.full(grid.n_nodes, 1.25 + 0.5j)
    assert interpolate(samples, grid, 2.113) == pytest.approx(1.25 + 0.5j, abs=1e-14)


def test_interpolate_band_limited_exact():
    grid = make_angular_grid(2)
    samples = np.cos(grid.nodes).astype(complex)
    assert interpolate(samples, grid, np.pi / 5) == pytest.approx(np.cos(np.pi / 5), abs=1e-14)


def test_interpolate_periodic():
    grid = make_angular_grid(4)
    rng = np.random.default_rng(3)
    samples = rng.standard_normal(grid.n_nodes) + 0j
    a = interpolate(samples, grid, 0.37)
    b = interpolate(samples, grid, 0.37 + 2 * np.pi)
    assert b == pytest.approx(a, abs=1e-12)


def test_interpolation_error_decays():
    # smooth periodic target: the max off-node error must fall with M
    target = lambda phi: np.exp(np.cos(phi))
    probe = np.linspace(0.0, 2 * np.pi, 257)
    errors = []
    for m_order in (4, 8, 16):
        grid = make_angular_grid(m_order)
        samples = target(grid.nodes).astype(complex)
        vals = np.array([interpolate(samples, grid, p) for p in probe])
        errors.append(np.max(np.abs(vals - target(probe))))
    assert errors[0] > errors[1] > errors[2]


def test_radial_grid_nodes():
    grid = RadialGrid(10, 5.0)
    assert grid.h == pytest.approx(0.5)
    np.testing.assert_allclose(grid.nodes, 0.5 * np.arange(11), atol=1e-15)
    shifted = RadialGrid(8, 2.0, rho_min=1.0)
    assert shifted.h == pytest.approx(0.125)
    assert shifted.nodes[0] == 1.0
    assert shifted.nodes[-1] == 2.0


def test_radial_grid_validation():
    with pytest.raises(ValueError):
        RadialGrid(5, 1.0)
    with pytest.raises(ValueError):
        RadialGrid(100, 1.0, rho_min=1.0)
    with pytest.raises(ValueError):
        RadialGrid(100, 1.0, rho_min=-0.2)
