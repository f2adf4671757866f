"""Amplitude extraction, cross sections, threshold/eikonal references."""

import dataclasses
from math import pi, sqrt

import numpy as np
import pytest

from scatter2d import (
    AmplitudeSet,
    EllipticBarrier,
    ProblemSetup,
    RadialGrid,
    RadialSolution,
    amplitude_at,
    assemble,
    differential_cs,
    eikonal_sigma,
    extract_amplitudes,
    make_angular_grid,
    optical_residual,
    plane_wave_samples,
    scattering_length,
    sigma_total,
    solve_band,
    symmetrize,
    threshold_amplitude,
    total_cs,
)


def make_set(f_m, q=1.0, phi_q=0.0):
    f_m = np.asarray(f_m, dtype=complex)
    grid = make_angular_grid((f_m.size - 1) // 2)
    return AmplitudeSet(q=q, phi_q=phi_q, f_m=f_m, angular=grid, stability_metric=0.0)


def test_amplitude_constant_mode():
    amp = make_set([0.0, sqrt(2 * pi), 0.0])
    for phi in (0.0, 1.0, np.pi, 5.0):
        assert amplitude_at(amp, phi) == pytest.approx(1.0, abs=1e-14)


def test_amplitude_single_positive_mode():
    amp = make_set([0.0, 0.0, sqrt(2 * pi)])
    assert amplitude_at(amp, np.pi) == pytest.approx(-1.0, abs=1e-14)
    assert amplitude_at(amp, 0.0) == pytest.approx(1.0, abs=1e-14)


def test_amplitude_at_shapes():
    amp = make_set(np.arange(5) + 0j)
    scalar = amplitude_at(amp, 0.3)
    assert isinstance(scalar, complex)
    arr = amplitude_at(amp, np.array([[0.3, 0.4], [0.5, 0.6]]))
    assert arr.shape == (2, 2)
    assert arr[0, 0] == pytest.approx(scalar)


def test_pure_incident_wave_extracts_to_zero():
    setup = ProblemSetup(
        q=1.3,
        phi_q=0.0,
        potential=EllipticBarrier.circular(0.0, 1.0),
        angular=make_angular_grid(4),
        radial=RadialGrid(60, 9.0),
    )
    rho = setup.radial.nodes
    psi = np.zeros((61, setup.angular.n_nodes, 1), dtype=complex)
    for n in range(1, 61):
        psi[n, :, 0] = np.sqrt(rho[n]) * plane_wave_samples(1.3, rho[n], setup.angular.nodes, 4)
    sol = RadialSolution(
        setup=setup,
        psi=psi,
        residual=np.array([0.0]),
        warnings=[],
        incidence="rotate-potential",
        phi_q_values=np.array([0.0]),
        method="banded",
    )
    amp = extract_amplitudes(sol)
    assert np.max(np.abs(amp.f_m)) < 1e-12


def test_sigma_is_parseval_sum():
    rng = np.random.default_rng(9)
    f_m = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    amp = make_set(f_m)
    # dense rectangle rule on |f|^2 (band limit 2M needs > 4M+1 nodes)
    phi = np.linspace(0.0, 2 * pi, 64, endpoint=False)
    quad = np.sum(np.abs(amplitude_at(amp, phi)) ** 2) * (2 * pi / 64)
    assert sigma_total(amp) == pytest.approx(quad, rel=1e-12)
    assert sigma_total(amp) == pytest.approx(float(np.sum(np.abs(f_m) ** 2)), rel=1e-14)


def test_differential_cs_basics():
    amp = make_set([0.0, sqrt(2 * pi), 0.0])
    np.testing.assert_allclose(differential_cs(amp, np.linspace(0, 6, 13)), 1.0, atol=1e-13)
    rng = np.random.default_rng(1)
    f_m = rng.standard_normal(7) + 1j * rng.standard_normal(7)
    a = make_set(f_m)
    b = make_set(f_m * np.exp(0.7j))
    phi = np.linspace(0.0, 2 * pi, 11)
    np.testing.assert_allclose(differential_cs(a, phi), differential_cs(b, phi), rtol=1e-12)


def test_symmetrize_constant_amplitude():
    amp = make_set([0.0, 3.0 - 1.0j, 0.0])
    f_g, f_u = symmetrize(amp)
    assert amplitude_at(f_g, 0.4) == pytest.approx(sqrt(2.0) * amplitude_at(amp, 0.4), rel=1e-14)
    assert np.max(np.abs(f_u.f_m)) == 0.0


def test_symmetrize_odd_mode_vanishes_gerade():
    amp = make_set([0.0, 0.0, 2.0 + 1.0j])  # pure m = +1
    f_g, f_u = symmetrize(amp)
    assert np.max(np.abs(f_g.f_m)) == 0.0
    assert sigma_total(f_u) == pytest.approx(2.0 * sigma_total(amp), rel=1e-14)


def test_symmetrize_sigma_identity():
    rng = np.random.default_rng(21)
    f_m = rng.standard_normal(11) + 1j * rng.standard_normal(11)
    amp = make_set(f_m)
    f_g, f_u = symmetrize(amp)
    total = sigma_total(f_g) + sigma_total(f_u)
    assert total == pytest.approx(2.0 * sigma_total(amp), rel=1e-12)
    # parity of the reconstructed amplitudes under a half turn
    phi = 0.83
    assert amplitude_at(f_g, phi - pi) == pytest.approx(amplitude_at(f_g, phi), rel=1e-12)
    assert amplitude_at(f_u, phi - pi) == pytest.approx(-amplitude_at(f_u, phi), rel=1e-12)


def test_total_cs_single_set_and_uniform_grid():
    rng = np.random.default_rng(5)
    f_m = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    amp = make_set(f_m)
    assert total_cs(amp) == sigma_total(amp)
    assert total_cs([amp]) == sigma_total(amp)
    nodes = 2 * pi * np.arange(7) / 7
    sets = [make_set(f_m, phi_q=p) for p in nodes]
    assert total_cs(sets) == pytest.approx(sigma_total(amp), rel=1e-14)
    with pytest.raises(ValueError):
        total_cs([make_set(f_m, phi_q=0.0), make_set(f_m, phi_q=1.0), make_set(f_m, phi_q=2.0)])
    with pytest.raises(ValueError):
        total_cs([])


def test_circular_sigma_independent_of_incidence_count():
    pot = EllipticBarrier.circular(40.0, 0.6)
    ang = make_angular_grid(2)
    rad = RadialGrid(300, 8.0)
    setup = ProblemSetup(q=1.5, phi_q=0.0, potential=pot, angular=ang, radial=rad)
    single = extract_amplitudes(solve_band(assemble(setup)))
    nodes = 2 * pi * np.arange(101) / 101
    batch = extract_amplitudes(
        solve_band(assemble(setup, incidence="rotate-wave", phi_q_batch=nodes))
    )
    assert total_cs(batch) == pytest.approx(total_cs(single), rel=1e-12)


def test_circular_differential_cs_frame_independent():
    # extraction maps batched columns to the computation frame, so a circular
    # potential must give the same angular pattern for every incidence
    pot = EllipticBarrier.circular(40.0, 0.6)
    ang = make_angular_grid(4)
    rad = RadialGrid(400, 8.0)
    setup = ProblemSetup(q=1.5, phi_q=0.0, potential=pot, angular=ang, radial=rad)
    ref = extract_amplitudes(solve_band(assemble(setup)))
    rotated = extract_amplitudes(
        solve_band(assemble(setup, incidence="rotate-wave", phi_q_batch=[1.1]))
    )
    phi = np.linspace(0.0, 2 * pi, 37)
    np.testing.assert_allclose(
        differential_cs(rotated, phi), differential_cs(ref, phi), rtol=0, atol=1e-8
    )


def test_stability_metric_small_on_converged_run():
    setup = ProblemSetup(
        q=1.5,
        phi_q=0.0,
        potential=EllipticBarrier.circular(40.0, 0.6),
        angular=make_angular_grid(2),
        radial=RadialGrid(500, 9.0),
    )
    amp = extract_amplitudes(solve_band(assemble(setup)))
    assert amp.stability_metric < 1e-5
    assert amp.warnings == ()


def test_solver_warnings_propagate():
    setup = ProblemSetup(
        q=1.5,
        phi_q=0.0,
        potential=EllipticBarrier.circular(40.0, 0.6),
        angular=make_angular_grid(1),
        radial=RadialGrid(200, 9.0),
    )
    sol = solve_band(assemble(setup))
    tagged = dataclasses.replace(sol, warnings=["synthetic solver warning"])
    amp = extract_amplitudes(tagged)
    assert "synthetic solver warning" in amp.warnings


def test_optical_residual_definition():
    rng = np.random.default_rng(3)
    f_m = rng.standard_normal(7) + 1j * rng.standard_normal(7)
    amp = make_set(f_m, q=2.0)
    sigma = sigma_total(amp)
    expected = abs(sigma - sqrt(8 * pi / 2.0) * amplitude_at(amp, 0.0).imag) / sigma
    assert optical_residual(amp) == pytest.approx(expected, rel=1e-12)


def test_threshold_amplitude_table_values():
    assert threshold_amplitude(0.125, 0.01) == pytest.approx(-0.49486 + 0.11430j, abs=1e-5)
    assert threshold_amplitude(1.0, 0.01) == pytest.approx(-0.23901 + 0.07952j, abs=1e-5)


def test_threshold_amplitude_sign_structure():
    for q, a in ((0.01, 0.05), (0.125, 0.01), (0.6, 0.3), (1.0, 0.01)):
        f = threshold_amplitude(q, a)
        assert f.real < 0.0
        assert f.imag > 0.0


def test_threshold_amplitude_domain():
    with pytest.raises(ValueError):
        threshold_amplitude(10.0, 0.2)
    with pytest.raises(ValueError):
        threshold_amplitude(0.0, 0.01)
    with pytest.raises(ValueError):
        threshold_amplitude(1.0, -0.1)


def test_scattering_length_round_trips():
    for q, a in ((0.125, 0.01), (0.5, 0.3), (0.01, 1.0)):
        f = threshold_amplitude(q, a)
        assert scattering_length(q, f) == pytest.approx(a, rel=1e-10)


def test_eikonal_sigma_values():
    assert eikonal_sigma(10.0, 1.0) == pytest.approx(2.2419964865591713, rel=1e-14)
    assert eikonal_sigma(4.0, 1.0) / eikonal_sigma(1.0, 1.0) == pytest.approx(0.5, rel=1e-14)
    assert eikonal_sigma(3.0, 0.0) == 0.0
    with pytest.raises(ValueError):
        eikonal_sigma(0.0, 1.0)
    with pytest.raises(ValueError):
        eikonal_sigma(1.0, -1.0)
