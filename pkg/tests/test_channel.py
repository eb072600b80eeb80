"""Waveguide responses, line-of-sight links, and error models."""

import numpy as np
import pytest

from pass_robust import (LosChannelModel, NormBoundedError, PinchingLayout,
                         ProbabilisticError, RadioConstants, attenuation_eta,
                         build_geometry, estimated_channel_los,
                         los_coefficient, sample_error, waveguide_response)

RC = RadioConstants(28e9, 1.4, 0.08)
RC0 = RadioConstants(28e9, 1.4, 0.0)


def test_attenuation_frozen_value():
    # 25 m down a 0.08 dB/m guide feeding 4 PAs: 10**(-0.2)/4
    assert attenuation_eta(25.0, 0.08, 4) == pytest.approx(0.1577393361200483, rel=1e-14)
    np.testing.assert_allclose(attenuation_eta([0.0, 10.0], 0.0, 4), [0.25, 0.25])


def test_response_column_energy():
    geo = build_geometry(1, 4, 50.0, 6.0, 5.0)
    lay = PinchingLayout(np.array([[0.0, 10.0, 20.0, 30.0]]))
    resp = waveguide_response(lay, geo, RC)
    # sum of 10**(-0.008*d)/4 over the four offsets
    assert np.linalg.norm(resp.per_waveguide[0]) ** 2 == pytest.approx(
        0.7747586698396912, rel=1e-13)
    # lossless columns always carry unit energy
    resp0 = waveguide_response(lay, geo, RC0)
    np.testing.assert_allclose(np.linalg.norm(resp0.matrix, axis=0), 1.0, rtol=1e-14)


def test_response_phase_and_structure():
    geo = build_geometry(2, 2, 50.0, 6.0, 5.0)
    lay = PinchingLayout(np.array([[0.0, 10.0], [5.0, 20.0]]))
    resp = waveguide_response(lay, geo, RC)
    d = 10.0
    expect = np.sqrt(10.0 ** (-0.08 * d / 10.0) / 2) * np.exp(-1j * RC.guided_wavenumber * d)
    assert resp.per_waveguide[0, 1] == pytest.approx(expect, rel=1e-13)
    # block-diagonal: off-block entries are exactly zero
    assert resp.matrix.shape == (4, 2)
    assert np.all(resp.matrix[2:, 0] == 0) and np.all(resp.matrix[:2, 1] == 0)
    np.testing.assert_allclose(resp.matrix[:2, 0], resp.per_waveguide[0], rtol=1e-15)


def test_response_rejects_pa_before_feed():
    geo = build_geometry(1, 2, 50.0, 6.0, 5.0, feed_points=[5.0])
    with pytest.raises(ValueError):
        waveguide_response(PinchingLayout(np.array([[4.0, 10.0]])), geo, RC)


def test_los_magnitude_frozen_values():
    lam = RC.wavelength
    c5 = los_coefficient([0.0, 0.0, 0.0], [0.0, 0.0, 5.0], lam)
    assert abs(c5) == pytest.approx(1.7052315331274502e-4, rel=1e-13)
    c13 = los_coefficient([0.0, 0.0, 0.0], [12.0, 0.0, 5.0], lam)  # r = 13
    assert abs(c13) == pytest.approx(6.558582819720961e-5, rel=1e-13)


def test_los_phase_is_delay():
    # at r = 2 wavelengths the phase wraps to zero: coefficient is real positive
    c = los_coefficient([0.0, 0.0, 0.0], [0.0, 0.0, 4.0], 2.0)
    assert c == pytest.approx(1.0 / (8.0 * np.pi), rel=1e-12)
    # a quarter wavelength further: phase -pi/2
    c2 = los_coefficient([0.0, 0.0, 0.0], [0.0, 0.0, 4.5], 2.0)
    assert np.angle(c2) == pytest.approx(-np.pi / 2, abs=1e-12)


def test_los_rejects_zero_range():
    with pytest.raises(ValueError):
        los_coefficient([1.0, 2.0, 3.0], [1.0, 2.0, 3.0], 0.01)


def test_estimate_is_conjugated_stack():
    geo = build_geometry(2, 2, 50.0, 6.0, 5.0)
    lay = PinchingLayout(np.array([[1.0, 3.0], [2.0, 4.0]]))
    user = np.array([10.0, 0.5, 0.0])
    est = estimated_channel_los(user, lay, geo, RC)
    model = LosChannelModel(geo, RC)
    raw = np.concatenate([model.coefficients(user, m, lay.positions[m]) for m in range(2)])
    np.testing.assert_allclose(est.vector, np.conj(raw), rtol=1e-14)
    assert est.norm == pytest.approx(np.linalg.norm(raw), rel=1e-14)


def test_hermitian_form_reproduces_received_sum():
    # vdot(h, G w) must equal the physical sum of coeff * g * w so that the
    # guided and free-space phase delays add instead of cancel
    geo = build_geometry(2, 3, 50.0, 6.0, 5.0)
    lay = PinchingLayout(np.array([[1.0, 5.0, 9.0], [2.0, 6.0, 11.0]]))
    user = np.array([7.0, -1.0, 0.0])
    est = estimated_channel_los(user, lay, geo, RC)
    resp = waveguide_response(lay, geo, RC)
    w = np.array([0.3 - 0.1j, 0.2 + 0.4j])
    model = LosChannelModel(geo, RC)
    direct = sum(
        model.coefficients(user, m, lay.positions[m, n]) * resp.per_waveguide[m, n] * w[m]
        for m in range(2) for n in range(3))
    assert np.vdot(est.vector, resp.matrix @ w) == pytest.approx(direct, rel=1e-12)


def test_ball_error_sampler():
    rng = np.random.default_rng(5)
    model = NormBoundedError(0.3)
    draws = np.array([sample_error(model, 16, rng) for _ in range(2000)])
    norms = np.linalg.norm(draws, axis=1)
    assert norms.max() <= 0.3 + 1e-12
    assert norms.max() > 0.299          # the sampler reaches the boundary
    # uniform ball in 32 real dimensions: E[r^2] = R^2 * d / (d + 2)
    assert np.mean((norms / 0.3) ** 2) == pytest.approx(32.0 / 34.0, rel=0.01)


def test_gaussian_error_sampler():
    rng = np.random.default_rng(6)
    model = ProbabilisticError(0.2, 0.9)
    draws = np.array([sample_error(model, 16, rng) for _ in range(20_000)])
    # per-entry variance epsilon**2, split evenly over real and imaginary parts
    assert np.mean(np.abs(draws) ** 2) == pytest.approx(0.04, rel=0.01)
    assert np.mean(draws.real ** 2) == pytest.approx(0.02, rel=0.02)
    assert abs(np.mean(draws)) < 0.005


def test_error_model_validation():
    with pytest.raises(ValueError):
        NormBoundedError(-0.1)
    with pytest.raises(ValueError):
        ProbabilisticError(-1.0, 0.9)
    with pytest.raises(ValueError):
        ProbabilisticError(0.1, 1.0)
    with pytest.raises(TypeError):
        sample_error(object(), 4, np.random.default_rng(0))
