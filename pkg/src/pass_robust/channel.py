"""Channel models: in-waveguide response and line-of-sight wireless links.

Two cascaded stages connect the baseband weights to the user.  Inside
waveguide m the signal travels from the feed to each PA, picking up phase at
the guided wavenumber and (in lossy mode) exponential power attenuation; the
per-waveguide response vector g stacks into the block-diagonal matrix G.
From each PA the signal radiates over a free-space line-of-sight link.

Sign conventions.  The raw propagation coefficient of a single PA-to-user
link is ``amp * exp(-j * 2*pi*r / wavelength)`` (phase delay grows with
distance), returned by :func:`los_coefficient`.  The channel vector used in
the compact expressions ``|h^H G w|`` stores the conjugate of the stacked
coefficients, so that the Hermitian form reproduces the physical received
sum, with guided and free-space phase delays adding.
"""

import numpy as np
from dataclasses import dataclass


def attenuation_eta(offsets, kappa_db_per_m, pas_per_waveguide):
    """Power coupling factor of a PA at axial distance ``offsets`` from the feed.

    ``10**(-kappa*|offset|/10) / N``: the 1/N split models equal power
    division over the N PAs of a waveguide, the exponential factor the
    dielectric loss accumulated up to the PA.  Lossless (kappa = 0) gives a
    constant 1/N.
    """
    off = np.abs(np.asarray(offsets, dtype=float))
    return 10.0 ** (-kappa_db_per_m * off / 10.0) / pas_per_waveguide


@dataclass(frozen=True)
class WaveguideResponse:
    """In-waveguide response of a full layout.

    eta : (M, N) power coupling factors.
    per_waveguide : (M, N) complex response entries, row m is g(p_m).
    matrix : (M*N, M) block-diagonal assembly; column m carries g(p_m) on
        rows m*N .. (m+1)*N - 1 and zeros elsewhere.
    """

    eta: np.ndarray
    per_waveguide: np.ndarray
    matrix: np.ndarray


def waveguide_response(layout, geometry, constants):
    """Assemble eta, the per-waveguide response vectors, and the block matrix."""
    offsets = layout.positions - geometry.feed_points[:, None]
    if np.any(offsets < -1e-12):
        raise ValueError("PA positions must not precede the waveguide feed")
    m, n = offsets.shape
    eta = attenuation_eta(offsets, constants.attenuation_db_per_m, n)
    g = np.sqrt(eta) * np.exp(-1j * constants.guided_wavenumber * np.abs(offsets))
    big = np.zeros((m * n, m), dtype=complex)
    for i in range(m):
        big[i * n:(i + 1) * n, i] = g[i]
    return WaveguideResponse(eta, g, big)


def los_coefficient(user, points, wavelength):
    """Free-space line-of-sight propagation coefficient.

    ``points`` is (..., 3); the result has the leading shape of ``points``.
    Magnitude ``wavelength / (4*pi*r)``, phase ``-2*pi*r / wavelength``.
    """
    d = np.asarray(points, dtype=float) - np.asarray(user, dtype=float)
    r = np.sqrt(np.sum(d * d, axis=-1))
    if np.any(r <= 0):
        raise ValueError("user coincides with a radiating element")
    return wavelength / (4.0 * np.pi * r) * np.exp(-2j * np.pi * r / wavelength)


@dataclass(frozen=True)
class ChannelEstimate:
    """Estimated wireless channel for one layout, stacked over (m, n).

    ``vector`` holds the conjugated propagation coefficients (see module
    docstring), so ``vdot(vector, G @ w)`` is the noiseless received signal.
    """

    vector: np.ndarray

    @property
    def norm(self):
        return float(np.linalg.norm(self.vector))


class LosChannelModel:
    """Deterministic line-of-sight channel generator.

    The placement search re-derives channel entries at arbitrary trial
    positions along a waveguide, so the generator exposes both the full
    stacked estimate for a layout and vectorized per-waveguide coefficients.
    Swap in a different generator (same two methods) for other propagation
    assumptions.
    """

    def __init__(self, geometry, constants):
        self.geometry = geometry
        self.constants = constants

    def coefficients(self, user, m, x):
        """Raw propagation coefficients for points at axial positions ``x``
        (scalar or array) on waveguide m."""
        x = np.asarray(x, dtype=float)
        pts = np.stack([x,
                        np.full_like(x, self.geometry.waveguide_y[m]),
                        np.full_like(x, self.geometry.height)], axis=-1)
        return los_coefficient(user, pts, self.constants.wavelength)

    def estimate(self, user, layout):
        """Stacked channel estimate for a full layout (conjugated convention)."""
        pts = self.geometry.pa_positions_3d(layout)
        coeff = los_coefficient(user, pts, self.constants.wavelength)
        return ChannelEstimate(np.conj(coeff).reshape(-1))


def estimated_channel_los(user, layout, geometry, constants):
    """Line-of-sight channel estimate for a layout (convenience wrapper)."""
    return LosChannelModel(geometry, constants).estimate(user, layout)


@dataclass(frozen=True)
class NormBoundedError:
    """Estimation error confined to a Euclidean ball of the given radius."""
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("error radius must be nonnegative")


@dataclass(frozen=True)
class ProbabilisticError:
    """Circularly symmetric Gaussian error, per-entry variance epsilon**2,
    with a target nonoutage probability for chance-constrained designs."""
    epsilon: float
    rho: float

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("error scale must be nonnegative")
        if not (0.0 < self.rho < 1.0):
            raise ValueError("nonoutage target must lie strictly between 0 and 1")


def sample_error(model, dim, rng):
    """One channel-error draw of length ``dim``.

    Norm-bounded: uniform over the complex ball of the model radius (Gaussian
    direction times a radius with density matched to the 2*dim real
    dimensions).  Probabilistic: iid complex Gaussian entries with variance
    epsilon**2 (real and imaginary parts each epsilon**2 / 2).
    """
    if isinstance(model, NormBoundedError):
        z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        nz = np.linalg.norm(z)
        if nz == 0.0:
            return np.zeros(dim, dtype=complex)
        radius = model.radius * rng.uniform() ** (1.0 / (2.0 * dim))
        return radius * z / nz
    if isinstance(model, ProbabilisticError):
        z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        return model.epsilon / np.sqrt(2.0) * z
    raise TypeError(f"unknown uncertainty model {model!r}")
