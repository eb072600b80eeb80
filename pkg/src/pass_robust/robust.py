"""Robustness core: worst-case values, adversarial errors, outage laws.

For a channel estimate h, response matrix G, weights w and an error e
confined to a ball of radius ``delta``, the received amplitude
``|(h + e)^H G w|`` is minimized by an error anti-aligned with the nominal
signal, giving the closed-form floor ``max(0, |h^H G w| - delta * ||G w||)``.
With Gaussian errors the interferer ``|e^H G w|`` is Rayleigh, which yields a
closed-form nonoutage probability and an exact bridge from chance
constraints to a worst-case radius.
"""

import numpy as np
from dataclasses import dataclass


@dataclass(frozen=True)
class RobustValue:
    """Worst-case figures of one (channel, response, weights) triple."""
    perfect_amplitude: float
    penalty: float
    worst_case_amplitude: float
    worst_case_snr: float
    worst_case_ar: float


def achievable_rate(amplitude, noise_power):
    """Shannon rate log2(1 + amplitude**2 / noise_power) in bit/s/Hz."""
    return float(np.log2(1.0 + amplitude ** 2 / noise_power))


def worst_case_amplitude(channel, response, weights, radius, noise_power):
    """Evaluate the worst-case received amplitude and the rates it implies.

    ``perfect_amplitude`` is the error-free value |h^H G w|, ``penalty`` the
    adversarial loss radius * ||G w||, and the worst case their clamped
    difference.  SNR and rate are derived from the worst case against
    ``noise_power``.
    """
    gw = response @ weights
    perfect = float(np.abs(np.vdot(channel, gw)))
    penalty = float(radius * np.linalg.norm(gw))
    worst = max(0.0, perfect - penalty)
    snr = worst ** 2 / noise_power
    return RobustValue(perfect, penalty, worst, snr, achievable_rate(worst, noise_power))


def adversarial_error(channel, response, weights, radius):
    """Error of norm ``radius`` that attains the worst-case amplitude.

    The minimizer points along G w with the phase chosen so its contribution
    is exactly anti-phase with the nominal term:
    ``e = -radius * (G w / ||G w||) * exp(-j * angle(h^H G w))``.
    Raises when G w = 0 (any error is then equally (in)effective and no
    direction is distinguished).
    """
    gw = response @ weights
    ngw = np.linalg.norm(gw)
    if ngw == 0.0:
        raise ValueError("G w vanishes; adversarial direction undefined")
    c = np.vdot(channel, gw)
    phase = c / abs(c) if abs(c) > 0 else 1.0 + 0j
    return -radius * (gw / ngw) * np.conj(phase)


def delta_from_probabilistic(epsilon, rho):
    """Worst-case radius equivalent to a chance constraint.

    A Gaussian error of per-entry variance epsilon**2 violates an amplitude
    floor with probability 1 - rho exactly when the floor is set with
    ``delta = epsilon * sqrt(-ln(1 - rho))``.  Strictly increasing in rho,
    with delta = epsilon at the fixed point rho = 1 - exp(-1).
    """
    if epsilon < 0:
        raise ValueError("error scale must be nonnegative")
    if not (0.0 < rho < 1.0):
        raise ValueError("nonoutage target must lie strictly between 0 and 1")
    return epsilon * np.sqrt(-np.log1p(-rho))


def nonoutage_probability(channel, response, weights, epsilon, threshold):
    """Probability that the received amplitude stays at or above ``threshold``.

    Under the Gaussian error model the scalar interferer e^H G w is
    circularly symmetric with variance epsilon**2 ||G w||**2, so its
    magnitude is Rayleigh and
    ``P = 1 - exp(-(|h^H G w| - threshold)**2 / (epsilon**2 ||G w||**2))``
    whenever the nominal amplitude clears the threshold, and 0 otherwise.
    """
    gw = response @ weights
    nominal = float(np.abs(np.vdot(channel, gw)))
    margin = nominal - threshold
    if margin < 0.0:
        return 0.0
    scale = epsilon * np.linalg.norm(gw)
    if scale == 0.0:
        # error-free limit: the nominal amplitude clears the threshold
        return 1.0
    return float(-np.expm1(-(margin / scale) ** 2))


def nonoutage_ar(threshold, noise_power):
    """Rate guaranteed whenever the amplitude floor ``threshold`` holds."""
    return achievable_rate(threshold, noise_power)


def monte_carlo_nonoutage(channel, response, weights, epsilon, threshold,
                          draws, rng):
    """Empirical check of the closed-form outage law.

    Draws ``draws`` Gaussian errors, returns the fraction of realizations
    with ``|(h + e)^H G w| >= threshold`` together with the sampled
    interferer magnitudes ``|e^H G w|`` (for distribution tests).
    """
    gw = response @ weights
    nominal = np.vdot(channel, gw)
    e = (rng.standard_normal((draws, len(channel)))
         + 1j * rng.standard_normal((draws, len(channel)))) * (epsilon / np.sqrt(2.0))
    interferer = np.conj(e) @ gw
    received = np.abs(nominal + interferer)
    frac = float(np.mean(received >= threshold))
    return frac, np.abs(interferer)
