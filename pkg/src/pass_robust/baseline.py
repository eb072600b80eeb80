"""Conventional fixed-position hybrid array used as a comparison point.

M*N half-wavelength-spaced elements on a line through the center of the
service area (along y, at the deployment height), driven through an analog
stage of one phase-shifter chain per RF chain: the combiner is
block-diagonal with unit-modulus entries, one block of N elements per
chain.  Phases are matched to the channel, which makes the combiner columns
orthonormal; the digital weights then reduce to the matched filter and the
worst-case amplitude has the same closed form as the lossless waveguide
case.
"""

import numpy as np
from dataclasses import dataclass

from .baseband import solve_baseband_lossless
from .channel import los_coefficient
from .robust import worst_case_amplitude


@dataclass(frozen=True)
class FixedArray:
    """Element coordinates of the fixed comparison array, shape (M*N, 3)."""
    elements: np.ndarray


@dataclass(frozen=True)
class BaselineSolution:
    """Design outcome for the fixed array: analog combiner, digital weights,
    and the worst-case figures of the combined design."""
    array: FixedArray
    channel: np.ndarray
    analog: np.ndarray
    weights: np.ndarray
    value: object


def fixed_array(geometry, constants):
    """Uniform linear array of M*N elements at half-wavelength spacing,
    centered at (area_length/2, 0, height) and aligned with the y axis."""
    mn = geometry.num_waveguides * geometry.pas_per_waveguide
    spacing = constants.wavelength / 2.0
    y = (np.arange(mn) - (mn - 1) / 2.0) * spacing
    pts = np.column_stack([np.full(mn, geometry.area_length / 2.0),
                           y,
                           np.full(mn, geometry.height)])
    return FixedArray(pts)


def fixed_array_channel(user, geometry, constants):
    """Fixed array plus its stacked channel estimate for one user
    (conjugated convention, matching the waveguide-side channel)."""
    arr = fixed_array(geometry, constants)
    coeff = los_coefficient(user, arr.elements, constants.wavelength)
    return arr, np.conj(coeff)


def phase_matched_combiner(channel, num_chains, elements_per_chain):
    """Block-diagonal analog combiner with channel-phase-matched entries.

    Block m covers elements m*N .. (m+1)*N - 1 with entries
    ``exp(j*angle(h)) / sqrt(N)``; every column has unit norm and the
    blocks' disjoint support makes the columns orthonormal.
    """
    mn = num_chains * elements_per_chain
    if len(channel) != mn:
        raise ValueError("channel length does not match the array size")
    f = np.zeros((mn, num_chains), dtype=complex)
    for m in range(num_chains):
        block = slice(m * elements_per_chain, (m + 1) * elements_per_chain)
        f[block, m] = np.exp(1j * np.angle(channel[block])) / np.sqrt(elements_per_chain)
    return f


def baseline_design(user, geometry, constants, power, radius, noise_power):
    """Design the fixed hybrid array for one user and error radius.

    The phase-matched analog stage plus matched-filter digital weights give
    the worst-case amplitude ``sqrt(power) * max(0, ||F^H h|| - radius)``.
    """
    arr, h = fixed_array_channel(user, geometry, constants)
    f = phase_matched_combiner(h, geometry.num_waveguides,
                               geometry.pas_per_waveguide)
    sol = solve_baseband_lossless(h, f, power, radius)
    val = worst_case_amplitude(h, f, sol.weights, radius, noise_power)
    return BaselineSolution(arr, h, f, sol.weights, val)
