"""Deployment geometry for waveguide-fed pinching-antenna arrays.

A rectangular service area of size ``area_length x area_width`` is covered by
``num_waveguides`` dielectric waveguides running parallel to the x axis at a
fixed height.  Each waveguide feeds ``pas_per_waveguide`` pinching antennas
(PAs) whose axial positions are the discrete optimization variables.  This
module owns the static geometry, PA layouts and their validation, the
candidate grids used by the placement search, and the minimum-spacing
exclusion windows.
"""

import numpy as np
from dataclasses import dataclass, field

SPEED_OF_LIGHT = 3.0e8  # m/s


def dbm_to_watt(x_dbm):
    """Convert a power level in dBm to watts (0 dBm -> 1 mW)."""
    return 10.0 ** (np.asarray(x_dbm, dtype=float) / 10.0) * 1e-3


@dataclass(frozen=True)
class RadioConstants:
    """Carrier and waveguide propagation constants.

    Parameters
    ----------
    carrier_hz : float
        Carrier frequency in Hz.
    refractive_index : float
        Effective refractive index of the dielectric waveguide.
    attenuation_db_per_m : float
        In-waveguide power attenuation in dB per meter (0 = lossless).
    """

    carrier_hz: float
    refractive_index: float = 1.4
    attenuation_db_per_m: float = 0.0

    def __post_init__(self):
        if self.carrier_hz <= 0:
            raise ValueError("carrier frequency must be positive")
        if self.refractive_index < 1:
            raise ValueError("refractive index must be >= 1")
        if self.attenuation_db_per_m < 0:
            raise ValueError("attenuation must be nonnegative")

    @property
    def wavelength(self):
        return SPEED_OF_LIGHT / self.carrier_hz

    @property
    def guided_wavelength(self):
        return self.wavelength / self.refractive_index

    @property
    def guided_wavenumber(self):
        return 2.0 * np.pi / self.guided_wavelength

    @property
    def lossless(self):
        return self.attenuation_db_per_m == 0.0


@dataclass(frozen=True)
class SystemGeometry:
    """Static deployment: waveguide routes and the service area.

    Waveguide m runs along x from its feed point ``feed_points[m]`` for
    ``waveguide_lengths[m]`` meters, at y ``waveguide_y[m]`` and height
    ``height``.  Users live on the ground plane z = 0.
    """

    num_waveguides: int
    pas_per_waveguide: int
    area_length: float
    area_width: float
    height: float
    waveguide_y: np.ndarray
    feed_points: np.ndarray
    waveguide_lengths: np.ndarray

    def pa_positions_3d(self, layout):
        """3-D coordinates of every PA for a given layout, shape (M, N, 3)."""
        m, n = layout.positions.shape
        out = np.empty((m, n, 3))
        out[:, :, 0] = layout.positions
        out[:, :, 1] = self.waveguide_y[:, None]
        out[:, :, 2] = self.height
        return out


def build_geometry(num_waveguides, pas_per_waveguide, area_length, area_width,
                   height, waveguide_spacing=None, feed_points=None,
                   waveguide_lengths=None):
    """Construct a :class:`SystemGeometry` with the default deployment rule.

    Waveguide y coordinates follow ``-area_width/2 + (m - 1) * d`` with
    ``d = area_width / (M - 1)`` unless an explicit spacing is given.  For a
    single waveguide the spacing is irrelevant and the route sits at
    ``-area_width/2``.  Feed points default to x = 0 and every waveguide
    spans the full area length.
    """
    m = int(num_waveguides)
    n = int(pas_per_waveguide)
    if m < 1 or n < 1:
        raise ValueError("need at least one waveguide and one PA per waveguide")
    if area_length <= 0 or area_width < 0 or height <= 0:
        raise ValueError("area dimensions and height must be positive")
    if waveguide_spacing is None:
        waveguide_spacing = area_width / (m - 1) if m > 1 else 0.0
    y = -area_width / 2.0 + np.arange(m) * waveguide_spacing
    if feed_points is None:
        feed_points = np.zeros(m)
    else:
        feed_points = np.asarray(feed_points, dtype=float)
    if waveguide_lengths is None:
        waveguide_lengths = np.full(m, float(area_length))
    else:
        waveguide_lengths = np.asarray(waveguide_lengths, dtype=float)
    if feed_points.shape != (m,) or waveguide_lengths.shape != (m,):
        raise ValueError("feed_points and waveguide_lengths must have one entry per waveguide")
    if np.any(waveguide_lengths <= 0):
        raise ValueError("waveguide lengths must be positive")
    return SystemGeometry(m, n, float(area_length), float(area_width),
                          float(height), y, feed_points, waveguide_lengths)


@dataclass(frozen=True)
class PinchingLayout:
    """Axial PA positions, shape (M, N); entry (m, n) is the x coordinate
    of PA n on waveguide m (absolute, not relative to the feed)."""

    positions: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.positions, dtype=float)
        if p.ndim != 2:
            raise ValueError("positions must be a 2-D (waveguides x PAs) array")
        object.__setattr__(self, "positions", p)

    def replace(self, m, n, x):
        """Copy of the layout with PA (m, n) moved to x."""
        p = self.positions.copy()
        p[m, n] = x
        return PinchingLayout(p)


@dataclass(frozen=True)
class Violation:
    """One layout constraint violation; kind is 'range' or 'spacing'."""
    kind: str
    waveguide: int
    pa: int
    other_pa: int = -1
    message: str = ""


def validate_layout(layout, geometry, min_spacing):
    """Check a layout against the span and minimum-spacing constraints.

    Returns a list of :class:`Violation`; empty means valid.  Span bounds
    are inclusive: a PA exactly at the feed or at the far end is legal.
    Spacing applies to every pair of PAs on the same waveguide.
    """
    p = layout.positions
    if p.shape != (geometry.num_waveguides, geometry.pas_per_waveguide):
        raise ValueError("layout shape does not match geometry")
    out = []
    for m in range(geometry.num_waveguides):
        lo = geometry.feed_points[m]
        hi = lo + geometry.waveguide_lengths[m]
        for n in range(geometry.pas_per_waveguide):
            if not (lo <= p[m, n] <= hi):
                out.append(Violation("range", m, n,
                                     message=f"PA ({m},{n}) at {p[m, n]:.6g} outside [{lo:.6g}, {hi:.6g}]"))
            for k in range(n + 1, geometry.pas_per_waveguide):
                gap = abs(p[m, n] - p[m, k])
                if gap < min_spacing:
                    out.append(Violation("spacing", m, n, k,
                                         f"PAs ({m},{n}) and ({m},{k}) separated by {gap:.6g} < {min_spacing:.6g}"))
    return out


@dataclass(frozen=True)
class CandidateSet:
    """Uniform grid of admissible PA positions on one waveguide.

    ``offsets`` are absolute x coordinates, ``offsets[i] = feed + i * spacing``
    with exact endpoints at the feed and at feed + length.
    """

    waveguide: int
    offsets: np.ndarray
    spacing: float

    @property
    def count(self):
        return self.offsets.size


def candidate_set(geometry, m, count):
    """Build the candidate grid for waveguide m with ``count`` points."""
    count = int(count)
    if count < 2:
        raise ValueError("candidate grid needs at least two points")
    lo = geometry.feed_points[m]
    length = geometry.waveguide_lengths[m]
    offsets = np.linspace(lo, lo + length, count)
    return CandidateSet(m, offsets, length / (count - 1))


def candidate_sets(geometry, count):
    """Candidate grids for all waveguides (same point count on each)."""
    return [candidate_set(geometry, m, count) for m in range(geometry.num_waveguides)]


def exclusion_mask(layout, m, n, cand, min_spacing, placed="all"):
    """Boolean mask over the candidate grid: True = index blocked for PA (m, n).

    A candidate index i is blocked when it falls inside the quantized
    spacing window of another PA p' on the same waveguide, i.e.
    ``floor((p' - feed - min_spacing)/spacing) <= i <=
    ceil((p' - feed + min_spacing)/spacing)`` (clamped to the grid).  The
    floor/ceil rounding makes the window conservative: every candidate
    strictly closer than ``min_spacing`` is blocked, and candidates up to one
    grid step beyond may be blocked as well.

    ``placed`` selects which neighbors generate windows: "all" uses every
    other PA on the waveguide (positions are always fully initialized here),
    "before" uses only PAs with a smaller index, which mirrors a cold-start
    sweep that places PAs one at a time (empty set for n = 0).
    """
    if placed not in ("all", "before"):
        raise ValueError("placed must be 'all' or 'before'")
    mask = np.zeros(cand.count, dtype=bool)
    feed = cand.offsets[0]
    others = range(n) if placed == "before" else \
        [k for k in range(layout.positions.shape[1]) if k != n]
    for k in others:
        d = layout.positions[m, k] - feed
        lo = int(np.floor((d - min_spacing) / cand.spacing))
        hi = int(np.ceil((d + min_spacing) / cand.spacing))
        lo = max(lo, 0)
        hi = min(hi, cand.count - 1)
        if lo <= hi:
            mask[lo:hi + 1] = True
    return mask


def excluded_indices(layout, m, n, cand, min_spacing, placed="all"):
    """Blocked candidate indices for PA (m, n), sorted ascending."""
    return np.flatnonzero(exclusion_mask(layout, m, n, cand, min_spacing, placed))


def random_initial_layout(geometry, min_spacing, rng):
    """Draw a feasible random layout, uniform over ordered feasible tuples.

    Per waveguide the N positions are generated by gap sampling: draw N
    uniforms on the free length ``L - (N - 1) * min_spacing``, sort them, and
    add back the mandatory gaps.  Positions come out sorted ascending and
    automatically satisfy spacing and span constraints.  Raises if a
    waveguide is too short to hold N PAs at the requested spacing.
    """
    mm = geometry.num_waveguides
    nn = geometry.pas_per_waveguide
    pos = np.empty((mm, nn))
    for m in range(mm):
        free = geometry.waveguide_lengths[m] - (nn - 1) * min_spacing
        if free < 0:
            raise ValueError(
                f"waveguide {m} of length {geometry.waveguide_lengths[m]:.6g} cannot hold "
                f"{nn} PAs at spacing {min_spacing:.6g}")
        u = np.sort(rng.uniform(0.0, free, size=nn))
        pos[m] = geometry.feed_points[m] + u + np.arange(nn) * min_spacing
    return PinchingLayout(pos)


def random_user(geometry, rng):
    """Uniform user location on the ground plane of the service area."""
    x = rng.uniform(0.0, geometry.area_length)
    y = rng.uniform(-geometry.area_width / 2.0, geometry.area_width / 2.0)
    return np.array([x, y, 0.0])
