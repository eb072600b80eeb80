"""Grid search over PA positions, one coordinate at a time.

With the baseband weights frozen, the worst-case amplitude as a function of
a single PA position p splits into that PA's own contribution plus two
constants aggregating everything else:

    |C1 + coeff(p) * sqrt(eta(p)) * exp(-j*k_g*(p - feed)) * w_m|
        - delta * sqrt(C2 + eta(p) * |w_m|^2)

where C1 collects the received-sum terms of all other PAs and C2 their
share of ||G w||^2.  Each coordinate update evaluates this objective on the
waveguide's candidate grid (channel re-derived at every grid point), masks
out candidates inside the spacing windows of the other PAs, and takes the
argmax.  In lossless mode eta is constant, so the penalty term does not
depend on p and only the first term is scanned.

Updates never move a PA to a candidate that scores below its current
position (evaluated through the identical arithmetic), which makes each
sweep monotone even when the conservative exclusion windows swallow the
current position itself.
"""

import logging

import numpy as np
from dataclasses import dataclass

from .channel import LosChannelModel, attenuation_eta, waveguide_response
from .scene import PinchingLayout, exclusion_mask

log = logging.getLogger(__name__)

# A PA counts as sitting on a grid point when within this distance of it.
_GRID_TOL = 1e-9


@dataclass(frozen=True)
class PerPaContext:
    """Frozen surroundings of one PA during a coordinate update.

    c1 : complex sum of the received contributions of every other PA.
    c2 : total of eta * |weight|^2 over every other PA.
    weight : baseband weight of this PA's waveguide.
    """

    waveguide: int
    pa: int
    weight: complex
    c1: complex
    c2: float


def build_context(layout, weights, m, n, user, geometry, constants, channel=None):
    """Aggregate the rest of the layout into a :class:`PerPaContext` for
    PA (m, n), computed directly from the full layout."""
    if channel is None:
        channel = LosChannelModel(geometry, constants)
    resp = waveguide_response(layout, geometry, constants)
    mm, nn = layout.positions.shape
    coeff = np.empty((mm, nn), dtype=complex)
    for i in range(mm):
        coeff[i] = channel.coefficients(user, i, layout.positions[i])
    terms = coeff * resp.per_waveguide * np.asarray(weights)[:, None]
    pen = resp.eta * np.abs(np.asarray(weights))[:, None] ** 2
    c1 = terms.sum() - terms[m, n]
    c2 = pen.sum() - pen[m, n]
    return PerPaContext(m, n, complex(weights[m]), complex(c1), float(c2))


def per_pa_objective(x, ctx, user, geometry, constants, delta, lossless=False,
                     channel=None):
    """Single-PA objective at trial position(s) ``x`` on the context's
    waveguide.  Vectorized over ``x``; the channel entry is re-derived at
    every position through the generator."""
    if channel is None:
        channel = LosChannelModel(geometry, constants)
    x = np.asarray(x, dtype=float)
    feed = geometry.feed_points[ctx.waveguide]
    dist = np.abs(x - feed)
    eta = attenuation_eta(dist, constants.attenuation_db_per_m,
                          geometry.pas_per_waveguide)
    coeff = channel.coefficients(user, ctx.waveguide, x)
    term = coeff * np.sqrt(eta) * np.exp(-1j * constants.guided_wavenumber * dist)
    first = np.abs(ctx.c1 + term * ctx.weight)
    if lossless:
        return first
    return first - delta * np.sqrt(ctx.c2 + eta * np.abs(ctx.weight) ** 2)


def snap_to_grid(layout, cands, min_spacing):
    """Move every PA to its nearest feasible candidate point.

    PAs are processed in sweep order; feasibility is judged against the
    other PAs at their current (possibly already snapped) positions, so a
    valid input layout stays valid throughout.  Ties go to the lower
    candidate index.  A PA with no feasible candidate keeps its position.
    """
    pos = layout.positions.copy()
    mm, nn = pos.shape
    for m in range(mm):
        offs = cands[m].offsets
        for n in range(nn):
            mask = exclusion_mask(PinchingLayout(pos), m, n, cands[m],
                                  min_spacing, placed="all")
            if mask.all():
                log.debug("snap: no feasible candidate for PA (%d, %d); keeping %.6g",
                          m, n, pos[m, n])
                continue
            d = np.abs(offs - pos[m, n])
            d[mask] = np.inf
            pos[m, n] = offs[int(np.argmin(d))]
    return PinchingLayout(pos)


def build_sweep_tables(user, cands, geometry, constants, channel=None):
    """Per-waveguide grid tables reused across sweeps of one instance.

    For each waveguide: the eta profile over the grid and the unit-weight
    contribution coeff * sqrt(eta) * exp(-j*k_g*dist) of a PA at each grid
    point.  Both depend only on (user, grid, geometry, radio constants).
    """
    if channel is None:
        channel = LosChannelModel(geometry, constants)
    tables = []
    for m in range(geometry.num_waveguides):
        x = cands[m].offsets
        dist = np.abs(x - geometry.feed_points[m])
        eta = attenuation_eta(dist, constants.attenuation_db_per_m,
                              geometry.pas_per_waveguide)
        coeff = channel.coefficients(user, m, x)
        unit = coeff * np.sqrt(eta) * np.exp(-1j * constants.guided_wavenumber * dist)
        tables.append((eta, unit))
    return tables


def _grid_index(x, cand):
    """Grid index of position x, or -1 when x is not on the grid."""
    i = int(np.rint((x - cand.offsets[0]) / cand.spacing))
    if 0 <= i < cand.count and abs(cand.offsets[i] - x) <= _GRID_TOL:
        return i
    return -1


def gs1d_sweep(layout, weights, cands, user, geometry, constants, delta,
               min_spacing, lossless=None, channel=None, tables=None):
    """One full coordinate sweep over all PAs (waveguides outer, PAs inner).

    Returns ``(new_layout, value)`` where ``value`` is the worst-case
    amplitude ``max(0, |sum| - delta*||G w||)`` of the swept layout,
    recomputed from scratch.  The input layout is expected on the candidate
    grid (run :func:`snap_to_grid` first otherwise); off-grid PAs are
    tolerated and simply keep their position unless a grid candidate beats
    them.  Every update is monotone in the objective and the output always
    satisfies the spacing and span constraints when the input does.
    """
    if channel is None:
        channel = LosChannelModel(geometry, constants)
    if lossless is None:
        lossless = constants.lossless
    if tables is None:
        tables = build_sweep_tables(user, cands, geometry, constants, channel)
    weights = np.asarray(weights, dtype=complex)
    pos = layout.positions.copy()
    mm, nn = pos.shape

    # Current per-PA contributions, taken from the grid tables where the PA
    # sits on the grid so that candidate-vs-current comparisons share one
    # arithmetic path.
    idx = np.empty((mm, nn), dtype=int)
    terms = np.empty((mm, nn), dtype=complex)
    pen = np.empty((mm, nn), dtype=float)
    for m in range(mm):
        eta_x, unit_x = tables[m]
        for n in range(nn):
            i = _grid_index(pos[m, n], cands[m])
            idx[m, n] = i
            if i >= 0:
                terms[m, n] = unit_x[i] * weights[m]
                pen[m, n] = eta_x[i] * abs(weights[m]) ** 2
            else:
                dist = abs(pos[m, n] - geometry.feed_points[m])
                eta = attenuation_eta(dist, constants.attenuation_db_per_m, nn)
                coeff = channel.coefficients(user, m, pos[m, n])
                terms[m, n] = coeff * np.sqrt(eta) * np.exp(
                    -1j * constants.guided_wavenumber * dist) * weights[m]
                pen[m, n] = eta * abs(weights[m]) ** 2
    total = terms.sum()
    total_pen = pen.sum()

    for m in range(mm):
        eta_x, unit_x = tables[m]
        cand_terms = unit_x * weights[m]
        cand_pen = eta_x * abs(weights[m]) ** 2
        for n in range(nn):
            c1 = total - terms[m, n]
            c2 = total_pen - pen[m, n]
            if lossless:
                obj = np.abs(c1 + cand_terms)
            else:
                obj = np.abs(c1 + cand_terms) - delta * np.sqrt(c2 + cand_pen)
            if idx[m, n] >= 0:
                current = obj[idx[m, n]]
            elif lossless:
                current = abs(c1 + terms[m, n])
            else:
                current = abs(c1 + terms[m, n]) - delta * np.sqrt(c2 + pen[m, n])
            mask = exclusion_mask(PinchingLayout(pos), m, n, cands[m],
                                  min_spacing, placed="all")
            if mask.all():
                log.debug("sweep: all candidates excluded for PA (%d, %d); keeping %.6g",
                          m, n, pos[m, n])
                continue
            scores = np.where(mask, -np.inf, obj)
            j = int(np.argmax(scores))
            if scores[j] >= current:
                pos[m, n] = cands[m].offsets[j]
                idx[m, n] = j
                terms[m, n] = cand_terms[j]
                pen[m, n] = cand_pen[j]
                total = c1 + cand_terms[j]
                total_pen = c2 + cand_pen[j]

    out = PinchingLayout(pos)
    resp = waveguide_response(out, geometry, constants)
    hbar = channel.estimate(user, out)
    gw = resp.matrix @ weights
    value = max(0.0, float(np.abs(np.vdot(hbar.vector, gw))
                           - delta * np.linalg.norm(gw)))
    return out, value
