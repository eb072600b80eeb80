"""Alternating optimization of baseband weights and PA positions.

Each iteration first re-solves the baseband weights for the current layout
(closed form when the waveguides are lossless, conic solve otherwise), then
runs one coordinate sweep of the positions at the new weights.  Both steps
are individually non-decreasing in the worst-case amplitude, so the
objective trace climbs monotonically and the loop stops once the relative
improvement per iteration falls below ``rel_tol``.
"""

import numpy as np
from dataclasses import dataclass

from .baseband import solve_baseband
from .channel import LosChannelModel, waveguide_response
from .pinching import build_sweep_tables, gs1d_sweep, snap_to_grid
from .robust import RobustValue, worst_case_amplitude


@dataclass(frozen=True)
class RobustSolution:
    """Outcome of one alternating-optimization run.

    ``trace`` holds one ``(iteration, value_after_weights, value_after_positions)``
    triple per iteration, worst-case amplitudes throughout.  ``converged``
    is True when the relative-improvement test fired within the budget.
    """

    weights: np.ndarray
    layout: object
    value: RobustValue
    trace: list
    iterations: int
    converged: bool


def alternating_optimize(user, init_layout, geometry, constants, cands,
                         radius, power, noise_power, min_spacing,
                         max_iters=20, rel_tol=1e-4, channel=None):
    """Jointly design weights and PA positions for one user.

    The initial layout is snapped onto the candidate grid once, before the
    first weight solve, so every recorded objective refers to a
    grid-feasible layout.  ``radius`` is the absolute error-ball radius of
    the worst-case model (0 recovers the error-free design).  With
    ``max_iters=0`` the weights are solved once for the snapped initial
    layout and returned without any position update.
    """
    if channel is None:
        channel = LosChannelModel(geometry, constants)
    layout = snap_to_grid(init_layout, cands, min_spacing)
    tables = build_sweep_tables(user, cands, geometry, constants, channel)

    def describe(lay):
        return channel.estimate(user, lay), waveguide_response(lay, geometry, constants)

    hbar, resp = describe(layout)
    if max_iters == 0:
        sol = solve_baseband(hbar.vector, resp.matrix, power, radius, constants)
        val = worst_case_amplitude(hbar.vector, resp.matrix, sol.weights,
                                   radius, noise_power)
        return RobustSolution(sol.weights, layout, val,
                              [(0, val.worst_case_amplitude, val.worst_case_amplitude)],
                              0, False)

    trace = []
    prev = None
    converged = False
    iterations = 0
    for k in range(1, max_iters + 1):
        sol = solve_baseband(hbar.vector, resp.matrix, power, radius, constants)
        weights = sol.weights
        val_w = worst_case_amplitude(hbar.vector, resp.matrix, weights,
                                     radius, noise_power)
        layout, _ = gs1d_sweep(layout, weights, cands, user, geometry,
                               constants, radius, min_spacing,
                               channel=channel, tables=tables)
        hbar, resp = describe(layout)
        val_p = worst_case_amplitude(hbar.vector, resp.matrix, weights,
                                     radius, noise_power)
        trace.append((k, val_w.worst_case_amplitude, val_p.worst_case_amplitude))
        iterations = k
        if prev is not None:
            gain = abs(val_p.worst_case_amplitude - prev)
            if gain <= rel_tol * max(abs(prev), 1e-30):
                converged = True
                break
        prev = val_p.worst_case_amplitude
    return RobustSolution(weights, layout, val_p, trace, iterations, converged)
