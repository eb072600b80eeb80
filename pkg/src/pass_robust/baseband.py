"""Baseband weight design for a fixed PA layout.

With positions frozen, maximizing the worst-case amplitude over the power
ball is a convex second-order cone program:

    minimize   delta * ||G w||_2 - Re{h^H G w}
    subject to Im{h^H G w} = 0,  ||w||_2**2 <= power

In the lossless case (unit-norm response columns) the program has the
closed-form matched-filter solution; the lossy case is solved numerically.
The solver works on a scale-normalized copy of the data (weights on the unit
ball, linear term of unit norm), which keeps the conic tolerances meaningful
at the very small amplitudes typical of radio links.
"""

import numpy as np
from dataclasses import dataclass

import cvxpy as cp

# Treat a normalized optimum above this (values are <= 0 by construction,
# 0 attained at w = 0) as "no positive worst case exists".
_CLAMP_TOL = 1e-12


class BasebandSolverError(RuntimeError):
    """Conic solve failed; carries the solver status and residuals."""

    def __init__(self, message, status=None, residuals=None):
        super().__init__(message)
        self.status = status
        self.residuals = residuals or {}


@dataclass(frozen=True)
class SubproblemSolution:
    """Weights returned by a baseband solve plus its certificate data.

    ``objective`` is the minimization objective delta*||G w|| - Re{h^H G w}
    evaluated at ``weights`` (negative of the worst-case amplitude when that
    is positive).  ``clamped`` flags the degenerate regime where no weights
    achieve a positive worst case; the matched filter at full power is
    returned as the canonical representative.
    """

    weights: np.ndarray
    objective: float
    status: str
    power_residual: float
    imag_residual: float
    clamped: bool = False


def subproblem_objective(channel, response, weights, radius):
    """The minimization objective at given weights."""
    gw = response @ weights
    return float(radius * np.linalg.norm(gw) - np.real(np.vdot(channel, gw)))


def matched_filter(channel, response, power):
    """Full-power weights along G^H h (the error-free optimum)."""
    c = response.conj().T @ channel
    nc = np.linalg.norm(c)
    if nc == 0.0:
        raise ValueError("channel is orthogonal to the response; no preferred direction")
    return np.sqrt(power) * c / nc


def solve_baseband_lossless(channel, response, power, radius):
    """Closed-form solve for unit-norm response columns.

    With ||g_m|| = 1 for every column, ||G w|| = ||w|| and Cauchy-Schwarz
    makes the matched filter optimal:
    ``w = sqrt(power) * G^H h / ||G^H h||`` with worst-case amplitude
    ``sqrt(power) * max(0, ||G^H h|| - radius)``.
    """
    col_norms = np.linalg.norm(response, axis=0)
    if np.any(np.abs(col_norms - 1.0) > 1e-9):
        raise ValueError("lossless solve requires unit-norm response columns")
    w = matched_filter(channel, response, power)
    obj = subproblem_objective(channel, response, w, radius)
    clamped = obj >= 0.0
    gain = np.vdot(channel, response @ w)
    return SubproblemSolution(w, obj, "closed_form",
                              float(np.vdot(w, w).real - power),
                              float(np.imag(gain)), clamped)


# One compiled cone program per (rows, cols) shape, re-solved with new data.
_compiled = {}


def _compiled_problem(rows, cols):
    entry = _compiled.get((rows, cols))
    if entry is None:
        a = cp.Parameter((rows, cols), complex=True)
        c = cp.Parameter(cols, complex=True)
        v = cp.Variable(cols, complex=True)
        gain = cp.conj(c) @ v
        prob = cp.Problem(cp.Minimize(cp.norm(a @ v, 2) - cp.real(gain)),
                          [cp.norm(v, 2) <= 1.0, cp.imag(gain) == 0])
        entry = (prob, a, c, v)
        _compiled[(rows, cols)] = entry
    return entry


def solve_baseband_lossy(channel, response, power, radius):
    """Numerical conic solve of the worst-case weight design.

    The data are normalized before the solve: weights are scaled onto the
    unit ball (the objective is positively homogeneous in w) and both terms
    are divided by ||G^H h||, so the solver sees an O(1) problem whatever
    the physical link budget.  When even the optimum cannot produce a
    positive worst-case amplitude the matched filter at full power is
    returned with ``clamped=True``.
    """
    channel = np.asarray(channel, dtype=complex)
    response = np.asarray(response, dtype=complex)
    c = response.conj().T @ channel
    nc = np.linalg.norm(c)
    if nc == 0.0:
        raise ValueError("channel is orthogonal to the response; no preferred direction")
    if power <= 0:
        raise ValueError("transmit power must be positive")
    if radius < 0:
        raise ValueError("error radius must be nonnegative")

    prob, a_par, c_par, v_var = _compiled_problem(*response.shape)
    a_par.value = radius * response / nc
    c_par.value = c / nc
    try:
        # warm_start=False: Clarabel's in-place data update requires the
        # canonical sparsity pattern to be identical between solves, which
        # breaks whenever a response entry has an exactly-zero real or
        # imaginary part (a PA sitting exactly at its feed, say).  A fresh
        # solver per solve is equally fast; the compiled program is reused.
        prob.solve(solver=cp.CLARABEL, warm_start=False)
    except cp.error.SolverError as exc:
        raise BasebandSolverError(f"conic solver failed: {exc}") from exc
    if prob.status not in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
        raise BasebandSolverError(f"conic solve ended with status {prob.status}",
                                  status=prob.status)

    v = np.asarray(v_var.value).reshape(-1)
    # Normalized optimal value; <= 0 with 0 attained at v = 0.
    val = radius / nc * np.linalg.norm(response @ v) - np.real(np.vdot(c / nc, v))
    if val >= -_CLAMP_TOL:
        w = matched_filter(channel, response, power)
        obj = subproblem_objective(channel, response, w, radius)
        gain = np.vdot(channel, response @ w)
        return SubproblemSolution(w, obj, prob.status,
                                  float(np.vdot(w, w).real - power),
                                  float(np.imag(gain)), clamped=True)

    # The objective is homogeneous, so a strictly negative optimum always
    # saturates the power budget; rescaling tightens any solver slack.
    nv = np.linalg.norm(v)
    w = np.sqrt(power) * v / nv
    gain = np.vdot(channel, response @ w)
    if np.real(gain) < 0:
        w = -w
        gain = -gain
    obj = subproblem_objective(channel, response, w, radius)
    return SubproblemSolution(w, obj, prob.status,
                              float(np.vdot(w, w).real - power),
                              float(np.imag(gain)), clamped=False)


def solve_baseband(channel, response, power, radius, constants=None):
    """Dispatch to the closed form when the response is lossless, else the
    conic solve.  ``constants`` (when given) decides via its attenuation;
    otherwise the column norms are inspected."""
    if constants is not None:
        lossless = constants.lossless
    else:
        lossless = bool(np.all(np.abs(np.linalg.norm(response, axis=0) - 1.0) <= 1e-9))
    if lossless:
        return solve_baseband_lossless(channel, response, power, radius)
    return solve_baseband_lossy(channel, response, power, radius)
