"""Self-contained oracle suites for the derived quantities.

Each suite rebuilds the quantity under test from first principles (Monte
Carlo, exhaustive grids, brute-force enumeration) and compares against the
closed forms and solvers in the library.  The CLI exposes them under
``pass-robust validate``; the acceptance tests reuse the same functions.
"""

import numpy as np
from dataclasses import dataclass, asdict

from .baseband import solve_baseband_lossy, subproblem_objective
from .channel import estimated_channel_los, waveguide_response
from .robust import (adversarial_error, delta_from_probabilistic,
                     monte_carlo_nonoutage, nonoutage_probability,
                     worst_case_amplitude)
from .scene import (RadioConstants, build_geometry, candidate_set,
                    exclusion_mask, random_initial_layout, random_user)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    bound: float
    detail: str = ""


def _report(suite, checks):
    return {"suite": suite,
            "passed": bool(all(c.passed for c in checks)),
            "checks": [asdict(c) for c in checks]}


def _instance(rng, num_waveguides=4, pas_per_waveguide=4, kappa=0.08,
              power=1e-3):
    """Random scenario snapshot: channel, response, and weights on the
    power sphere, at a random layout and user location."""
    geometry = build_geometry(num_waveguides, pas_per_waveguide, 50.0, 6.0, 5.0)
    constants = RadioConstants(28e9, 1.4, kappa)
    layout = random_initial_layout(geometry, constants.wavelength / 2.0, rng)
    user = random_user(geometry, rng)
    h = estimated_channel_los(user, layout, geometry, constants).vector
    resp = waveguide_response(layout, geometry, constants)
    z = rng.standard_normal(num_waveguides) + 1j * rng.standard_normal(num_waveguides)
    w = np.sqrt(power) * z / np.linalg.norm(z)
    return geometry, constants, h, resp, w


def check_lemma(seed=7, draws=100_000):
    """Chance-constraint bridge: fixed point, monotonicity, the Rayleigh
    law of the interferer, and conservatism of the converted radius."""
    rng = np.random.default_rng(seed)
    checks = []

    eps0 = 0.1
    rho_star = 1.0 - np.exp(-1.0)
    rel = abs(delta_from_probabilistic(eps0, rho_star) - eps0) / eps0
    checks.append(CheckResult("fixed_point_radius_equals_scale", rel <= 1e-14,
                              rel, 1e-14,
                              "radius at the distribution-matching target equals the error scale"))

    grid = np.linspace(0.01, 0.99, 100)
    diffs = np.diff([delta_from_probabilistic(eps0, r) for r in grid])
    checks.append(CheckResult("radius_strictly_increasing_in_target",
                              bool(np.all(diffs > 0)), float(diffs.min()), 0.0,
                              "100-point grid over the nonoutage target"))

    _, _, h, resp, w = _instance(rng)
    gw = resp.matrix @ w
    nominal = abs(np.vdot(h, gw))
    eps = 0.2 * nominal / np.linalg.norm(gw)
    _, mags = monte_carlo_nonoutage(h, resp.matrix, w, eps, 0.0, draws, rng)
    mags = np.sort(mags)
    scale = eps * np.linalg.norm(gw)
    cdf = 1.0 - np.exp(-(mags / scale) ** 2)
    n = len(mags)
    ks = max(np.max(np.arange(1, n + 1) / n - cdf),
             np.max(cdf - np.arange(n) / n))
    checks.append(CheckResult("interferer_magnitude_rayleigh_ks", ks <= 0.01,
                              float(ks), 0.01,
                              f"{draws} Gaussian draws against the closed-form law"))

    for rho in (0.5, 0.9, 0.99):
        delta = delta_from_probabilistic(eps, rho)
        floor = nominal - delta * np.linalg.norm(gw)
        closed = nonoutage_probability(h, resp.matrix, w, eps, floor)
        frac, _ = monte_carlo_nonoutage(h, resp.matrix, w, eps, floor, draws, rng)
        ok = frac >= rho and abs(closed - rho) <= 1e-9
        checks.append(CheckResult(f"empirical_nonoutage_at_target_{rho}", ok,
                                  float(frac), float(rho),
                                  f"closed form {closed:.6f}; empirical fraction must reach the target"))
    return _report("lemma", checks)


def check_adversary(seed=11, instances=50, samples=10_000):
    """Worst-case error: the closed form attains the penalty exactly and no
    sampled error in the ball does better."""
    rng = np.random.default_rng(seed)
    checks = []
    worst_gap = 0.0
    worst_margin = np.inf
    worst_norm = 0.0
    for _ in range(instances):
        _, _, h, resp, w = _instance(rng)
        gw = resp.matrix @ w
        nominal = abs(np.vdot(h, gw))
        delta = rng.uniform(0.2, 0.8) * nominal / np.linalg.norm(gw)
        target = nominal - delta * np.linalg.norm(gw)

        e = adversarial_error(h, resp.matrix, w, delta)
        attained = abs(np.vdot(h + e, gw))
        worst_gap = max(worst_gap, abs(attained - target) / target)
        worst_norm = max(worst_norm, abs(np.linalg.norm(e) - delta) / delta)

        mn = len(h)
        z = rng.standard_normal((samples, mn)) + 1j * rng.standard_normal((samples, mn))
        radii = delta * rng.uniform(size=samples) ** (1.0 / (2.0 * mn))
        ball = z * (radii / np.linalg.norm(z, axis=1))[:, None]
        sampled = np.abs(np.vdot(h, gw) + np.conj(ball) @ gw)
        worst_margin = min(worst_margin, float((sampled.min() - attained) / target))

    checks.append(CheckResult("closed_form_attains_penalty", worst_gap <= 1e-12,
                              worst_gap, 1e-12,
                              f"max relative gap over {instances} instances"))
    checks.append(CheckResult("error_norm_on_ball_boundary", worst_norm <= 1e-12,
                              worst_norm, 1e-12, "||e|| must equal the radius"))
    checks.append(CheckResult("no_sampled_error_beats_closed_form",
                              worst_margin >= -1e-12, worst_margin, -1e-12,
                              f"{samples} uniform ball draws per instance"))
    return _report("adversary", checks)


def _brute_force_weights(h, response, power, delta, points_per_dim=100):
    """Exhaustive two-chain weight search on the power sphere.

    Weights are parameterized as sqrt(power) * (cos(a) e^{j p1}, sin(a) e^{j p2});
    a coarse full-range pass is followed by one local refinement around the
    coarse optimum (same grid size), and w = 0 is always a candidate.
    """
    c = response.conj().T @ h
    s = np.linalg.norm(response, axis=0) ** 2

    def best_on(a_rng, p1_rng, p2_rng):
        a = np.linspace(*a_rng, points_per_dim)
        p1 = np.linspace(*p1_rng, points_per_dim)
        p2 = np.linspace(*p2_rng, points_per_dim)
        aa, pp1, pp2 = np.meshgrid(a, p1, p2, indexing="ij")
        w1 = np.sqrt(power) * np.cos(aa) * np.exp(1j * pp1)
        w2 = np.sqrt(power) * np.sin(aa) * np.exp(1j * pp2)
        norm_gw = np.sqrt(s[0] * np.abs(w1) ** 2 + s[1] * np.abs(w2) ** 2)
        gain = np.conj(c[0]) * w1 + np.conj(c[1]) * w2
        obj = delta * norm_gw - np.real(gain)
        k = np.unravel_index(np.argmin(obj), obj.shape)
        return float(obj[k]), (float(aa[k]), float(pp1[k]), float(pp2[k]))

    val, (a0, p10, p20) = best_on((0.0, np.pi / 2), (0.0, 2 * np.pi), (0.0, 2 * np.pi))
    da = (np.pi / 2) / (points_per_dim - 1)
    dp = 2 * np.pi / (points_per_dim - 1)
    val2, _ = best_on((a0 - da, a0 + da), (p10 - dp, p10 + dp), (p20 - dp, p20 + dp))
    return min(val, val2, 0.0)


def check_socp_oracle(seed=5, instances=5):
    """Conic weight solve against the exhaustive two-chain grid oracle."""
    rng = np.random.default_rng(seed)
    checks = []
    for i in range(instances):
        _, _, h, resp, _ = _instance(rng, num_waveguides=2, pas_per_waveguide=2)
        power = 1e-3
        c = resp.matrix.conj().T @ h
        delta = 0.5 * np.linalg.norm(c)
        sol = solve_baseband_lossy(h, resp.matrix, power, delta)
        oracle = _brute_force_weights(h, resp.matrix, power, delta)
        rel = abs(sol.objective - oracle) / max(abs(oracle), 1e-30)
        checks.append(CheckResult(f"two_chain_instance_{i}", rel <= 1e-4,
                                  float(rel), 1e-4,
                                  f"solver {sol.objective:.6e} vs grid {oracle:.6e}"))
    return _report("socp-oracle", checks)


def check_exclusion(seed=3, instances=200):
    """Spacing windows: every candidate strictly inside the minimum spacing
    of another PA is blocked, and blocking never reaches beyond one grid
    step past the spacing."""
    rng = np.random.default_rng(seed)
    never_under = True
    over_reach = 0.0
    subset_ok = True
    for _ in range(instances):
        n = int(rng.integers(2, 6))
        length = float(rng.uniform(5.0, 50.0))
        geometry = build_geometry(1, n, length, 1.0, 5.0)
        spacing_min = float(rng.uniform(0.01, length / (2.0 * n)))
        layout = random_initial_layout(geometry, spacing_min, rng)
        cand = candidate_set(geometry, 0, int(rng.integers(5, 200)))
        for pa in range(n):
            mask = exclusion_mask(layout, 0, pa, cand, spacing_min, placed="all")
            before = exclusion_mask(layout, 0, pa, cand, spacing_min, placed="before")
            subset_ok &= bool(np.all(mask[before]))
            others = np.delete(layout.positions[0], pa)
            dmin = np.min(np.abs(cand.offsets[:, None] - others[None, :]), axis=1)
            never_under &= bool(np.all(mask[dmin < spacing_min]))
            if mask.any():
                over_reach = max(over_reach, float(
                    (dmin[mask].max() - spacing_min) / cand.spacing))
    checks = [
        CheckResult("blocks_every_true_violation", never_under, float(never_under),
                    1.0, f"{instances} random instances, brute-force distances"),
        CheckResult("conservatism_at_most_one_grid_step", over_reach <= 1.0 + 1e-9,
                    over_reach, 1.0,
                    "blocked candidates lie within spacing + one grid step"),
        CheckResult("cold_start_mode_is_subset", subset_ok, float(subset_ok), 1.0,
                    "windows over earlier PAs only never exceed the full windows"),
    ]
    return _report("exclusion", checks)


SUITES = {
    "lemma": check_lemma,
    "adversary": check_adversary,
    "socp-oracle": check_socp_oracle,
    "exclusion": check_exclusion,
}


def run_validation(suite, seed=None):
    """Run one named suite; returns its report dict."""
    if suite not in SUITES:
        raise ValueError(f"unknown validation suite {suite!r}; choose from {sorted(SUITES)}")
    return SUITES[suite]() if seed is None else SUITES[suite](seed=seed)
