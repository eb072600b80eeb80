"""Scenario configuration, Monte-Carlo trial loops, and result emission.

A scenario fixes the deployment, the radio constants, the uncertainty model
and the trial budget.  Each trial draws a user location and a random
initial layout from its own seeded stream, converts the normalized
uncertainty level into an absolute radius using the initial-layout channel
norm, then runs the alternating optimizer for the configured waveguide
(optionally also its lossless twin) and the fixed-array comparison design.
Aggregated means go to a fixed-schema CSV; a JSON manifest records the
exact configuration and library versions next to it.
"""

import csv
import json
import platform
import sys
import time
from dataclasses import dataclass, asdict, replace, fields
from pathlib import Path

import numpy as np

from . import __version__
from .baseline import baseline_design, fixed_array_channel
from .channel import estimated_channel_los
from .driver import alternating_optimize
from .robust import achievable_rate, delta_from_probabilistic
from .scene import (RadioConstants, build_geometry, candidate_sets, dbm_to_watt,
                    random_initial_layout, random_user)

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

CSV_COLUMNS = ["axis_value", "pass_lossy_wc_ar", "pass_lossy_perfect_ar",
               "pass_lossless_wc_ar", "baseline_wc_ar", "baseline_perfect_ar",
               "nonoutage_ar", "trials", "seed"]

SWEEP_AXES = {
    "pt_dbm": "transmit_power_dbm",
    "delta_bar": "delta_bar",
    "epsilon_bar": "epsilon_bar",
    "rho": "nonoutage_target",
    "kappa": "attenuation_db_per_m",
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Complete description of one simulated scenario."""

    num_waveguides: int = 4
    pas_per_waveguide: int = 4
    area_length: float = 50.0
    area_width: float = 6.0
    height: float = 5.0
    carrier_frequency: float = 28e9
    refractive_index: float = 1.4
    attenuation_db_per_m: float = 0.08
    transmit_power_dbm: float = 0.0
    noise_power_dbm: float = -90.0
    min_spacing: float = -1.0        # -1 selects the half-wavelength default
    activation: str = "continuous"   # or "discrete"
    num_samples: int = 10_000        # grid size, continuous activation
    num_discrete_positions: int = 100  # grid size, discrete activation
    uncertainty: str = "norm_bounded"  # or "probabilistic"
    delta_bar: float = 0.3           # error radius over initial channel norm
    epsilon_bar: float = 0.1         # error scale over initial channel norm
    nonoutage_target: float = 0.9    # chance-constraint level rho
    trials: int = 100
    seed: int = 1
    max_iters: int = 20
    rel_tol: float = 1e-4
    evaluate_lossless: bool = True
    evaluate_baseline: bool = True

    def __post_init__(self):
        if self.activation not in ("continuous", "discrete"):
            raise ValueError(f"unknown activation mode {self.activation!r}")
        if self.uncertainty not in ("norm_bounded", "probabilistic"):
            raise ValueError(f"unknown uncertainty model {self.uncertainty!r}")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if self.max_iters < 0:
            raise ValueError("iteration budget must be nonnegative")
        if self.delta_bar < 0 or self.epsilon_bar < 0:
            raise ValueError("uncertainty levels must be nonnegative")

    @property
    def grid_points(self):
        return self.num_samples if self.activation == "continuous" \
            else self.num_discrete_positions

    def constants(self, lossless=False):
        return RadioConstants(self.carrier_frequency, self.refractive_index,
                              0.0 if lossless else self.attenuation_db_per_m)

    def geometry(self):
        return build_geometry(self.num_waveguides, self.pas_per_waveguide,
                              self.area_length, self.area_width, self.height)

    def spacing(self):
        if self.min_spacing >= 0:
            return self.min_spacing
        return self.constants().wavelength / 2.0


def load_config(path, overrides=None):
    """Read a :class:`ScenarioConfig` from a TOML file.

    Tables are flattened one level, so settings may be grouped
    (``[system]``, ``[uncertainty]``, ...) or written flat; the keys
    themselves must match the ScenarioConfig field names exactly.
    ``overrides`` (a dict) wins over file values.
    """
    with open(path, "rb") as fh:
        raw = _toml.load(fh)
    flat = {}
    for key, value in raw.items():
        if isinstance(value, dict):
            for k, v in value.items():
                if k in flat:
                    raise ValueError(f"duplicate config key {k!r}")
                flat[k] = v
        else:
            if key in flat:
                raise ValueError(f"duplicate config key {key!r}")
            flat[key] = value
    if overrides:
        flat.update(overrides)
    known = {f.name for f in fields(ScenarioConfig)}
    unknown = set(flat) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return ScenarioConfig(**flat)


def trial_rng(seed, trial):
    """Independent per-trial generator; stable under reordering of trials."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(trial)]))


@dataclass(frozen=True)
class TrialMetrics:
    pass_lossy_wc_ar: float
    pass_lossy_perfect_ar: float
    pass_lossless_wc_ar: float
    baseline_wc_ar: float
    baseline_perfect_ar: float
    nonoutage_ar: float


def run_trial(config, trial):
    """One Monte-Carlo trial; returns the per-trial metrics."""
    geometry = config.geometry()
    constants = config.constants()
    spacing = config.spacing()
    cands = candidate_sets(geometry, config.grid_points)
    power = float(dbm_to_watt(config.transmit_power_dbm))
    noise = float(dbm_to_watt(config.noise_power_dbm))

    rng = trial_rng(config.seed, trial)
    user = random_user(geometry, rng)
    init = random_initial_layout(geometry, spacing, rng)

    norm0 = np.linalg.norm(estimated_channel_los(user, init, geometry, constants).vector)

    def to_radius(channel_norm):
        if config.uncertainty == "norm_bounded":
            return config.delta_bar * channel_norm
        eps = config.epsilon_bar * channel_norm
        return float(delta_from_probabilistic(eps, config.nonoutage_target))

    radius = to_radius(norm0)
    sol = alternating_optimize(user, init, geometry, constants, cands, radius,
                               power, noise, spacing,
                               max_iters=config.max_iters, rel_tol=config.rel_tol)
    lossy_wc = sol.value.worst_case_ar
    lossy_perfect = achievable_rate(sol.value.perfect_amplitude, noise)

    lossless_wc = float("nan")
    if config.evaluate_lossless:
        sol_ll = alternating_optimize(user, init, geometry,
                                      config.constants(lossless=True), cands,
                                      radius, power, noise, spacing,
                                      max_iters=config.max_iters,
                                      rel_tol=config.rel_tol)
        lossless_wc = sol_ll.value.worst_case_ar

    base_wc = base_perfect = float("nan")
    if config.evaluate_baseline:
        _, h_fixed = fixed_array_channel(user, geometry, constants)
        base = baseline_design(user, geometry, constants, power,
                               to_radius(np.linalg.norm(h_fixed)), noise)
        base_wc = base.value.worst_case_ar
        base_perfect = achievable_rate(base.value.perfect_amplitude, noise)

    # In probabilistic mode the optimizer already works at the radius that
    # makes its worst-case amplitude the threshold held with the target
    # probability, so the guaranteed nonoutage rate is the worst-case rate.
    nonout = lossy_wc if config.uncertainty == "probabilistic" else float("nan")
    return TrialMetrics(lossy_wc, lossy_perfect, lossless_wc, base_wc,
                        base_perfect, nonout)


def run_scenario(config, axis_value=float("nan")):
    """Run every trial of a scenario and aggregate one CSV row of means."""
    per_trial = [run_trial(config, t) for t in range(config.trials)]

    def mean(attr):
        return float(np.mean([getattr(t, attr) for t in per_trial]))

    row = {"axis_value": float(axis_value)}
    for name in ["pass_lossy_wc_ar", "pass_lossy_perfect_ar",
                 "pass_lossless_wc_ar", "baseline_wc_ar",
                 "baseline_perfect_ar", "nonoutage_ar"]:
        row[name] = mean(name)
    row["trials"] = config.trials
    row["seed"] = config.seed
    return row


def run_sweep(config, axis, values):
    """One scenario run per axis value, same seed base on every row."""
    if axis not in SWEEP_AXES:
        raise ValueError(f"unknown sweep axis {axis!r}; choose from {sorted(SWEEP_AXES)}")
    if axis in ("epsilon_bar", "rho") and config.uncertainty != "probabilistic":
        raise ValueError(f"axis {axis!r} requires the probabilistic uncertainty model")
    if axis == "delta_bar" and config.uncertainty != "norm_bounded":
        raise ValueError("axis 'delta_bar' requires the norm_bounded uncertainty model")
    field = SWEEP_AXES[axis]
    rows = []
    for v in values:
        cfg = replace(config, **{field: float(v)})
        rows.append(run_scenario(cfg, axis_value=float(v)))
    return rows


def _format_cell(key, value):
    if key in ("trials", "seed"):
        return str(int(value))
    return f"{float(value):.9g}"


def write_csv(path, rows):
    """Write result rows with the fixed schema; appends when the file
    already exists (the header must then match)."""
    path = Path(path)
    exists = path.exists()
    if exists:
        with open(path, newline="") as fh:
            header = next(csv.reader(fh), None)
        if header != CSV_COLUMNS:
            raise ValueError(f"existing file {path} has a different schema")
    with open(path, "a", newline="") as fh:
        writer = csv.writer(fh)
        if not exists:
            writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_format_cell(c, row[c]) for c in CSV_COLUMNS])
    return path


def write_manifest(path, config, wall_time_s, command, outputs, axis=None,
                   values=None):
    """JSON record of what produced the CSV next to it."""
    import cvxpy
    doc = {
        "command": command,
        "config": asdict(config),
        "axis": axis,
        "values": list(values) if values is not None else None,
        "outputs": [str(o) for o in outputs],
        "wall_time_s": wall_time_s,
        "versions": {
            "pass_robust": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "cvxpy": cvxpy.__version__,
        },
        "written_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    path = Path(path)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=False)
        fh.write("\n")
    return path
