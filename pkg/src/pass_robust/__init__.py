"""Robust joint beamforming and pinching-antenna placement.

A simulator and optimization library for waveguide-fed pinching-antenna
downlinks under imperfect channel knowledge: worst-case and
chance-constrained beamforming, coordinate-wise placement search, an
alternating-optimization driver, and a fixed hybrid-array comparison
design.
"""

__version__ = "0.1.0"

from .scene import (SPEED_OF_LIGHT, RadioConstants, SystemGeometry,
                    PinchingLayout, CandidateSet, Violation, build_geometry,
                    candidate_set, candidate_sets, dbm_to_watt,
                    excluded_indices, exclusion_mask, random_initial_layout,
                    random_user, validate_layout)
from .channel import (ChannelEstimate, LosChannelModel, NormBoundedError,
                      ProbabilisticError, WaveguideResponse, attenuation_eta,
                      estimated_channel_los, los_coefficient, sample_error,
                      waveguide_response)
from .robust import (RobustValue, achievable_rate, adversarial_error,
                     delta_from_probabilistic, monte_carlo_nonoutage,
                     nonoutage_ar, nonoutage_probability, worst_case_amplitude)
from .baseband import (BasebandSolverError, SubproblemSolution, matched_filter,
                       solve_baseband, solve_baseband_lossless,
                       solve_baseband_lossy, subproblem_objective)
from .pinching import (PerPaContext, build_context, build_sweep_tables,
                       gs1d_sweep, per_pa_objective, snap_to_grid)
from .driver import RobustSolution, alternating_optimize
from .baseline import (BaselineSolution, FixedArray, baseline_design,
                       fixed_array, fixed_array_channel,
                       phase_matched_combiner)
from .experiments import (CSV_COLUMNS, SWEEP_AXES, ScenarioConfig, load_config,
                          run_scenario, run_sweep, run_trial, trial_rng,
                          write_csv, write_manifest)
from .validate import CheckResult, run_validation
