"""Configuration constants for nomacomp."""

from pathlib import Path

# Scenario defaults (network geometry in meters)
DEFAULT_NOISE_POWER = 1.0
DEFAULT_CELL_RADIUS = 500.0
DEFAULT_INTER_BS_DISTANCE = 1000.0
DEFAULT_REFERENCE_DISTANCE = 1.0
DEFAULT_MAX_ITERATIONS = 20
DEFAULT_REL_TOLERANCE = 1e-3
DEFAULT_INIT_RESTARTS = 3
DEFAULT_TRIALS = 100

# Zero-forcing bases
SINGULAR_VALUE_RTOL = 1e-12

# Rank-one certificate
RANK_SENTINEL_RTOL = 1e-15
ZERO_MATRIX_TOL = 1e-14
MIN_TRUSTED_RANK_RATIO = 1e3

# Conic solver tolerances
SOLVER_TARGET_TOL = 1e-8
SOLVER_ACCEPT_TOL = 1e-6
SOLVER_PREFERENCE = ("CLARABEL", "MOSEK", "SCS")

# SCA
INITIAL_SPLIT = 0.5
RESTART_SPLITS = (0.2, 0.1, 0.05)
SPLIT_FLOOR = 1e-9
AGM_POINT_FLOOR = 1e-12
MONOTONE_SLACK = 1e-6

# Evaluation tolerances: rates in bits, power relative
RATE_TOL = 1e-4
POWER_RTOL = 1e-6

# Baselines
FIXED_POWER_SPLIT = 0.4
ORACLE_COARSE_POINTS = 51
ORACLE_REFINE_POINTS = 11

# Identifiers written to every metadata sidecar so results stay attributable
DESIGN_DECISIONS = {
    "bs_layout": "linear-uniform-spacing",
    "path_loss": "amplitude-(d/reference_distance)^-alpha",
    "zf_basis": "svd-left-null-space-first-entry-real-positive",
    "initializer": "matched-direction-equal-power-split-0.5-restarts-0.2-0.1-0.05",
    "objective_units": "bits-log2",
    "no_comp_reporting": "achieved-rates-with-qos-flags",
    "oma_scheme": "equal-half-slot-tdma-doubled-group2-target",
    "oracle_grid": "51^4-coarse-plus-11^4-local-refinement",
    "infeasible_penalty": "zero-sum-rate-counted-in-averages",
    "solver_failures": "outcome-column-excluded-from-averages",
    "subproblem_units": "per-cluster-fixed-point-normalization",
    "solver_retry": "next-installed-solver-else-same-solver-relaxed-settings",
}

# Per-user defaults
USER_CONFIG_DIR = ".nomacomp"
USER_CONFIG_NAME = "config.yaml"


def get_presets_dir() -> Path:
    """Directory holding the per-experiment YAML presets shipped with the package."""
    return Path(__file__).parent / "presets"


def load_user_config() -> dict:
    """Load user defaults from ~/.nomacomp/config.yaml.

    Returns dict with keys like workers and out_dir.
    Missing or unreadable file yields an empty dict.
    """
    config_path = Path.home() / USER_CONFIG_DIR / USER_CONFIG_NAME
    if not config_path.exists():
        return {}
    try:
        import yaml
        with open(config_path, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError):
        return {}
    return data if isinstance(data, dict) else {}
