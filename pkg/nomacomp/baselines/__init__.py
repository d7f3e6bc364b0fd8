"""Baselines module: comparison schemes and the brute-force oracle."""

from .oracle import ORACLE_SHAPE, brute_force_oracle, grid_search
from .schemes import (
    BaselineKind,
    oma_target,
    run_fixed_power,
    run_no_comp,
    run_oma_comp,
)

__all__ = [
    "ORACLE_SHAPE",
    "brute_force_oracle",
    "grid_search",
    "BaselineKind",
    "oma_target",
    "run_fixed_power",
    "run_no_comp",
    "run_oma_comp",
]
