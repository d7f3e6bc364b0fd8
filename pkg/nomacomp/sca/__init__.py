"""SCA module: initialization, fixed-point updates and the iteration loop."""

from .algorithm import (
    SCAOptions,
    assemble_result,
    initialize,
    matched_beams,
    relative_change,
    run,
    split_schedule,
    tightness_residuals,
    update_fixed_points,
)
from .state import SCAState, SolveResult

run_sca = run

__all__ = [
    "SCAOptions",
    "assemble_result",
    "initialize",
    "matched_beams",
    "relative_change",
    "run",
    "run_sca",
    "split_schedule",
    "tightness_residuals",
    "update_fixed_points",
    "SCAState",
    "SolveResult",
]
