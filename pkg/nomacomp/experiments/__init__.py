"""Experiments module: sweep definitions and the Monte-Carlo runner."""

from .experiment import (
    AXIS_FIELDS,
    COMPARISON_SCHEMES,
    Experiment,
    ExperimentKind,
    Scheme,
    SweepAxis,
    default_axis,
    default_schemes,
)
from .runner import (
    ExperimentOutput,
    TrialTask,
    build_tasks,
    draw_trial_channels,
    execute,
    run_experiment,
    run_trial,
    solve_scheme,
)

__all__ = [
    "AXIS_FIELDS",
    "COMPARISON_SCHEMES",
    "Experiment",
    "ExperimentKind",
    "Scheme",
    "SweepAxis",
    "default_axis",
    "default_schemes",
    "ExperimentOutput",
    "TrialTask",
    "build_tasks",
    "draw_trial_channels",
    "execute",
    "run_experiment",
    "run_trial",
    "solve_scheme",
]
