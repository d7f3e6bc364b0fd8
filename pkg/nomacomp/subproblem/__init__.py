"""Subproblem module: convex subproblem assembly, solving and rank diagnostics."""

from .dump import dump_problem
from .problem import (
    FixedPoints,
    P3Options,
    P3Problem,
    build_p3,
    build_qos_slot,
    constraint_violations,
)
from .rank import RankDiagnostic, extract_beamformer, rank_diagnostic, rank_ratio
from .solver import SolverStatus, SubproblemSolution, retry_plan, select_solver, solve_p3

__all__ = [
    "dump_problem",
    "FixedPoints",
    "P3Options",
    "P3Problem",
    "build_p3",
    "build_qos_slot",
    "constraint_violations",
    "RankDiagnostic",
    "extract_beamformer",
    "rank_diagnostic",
    "rank_ratio",
    "SolverStatus",
    "SubproblemSolution",
    "retry_plan",
    "select_solver",
    "solve_p3",
]
