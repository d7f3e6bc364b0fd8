"""Solving built subproblems with an exponential-cone + PSD capable solver."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import cvxpy as cp
import numpy as np

from ..config import SOLVER_ACCEPT_TOL, SOLVER_PREFERENCE, SOLVER_TARGET_TOL
from ..errors import SolverCapabilityError, SolverFailure
from .problem import P3Problem, constraint_violations

logger = logging.getLogger(__name__)

_SOLVER_SETTINGS = {
    "CLARABEL": {
        "tol_gap_abs": SOLVER_TARGET_TOL,
        "tol_gap_rel": SOLVER_TARGET_TOL,
        "tol_feas": SOLVER_TARGET_TOL,
        "max_iter": 400,
    },
    "MOSEK": {},
    "SCS": {"eps_abs": 1e-9, "eps_rel": 1e-9, "max_iters": 200_000},
}

# Used only when no other capable solver is installed.
_RETRY_SETTINGS = {
    "CLARABEL": {
        **_SOLVER_SETTINGS["CLARABEL"],
        "max_iter": 1000,
        "equilibrate_max_iter": 50,
        "static_regularization_constant": 1e-7,
    },
    "MOSEK": {},
    "SCS": {**_SOLVER_SETTINGS["SCS"], "max_iters": 500_000},
}

_INFEASIBLE = {cp.INFEASIBLE, cp.INFEASIBLE_INACCURATE}


class SolverStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    NUMERICAL_FAILURE = "numerical_failure"


@dataclass(frozen=True)
class SubproblemSolution:
    """Solution of one subproblem, with Q back in absolute power units.

    Q has shape (N, K, D, D); a, rho and t have shape (N, K). The arrays are
    None unless status is OPTIMAL. objective is sum log2(1 + rho) in bits.
    """

    status: SolverStatus
    solver: str
    Q: np.ndarray | None = None
    a: np.ndarray | None = None
    rho: np.ndarray | None = None
    t: np.ndarray | None = None
    objective: float = 0.0
    max_violation: float = 0.0

    @property
    def is_optimal(self) -> bool:
        return self.status is SolverStatus.OPTIMAL


def select_solver() -> str:
    """First installed solver from the preference list."""
    installed = set(cp.installed_solvers())
    for name in SOLVER_PREFERENCE:
        if name in installed:
            return name
    raise SolverCapabilityError(
        f"no solver with PSD and exponential cone support installed; tried {', '.join(SOLVER_PREFERENCE)}"
    )


def retry_plan(solver: str) -> tuple[str, dict]:
    """Solver and settings for the second attempt after `solver` failed.

    Another installed solver from the preference list is preferred; otherwise
    the same solver runs again with more iterations and stronger regularization.
    """
    installed = set(cp.installed_solvers())
    for name in SOLVER_PREFERENCE:
        if name != solver and name in installed:
            return name, _SOLVER_SETTINGS[name]
    return solver, _RETRY_SETTINGS.get(solver, {})


def _stack(values: list[list[np.ndarray]]) -> np.ndarray:
    return np.array([[np.asarray(v) for v in row] for row in values])


def _read_back(p3: P3Problem) -> tuple[np.ndarray, np.ndarray | None, np.ndarray | None, np.ndarray | None]:
    """Q_hat in budget units; a, t and rho converted out of the per-cluster units."""
    Q_hat = _stack([[var.value for var in row] for row in p3.Q]).astype(complex)
    if p3.kind == "qos_slot":
        return Q_hat, None, None, None
    blocks = _stack([[var.value for var in row] for row in p3.S]).astype(float)
    a = blocks[..., 0, 0]
    t = blocks[..., 0, 1] * p3.fixed_points.c
    rho = np.asarray(p3.rho.value, dtype=float) * p3.scales.rho_ref
    return Q_hat, a, t, rho


def _solve_once(
    p3: P3Problem,
    solver: str,
    settings: dict,
    accept_inaccurate: bool = False,
) -> SubproblemSolution:
    try:
        p3.problem.solve(solver=solver, **settings)
    except cp.SolverError as e:
        logger.warning("%s raised: %s", solver, e)
        return SubproblemSolution(status=SolverStatus.NUMERICAL_FAILURE, solver=solver)

    status = p3.problem.status
    if status in _INFEASIBLE:
        return SubproblemSolution(status=SolverStatus.INFEASIBLE, solver=solver)
    if status == cp.OPTIMAL_INACCURATE and not accept_inaccurate:
        logger.warning("%s returned an inaccurate solution", solver)
        return SubproblemSolution(status=SolverStatus.NUMERICAL_FAILURE, solver=solver)
    if status not in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
        logger.warning("%s returned status %s", solver, status)
        return SubproblemSolution(status=SolverStatus.NUMERICAL_FAILURE, solver=solver)

    Q_hat, a, t, rho = _read_back(p3)
    if p3.kind == "sum_rate":
        # clip solver round-off into the box so the returned point is in-domain
        a = np.clip(a, 0.0, 1.0)
        t = np.maximum(t, 0.0)
        rho = np.maximum(rho, 0.0)
    violation = max(constraint_violations(p3, Q_hat, a, t, rho).values())
    if violation > SOLVER_ACCEPT_TOL:
        logger.warning("%s solution rejected: replayed violation %.3g (status %s)", solver, violation, status)
        return SubproblemSolution(status=SolverStatus.NUMERICAL_FAILURE, solver=solver)

    Q = Q_hat * p3.powers[:, np.newaxis, np.newaxis, np.newaxis]
    objective = float(np.sum(np.log2(1.0 + rho))) if rho is not None else 0.0
    return SubproblemSolution(
        status=SolverStatus.OPTIMAL,
        solver=solver,
        Q=Q,
        a=a,
        rho=rho,
        t=t,
        objective=objective,
        max_violation=violation,
    )


def solve_p3(p3: P3Problem, solver: str | None = None) -> SubproblemSolution:
    """Solve a subproblem; retry once on numerical failure.

    Inaccurate solutions and solutions whose replayed violation exceeds
    SOLVER_ACCEPT_TOL count as numerical failures. The retry runs the next
    installed solver (see retry_plan) and may accept an inaccurate status if
    the replay passes. Infeasibility is returned as a status. A second
    numerical failure raises SolverFailure.
    """
    solver = solver or select_solver()
    result = _solve_once(p3, solver, _SOLVER_SETTINGS.get(solver, {}))
    if result.status is not SolverStatus.NUMERICAL_FAILURE:
        return result

    retry_solver, settings = retry_plan(solver)
    logger.info("retrying subproblem with %s after %s failed", retry_solver, solver)
    result = _solve_once(p3, retry_solver, settings, accept_inaccurate=True)
    if result.status is SolverStatus.NUMERICAL_FAILURE:
        raise SolverFailure(f"{solver} failed on the subproblem and the retry with {retry_solver} failed too")
    return result
