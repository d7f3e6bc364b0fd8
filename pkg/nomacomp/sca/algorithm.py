"""Successive convex approximation over the relaxed subproblem."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..config import (
    AGM_POINT_FLOOR,
    INITIAL_SPLIT,
    MONOTONE_SLACK,
    RESTART_SPLITS,
    SPLIT_FLOOR,
)
from ..errors import SolverFailure
from ..evaluation import achieved_sinrs, check_constraints
from ..precoding import (
    EffectiveChannels,
    build_bases,
    effective_matrices,
    interference_scalars,
    served_traces,
)
from ..scenario import ChannelSet, NetworkConfig
from ..subproblem import (
    FixedPoints,
    P3Options,
    SubproblemSolution,
    build_p3,
    dump_problem,
    rank_diagnostic,
    select_solver,
    solve_p3,
)
from .state import SCAState, SolveResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SCAOptions:
    """Loop variants: a frozen split, dropped constraint families, debugging."""

    fixed_split: float | None = None
    enforce_sic: bool = True
    enforce_qos: bool = True
    solver: str | None = None
    dump_path: Path | None = None

    def p3_options(self) -> P3Options:
        return P3Options(
            fixed_split=self.fixed_split,
            enforce_sic=self.enforce_sic,
            enforce_qos=self.enforce_qos,
        )


def split_schedule(restarts: int, fixed_split: float | None = None) -> Iterator[float]:
    """Initial power splits: 0.5, then `restarts` more moving power to Group 2.

    A frozen split is its own only candidate.
    """
    if fixed_split is not None:
        yield fixed_split
        return
    yield INITIAL_SPLIT
    split = RESTART_SPLITS[0]
    for i in range(restarts):
        split = RESTART_SPLITS[i] if i < len(RESTART_SPLITS) else split / 2
        yield split


def _agm_points(traces: np.ndarray, split: np.ndarray) -> np.ndarray:
    return np.maximum(np.sqrt(np.maximum(traces, 0.0) / split), AGM_POINT_FLOOR)


def matched_beams(eff: EffectiveChannels, powers: np.ndarray) -> np.ndarray:
    """Q0 = (P_n / K) w w^H with w the unit vector along U^H g of each cluster."""
    vectors = eff.gv_own
    norms = np.linalg.norm(vectors, axis=-1, keepdims=True)
    fallback = np.zeros_like(vectors)
    fallback[..., 0] = 1.0
    direction = np.where(norms > 0, vectors / np.where(norms > 0, norms, 1.0), fallback)
    per_cluster = np.asarray(powers, dtype=float) / eff.clusters_per_cell
    outer = direction[..., :, np.newaxis] * direction.conj()[..., np.newaxis, :]
    return per_cluster[:, np.newaxis, np.newaxis, np.newaxis] * outer


def initialize(
    eff: EffectiveChannels,
    config: NetworkConfig,
    split: float = INITIAL_SPLIT,
    powers: np.ndarray | None = None,
) -> FixedPoints:
    """Starting points from matched beams at equal power and split a0 = `split`."""
    if powers is None:
        powers = np.full(eff.num_cells, config.transmit_power)
    Q0 = matched_beams(eff, powers)
    X0, Y0 = served_traces(eff, Q0)
    u0, _ = interference_scalars(eff, Q0)
    a0 = np.full(X0.shape, max(split, SPLIT_FLOOR))
    return FixedPoints(
        c=_agm_points(X0, a0),
        d=_agm_points(Y0, a0),
        w_tilde=np.maximum(u0, 1.0),
        t_tilde=np.sqrt(a0 * np.maximum(X0, 0.0)),
    )


def update_fixed_points(sol: SubproblemSolution, eff: EffectiveChannels) -> FixedPoints:
    """Make every bound tight at `sol`: w <- u(Q), t <- t, c <- sqrt(X/a), d <- sqrt(Y/a)."""
    X, Y = served_traces(eff, sol.Q)
    u, _ = interference_scalars(eff, sol.Q)
    clamped = sol.a <= SPLIT_FLOOR
    if clamped.any():
        logger.warning("power split a <= %g on %d cluster(s); clamped for the AGM update",
                       SPLIT_FLOOR, int(clamped.sum()))
    a = np.maximum(sol.a, SPLIT_FLOOR)
    return FixedPoints(
        c=_agm_points(X, a),
        d=_agm_points(Y, a),
        w_tilde=np.maximum(u, 1.0),
        t_tilde=np.maximum(sol.t, 0.0),
        clamped=clamped,
    )


def tightness_residuals(sol: SubproblemSolution, fp: FixedPoints, eff: EffectiveChannels) -> dict[str, float]:
    """Gap of each bound at `sol` under points fp, relative to max(|exact value|, 1).

    After update_fixed_points all three are zero up to round-off.
    """
    X, Y = served_traces(eff, sol.Q)
    u, _ = interference_scalars(eff, sol.Q)
    a, t = sol.a, sol.t

    def gap(bound, exact):
        return float(np.max(np.abs(bound - exact) / np.maximum(np.abs(exact), 1.0)))

    taylor = (2 * fp.t_tilde / fp.w_tilde) * t - (fp.t_tilde**2 / fp.w_tilde**2) * u
    return {
        "agm_sic": gap((a * fp.c) ** 2 + (X / fp.c) ** 2, 2 * a * X),
        "agm_qos": gap((a * fp.d) ** 2 + (Y / fp.d) ** 2, 2 * a * Y),
        "taylor": gap(taylor, t**2 / u),
    }


def relative_change(previous: float, current: float) -> float:
    if previous == 0:
        return 0.0 if current == 0 else math.inf
    return abs(current - previous) / abs(previous)


def _first_solution(eff, config, powers, options, solver) -> tuple[SubproblemSolution, FixedPoints] | None:
    """First optimal subproblem over the restart splits, None if all are infeasible.

    SolverFailure propagates: a draw the solver cannot handle is not infeasible.
    """
    for attempt, split in enumerate(split_schedule(config.init_restarts, options.fixed_split)):
        fp = initialize(eff, config, split, powers)
        p3 = build_p3(eff, fp, config.sinr_target, powers, options.p3_options())
        if options.dump_path is not None and attempt == 0:
            dump_problem(p3, options.dump_path, solver)
        sol = solve_p3(p3, solver)
        if sol.is_optimal:
            return sol, fp
        logger.debug("initial subproblem infeasible with a0=%g", split)
    return None


def assemble_result(
    config: NetworkConfig,
    channels: ChannelSet,
    bases,
    state: SCAState,
    converged: bool,
    options: SCAOptions,
    powers: np.ndarray,
) -> SolveResult:
    """Evaluate the rank-one beamformers extracted from the last solution."""
    sol = state.last_solution
    diag = rank_diagnostic(sol.Q, powers)
    report = achieved_sinrs(channels, bases, diag.q, sol.a, config.target_rate)
    record = check_constraints(report, diag.q, powers)
    feasible = bool(
        record.power_ok.all()
        and (not options.enforce_sic or record.sic_ok.all())
        and (not options.enforce_qos or record.qos_ok.all())
    )
    if not feasible:
        logger.debug("extracted beamformers violate the constraints; draw counted as infeasible")
    return SolveResult(
        q=diag.q,
        a=sol.a,
        sum_rate_group1=report.sum_rate_group1 if feasible else 0.0,
        feasible=feasible,
        rank_ratios=diag.R_lambda,
        iterations_used=state.iteration,
        converged=converged,
        objective_trace=tuple(state.objective_history),
        qos_violations=report.qos_violations,
        report=report,
        bases=bases,
        Q=sol.Q,
        tightness_trace=tuple(state.tightness),
    )


def run(config: NetworkConfig, channels: ChannelSet, options: SCAOptions | None = None) -> SolveResult:
    """Run the solve / update loop until the relative objective change drops below
    rel_tolerance or max_iterations subproblems have been solved.

    Raises SolverFailure when a subproblem cannot be solved reliably; the
    draw then has no result rather than a zero rate.
    """
    options = options or SCAOptions()
    bases = build_bases(channels)
    eff = effective_matrices(channels, bases)
    powers = np.full(config.num_cells, config.transmit_power)
    solver = options.solver or select_solver()

    first = _first_solution(eff, config, powers, options, solver)
    if first is None:
        logger.debug("no feasible starting point after %d restart(s)", config.init_restarts)
        return SolveResult.infeasible(config.num_cells, config.clusters_per_cell, config.basis_dim)

    sol, _ = first
    fp = update_fixed_points(sol, eff)
    state = SCAState(fp=fp)
    state.advance(sol, fp, tightness_residuals(sol, fp, eff))

    converged = False
    while state.iteration < config.max_iterations:
        p3 = build_p3(eff, state.fp, config.sinr_target, powers, options.p3_options())
        sol = solve_p3(p3, solver)
        if not sol.is_optimal:
            # the previous iterate satisfies the tightened subproblem
            raise SolverFailure(
                f"subproblem reported {sol.status.value} at iteration {state.iteration + 1} "
                "although the previous iterate is feasible"
            )

        previous = state.objective_history[-1]
        if sol.objective < previous - MONOTONE_SLACK * abs(previous):
            logger.warning("objective decreased from %.9g to %.9g", previous, sol.objective)
        fp = update_fixed_points(sol, eff)
        state.advance(sol, fp, tightness_residuals(sol, fp, eff))
        if relative_change(previous, sol.objective) < config.rel_tolerance:
            converged = True
            break

    return assemble_result(config, channels, bases, state, converged, options, powers)
