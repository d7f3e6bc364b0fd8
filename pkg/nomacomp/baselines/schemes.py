"""Comparison schemes built on the same SCA machinery."""

from __future__ import annotations

import logging
from enum import Enum

import numpy as np

from ..config import FIXED_POWER_SPLIT, POWER_RTOL
from ..evaluation import achieved_sinrs, check_constraints, combine_half_slots, transmit_powers
from ..precoding import build_bases, effective_matrices
from ..sca import SCAOptions, SolveResult, run
from ..scenario import ChannelSet, NetworkConfig
from ..subproblem import build_qos_slot, rank_diagnostic, select_solver, solve_p3

logger = logging.getLogger(__name__)


class BaselineKind(str, Enum):
    FIXED_POWER = "FixedPower"
    NO_COMP = "NoCoMP"
    OMA_COMP = "OMACoMP"
    BRUTE_FORCE = "BruteForce"


def run_fixed_power(config: NetworkConfig, channels: ChannelSet, solver: str | None = None) -> SolveResult:
    """Joint design with every power split frozen at 0.4."""
    return run(config, channels, SCAOptions(fixed_split=FIXED_POWER_SPLIT, solver=solver))


def _padded_sum(traces: list[tuple[float, ...]]) -> tuple[float, ...]:
    """Elementwise sum of per-cell traces, shorter ones held at their last value."""
    traces = [t for t in traces if t]
    if not traces:
        return ()
    length = max(len(t) for t in traces)
    padded = np.array([list(t) + [t[-1]] * (length - len(t)) for t in traces])
    return tuple(float(x) for x in padded.sum(axis=0))


def run_no_comp(config: NetworkConfig, channels: ChannelSet, solver: str | None = None) -> SolveResult:
    """Each BS designs for its own cell alone; rates are then evaluated with
    the true inter-cell interference of all designs.

    Sum rates are reported as achieved. Clusters whose SIC or Group-2 rate
    falls short count as QoS violations. A cell with no feasible design
    stays silent.
    """
    solver = solver or select_solver()
    n_cells, k_cl, dim = config.num_cells, config.clusters_per_cell, config.basis_dim
    single = config.replace(num_cells=1)
    bases = build_bases(channels)
    powers = np.full(n_cells, config.transmit_power)

    q = np.zeros((n_cells, k_cl, dim), dtype=complex)
    a = np.zeros((n_cells, k_cl))
    Q = np.zeros((n_cells, k_cl, dim, dim), dtype=complex)
    ratios = np.zeros((n_cells, k_cl))
    iterations, converged, traces = 0, True, []
    for n in range(n_cells):
        cell = run(single, channels.restricted_to_cell(n), SCAOptions(solver=solver))
        iterations = max(iterations, cell.iterations_used)
        if cell.report is None:
            logger.debug("cell %d has no feasible single-cell design", n)
            converged = False
            continue
        q[n], a[n], Q[n], ratios[n] = cell.q[0], cell.a[0], cell.Q[0], cell.rank_ratios[0]
        converged = converged and cell.converged
        traces.append(cell.objective_trace)

    report = achieved_sinrs(channels, bases, q, a, config.target_rate)
    record = check_constraints(report, q, powers)
    return SolveResult(
        q=q,
        a=a,
        sum_rate_group1=report.sum_rate_group1,
        feasible=record.all_ok,
        rank_ratios=ratios,
        iterations_used=iterations,
        converged=converged,
        objective_trace=_padded_sum(traces),
        qos_violations=report.qos_violations,
        report=report,
        bases=bases,
        Q=Q,
    )


def oma_target(sinr_target: float) -> float:
    """SINR needed to deliver log2(1 + gamma) bits on half the resource."""
    return (1.0 + sinr_target) ** 2 - 1.0


def run_oma_comp(config: NetworkConfig, channels: ChannelSet, solver: str | None = None) -> SolveResult:
    """Two orthogonal half slots: Group 1 alone on one, Group 2 alone on the other.

    The Group-1 slot runs the SCA loop with a = 1 and no SIC or QoS rows; the
    Group-2 slot is a minimum-power design meeting the doubled-rate target.
    """
    solver = solver or select_solver()
    slot_a = run(
        config,
        channels,
        SCAOptions(fixed_split=1.0, enforce_sic=False, enforce_qos=False, solver=solver),
    )
    bases = build_bases(channels)
    eff = effective_matrices(channels, bases)
    powers = np.full(config.num_cells, config.transmit_power)
    infeasible = SolveResult.infeasible(
        config.num_cells, config.clusters_per_cell, config.basis_dim, slot_a.iterations_used
    )
    if slot_a.report is None:
        return infeasible

    slot_b = solve_p3(build_qos_slot(eff, oma_target(config.sinr_target), powers), solver)
    if not slot_b.is_optimal:
        logger.debug("Group-2 slot %s", slot_b.status.value)
        return infeasible

    diag_b = rank_diagnostic(slot_b.Q, powers)
    report_b = achieved_sinrs(
        channels, bases, diag_b.q, np.zeros_like(slot_a.a), config.target_rate
    )
    report = combine_half_slots(slot_a.report, report_b)
    power_ok = all(
        np.all(transmit_powers(beams) <= powers * (1.0 + POWER_RTOL)) for beams in (slot_a.q, diag_b.q)
    )
    feasible = bool(power_ok and report.qos_ok.all())
    return SolveResult(
        q=slot_a.q,
        a=slot_a.a,
        sum_rate_group1=report.sum_rate_group1 if feasible else 0.0,
        feasible=feasible,
        rank_ratios=np.stack([slot_a.rank_ratios, diag_b.R_lambda]),
        iterations_used=slot_a.iterations_used,
        converged=slot_a.converged,
        objective_trace=tuple(0.5 * v for v in slot_a.objective_trace),
        qos_violations=report.qos_violations,
        report=report,
        bases=bases,
        Q=slot_a.Q,
    )
