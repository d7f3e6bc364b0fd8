"""Monte-Carlo execution of experiments over a bounded worker pool."""

from __future__ import annotations

import logging
import math
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from ..baselines import brute_force_oracle, run_fixed_power, run_no_comp, run_oma_comp
from ..errors import SolverFailure
from ..evaluation import TrialOutcome, TrialRecord, rank_table
from ..output import (
    metadata_path,
    rank_table_path,
    traces_path,
    write_metadata,
    write_rank_table_csv,
    write_results_csv,
    write_traces_csv,
)
from ..sca import SCAOptions, SolveResult, run
from ..scenario import ChannelSet, NetworkConfig, build_geometry, draw_channels, trial_rng, trial_seed
from ..subproblem import select_solver
from .experiment import Experiment, ExperimentKind, Scheme

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, int], None]


@dataclass(frozen=True)
class TrialTask:
    sweep_index: int
    sweep_value: float
    config: NetworkConfig
    scheme: Scheme
    trial: int
    timing: bool = True
    dump_path: Path | None = None


def draw_trial_channels(config: NetworkConfig, trial: int) -> ChannelSet:
    """Channels of one trial; the same (master_seed, trial) pair gives the same draw
    for every scheme and every sweep point of equal dimensions.
    """
    rng = trial_rng(config.master_seed, trial)
    geometry = build_geometry(config, rng)
    return draw_channels(config, geometry, rng)


def solve_scheme(
    scheme: Scheme,
    config: NetworkConfig,
    channels: ChannelSet,
    dump_path: Path | None = None,
) -> SolveResult:
    if scheme is Scheme.NOMA_COMP:
        return run(config, channels, SCAOptions(dump_path=dump_path))
    if scheme is Scheme.FIXED_POWER:
        return run_fixed_power(config, channels)
    if scheme is Scheme.NO_COMP:
        return run_no_comp(config, channels)
    if scheme is Scheme.OMA_COMP:
        return run_oma_comp(config, channels)
    return brute_force_oracle(config, channels)


def _failure_record(task: TrialTask, elapsed_ms: float) -> TrialRecord:
    config = task.config
    return TrialRecord(
        sweep_value=task.sweep_value,
        scheme=task.scheme.value,
        trial=task.trial,
        seed=trial_seed(config.master_seed, task.trial),
        sum_rate_group1=math.nan,
        feasible=False,
        qos_violations=0,
        iterations=0,
        min_R_lambda=math.nan,
        wall_time_ms=elapsed_ms,
        antennas=config.antennas_per_bs,
        clusters=config.clusters_per_cell,
        outcome=TrialOutcome.SOLVER_FAILURE.value,
    )


def run_trial(task: TrialTask) -> TrialRecord:
    """Solve one task. A SolverFailure becomes a solver_failure record, not a zero rate."""
    config = task.config
    channels = draw_trial_channels(config, task.trial)
    start = time.perf_counter()
    try:
        result = solve_scheme(task.scheme, config, channels, task.dump_path)
    except SolverFailure as e:
        logger.warning("%s trial %d at %g: %s", task.scheme.value, task.trial, task.sweep_value, e)
        result = None
    elapsed_ms = (time.perf_counter() - start) * 1000.0 if task.timing else 0.0
    if result is None:
        return _failure_record(task, elapsed_ms)

    ratios = np.asarray(result.rank_ratios, dtype=float).ravel()
    ratios = ratios[ratios > 0]
    return TrialRecord(
        sweep_value=task.sweep_value,
        scheme=task.scheme.value,
        trial=task.trial,
        seed=trial_seed(config.master_seed, task.trial),
        sum_rate_group1=float(result.sum_rate_group1),
        feasible=bool(result.feasible),
        qos_violations=int(result.qos_violations),
        iterations=int(result.iterations_used),
        min_R_lambda=float(ratios.min()) if ratios.size else math.nan,
        wall_time_ms=elapsed_ms,
        antennas=config.antennas_per_bs,
        clusters=config.clusters_per_cell,
        objective_trace=tuple(float(v) for v in result.objective_trace),
        rank_ratios=tuple(float(r) for r in ratios),
        outcome=(TrialOutcome.SOLVED if result.feasible else TrialOutcome.INFEASIBLE).value,
    )


def build_tasks(exp: Experiment) -> list[TrialTask]:
    """Task grid in output order: sweep point, then scheme, then trial."""
    tasks = []
    for index, (value, config) in enumerate(exp.sweep_points()):
        for scheme in exp.schemes:
            for trial in range(exp.trials):
                dump_path = None
                if exp.dump_dir is not None and scheme is Scheme.NOMA_COMP:
                    dump_path = exp.dump_dir / f"{exp.kind.value}_{index}_{trial}.txt"
                tasks.append(TrialTask(index, value, config, scheme, trial, exp.timing, dump_path))
    return tasks


def execute(exp: Experiment, progress: ProgressCallback | None = None) -> list[TrialRecord]:
    """Run every task; the returned order never depends on the worker count."""
    tasks = build_tasks(exp)
    total = len(tasks)
    records: list[TrialRecord | None] = [None] * total
    logger.info("running %d task(s) of %s on %d worker(s)", total, exp.kind.value, exp.workers)

    if exp.workers == 1:
        for i, task in enumerate(tasks):
            records[i] = run_trial(task)
            if progress:
                progress(i + 1, total)
        return records

    with ProcessPoolExecutor(max_workers=exp.workers) as pool:
        futures = {pool.submit(run_trial, task): i for i, task in enumerate(tasks)}
        for done, future in enumerate(as_completed(futures), start=1):
            records[futures[future]] = future.result()
            if progress:
                progress(done, total)
    return records


@dataclass(frozen=True)
class ExperimentOutput:
    records: list[TrialRecord]
    artifacts: dict[str, Path]


def run_experiment(exp: Experiment, progress: ProgressCallback | None = None) -> ExperimentOutput:
    """Execute an experiment and write its CSV tables and JSON sidecar.

    Every experiment writes the results table. Convergence runs add the
    per-iteration traces, rank-table runs the R_lambda table.
    """
    solver = select_solver()
    started_at = datetime.now(timezone.utc)
    records = execute(exp, progress)

    out = Path(exp.output_path)
    artifacts = {"results": write_results_csv(records, out)}
    if exp.kind is ExperimentKind.CONVERGENCE:
        artifacts["traces"] = write_traces_csv(records, traces_path(out))
    if exp.kind is ExperimentKind.RANK_TABLE:
        artifacts["rank_table"] = write_rank_table_csv(rank_table(records), rank_table_path(out))
    artifacts["metadata"] = write_metadata(
        metadata_path(out), exp.to_dict(), dict(artifacts), solver, started_at
    )
    return ExperimentOutput(records=records, artifacts=artifacts)
