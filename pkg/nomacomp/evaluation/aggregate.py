"""Per-trial records and their summaries."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from itertools import groupby

import numpy as np

from ..errors import AggregationError


class TrialOutcome(str, Enum):
    SOLVED = "solved"
    INFEASIBLE = "infeasible"
    SOLVER_FAILURE = "solver_failure"


@dataclass(frozen=True)
class TrialRecord:
    """Outcome of one scheme on one channel draw at one sweep point.

    A solver_failure record carries no rate: sum_rate_group1 is nan and the
    trial is left out of every average.
    """

    sweep_value: float
    scheme: str
    trial: int
    seed: int
    sum_rate_group1: float
    feasible: bool
    qos_violations: int
    iterations: int
    min_R_lambda: float
    wall_time_ms: float = 0.0
    antennas: int = 0
    clusters: int = 0
    objective_trace: tuple[float, ...] = field(default=())
    rank_ratios: tuple[float, ...] = field(default=())
    outcome: str = TrialOutcome.SOLVED.value

    @property
    def failed(self) -> bool:
        return self.outcome == TrialOutcome.SOLVER_FAILURE.value


@dataclass(frozen=True)
class RankStats:
    average: float
    maximum: float
    minimum: float


@dataclass(frozen=True)
class SummaryRow:
    sweep_value: float
    scheme: str
    trials: int
    mean_sum_rate: float
    min_sum_rate: float
    max_sum_rate: float
    feasible_fraction: float
    qos_violations: int
    mean_iterations: float
    r_lambda: RankStats
    numerical_failures: int = 0


@dataclass(frozen=True)
class RankRow:
    """One line of a rank-ratio table."""

    antennas: int
    clusters: int
    stats: RankStats


def rank_stats(ratios: Iterable[float]) -> RankStats:
    """Average over finite ratios; maximum and minimum over all (inf included)."""
    values = np.asarray(list(ratios), dtype=float)
    if values.size == 0:
        return RankStats(math.nan, math.nan, math.nan)
    finite = values[np.isfinite(values)]
    average = float(finite.mean()) if finite.size else math.inf
    return RankStats(average=average, maximum=float(values.max()), minimum=float(values.min()))


def _trial_ratios(record: TrialRecord) -> tuple[float, ...]:
    return record.rank_ratios or (record.min_R_lambda,)


def _ordered(records: Sequence[TrialRecord], scheme_order: Sequence[str] | None) -> list[TrialRecord]:
    order = {name: i for i, name in enumerate(scheme_order or ())}
    fallback = len(order)
    return sorted(
        records,
        key=lambda r: (r.sweep_value, order.get(r.scheme, fallback), r.scheme, r.trial),
    )


def aggregate(
    records: Sequence[TrialRecord],
    scheme_order: Sequence[str] | None = None,
) -> list[SummaryRow]:
    """Summarize trials per (sweep_value, scheme).

    Infeasible trials count with their recorded sum rate (0 for the joint
    schemes). Solver failures are only counted in numerical_failures; rates,
    feasibility and iterations are taken over the remaining trials (nan when
    none remain). R_lambda statistics only use feasible trials.
    """
    if not records:
        raise AggregationError("cannot aggregate an empty list of trials")

    rows = []
    ordered = _ordered(records, scheme_order)
    for (value, scheme), group in groupby(ordered, key=lambda r: (r.sweep_value, r.scheme)):
        group = list(group)
        solved = [r for r in group if not r.failed]
        rates = np.array([r.sum_rate_group1 for r in solved], dtype=float)
        ratios = [x for r in solved if r.feasible for x in _trial_ratios(r)]
        rows.append(SummaryRow(
            sweep_value=value,
            scheme=scheme,
            trials=len(group),
            mean_sum_rate=float(rates.mean()) if solved else math.nan,
            min_sum_rate=float(rates.min()) if solved else math.nan,
            max_sum_rate=float(rates.max()) if solved else math.nan,
            feasible_fraction=sum(r.feasible for r in solved) / len(solved) if solved else math.nan,
            qos_violations=sum(r.qos_violations for r in solved),
            mean_iterations=float(np.mean([r.iterations for r in solved])) if solved else math.nan,
            r_lambda=rank_stats(ratios),
            numerical_failures=len(group) - len(solved),
        ))
    return rows


def rank_table(records: Sequence[TrialRecord]) -> list[RankRow]:
    """R_lambda Average / Maximum / Minimum per (M, K), over feasible trials."""
    if not records:
        raise AggregationError("cannot build a rank table from no trials")
    keyed = sorted(records, key=lambda r: (r.clusters, r.antennas, r.trial))
    table = []
    for (clusters, antennas), group in groupby(keyed, key=lambda r: (r.clusters, r.antennas)):
        ratios = [x for r in group if r.feasible for x in _trial_ratios(r)]
        table.append(RankRow(antennas=antennas, clusters=clusters, stats=rank_stats(ratios)))
    return table
