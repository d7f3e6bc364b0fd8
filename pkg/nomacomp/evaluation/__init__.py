"""Evaluation module: achieved rates, constraint checks and summaries."""

from .aggregate import (
    RankRow,
    RankStats,
    SummaryRow,
    TrialOutcome,
    TrialRecord,
    aggregate,
    rank_stats,
    rank_table,
)
from .feasibility import FeasibilityRecord, check_constraints, transmit_powers
from .rates import RateReport, achieved_sinrs, beam_vectors, combine_half_slots, link_gains

__all__ = [
    "RankRow",
    "RankStats",
    "SummaryRow",
    "TrialOutcome",
    "TrialRecord",
    "aggregate",
    "rank_stats",
    "rank_table",
    "FeasibilityRecord",
    "check_constraints",
    "transmit_powers",
    "RateReport",
    "achieved_sinrs",
    "beam_vectors",
    "combine_half_slots",
    "link_gains",
]
