"""Iteration state and final results of the SCA loop."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..evaluation import RateReport
from ..precoding import PrecoderBasis
from ..subproblem import FixedPoints, SubproblemSolution


@dataclass
class SCAState:
    """Mutable loop state; iteration counts solved subproblems."""

    fp: FixedPoints
    iteration: int = 0
    objective_history: list[float] = field(default_factory=list)
    tightness: list[dict[str, float]] = field(default_factory=list)
    last_solution: SubproblemSolution | None = None

    def advance(self, solution: SubproblemSolution, fp: FixedPoints, tightness: dict[str, float]) -> None:
        self.iteration += 1
        self.objective_history.append(solution.objective)
        self.tightness.append(tightness)
        self.last_solution = solution
        self.fp = fp


@dataclass(frozen=True)
class SolveResult:
    """Beamformers, power splits and achieved performance of one scheme on one draw.

    q has shape (N, K, D) in the coordinates of `bases`; a has shape (N, K).
    sum_rate_group1 is 0 for infeasible draws of the joint schemes.
    """

    q: np.ndarray
    a: np.ndarray
    sum_rate_group1: float
    feasible: bool
    rank_ratios: np.ndarray
    iterations_used: int = 0
    converged: bool = False
    objective_trace: tuple[float, ...] = ()
    qos_violations: int = 0
    report: RateReport | None = None
    bases: PrecoderBasis | None = None
    Q: np.ndarray | None = None
    tightness_trace: tuple[dict[str, float], ...] = ()

    @property
    def b(self) -> np.ndarray:
        return 1.0 - self.a

    @property
    def achieved_rates(self) -> dict[str, np.ndarray] | None:
        if self.report is None:
            return None
        return {
            "group1": self.report.rate_g1,
            "sic": self.report.rate_sic,
            "group2": self.report.rate_g2,
        }

    @property
    def min_rank_ratio(self) -> float:
        ratios = np.asarray(self.rank_ratios, dtype=float)
        ratios = ratios[ratios > 0]
        return float(ratios.min()) if ratios.size else float("inf")

    @classmethod
    def infeasible(cls, num_cells: int, clusters: int, basis_dim: int, iterations: int = 0) -> SolveResult:
        return cls(
            q=np.zeros((num_cells, clusters, basis_dim), dtype=complex),
            a=np.zeros((num_cells, clusters)),
            sum_rate_group1=0.0,
            feasible=False,
            rank_ratios=np.zeros((num_cells, clusters)),
            iterations_used=iterations,
        )
