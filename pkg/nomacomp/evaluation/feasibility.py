"""Constraint checks on evaluated beamformers."""

from dataclasses import dataclass

import numpy as np

from ..config import POWER_RTOL
from .rates import RateReport


@dataclass(frozen=True)
class FeasibilityRecord:
    """SIC and QoS flags per cluster (N, K) and power flags per BS (N,)."""

    sic_ok: np.ndarray
    qos_ok: np.ndarray
    power_ok: np.ndarray
    power_used: np.ndarray

    @property
    def all_ok(self) -> bool:
        return bool(self.sic_ok.all() and self.qos_ok.all() and self.power_ok.all())


def transmit_powers(q: np.ndarray) -> np.ndarray:
    """Per-BS power sum_k ||q_{k_n}||^2; the bases are orthonormal so ||U q|| = ||q||."""
    return np.sum(np.abs(q) ** 2, axis=(1, 2))


def check_constraints(report: RateReport, q: np.ndarray, powers) -> FeasibilityRecord:
    """Check SIC decodability, Group-2 QoS and per-BS power of a design.

    Rates use the absolute tolerance of the report, power a relative one.
    """
    budget = np.broadcast_to(np.asarray(powers, dtype=float), (q.shape[0],))
    used = transmit_powers(q)
    return FeasibilityRecord(
        sic_ok=report.sic_ok,
        qos_ok=report.g2_ok,
        power_ok=used <= budget * (1.0 + POWER_RTOL),
        power_used=used,
    )
