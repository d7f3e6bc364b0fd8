"""Achieved SINRs and rates of concrete beamformers.

Everything here depends only on channels, bases, beamformers and power
splits; nothing is read from solver internals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..config import RATE_TOL
from ..errors import DimensionError
from ..precoding import PrecoderBasis
from ..scenario.channels import ChannelSet


@dataclass(frozen=True)
class RateReport:
    """Per-cluster SINRs and rates, all arrays of shape (N, K).

    sinr_g1 is the Group-1 SINR after SIC, sinr_sic the SINR at which the
    Group-1 user decodes the Group-2 message, sinr_g2 the Group-2 SINR.
    Rates are resource_share * log2(1 + SINR); resource_share < 1 for
    schemes that give each group only part of the resource.
    """

    sinr_g1: np.ndarray
    sinr_sic: np.ndarray
    sinr_g2: np.ndarray
    target_rate: float
    resource_share: float = 1.0

    @property
    def rate_g1(self) -> np.ndarray:
        return self.resource_share * np.log2(1.0 + self.sinr_g1)

    @property
    def rate_sic(self) -> np.ndarray:
        return self.resource_share * np.log2(1.0 + self.sinr_sic)

    @property
    def rate_g2(self) -> np.ndarray:
        return self.resource_share * np.log2(1.0 + self.sinr_g2)

    @property
    def sic_ok(self) -> np.ndarray:
        return self.rate_sic >= self.target_rate - RATE_TOL

    @property
    def g2_ok(self) -> np.ndarray:
        return self.rate_g2 >= self.target_rate - RATE_TOL

    @property
    def qos_ok(self) -> np.ndarray:
        return np.minimum(self.rate_sic, self.rate_g2) >= self.target_rate - RATE_TOL

    @property
    def qos_violations(self) -> int:
        return int(np.count_nonzero(~self.qos_ok))

    @property
    def sum_rate_group1(self) -> float:
        return float(np.sum(self.rate_g1))


def beam_vectors(bases: PrecoderBasis, q: np.ndarray) -> np.ndarray:
    """Transmit vectors U_{k_n} q_{k_n}, shape (N, K, M)."""
    if q.shape != bases.U.shape[:2] + (bases.basis_dim,):
        raise DimensionError(f"beamformers of shape {q.shape} do not match bases {bases.U.shape}")
    return np.einsum("nkmd,nkd->nkm", bases.U, q)


def link_gains(channels: np.ndarray, beams: np.ndarray) -> np.ndarray:
    """|x_{i,k_n}^H w_{j_i}|^2 for every transmitter (i, j) and victim (n, k)."""
    return np.abs(np.einsum("inkm,ijm->ijnk", channels.conj(), beams)) ** 2


def achieved_sinrs(
    channels: ChannelSet,
    bases: PrecoderBasis,
    q: np.ndarray,
    a: np.ndarray,
    target_rate: float,
) -> RateReport:
    """SINRs from the signal model with full interference accounting.

    Group-1 users see inter-cell interference plus any intra-cell leakage of
    the other clusters (zero under exact zero-forcing). Group-2 users also
    see the intra-cluster Group-1 signal and the other clusters of the cell.
    """
    a = np.asarray(a, dtype=float)
    n_cells, k_cl = channels.num_cells, channels.clusters_per_cell
    if a.shape != (n_cells, k_cl):
        raise DimensionError(f"power splits of shape {a.shape}, expected {(n_cells, k_cl)}")
    beams = beam_vectors(bases, q)
    gain_g = link_gains(channels.g, beams)
    gain_h = link_gains(channels.h, beams)

    cells = np.arange(n_cells)[:, np.newaxis]
    clusters = np.arange(k_cl)[np.newaxis, :]
    own_g = gain_g[cells, clusters, cells, clusters]
    own_h = gain_h[cells, clusters, cells, clusters]
    other_g = gain_g.sum(axis=(0, 1)) - own_g
    other_h = gain_h.sum(axis=(0, 1)) - own_h

    b = 1.0 - a
    g_denominator = other_g + channels.noise_g
    sinr_g1 = a * own_g / g_denominator
    sinr_sic = b * own_g / (a * own_g + g_denominator)
    sinr_g2 = b * own_h / (a * own_h + other_h + channels.noise_h)
    return RateReport(sinr_g1=sinr_g1, sinr_sic=sinr_sic, sinr_g2=sinr_g2, target_rate=target_rate)


def combine_half_slots(group1_slot: RateReport, group2_slot: RateReport) -> RateReport:
    """Report for two orthogonal equal slots: Group 1 on one, Group 2 on the other.

    No SIC takes place, so sinr_sic is +inf. Both groups get half the resource.
    """
    return RateReport(
        sinr_g1=group1_slot.sinr_g1,
        sinr_sic=np.full_like(group1_slot.sinr_g1, np.inf),
        sinr_g2=group2_slot.sinr_g2,
        target_rate=group1_slot.target_rate,
        resource_share=0.5,
    )
