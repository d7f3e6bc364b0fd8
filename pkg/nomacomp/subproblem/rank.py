"""Rank-one certificates and beamformer extraction from relaxed solutions."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ..config import MIN_TRUSTED_RANK_RATIO, RANK_SENTINEL_RTOL, ZERO_MATRIX_TOL
from ..precoding.nullspace import normalize_column_phases

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RankDiagnostic:
    """Per-cluster rank ratios and extracted beamformers.

    R_lambda has shape (N, K); q has shape (N, K, D). zero marks clusters
    whose Q was numerically zero (their ratio is reported as 0).
    """

    R_lambda: np.ndarray
    q: np.ndarray
    zero: np.ndarray

    @property
    def min_ratio(self) -> float:
        active = self.R_lambda[~self.zero]
        return float(active.min()) if active.size else math.inf


def _descending_eigh(Q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    hermitian = 0.5 * (Q + Q.conj().T)
    values, vectors = linalg.eigh(hermitian)
    return values[::-1], vectors[:, ::-1]


def rank_ratio(Q: np.ndarray, scale: float | None = None) -> tuple[float, bool]:
    """lambda_1 / lambda_2 of a Hermitian PSD matrix.

    Returns (ratio, is_zero). The ratio is +inf for a 1x1 matrix or when
    lambda_2 <= 1e-15 * lambda_1. A matrix whose largest eigenvalue is below
    1e-14 * scale counts as zero and yields (0.0, True); scale defaults to 1.
    """
    Q = np.atleast_2d(Q)
    values, _ = _descending_eigh(Q)
    reference = 1.0 if scale is None else scale
    if values[0] <= ZERO_MATRIX_TOL * reference:
        return 0.0, True
    if Q.shape[0] == 1 or values[1] <= RANK_SENTINEL_RTOL * values[0]:
        return math.inf, False
    return float(values[0] / values[1]), False


def extract_beamformer(Q: np.ndarray) -> np.ndarray:
    """q = sqrt(lambda_1) e_1, with e_1's first nonzero entry made real positive."""
    Q = np.atleast_2d(Q)
    values, vectors = _descending_eigh(Q)
    ratio, is_zero = rank_ratio(Q, scale=max(float(np.real(np.trace(Q))), 1.0))
    if is_zero:
        return np.zeros(Q.shape[0], dtype=complex)
    if ratio < MIN_TRUSTED_RANK_RATIO:
        logger.warning("extracting a beamformer from a matrix with R_lambda=%.3g", ratio)
    lead = normalize_column_phases(vectors[:, :1])[:, 0]
    return math.sqrt(max(values[0], 0.0)) * lead


def rank_diagnostic(Q: np.ndarray, powers: np.ndarray | None = None) -> RankDiagnostic:
    """Rank ratios and extracted beamformers for every cluster of Q (N, K, D, D).

    The zero threshold is relative to each cell's power budget when given.
    """
    n_cells, k_cl, d, _ = Q.shape
    ratios = np.zeros((n_cells, k_cl))
    zero = np.zeros((n_cells, k_cl), dtype=bool)
    q = np.zeros((n_cells, k_cl, d), dtype=complex)
    for n in range(n_cells):
        scale = None if powers is None else float(powers[n])
        for k in range(k_cl):
            ratios[n, k], zero[n, k] = rank_ratio(Q[n, k], scale=scale)
            if not zero[n, k]:
                q[n, k] = extract_beamformer(Q[n, k])
    return RankDiagnostic(R_lambda=ratios, q=q, zero=zero)
