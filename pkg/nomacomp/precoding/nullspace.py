"""Zero-forcing null-space bases U_k for every cluster."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..config import SINGULAR_VALUE_RTOL
from ..errors import DimensionError
from ..scenario.channels import ChannelSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrecoderBasis:
    """U[n, k] is the M x (M-K+1) orthonormal basis of cluster k in cell n.

    U has shape (N, K, M, D) with D = M - K + 1. rank_deficient[n, k] marks
    clusters whose intra-cell Group-1 channels were linearly dependent.
    """

    U: np.ndarray
    rank_deficient: np.ndarray

    def __post_init__(self):
        self.U.setflags(write=False)
        self.rank_deficient.setflags(write=False)

    @property
    def basis_dim(self) -> int:
        return self.U.shape[-1]

    @property
    def any_rank_deficient(self) -> bool:
        return bool(self.rank_deficient.any())


def normalize_column_phases(matrix: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate each column so its first non-negligible entry is real positive."""
    out = np.array(matrix, dtype=complex)
    for col in range(out.shape[1]):
        column = out[:, col]
        nonzero = np.flatnonzero(np.abs(column) > tol * max(np.abs(column).max(), 1.0))
        if nonzero.size:
            pivot = column[nonzero[0]]
            out[:, col] = column * (np.conj(pivot) / np.abs(pivot))
    return out


def zf_null_basis(
    other_group1_channels: Sequence[np.ndarray],
    antennas: int,
) -> tuple[np.ndarray, bool]:
    """Orthonormal basis of the null space of the stacked channels G_bar.

    Returns (U, rank_deficient) where U has M - K + 1 columns with
    K - 1 = len(other_group1_channels) and U^H G_bar = 0. Without other
    channels the whole space is free and U is the identity. When G_bar is
    rank deficient the null space is larger; its first M - K + 1 directions
    are returned and the flag is set.
    """
    num_others = len(other_group1_channels)
    if num_others >= antennas + 1:
        raise DimensionError(f"{num_others} interfering channels leave no null space in C^{antennas}")
    dim = antennas - num_others
    if num_others == 0:
        return np.eye(antennas, dtype=complex), False

    g_bar = np.column_stack([np.asarray(v, dtype=complex) for v in other_group1_channels])
    if g_bar.shape[0] != antennas:
        raise DimensionError(f"channel length {g_bar.shape[0]} != M={antennas}")

    left, singular, _ = np.linalg.svd(g_bar, full_matrices=True)
    rank = int(np.sum(singular > SINGULAR_VALUE_RTOL * singular.max())) if singular.max() > 0 else 0
    rank_deficient = rank < num_others
    if rank_deficient:
        logger.warning(
            "G_bar has rank %d < %d; null space has dimension %d, keeping %d directions",
            rank, num_others, antennas - rank, dim,
        )
    basis = left[:, rank:rank + dim]
    return normalize_column_phases(basis), rank_deficient


def build_bases(channels: ChannelSet) -> PrecoderBasis:
    """Null-space basis for every cluster from its own cell's Group-1 channels."""
    n_cells, k_clusters, m = channels.num_cells, channels.clusters_per_cell, channels.antennas
    dim = m - k_clusters + 1
    U = np.zeros((n_cells, k_clusters, m, dim), dtype=complex)
    deficient = np.zeros((n_cells, k_clusters), dtype=bool)
    for n in range(n_cells):
        serving = channels.g[n, n]
        for k in range(k_clusters):
            others = [serving[j] for j in range(k_clusters) if j != k]
            U[n, k], deficient[n, k] = zf_null_basis(others, m)
    return PrecoderBasis(U=U, rank_deficient=deficient)
