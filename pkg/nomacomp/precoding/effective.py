"""Effective channels seen through the ZF bases, and interference scalars.

Naming follows the transmitter -> victim convention: index (i, j) is the
transmitting cluster j of BS i, index (n, k) the receiving cluster k of cell n.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionError
from ..scenario.channels import ChannelSet
from .nullspace import PrecoderBasis


@dataclass(frozen=True)
class EffectiveChannels:
    """Rank-one PSD matrices G_{j_i -> k_n} and H_{j_i -> k_n}.

    gv[i, j, n, k] = U_{j_i}^H g_{i,k_n} / sigma_{k_n}, shape (N, K, N, K, D);
    G = gv gv^H. hv / H likewise with h and the Group-2 noise.
    """

    gv: np.ndarray
    hv: np.ndarray
    G: np.ndarray
    H: np.ndarray
    bases: PrecoderBasis

    @property
    def num_cells(self) -> int:
        return self.gv.shape[0]

    @property
    def clusters_per_cell(self) -> int:
        return self.gv.shape[1]

    @property
    def basis_dim(self) -> int:
        return self.gv.shape[-1]

    @property
    def gv_own(self) -> np.ndarray:
        """U_{k_n}^H g_{n,k_n} / sigma per cluster, shape (N, K, D)."""
        n, k = np.meshgrid(np.arange(self.num_cells), np.arange(self.clusters_per_cell), indexing="ij")
        return self.gv[n, k, n, k]

    @property
    def hv_own(self) -> np.ndarray:
        n, k = np.meshgrid(np.arange(self.num_cells), np.arange(self.clusters_per_cell), indexing="ij")
        return self.hv[n, k, n, k]


def _project(U: np.ndarray, channels: np.ndarray, noise: np.ndarray) -> np.ndarray:
    # (U^H x)[i, j, n, k, d] = sum_m conj(U[i, j, m, d]) x[i, n, k, m]
    projected = np.einsum("ijmd,inkm->ijnkd", U.conj(), channels)
    return projected / np.sqrt(noise)[np.newaxis, np.newaxis, :, :, np.newaxis]


def _outer(vectors: np.ndarray) -> np.ndarray:
    return vectors[..., :, np.newaxis] * vectors.conj()[..., np.newaxis, :]


def effective_matrices(channels: ChannelSet, bases: PrecoderBasis) -> EffectiveChannels:
    """Materialize G and H for all (transmitting cluster, victim) pairs."""
    n, k, m = channels.num_cells, channels.clusters_per_cell, channels.antennas
    if bases.U.shape[:3] != (n, k, m):
        raise DimensionError(
            f"bases of shape {bases.U.shape} do not match channels (N={n}, K={k}, M={m})"
        )
    gv = _project(bases.U, channels.g, channels.noise_g)
    hv = _project(bases.U, channels.h, channels.noise_h)
    return EffectiveChannels(gv=gv, hv=hv, G=_outer(gv), H=_outer(hv), bases=bases)


def received_powers(vectors: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """trace(X_{j_i -> k_n} Q_{j_i}) for all pairs, shape (N, K, N, K)."""
    return np.real(np.einsum("ijnkd,ijde,ijnke->ijnk", vectors.conj(), Q, vectors))


def interference_scalars(eff: EffectiveChannels, Q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Normalized interference-plus-noise (u, v), each of shape (N, K).

    u_{k_n} sums inter-cell Group-1 interference, v_{k_n} adds the intra-cell
    terms j != k seen by the Group-2 user. Both include the +1 noise floor.
    """
    n, k, d = eff.num_cells, eff.clusters_per_cell, eff.basis_dim
    if Q.shape != (n, k, d, d):
        raise DimensionError(f"Q has shape {Q.shape}, expected {(n, k, d, d)}")

    from_g = received_powers(eff.gv, Q)
    from_h = received_powers(eff.hv, Q)

    other_cell = 1.0 - np.eye(n)
    other_cluster = 1.0 - np.eye(k)
    inter_g = np.einsum("ijnk,in->nk", from_g, other_cell)
    inter_h = np.einsum("ijnk,in->nk", from_h, other_cell)
    intra_h = np.einsum("njnk,jk->nk", from_h, other_cluster)
    return inter_g + 1.0, intra_h + inter_h + 1.0


def served_traces(eff: EffectiveChannels, Q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(trace(G_own Q), trace(H_own Q)) per cluster: the X and Y of the subproblem."""
    own_g = np.real(np.einsum("nkd,nkde,nke->nk", eff.gv_own.conj(), Q, eff.gv_own))
    own_h = np.real(np.einsum("nkd,nkde,nke->nk", eff.hv_own.conj(), Q, eff.hv_own))
    return own_g, own_h


def scaled_by_power(eff: EffectiveChannels, powers: np.ndarray) -> EffectiveChannels:
    """Effective channels in units where every BS budget maps to 1.

    With Q_hat = Q / P_i the traces are unchanged: trace(P_i G Q_hat) = trace(G Q).
    """
    powers = np.asarray(powers, dtype=float)
    if powers.shape != (eff.num_cells,):
        raise DimensionError(f"powers must have shape ({eff.num_cells},), got {powers.shape}")
    amp = np.sqrt(powers)[:, np.newaxis, np.newaxis, np.newaxis, np.newaxis]
    gv, hv = eff.gv * amp, eff.hv * amp
    return EffectiveChannels(gv=gv, hv=hv, G=_outer(gv), H=_outer(hv), bases=eff.bases)
