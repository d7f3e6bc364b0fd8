"""Hand-built channel sets and configs for small, exactly solvable instances."""

import cvxpy as cp
import numpy as np
import pytest

from nomacomp.config import SOLVER_PREFERENCE
from nomacomp.scenario import ChannelSet, NetworkConfig

requires_solver = pytest.mark.skipif(
    not set(SOLVER_PREFERENCE) & set(cp.installed_solvers()),
    reason="no conic solver with PSD and exponential cone support installed",
)


def make_channels(g, h, noise=1.0) -> ChannelSet:
    """ChannelSet from arrays shaped (N_bs, N, K, M), unit noise by default."""
    g = np.asarray(g, dtype=complex)
    h = np.asarray(h, dtype=complex)
    n, k = g.shape[1], g.shape[2]
    return ChannelSet(
        g=g,
        h=h,
        noise_g=np.full((n, k), float(noise)),
        noise_h=np.full((n, k), float(noise)),
    )


def scalar_channels(g, h, noise=1.0) -> ChannelSet:
    """Single-antenna single-cluster channels from (N_bs, N) gain matrices."""
    g = np.asarray(g, dtype=complex)[:, :, np.newaxis, np.newaxis]
    h = np.asarray(h, dtype=complex)[:, :, np.newaxis, np.newaxis]
    return make_channels(g, h, noise)


def small_config(**overrides) -> NetworkConfig:
    values = dict(
        num_cells=1,
        antennas_per_bs=1,
        clusters_per_cell=1,
        transmit_snr_db=20.0,
        sinr_target=0.2,
        path_loss_exponent=3.0,
        reference_distance=500.0,
    )
    values.update(overrides)
    return NetworkConfig(**values)
