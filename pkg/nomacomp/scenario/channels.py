"""Rayleigh-faded channels with power-law path loss."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionError
from .geometry import GROUP_1, GROUP_2, Geometry
from .network import NetworkConfig


@dataclass(frozen=True)
class ChannelSet:
    """Channel vectors from every BS to every user.

    g[i, n, k] is the length-M channel from BS i to the Group-1 user of
    cluster k in cell n; h[i, n, k] the same for the Group-2 user. Both have
    shape (N_bs, N, K, M). noise_g / noise_h are the receiver noise variances,
    shape (N, K).
    """

    g: np.ndarray
    h: np.ndarray
    noise_g: np.ndarray
    noise_h: np.ndarray

    def __post_init__(self):
        n_bs, n_cells, k, m = self.g.shape
        if self.h.shape != self.g.shape:
            raise DimensionError(f"h shape {self.h.shape} != g shape {self.g.shape}")
        if n_bs != n_cells:
            raise DimensionError("channels must cover every BS-to-cell pair")
        if self.noise_g.shape != (n_cells, k) or self.noise_h.shape != (n_cells, k):
            raise DimensionError("noise variances must have shape (N, K)")
        for arr in (self.g, self.h, self.noise_g, self.noise_h):
            arr.setflags(write=False)

    @property
    def num_cells(self) -> int:
        return self.g.shape[1]

    @property
    def clusters_per_cell(self) -> int:
        return self.g.shape[2]

    @property
    def antennas(self) -> int:
        return self.g.shape[3]

    def restricted_to_cell(self, cell: int) -> ChannelSet:
        """Single-cell view: only BS `cell` and the users it serves."""
        sl = slice(cell, cell + 1)
        return ChannelSet(
            g=self.g[sl, sl].copy(),
            h=self.h[sl, sl].copy(),
            noise_g=self.noise_g[sl].copy(),
            noise_h=self.noise_h[sl].copy(),
        )


def path_loss_amplitude(distance, exponent: float, reference_distance: float = 1.0):
    """Amplitude factor (d / d0)^-alpha applied to a channel vector.

    With reference_distance=1 this is the literal d^-alpha scaling.
    """
    return (np.asarray(distance, dtype=float) / reference_distance) ** (-exponent)


def cscg(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Circularly-symmetric complex Gaussian entries with unit variance."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def draw_channels(config: NetworkConfig, geo: Geometry, rng: np.random.Generator) -> ChannelSet:
    """Draw small-scale fading for every BS-user link and apply path loss."""
    n, k, m = config.num_cells, config.clusters_per_cell, config.antennas_per_bs
    if geo.user_positions.shape[:2] != (n, k) or geo.num_cells != n:
        raise DimensionError("geometry does not match the configuration")

    amplitude = path_loss_amplitude(
        geo.link_distances(), config.path_loss_exponent, config.reference_distance
    )
    shape = (n, n, k, m)
    g = amplitude[..., GROUP_1, np.newaxis] * cscg(rng, shape)
    h = amplitude[..., GROUP_2, np.newaxis] * cscg(rng, shape)

    noise = np.full((n, k), config.noise_power)
    return ChannelSet(g=g, h=h, noise_g=noise, noise_h=noise.copy())
