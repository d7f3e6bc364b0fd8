"""Multi-cell placement of base stations and users."""

from dataclasses import dataclass

import numpy as np

from .network import NetworkConfig

GROUP_1 = 0
GROUP_2 = 1


@dataclass(frozen=True)
class Geometry:
    """Planar positions in meters.

    bs_positions has shape (N, 2); user_positions has shape (N, K, 2, 2),
    indexed by cell, cluster, group (GROUP_1 / GROUP_2) and coordinate.
    """

    bs_positions: np.ndarray
    user_positions: np.ndarray

    def __post_init__(self):
        self.bs_positions.setflags(write=False)
        self.user_positions.setflags(write=False)

    @property
    def num_cells(self) -> int:
        return self.bs_positions.shape[0]

    def link_distances(self) -> np.ndarray:
        """Distances from every BS to every user, shape (N_bs, N, K, 2)."""
        offsets = (
            self.user_positions[np.newaxis, ...]
            - self.bs_positions[:, np.newaxis, np.newaxis, np.newaxis, :]
        )
        return np.linalg.norm(offsets, axis=-1)

    def serving_distances(self) -> np.ndarray:
        """Distances from each user to its own BS, shape (N, K, 2)."""
        distances = self.link_distances()
        cells = np.arange(self.num_cells)
        return distances[cells, cells]


def bs_layout(num_cells: int, spacing: float) -> np.ndarray:
    """Base stations on a line, neighbours `spacing` apart, first at the origin."""
    positions = np.zeros((num_cells, 2))
    positions[:, 0] = spacing * np.arange(num_cells)
    return positions


def build_geometry(config: NetworkConfig, rng: np.random.Generator) -> Geometry:
    """Place BSs on a line and drop 2K users uniformly in each cell disc."""
    bs_positions = bs_layout(config.num_cells, config.inter_bs_distance)

    shape = (config.num_cells, config.clusters_per_cell, 2)
    # sqrt of a uniform radius fraction gives a uniform density over the disc
    radius = config.cell_radius * np.sqrt(rng.random(shape))
    angle = 2.0 * np.pi * rng.random(shape)
    offsets = np.stack([radius * np.cos(angle), radius * np.sin(angle)], axis=-1)

    user_positions = bs_positions[:, np.newaxis, np.newaxis, :] + offsets
    return Geometry(bs_positions=bs_positions, user_positions=user_positions)
