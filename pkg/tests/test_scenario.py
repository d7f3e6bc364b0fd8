"""Tests for geometry, path loss, channel draws and per-trial randomness."""

import numpy as np
import pytest

from nomacomp.errors import DimensionError
from nomacomp.scenario import (
    GROUP_1,
    GROUP_2,
    NetworkConfig,
    bs_layout,
    build_geometry,
    cscg,
    draw_channels,
    path_loss_amplitude,
    trial_rng,
    trial_seed,
)
from tests.helpers import make_channels, small_config


class TestGeometry:
    """Test base-station layout and user drops."""

    def test_bs_layout_on_a_line(self):
        """Neighbouring BSs should be one spacing apart, the first at the origin."""
        positions = bs_layout(3, 1000.0)

        assert np.allclose(positions, [[0.0, 0.0], [1000.0, 0.0], [2000.0, 0.0]])

    def test_single_cell_at_origin(self):
        assert np.allclose(bs_layout(1, 1000.0), [[0.0, 0.0]])

    def test_users_inside_their_cell(self):
        """Every user should fall within cell_radius of its serving BS."""
        config = small_config(num_cells=3, antennas_per_bs=4, clusters_per_cell=3)
        geometry = build_geometry(config, trial_rng(0, 0))

        assert geometry.user_positions.shape == (3, 3, 2, 2)
        assert np.all(geometry.serving_distances() <= config.cell_radius + 1e-9)

    def test_users_far_from_other_cells(self):
        """A user is at least inter_bs_distance - cell_radius from every other BS."""
        config = small_config(num_cells=4, antennas_per_bs=3, clusters_per_cell=3)
        for trial in range(5):
            distances = build_geometry(config, trial_rng(11, trial)).link_distances()
            for bs in range(config.num_cells):
                others = np.delete(distances[bs], bs, axis=0)
                assert np.all(others >= config.inter_bs_distance - config.cell_radius - 1e-9)

    def test_link_distances_shape(self):
        config = small_config(num_cells=2, antennas_per_bs=2, clusters_per_cell=2)
        geometry = build_geometry(config, trial_rng(0, 0))

        distances = geometry.link_distances()
        assert distances.shape == (2, 2, 2, 2)
        assert np.all(distances >= 0)

    def test_positions_read_only(self):
        geometry = build_geometry(small_config(), trial_rng(0, 0))

        with pytest.raises(ValueError):
            geometry.bs_positions[0, 0] = 1.0

    def test_group_indices(self):
        assert (GROUP_1, GROUP_2) == (0, 1)


class TestPathLoss:
    """Test the power-law amplitude factor."""

    def test_literal_scaling(self):
        """With unit reference distance the factor is d^-alpha."""
        assert path_loss_amplitude(10.0, 3.0) == pytest.approx(1e-3)

    def test_reference_distance(self):
        """(d / d0)^-alpha with d0 = 500 m."""
        assert path_loss_amplitude(1000.0, 2.0, 500.0) == pytest.approx(0.25)
        assert path_loss_amplitude(500.0, 4.0, 500.0) == pytest.approx(1.0)

    def test_default_config_is_literal(self):
        """Without a reference distance, a user 500 m away with alpha = 4 sees 500^-4."""
        config = NetworkConfig(num_cells=1, antennas_per_bs=1, clusters_per_cell=1,
                               transmit_snr_db=30.0, sinr_target=0.2, path_loss_exponent=4.0)

        factor = path_loss_amplitude(500.0, config.path_loss_exponent, config.reference_distance)

        assert factor == pytest.approx(1.6e-11)

    def test_zero_exponent(self):
        assert np.allclose(path_loss_amplitude([1.0, 50.0, 700.0], 0.0), 1.0)

    def test_array_input(self):
        factors = path_loss_amplitude(np.array([1.0, 2.0]), 1.0)

        assert np.allclose(factors, [1.0, 0.5])


class TestChannels:
    """Test channel draws and ChannelSet views."""

    def test_draw_shapes(self):
        config = small_config(num_cells=2, antennas_per_bs=3, clusters_per_cell=2)
        rng = trial_rng(1, 0)
        channels = draw_channels(config, build_geometry(config, rng), rng)

        assert channels.g.shape == (2, 2, 2, 3)
        assert channels.h.shape == (2, 2, 2, 3)
        assert channels.noise_g.shape == (2, 2)
        assert np.all(channels.noise_h == config.noise_power)

    def test_cscg_unit_variance(self):
        samples = cscg(np.random.default_rng(3), (200_000,))

        assert np.mean(np.abs(samples) ** 2) == pytest.approx(1.0, abs=0.02)
        assert abs(np.mean(samples)) < 0.01

    def test_restricted_to_cell(self):
        """The single-cell view should keep only the serving links of that cell."""
        config = small_config(num_cells=3, antennas_per_bs=2, clusters_per_cell=2)
        rng = trial_rng(5, 0)
        channels = draw_channels(config, build_geometry(config, rng), rng)

        cell = channels.restricted_to_cell(1)
        assert cell.g.shape == (1, 1, 2, 2)
        assert np.array_equal(cell.g[0, 0], channels.g[1, 1])
        assert np.array_equal(cell.h[0, 0], channels.h[1, 1])
        assert cell.num_cells == 1

    def test_mismatched_shapes_rejected(self):
        g = np.ones((1, 1, 1, 2))

        with pytest.raises(DimensionError):
            make_channels(g, np.ones((1, 1, 1, 3)))

    def test_partial_bs_coverage_rejected(self):
        with pytest.raises(DimensionError):
            make_channels(np.ones((2, 1, 1, 1)), np.ones((2, 1, 1, 1)))

    def test_geometry_mismatch_rejected(self):
        config = small_config(num_cells=2)
        rng = trial_rng(0, 0)
        geometry = build_geometry(small_config(num_cells=1), rng)

        with pytest.raises(DimensionError):
            draw_channels(config, geometry, rng)


class TestTrialRandomness:
    """Test reproducibility of per-trial streams."""

    def test_same_trial_same_draws(self):
        assert np.array_equal(trial_rng(42, 3).random(5), trial_rng(42, 3).random(5))

    def test_trials_independent(self):
        assert not np.array_equal(trial_rng(42, 3).random(5), trial_rng(42, 4).random(5))

    def test_master_seed_matters(self):
        assert not np.array_equal(trial_rng(1, 0).random(5), trial_rng(2, 0).random(5))

    def test_trial_seed_stable(self):
        """The recorded seed should be a deterministic 64-bit integer."""
        seed = trial_seed(42, 3)

        assert seed == trial_seed(42, 3)
        assert seed != trial_seed(42, 4)
        assert 0 <= seed < 2**64

    def test_channel_draw_reproducible(self):
        """Redrawing a trial should reproduce its channels exactly."""
        config = small_config(num_cells=2, antennas_per_bs=2, clusters_per_cell=1)

        def draw():
            rng = trial_rng(config.master_seed, 7)
            return draw_channels(config, build_geometry(config, rng), rng)

        first, second = draw(), draw()
        assert np.array_equal(first.g, second.g)
        assert np.array_equal(first.h, second.h)
