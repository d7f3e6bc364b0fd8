"""Tests for the comparison schemes and the exhaustive-search oracle."""

import math

import numpy as np
import pytest

from nomacomp.baselines import (
    ORACLE_SHAPE,
    BaselineKind,
    brute_force_oracle,
    grid_search,
    oma_target,
    run_fixed_power,
    run_no_comp,
    run_oma_comp,
)
from nomacomp.config import FIXED_POWER_SPLIT
from nomacomp.errors import ConfigError, UnsupportedConfigurationError
from nomacomp.evaluation import transmit_powers
from nomacomp.sca import run
from nomacomp.scenario import build_geometry, draw_channels, trial_rng
from tests.helpers import requires_solver, scalar_channels, small_config


def decoupled_pair():
    """Two scalar cells with unit own gains and no cross coupling."""
    return scalar_channels(g=[[1.0, 0.0], [0.0, 1.0]], h=[[1.0, 0.0], [0.0, 1.0]])


class TestConstants:
    def test_fixed_split(self):
        assert FIXED_POWER_SPLIT == 0.4

    def test_oma_target_doubles_rate(self):
        """log2(1 + gamma') / 2 = log2(1 + gamma) for gamma' = (1 + gamma)^2 - 1."""
        assert oma_target(0.2) == pytest.approx(0.44)
        assert 0.5 * math.log2(1 + oma_target(0.7)) == pytest.approx(math.log2(1.7))

    def test_kind_names(self):
        assert [k.value for k in BaselineKind] == ["FixedPower", "NoCoMP", "OMACoMP", "BruteForce"]


class TestGridSearch:
    """Test the vectorized product-grid search."""

    def test_infeasible_grid(self):
        zero = np.zeros((2, 2))
        axes = (np.linspace(0, 1, 3),) * 2 + (np.linspace(0, 1, 3),) * 2

        assert grid_search(axes, zero, zero, 0.2) is None

    def test_ties_keep_first_point(self):
        """With a = 0 every feasible point has rate 0; the first feasible one wins."""
        gains = np.eye(2)
        p = np.array([0.0, 1.0, 2.0])
        a = np.array([0.0])

        value, point = grid_search((p, p, a, a), gains, gains, 0.5)

        assert value == 0.0
        assert point == (1.0, 1.0, 0.0, 0.0)

    def test_cross_interference_lowers_rate(self):
        axes = (np.linspace(0, 10, 11),) * 2 + (np.linspace(0, 1, 11),) * 2
        own = np.eye(2)
        coupled = own + 0.5 * (1 - np.eye(2))

        alone, _ = grid_search(axes, own, own, 0.2)
        together, _ = grid_search(axes, coupled, coupled, 0.2)

        assert together < alone


class TestBruteForceOracle:
    """Test the oracle for two single-antenna cells."""

    def test_unsupported_shape(self):
        config = small_config(num_cells=1)

        with pytest.raises(UnsupportedConfigurationError):
            brute_force_oracle(config, scalar_channels([[1.0]], [[1.0]]))

    def test_unsupported_is_config_error(self):
        assert issubclass(UnsupportedConfigurationError, ConfigError)
        assert ORACLE_SHAPE == (2, 1, 1)

    def test_decoupled_cells_use_full_power(self):
        """Without cross channels each BS transmits at P and pushes a toward its SIC limit."""
        config = small_config(num_cells=2)
        x = config.transmit_power
        best_split = (x - config.sinr_target) / (x * (1.0 + config.sinr_target))

        result = brute_force_oracle(config, decoupled_pair())

        assert result.feasible
        assert transmit_powers(result.q) == pytest.approx([x, x])
        assert np.all(result.a <= best_split)
        assert np.all(result.a >= best_split - 0.02)
        assert result.sum_rate_group1 == pytest.approx(result.objective_trace[1])

    def test_refinement_never_worse(self):
        config = small_config(num_cells=2, transmit_snr_db=10.0)
        channels = scalar_channels(g=[[1.0, 0.3], [0.4, 0.8]], h=[[0.9, 0.2], [0.1, 1.1]])

        result = brute_force_oracle(config, channels, coarse_points=11, refine_points=5)

        coarse, refined = result.objective_trace
        assert refined >= coarse

    def test_infeasible_draw(self):
        config = small_config(num_cells=2, transmit_snr_db=-20.0, sinr_target=1.0)

        result = brute_force_oracle(config, decoupled_pair(), coarse_points=11)

        assert not result.feasible
        assert result.sum_rate_group1 == 0.0


@requires_solver
class TestSchemes:
    """Test the SCA-based comparison schemes."""

    def test_fixed_power_freezes_split(self):
        config = small_config()
        channels = scalar_channels(g=[[1.0]], h=[[1.0]])

        result = run_fixed_power(config, channels)

        assert result.feasible
        assert result.a[0, 0] == pytest.approx(FIXED_POWER_SPLIT, abs=1e-6)
        assert result.sum_rate_group1 <= run(config, channels).sum_rate_group1 + 1e-6

    def test_no_comp_single_cell_matches_joint(self):
        """With one cell there is nobody to coordinate with."""
        config = small_config()
        channels = scalar_channels(g=[[1.0]], h=[[1.0]])

        joint = run(config, channels)
        alone = run_no_comp(config, channels)

        assert alone.feasible
        assert alone.sum_rate_group1 == pytest.approx(joint.sum_rate_group1, abs=1e-9)

    def test_no_comp_decoupled_cells(self):
        config = small_config(num_cells=2)
        single = run(small_config(), scalar_channels(g=[[1.0]], h=[[1.0]]))

        result = run_no_comp(config, decoupled_pair())

        assert result.feasible
        assert result.sum_rate_group1 == pytest.approx(2 * single.sum_rate_group1, abs=1e-6)
        assert result.q.shape == (2, 1, 1)

    def test_no_comp_reports_interference_violations(self):
        """Strong cross links the per-cell designs ignore can break QoS."""
        config = small_config(num_cells=2, transmit_snr_db=20.0, sinr_target=1.0)
        channels = scalar_channels(g=[[1.0, 3.0], [3.0, 1.0]], h=[[1.0, 3.0], [3.0, 1.0]])

        result = run_no_comp(config, channels)

        assert not result.feasible
        assert result.qos_violations > 0

    def test_oma_half_slots(self):
        """Group 1 gets the whole slot at a = 1 and half the resource."""
        config = small_config()
        channels = scalar_channels(g=[[1.0]], h=[[1.0]])

        result = run_oma_comp(config, channels)

        assert result.feasible
        assert result.sum_rate_group1 == pytest.approx(0.5 * math.log2(1 + config.transmit_power), rel=1e-4)
        assert result.report.resource_share == 0.5
        assert result.rank_ratios.shape == (2, 1, 1)


def random_draws(config, trials, seed=5):
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        yield draw_channels(config, build_geometry(config, rng), rng)


@requires_solver
class TestComparisonOnDraws:
    """Small-sample versions of the scheme comparisons."""

    def test_no_comp_violates_where_joint_design_does_not(self):
        """Per-cell designs sit on their QoS boundary, so a quarter-power cross link breaks them."""
        config = small_config(num_cells=2, transmit_snr_db=20.0, sinr_target=1.0)
        channels = scalar_channels(g=[[1.0, 0.5], [0.5, 1.0]], h=[[1.0, 0.5], [0.5, 1.0]])

        joint = run(config, channels)
        alone = run_no_comp(config, channels)

        assert joint.feasible
        assert joint.qos_violations == 0
        assert alone.qos_violations >= 1

    def test_joint_design_beats_fixed_split_and_time_sharing(self):
        config = small_config(num_cells=2, antennas_per_bs=3, clusters_per_cell=2, transmit_snr_db=30.0)
        joint, fixed, oma = [], [], []

        for channels in random_draws(config, 3):
            joint.append(run(config, channels).sum_rate_group1)
            fixed.append(run_fixed_power(config, channels).sum_rate_group1)
            oma.append(run_oma_comp(config, channels).sum_rate_group1)

        assert np.mean(joint) > 0.0
        assert np.mean(joint) >= np.mean(fixed) - 1e-6
        assert np.mean(joint) >= np.mean(oma)

    @pytest.mark.parametrize("snr", [10.0, 50.0])
    def test_sca_close_to_oracle(self, snr):
        config = small_config(num_cells=2, transmit_snr_db=snr)
        sca, oracle = [], []

        for channels in random_draws(config, 3):
            sca.append(run(config, channels).sum_rate_group1)
            oracle.append(brute_force_oracle(config, channels, coarse_points=31).sum_rate_group1)

        assert np.mean(sca) >= 0.98 * np.mean(oracle)
