"""Tests for experiment definitions and the Monte-Carlo runner."""

import json
import math
from pathlib import Path

import numpy as np
import pytest

from nomacomp.errors import ConfigError, SolverFailure
from nomacomp.evaluation import TrialOutcome
from nomacomp.experiments import (
    COMPARISON_SCHEMES,
    Experiment,
    ExperimentKind,
    Scheme,
    SweepAxis,
    TrialTask,
    build_tasks,
    default_axis,
    default_schemes,
    draw_trial_channels,
    execute,
    run_experiment,
    run_trial,
)
from nomacomp.experiments import runner as runner_module
from nomacomp.output import RESULT_COLUMNS, read_results_csv
from tests.helpers import requires_solver, small_config


def experiment(tmp_path, **overrides):
    values = dict(
        kind=ExperimentKind.SWEEP_SNR,
        base=small_config(antennas_per_bs=2),
        axis=SweepAxis("snr", (10.0, 20.0)),
        schemes=(Scheme.NOMA_COMP,),
        trials=2,
        output_path=tmp_path / "results.csv",
        timing=False,
    )
    values.update(overrides)
    return Experiment(**values)


class TestScheme:
    def test_parse_case_insensitive(self):
        assert Scheme.parse("noma_comp, NoCoMP") == (Scheme.NOMA_COMP, Scheme.NO_COMP)

    def test_parse_drops_duplicates(self):
        assert Scheme.parse("OMACoMP,omacomp") == (Scheme.OMA_COMP,)

    def test_parse_unknown(self):
        with pytest.raises(ConfigError) as exc:
            Scheme.parse("NOMA_CoMP,SuperScheme")

        assert "unknown scheme: SuperScheme" in exc.value.errors[0]

    def test_comparison_set(self):
        assert COMPARISON_SCHEMES == (
            Scheme.NOMA_COMP, Scheme.FIXED_POWER, Scheme.NO_COMP, Scheme.OMA_COMP,
        )


class TestSweepAxis:
    def test_integer_axis(self):
        config = SweepAxis("antennas", (3.0,)).apply(small_config(), 3.0)

        assert config.antennas_per_bs == 3
        assert isinstance(config.antennas_per_bs, int)

    def test_real_axis(self):
        assert SweepAxis("alpha", (2.5,)).apply(small_config(), 2.5).path_loss_exponent == 2.5

    def test_default_rank_table_axis(self):
        """M runs from K + 1 to K + 4."""
        axis = default_axis(ExperimentKind.RANK_TABLE, small_config(antennas_per_bs=4, clusters_per_cell=2))

        assert axis.name == "antennas"
        assert axis.values == (3.0, 4.0, 5.0, 6.0)

    def test_default_schemes(self):
        assert default_schemes(ExperimentKind.CONVERGENCE) == (Scheme.NOMA_COMP,)
        assert default_schemes(ExperimentKind.ORACLE_COMPARE) == (Scheme.NOMA_COMP, Scheme.BRUTE_FORCE)
        assert default_schemes(ExperimentKind.SWEEP_ALPHA) == COMPARISON_SCHEMES


class TestExperimentValidation:
    """Test that every sweep point is validated up front."""

    def test_valid(self, tmp_path):
        exp = experiment(tmp_path)

        assert [v for v, _ in exp.sweep_points()] == [10.0, 20.0]
        assert exp.sweep_points()[1][1].transmit_snr_db == 20.0

    def test_clusters_beyond_antennas(self, tmp_path):
        with pytest.raises(ConfigError) as exc:
            experiment(tmp_path, base=small_config(antennas_per_bs=4),
                       axis=SweepAxis("clusters", (2.0, 5.0)))

        assert len(exc.value.errors) == 1
        assert exc.value.errors[0].startswith("clusters=5.0:")
        assert "K exceeds M" in exc.value.errors[0]

    def test_brute_force_needs_oracle_shape(self, tmp_path):
        with pytest.raises(ConfigError) as exc:
            experiment(tmp_path, schemes=(Scheme.NOMA_COMP, Scheme.BRUTE_FORCE))

        assert "BruteForce" in exc.value.errors[0]

    def test_fractional_integer_axis(self, tmp_path):
        with pytest.raises(ConfigError):
            experiment(tmp_path, axis=SweepAxis("cells", (1.5,)))

    def test_counts(self, tmp_path):
        with pytest.raises(ConfigError) as exc:
            experiment(tmp_path, trials=0, workers=0, schemes=())

        assert len(exc.value.errors) == 3

    def test_unknown_axis(self, tmp_path):
        with pytest.raises(ConfigError):
            experiment(tmp_path, axis=SweepAxis("bandwidth", (1.0,)))

    def test_to_dict(self, tmp_path):
        data = experiment(tmp_path).to_dict()

        assert data["sweep_axis"] == {"name": "snr", "field": "transmit_snr_db", "values": [10.0, 20.0]}
        assert data["schemes"] == ["NOMA_CoMP"]
        assert data["base_config"]["antennas_per_bs"] == 2


class TestTasks:
    """Test the task grid and paired channel draws."""

    def test_order(self, tmp_path):
        exp = experiment(tmp_path, schemes=(Scheme.NOMA_COMP, Scheme.FIXED_POWER))

        tasks = build_tasks(exp)

        assert [(t.sweep_index, t.scheme, t.trial) for t in tasks] == [
            (0, Scheme.NOMA_COMP, 0), (0, Scheme.NOMA_COMP, 1),
            (0, Scheme.FIXED_POWER, 0), (0, Scheme.FIXED_POWER, 1),
            (1, Scheme.NOMA_COMP, 0), (1, Scheme.NOMA_COMP, 1),
            (1, Scheme.FIXED_POWER, 0), (1, Scheme.FIXED_POWER, 1),
        ]

    def test_dump_paths_for_joint_scheme_only(self, tmp_path):
        exp = experiment(tmp_path, schemes=(Scheme.NOMA_COMP, Scheme.FIXED_POWER), dump_dir=tmp_path / "dumps")

        tasks = build_tasks(exp)

        assert tasks[1].dump_path == tmp_path / "dumps" / "sweep_snr_0_1.txt"
        assert all(t.dump_path is None for t in tasks if t.scheme is Scheme.FIXED_POWER)

    def test_common_random_numbers(self):
        """The same trial sees the same channels at every SNR point."""
        low = small_config(num_cells=2, antennas_per_bs=3, clusters_per_cell=2, transmit_snr_db=0.0)
        high = low.replace(transmit_snr_db=40.0)

        a, b = draw_trial_channels(low, 4), draw_trial_channels(high, 4)

        assert np.array_equal(a.g, b.g)
        assert np.array_equal(a.h, b.h)
        assert not np.array_equal(a.g, draw_trial_channels(low, 5).g)


class TestRunTrialFailures:
    """Test that a failed solve becomes its own outcome."""

    def test_solver_failure_recorded(self, monkeypatch):
        def failing(scheme, config, channels, dump_path=None):
            raise SolverFailure("CLARABEL failed on the subproblem")

        monkeypatch.setattr(runner_module, "solve_scheme", failing)
        task = TrialTask(0, 20.0, small_config(), Scheme.NOMA_COMP, 3, timing=False)

        record = run_trial(task)

        assert record.outcome == TrialOutcome.SOLVER_FAILURE.value
        assert record.failed
        assert math.isnan(record.sum_rate_group1)
        assert not record.feasible
        assert (record.trial, record.sweep_value) == (3, 20.0)


@requires_solver
class TestRunExperiment:
    """End-to-end runs on a single-cell two-antenna setup."""

    def test_writes_results_and_sidecar(self, tmp_path):
        exp = experiment(tmp_path)

        output = run_experiment(exp)

        assert set(output.artifacts) == {"results", "metadata"}
        records = read_results_csv(output.artifacts["results"])
        assert len(records) == 4
        assert [r.sweep_value for r in records] == [10.0, 10.0, 20.0, 20.0]
        assert all(r.wall_time_ms == 0.0 for r in records)
        header = output.artifacts["results"].read_text().splitlines()[0]
        assert header == ",".join(RESULT_COLUMNS)

        meta = json.loads(Path(output.artifacts["metadata"]).read_text())
        assert meta["experiment"]["trials"] == 2
        assert meta["artifacts"]["results"]["path"] == str(output.artifacts["results"])

    def test_reruns_are_byte_identical(self, tmp_path):
        first = run_experiment(experiment(tmp_path, output_path=tmp_path / "a.csv"))
        second = run_experiment(experiment(tmp_path, output_path=tmp_path / "b.csv"))

        assert first.artifacts["results"].read_bytes() == second.artifacts["results"].read_bytes()

    def test_worker_count_does_not_change_output(self, tmp_path):
        """Records come back in task order whatever finishes first."""
        serial = run_experiment(experiment(tmp_path, output_path=tmp_path / "serial.csv"))
        pooled = run_experiment(experiment(tmp_path, output_path=tmp_path / "pooled.csv", workers=2))

        assert serial.artifacts["results"].read_bytes() == pooled.artifacts["results"].read_bytes()

    def test_convergence_writes_traces(self, tmp_path):
        exp = experiment(tmp_path, kind=ExperimentKind.CONVERGENCE, axis=SweepAxis("antennas", (2.0,)), trials=1)

        output = run_experiment(exp)

        lines = output.artifacts["traces"].read_text().splitlines()
        assert lines[0] == "sweep_value,scheme,trial,iteration,objective_bits"
        assert len(lines) - 1 == output.records[0].iterations

    def test_rank_table_written(self, tmp_path):
        exp = experiment(tmp_path, kind=ExperimentKind.RANK_TABLE, axis=SweepAxis("antennas", (1.0, 2.0)), trials=1)

        output = run_experiment(exp)

        lines = output.artifacts["rank_table"].read_text().splitlines()
        assert lines[0] == "M,K,average,maximum,minimum"
        assert [line.split(",")[:2] for line in lines[1:]] == [["1", "1"], ["2", "1"]]

    def test_progress_callback(self, tmp_path):
        seen = []

        execute(experiment(tmp_path, trials=1), progress=lambda done, total: seen.append((done, total)))

        assert seen == [(1, 2), (2, 2)]
