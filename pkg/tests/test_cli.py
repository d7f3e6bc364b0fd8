"""Tests for the nomacomp command line."""

import math
from pathlib import Path

import pytest
from typer.testing import CliRunner

from nomacomp import __version__
from nomacomp.cli import app, build_experiment
from nomacomp.config import get_presets_dir
from nomacomp.errors import ConfigError
from nomacomp.evaluation import TrialRecord
from nomacomp.experiments import ExperimentKind, Scheme
from nomacomp.output import write_results_csv
from tests.helpers import requires_solver

runner = CliRunner()

SMALL_YAML = """\
num_cells: 1
antennas_per_bs: 2
clusters_per_cell: 1
transmit_snr_db: 20.0
sinr_target: 0.2
path_loss_exponent: 3.0
"""


@pytest.fixture
def small_yaml(tmp_path):
    path = tmp_path / "small.yaml"
    path.write_text(SMALL_YAML)
    return path


class TestVersion:
    def test_version_flag(self):
        result = runner.invoke(app, ["--version"])

        assert result.exit_code == 0
        assert __version__ in result.output


class TestValidate:
    """Test the validate command."""

    def test_preset_ok(self):
        result = runner.invoke(app, ["validate", str(get_presets_dir() / "sweep_snr.yaml")])

        assert result.exit_code == 0
        assert "OK" in result.output
        assert "transmit_power" in result.output

    def test_invalid_config_exit_code(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text(SMALL_YAML.replace("clusters_per_cell: 1", "clusters_per_cell: 3"))

        result = runner.invoke(app, ["validate", str(path)])

        assert result.exit_code == 2
        assert "K exceeds M" in result.output

    def test_every_error_listed(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("num_cells: 1\ncolor: blue\n")

        result = runner.invoke(app, ["validate", str(path)])

        assert result.exit_code == 2
        assert "unknown key: color" in result.output
        assert "missing required key: sinr_target" in result.output

    def test_missing_file(self, tmp_path):
        result = runner.invoke(app, ["validate", str(tmp_path / "nope.yaml")])

        assert result.exit_code == 3


class TestSummarize:
    def test_summarize_results(self, tmp_path):
        records = [
            TrialRecord(10.0, "NOMA_CoMP", t, t, 2.0 + t, True, 0, 3, 1e4) for t in range(2)
        ]
        path = write_results_csv(records, tmp_path / "results.csv")

        result = runner.invoke(app, ["summarize", str(path)])

        assert result.exit_code == 0

    def test_summarize_with_solver_failures(self, tmp_path):
        """A group made only of failed solves still prints a row."""
        records = [
            TrialRecord(10.0, "NOMA_CoMP", 0, 0, 2.0, True, 0, 3, 1e4),
            TrialRecord(20.0, "NOMA_CoMP", 0, 0, math.nan, False, 0, 0, math.nan, outcome="solver_failure"),
        ]
        path = write_results_csv(records, tmp_path / "results.csv")

        result = runner.invoke(app, ["summarize", str(path)])

        assert result.exit_code == 0

    def test_summarize_bad_file(self, tmp_path):
        path = tmp_path / "results.csv"
        path.write_text("sweep_value\n1.0\n")

        result = runner.invoke(app, ["summarize", str(path)])

        assert result.exit_code == 3

    def test_summarize_empty(self, tmp_path):
        path = write_results_csv([], tmp_path / "results.csv")

        result = runner.invoke(app, ["summarize", str(path)])

        assert result.exit_code == 3


class TestBuildExperiment:
    """Test how options, user defaults and presets combine."""

    def test_preset_defaults(self, tmp_path):
        exp = build_experiment(ExperimentKind.SWEEP_SNR, out=tmp_path / "r.csv")

        assert exp.base.transmit_snr_db == 50.0
        assert exp.axis.values == (0.0, 10.0, 20.0, 30.0, 40.0, 50.0)
        assert exp.trials == 100
        assert exp.schemes[0] is Scheme.NOMA_COMP

    def test_overrides(self, small_yaml, tmp_path):
        exp = build_experiment(
            ExperimentKind.SWEEP_SNR, config_path=small_yaml, trials=3, seed=9,
            out=tmp_path / "r.csv", schemes="nocomp", values="5, 15",
        )

        assert exp.base.master_seed == 9
        assert exp.trials == 3
        assert exp.schemes == (Scheme.NO_COMP,)
        assert exp.axis.values == (5.0, 15.0)

    def test_user_defaults(self, isolated_home):
        config_dir = isolated_home / ".nomacomp"
        config_dir.mkdir()
        (config_dir / "config.yaml").write_text(f"trials: 7\nout_dir: {isolated_home / 'runs'}\n")

        exp = build_experiment(ExperimentKind.SWEEP_ALPHA)

        assert exp.trials == 7
        assert exp.output_path == isolated_home / "runs" / "sweep_alpha.csv"

    def test_convergence_axis(self, small_yaml, tmp_path):
        exp = build_experiment(
            ExperimentKind.CONVERGENCE, config_path=small_yaml, out=tmp_path / "r.csv",
            axis="gamma", values="0.1,0.3",
        )

        assert exp.axis.field == "sinr_target"
        assert exp.axis.values == (0.1, 0.3)

    def test_unknown_axis(self, small_yaml):
        with pytest.raises(ConfigError):
            build_experiment(ExperimentKind.CONVERGENCE, config_path=small_yaml, axis="bandwidth")

    def test_bad_values(self, small_yaml):
        with pytest.raises(ConfigError) as exc:
            build_experiment(ExperimentKind.SWEEP_SNR, config_path=small_yaml, values="10,abc")

        assert "abc" in exc.value.errors[0]


class TestSweepCommands:
    """Test experiment commands end to end."""

    def test_unknown_scheme_exit_code(self, small_yaml, tmp_path):
        result = runner.invoke(app, [
            "sweep-snr", "--config", str(small_yaml), "--schemes", "Magic",
            "--out", str(tmp_path / "r.csv"),
        ])

        assert result.exit_code == 2
        assert "unknown scheme" in result.output

    def test_clusters_beyond_antennas_exit_code(self, small_yaml, tmp_path):
        result = runner.invoke(app, [
            "sweep-clusters", "--config", str(small_yaml), "--values", "1,3",
            "--out", str(tmp_path / "r.csv"),
        ])

        assert result.exit_code == 2
        assert not (tmp_path / "r.csv").exists()

    @requires_solver
    def test_small_sweep_writes_files(self, small_yaml, tmp_path):
        out = tmp_path / "runs" / "snr.csv"

        result = runner.invoke(app, [
            "sweep-snr", "--config", str(small_yaml), "--trials", "1", "--values", "10",
            "--schemes", "NOMA_CoMP", "--no-timing", "--out", str(out),
        ])

        assert result.exit_code == 0, result.output
        assert out.exists()
        assert out.with_suffix(".json").exists()
        assert len(out.read_text().splitlines()) == 2

    @requires_solver
    def test_dump_dir(self, small_yaml, tmp_path):
        dumps = tmp_path / "dumps"

        result = runner.invoke(app, [
            "convergence", "--config", str(small_yaml), "--trials", "1", "--no-timing",
            "--out", str(tmp_path / "conv.csv"), "--dump-dir", str(dumps),
        ])

        assert result.exit_code == 0, result.output
        assert (dumps / "convergence_0_0.txt").exists()
        assert Path(tmp_path / "conv_traces.csv").exists()
