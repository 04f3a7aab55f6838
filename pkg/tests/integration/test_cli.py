"""
End-to-end tests of the memolab command line.
"""

import json

import pandas as pd
import pytest
from click.testing import CliRunner

from memolab import __version__
from memolab.cli.main import main
from memolab.scenarios import SCENARIOS, load_config


@pytest.fixture
def runner():
    return CliRunner()


def error_payload(result) -> dict:
    """The JSON error line is the last thing written to stderr."""
    return json.loads(result.stderr.strip().splitlines()[-1])


class TestList:
    """Test the list command."""

    def test_lists_every_scenario(self, runner):
        """Test every registered scenario name is printed."""
        result = runner.invoke(main, ["list"])
        assert result.exit_code == 0
        for name in SCENARIOS:
            assert name in result.stdout

    def test_version(self, runner):
        """Test --version prints the package version."""
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.stdout


class TestRun:
    """Test the run command."""

    def test_missing_config(self, runner, tmp_path):
        """Test a nonexistent config path exits 2 with a JSON error."""
        result = runner.invoke(main, ["run", str(tmp_path / "nope.toml")])
        assert result.exit_code == 2
        payload = error_payload(result)
        assert payload["kind"] == "config"
        assert "not found" in payload["error"]

    def test_invalid_config(self, runner, tmp_path):
        """Test validation errors carry line-numbered details."""
        path = tmp_path / "bad.toml"
        path.write_text('scenario = "forced-zeros"\nseed = "abc"\n')
        result = runner.invoke(main, ["run", str(path)])
        assert result.exit_code == 2
        payload = error_payload(result)
        assert payload["kind"] == "config"
        assert any(d.startswith("line 2: seed") for d in payload["details"])

    def test_unknown_scenario_in_config(self, runner, tmp_path):
        """Test an unregistered scenario name is a config error."""
        path = tmp_path / "unknown.toml"
        path.write_text('scenario = "nope"\n')
        result = runner.invoke(main, ["run", str(path), "--out-dir", str(tmp_path / "out")])
        assert result.exit_code == 2
        assert "unknown scenario" in error_payload(result)["error"]

    def test_run_by_name(self, runner, tmp_path):
        """Test running a packaged scenario writes results and the config echo."""
        out = tmp_path / "forced"
        result = runner.invoke(main, ["run", "forced-zeros", "--out-dir", str(out), "--seed", "3"])
        assert result.exit_code == 0, result.stderr
        frame = pd.read_csv(out / "results.csv")
        assert list(frame.columns[:2]) == ["version", "seed"]
        assert set(frame["seed"]) == {3}
        echo = load_config(out / "config_echo.json")
        assert echo.scenario == "forced-zeros"
        assert echo.seed == 3

    def test_run_config_file(self, runner, tmp_path):
        """Test a reduced closed-form run from a TOML file."""
        path = tmp_path / "closed.toml"
        path.write_text(
            'scenario = "appendixA-closed-form"\nseed = 1\n'
            "[analysis]\ntrials = 4\nsteps = 2000\n"
        )
        out = tmp_path / "closed"
        result = runner.invoke(main, ["run", str(path), "--out-dir", str(out)])
        assert result.exit_code == 0, result.stderr
        frame = pd.read_csv(out / "results.csv")
        assert len(frame) == 4
        assert frame["closed_form_gap"].max() < 1e-10

    def test_rerun_config_echo(self, runner, tmp_path):
        """Test the echoed config reproduces results.csv byte for byte."""
        first = tmp_path / "first"
        second = tmp_path / "second"
        assert runner.invoke(main, ["run", "forced-zeros", "--out-dir", str(first)]).exit_code == 0
        result = runner.invoke(
            main, ["run", str(first / "config_echo.json"), "--out-dir", str(second)]
        )
        assert result.exit_code == 0, result.stderr
        assert (first / "results.csv").read_bytes() == (second / "results.csv").read_bytes()


class TestPlot:
    """Test the plot command."""

    @pytest.fixture
    def recovery_csv(self, tmp_path):
        path = tmp_path / "recovery.csv"
        pd.DataFrame({"t": [1, 2, 3], "recovery_probability": [0.1, 0.6, 0.9]}).to_csv(
            path, index=False
        )
        return path

    def test_deterministic_svg(self, runner, recovery_csv, tmp_path):
        """Test two renders of the same CSV are byte-identical."""
        first, second = tmp_path / "a.svg", tmp_path / "b.svg"
        for out in (first, second):
            result = runner.invoke(
                main, ["plot", str(recovery_csv), "--kind", "recovery_curve", "-o", str(out)]
            )
            assert result.exit_code == 0, result.stderr
        assert first.read_bytes() == second.read_bytes()

    def test_schema_mismatch(self, runner, recovery_csv, tmp_path):
        """Test a CSV without the kind's columns exits 2."""
        result = runner.invoke(
            main, ["plot", str(recovery_csv), "--kind", "interpolant", "-o", str(tmp_path / "x.svg")]
        )
        assert result.exit_code == 2
        payload = error_payload(result)
        assert payload["kind"] == "config"
        assert "missing column: x" in payload["details"]
        assert not (tmp_path / "x.svg").exists()

    def test_unknown_kind(self, runner, recovery_csv, tmp_path):
        """Test click refuses plot kinds outside the known set."""
        result = runner.invoke(
            main, ["plot", str(recovery_csv), "--kind", "heatmap", "-o", str(tmp_path / "x.svg")]
        )
        assert result.exit_code == 2


@pytest.mark.slow
class TestSmoke:
    """Default configs of the quicker scenarios, end to end."""

    @pytest.mark.parametrize(
        "name", ["conv-matrix-golden", "downsample-equivalence", "robust-interpolant", "recovery-sweep"]
    )
    def test_default_run(self, runner, tmp_path, name):
        """Test the packaged config runs and plots cleanly."""
        out = tmp_path / name
        result = runner.invoke(main, ["run", name, "--out-dir", str(out), "--plot"])
        assert result.exit_code == 0, result.stderr
        assert (out / "results.csv").is_file()
        assert not pd.read_csv(out / "results.csv").empty
