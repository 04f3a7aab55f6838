"""
Tests for scenario configs, the registry, plotting and artifact writing.
"""

import pandas as pd
import pytest

from memolab.errors import ConfigError
from memolab.scenarios import (
    ARTIFACT_VERSION,
    PLOT_COLUMNS,
    SCENARIOS,
    ScenarioConfig,
    default_config,
    list_scenarios,
    load_config,
    parse_config,
    plot_csv,
    render_svg,
    resolve,
    run_scenario,
)

REQUIRED_SCENARIOS = {
    "appendixA-closed-form",
    "nonlinear-single-layer",
    "swiss-roll-attractors",
    "recovery-sweep",
    "table1-rows",
    "table2-rows",
    "conv-matrix-golden",
    "downsample-equivalence",
    "robust-interpolant",
    "init-comparison",
}


def run_text(text: str, tmp_path):
    config = parse_config(text).with_overrides(output_dir=tmp_path)
    return config, run_scenario(config)


class TestConfig:
    """Test parsing and validation of scenario configs."""

    def test_minimal(self):
        """Test a scenario name alone is a valid config."""
        config = parse_config('scenario = "forced-zeros"\n')
        assert config.seed == 0
        assert config.dataset is None
        assert config.training.max_steps == 20_000

    def test_syntax_error(self):
        """Test broken TOML is reported as a config error."""
        with pytest.raises(ConfigError, match="not valid TOML"):
            parse_config('scenario = "forced-zeros\n')

    def test_field_error_has_line(self):
        """Test a bad value is reported with its line and field."""
        text = 'scenario = "forced-zeros"\nseed = "abc"\n'
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        assert any(d.startswith("line 2: seed:") for d in info.value.details)

    def test_nested_field_error(self):
        """Test errors inside a section name the dotted path."""
        text = 'scenario = "x"\n[training]\nmax_steps = -1\n'
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        assert any("training.max_steps" in d and d.startswith("line 3") for d in info.value.details)

    def test_unknown_key(self):
        """Test unknown top-level keys are refused."""
        with pytest.raises(ConfigError, match="failed validation"):
            parse_config('scenario = "forced-zeros"\nlearning_rate = 0.1\n')

    def test_dataset_section(self):
        """Test the dataset section resolves by kind."""
        text = 'scenario = "x"\n[dataset]\nkind = "uniform_box"\nn = 3\nd = 4\n'
        assert parse_config(text).dataset.d == 4

    def test_missing_file(self, tmp_path):
        """Test a nonexistent path is a config error."""
        with pytest.raises(ConfigError, match="not found"):
            load_config(tmp_path / "nope.toml")

    def test_json_round_trip(self, tmp_path):
        """Test an echoed JSON config reloads to the same config."""
        config = default_config("init-comparison")
        path = tmp_path / "config_echo.json"
        path.write_text(config.model_dump_json(indent=2))
        assert load_config(path) == config

    def test_seed_override_reseeds_sections(self):
        """Test --seed also reseeds the dataset and network."""
        config = default_config("init-comparison").with_overrides(seed=7)
        assert config.seed == 7
        assert config.dataset.seed == 7

    def test_default_output_dir(self):
        """Test runs go under runs/<scenario> by default."""
        config = parse_config('scenario = "forced-zeros"\n')
        assert config.resolved_output_dir().parts[-2:] == ("runs", "forced-zeros")

    def test_missing_default(self):
        """Test asking for a default config that does not exist."""
        with pytest.raises(ConfigError, match="no default config"):
            default_config("no-such-scenario")


class TestRegistry:
    """Test the scenario registry."""

    def test_required_names_present(self):
        """Test every documented scenario is registered."""
        assert REQUIRED_SCENARIOS <= set(SCENARIOS)

    def test_names_unique(self):
        """Test list_scenarios has no duplicate names."""
        names = [name for name, _ in list_scenarios()]
        assert len(names) == len(set(names))
        assert all(description for _, description in list_scenarios())

    @pytest.mark.parametrize("name", sorted(SCENARIOS))
    def test_default_config_resolves(self, name):
        """Test each scenario ships a default config that validates."""
        config = default_config(name)
        assert config.scenario == name
        found, _ = resolve(config)
        assert found.name == name

    def test_attractor_grid_has_thousand_starts(self):
        """Test the swiss-roll default iterates a 10 × 10 × 10 grid of starts."""
        _, params = resolve(default_config("swiss-roll-attractors"))
        assert params.grid_count**3 == 1000

    def test_plot_kinds_are_known(self):
        """Test scenario plot declarations use known kinds."""
        for found in SCENARIOS.values():
            for _, kind in found.plots:
                assert kind in PLOT_COLUMNS

    def test_unknown_scenario(self):
        """Test resolving an unregistered name."""
        with pytest.raises(ConfigError, match="unknown scenario"):
            resolve(ScenarioConfig(scenario="nope"))

    def test_bad_analysis(self):
        """Test analysis errors are prefixed with the section name."""
        config = ScenarioConfig(scenario="forced-zeros", analysis={"sides": "many"})
        with pytest.raises(ConfigError) as info:
            resolve(config)
        assert all(d.startswith("analysis.sides") for d in info.value.details)

    def test_unknown_analysis_key(self):
        """Test scenario parameter models forbid extra keys."""
        config = ScenarioConfig(scenario="forced-zeros", analysis={"depth": 3})
        with pytest.raises(ConfigError, match="invalid analysis parameters"):
            resolve(config)


class TestPlots:
    """Test deterministic SVG rendering."""

    RECOVERY = pd.DataFrame({"t": [1, 2, 3], "recovery_probability": [0.2, 0.5, 0.9]})

    def test_deterministic(self):
        """Test two renderings of the same frame are byte-identical."""
        first = render_svg(self.RECOVERY, "recovery_curve")
        second = render_svg(self.RECOVERY, "recovery_curve")
        assert first == second
        assert first.lstrip().startswith("<?xml")
        assert "<svg" in first

    @pytest.mark.parametrize(
        "kind, frame",
        [
            ("spectrum_bars", pd.DataFrame({"label": ["a", "a", "b"], "index": [1, 2, 1], "magnitude": [1.0, 0.01, 0.9]})),
            ("trajectory_2d", pd.DataFrame({"start_id": [0, 0], "step": [0, 1], "coord_0": [0.1, 0.2], "coord_1": [0.3, 0.1]})),
            ("recovery_curve", pd.DataFrame({"eps": [0.1, 0.1, 0.2], "t": [1, 2, 1], "recovery_probability": [0.0, 0.5, 1.0]})),
            ("interpolant", pd.DataFrame({"x": [0.0, 0.5, 1.0], "fx": [0.0, 0.5, 1.0]})),
        ],
    )
    def test_every_kind_renders(self, kind, frame):
        """Test each plot kind renders its schema."""
        assert "<svg" in render_svg(frame, kind)

    def test_schema_mismatch(self):
        """Test missing columns are reported."""
        with pytest.raises(ConfigError, match="does not match") as info:
            render_svg(pd.DataFrame({"t": [1]}), "recovery_curve")
        assert info.value.details == ["missing column: recovery_probability"]

    def test_unknown_kind(self):
        """Test unknown plot kinds are refused."""
        with pytest.raises(ConfigError, match="unknown plot kind"):
            render_svg(self.RECOVERY, "heatmap")

    def test_empty_table(self):
        """Test an empty table has nothing to plot."""
        with pytest.raises(ConfigError, match="nothing to plot"):
            render_svg(self.RECOVERY.iloc[0:0], "recovery_curve")

    def test_plot_csv(self, tmp_path):
        """Test rendering from a CSV file."""
        csv = tmp_path / "results.csv"
        self.RECOVERY.to_csv(csv, index=False)
        out = plot_csv(csv, "recovery_curve", tmp_path / "plot.svg")
        assert out.read_text() == render_svg(self.RECOVERY, "recovery_curve")

    def test_plot_missing_csv(self, tmp_path):
        """Test a missing CSV is a config error."""
        with pytest.raises(ConfigError, match="not found"):
            plot_csv(tmp_path / "absent.csv", "recovery_curve", tmp_path / "x.svg")


class TestRuns:
    """Smoke runs of the fast scenarios with reduced parameters."""

    def test_forced_zeros(self, tmp_path):
        """Test forced-zero counts and the artifact layout."""
        config, artifacts = run_text('scenario = "forced-zeros"\n[analysis]\nsides = [3, 4]\n', tmp_path)
        frame = pd.read_csv(artifacts.results)
        assert list(frame.columns[:2]) == ["version", "seed"]
        assert set(frame["version"]) == {ARTIFACT_VERSION}
        counts = frame.set_index(["side", "layers"])["forced_zero_count"]
        assert counts[(3, 1)] > 0
        assert counts[(3, 2)] == 0
        assert counts[(4, 2)] > 0
        assert counts[(4, 3)] == 0
        assert load_config(tmp_path / "config_echo.json") == config

    def test_rerun_is_identical(self, tmp_path):
        """Test the same config and seed reproduce results.csv exactly."""
        text = 'scenario = "appendixA-closed-form"\n[analysis]\ntrials = 3\nsteps = 200\n'
        _, first = run_text(text, tmp_path / "a")
        _, second = run_text(text, tmp_path / "b")
        assert first.results.read_bytes() == second.results.read_bytes()

    def test_closed_form(self, tmp_path):
        """Test the iterative and closed-form iterates agree."""
        _, artifacts = run_text('scenario = "appendixA-closed-form"\n', tmp_path)
        frame = pd.read_csv(artifacts.results)
        assert len(frame) == 20
        assert frame["closed_form_gap"].max() < 1e-10
        assert frame["limit_gap"].max() < 1e-6

    def test_conv_golden(self, tmp_path):
        """Test the worked matrices and a reduced oracle sweep all match."""
        _, artifacts = run_text('scenario = "conv-matrix-golden"\n[analysis]\noracle_cases = 20\n', tmp_path)
        frame = pd.read_csv(artifacts.results)
        assert set(frame["check"]) == {"filter_s3", "upsample_s1", "filter_oracle", "upsample_oracle"}
        assert frame["matches"].all()

    def test_robust_interpolant(self, tmp_path):
        """Test interpolant rows and the rendered plot."""
        text = (
            'scenario = "robust-interpolant"\nplot = true\n[analysis]\n'
            "configs = 3\ngrid_points = 1000\nattractor_starts = 20\n"
        )
        _, artifacts = run_text(text, tmp_path)
        frame = pd.read_csv(artifacts.results)
        assert len(frame) == 3
        assert (frame["quadrature_loss"] < frame["epsilon"]).all()
        assert (frame["max_train_slope"] < 1.0).all()
        assert (frame["pointwise_error"] <= frame["epsilon"] + 1e-12).all()
        assert frame["relu_max_error"].max() < 1e-9
        assert frame["all_attracting"].all()
        assert [p.name for p in artifacts.plots] == ["interpolant_interpolant.svg"]
        assert "interpolant" in artifacts.tables

    def test_init_comparison(self, tmp_path):
        """Test the orthogonal action of the init survives GD."""
        text = (
            'scenario = "init-comparison"\n[analysis]\n'
            "width = 8\nsteps = 100\nrecord_every = 50\n"
        )
        _, artifacts = run_text(text, tmp_path)
        frame = pd.read_csv(artifacts.results)
        by_check = frame.groupby("check")["value"]
        assert by_check.max()["max_orthogonal_drift"] < 1e-10
        assert by_check.min()["singular_value_margin"] >= -1e-8
        zeros = frame[(frame["check"] == "output_norm") & (frame["name"] == "zeros")]
        assert zeros["value"].iloc[0] == 0.0

    def test_width_limit_small(self, tmp_path):
        """Test one row per (width, seed)."""
        text = 'scenario = "appendixC-limit"\n[analysis]\nd = 4\nwidths = [50, 100]\nseeds = 2\n'
        _, artifacts = run_text(text, tmp_path)
        frame = pd.read_csv(artifacts.results)
        assert len(frame) == 4
        assert sorted(frame["width"].unique()) == [50, 100]
        assert (frame["limit_prediction"] == pytest.approx(0.5)).all()


@pytest.mark.slow
class TestSlowRuns:
    """Default configs of the training-heavy scenarios."""

    def test_single_layer_default(self, tmp_path):
        """Test the sigmoid run memorizes both examples as φ-eigenvectors."""
        config = default_config("nonlinear-single-layer").with_overrides(output_dir=tmp_path)
        frame = pd.read_csv(run_scenario(config).results)
        assert len(frame) == 2
        assert frame["converged"].all()
        assert (frame["rank"] == 2).all()
        assert frame["is_phi_eigenvector"].all()
        assert ((frame["phi_eigenvalue"] - 1.0).abs() < 1e-3).all()
        assert (frame["probes_in_span"] == 1.0).all()

    def test_single_image_three_layers(self, tmp_path):
        """Test a 2×2 image through three single-filter layers gives one dominant eigenvalue."""
        config = default_config("table2-row1").with_overrides(output_dir=tmp_path, plot=True)
        artifacts = run_scenario(config)
        row = pd.read_csv(artifacts.results).iloc[0]
        assert row["eig_1"] == pytest.approx(1.0, abs=0.05)
        assert row["tail_magnitude"] < 0.05
        assert [p.name for p in artifacts.plots] == ["spectrum_spectrum_bars.svg"]
