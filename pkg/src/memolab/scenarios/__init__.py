"""
Named, reproducible experiments built from the memolab modules.

Importing this package registers every scenario.
"""

from . import attractors, convolution, linear, nonlinear, robust  # noqa: F401
from .artifacts import ARTIFACT_VERSION, RunArtifacts, run_scenario
from .config import (
    ScenarioConfig,
    TrainingSpec,
    default_config,
    default_config_text,
    load_config,
    parse_config,
)
from .plots import PLOT_COLUMNS, plot_csv, render_svg
from .registry import (
    SCENARIOS,
    RunContext,
    Scenario,
    ScenarioParams,
    get_scenario,
    list_scenarios,
    resolve,
)

__all__ = [
    "ARTIFACT_VERSION",
    "PLOT_COLUMNS",
    "SCENARIOS",
    "RunArtifacts",
    "RunContext",
    "Scenario",
    "ScenarioConfig",
    "ScenarioParams",
    "TrainingSpec",
    "default_config",
    "default_config_text",
    "get_scenario",
    "list_scenarios",
    "load_config",
    "parse_config",
    "plot_csv",
    "render_svg",
    "resolve",
    "run_scenario",
]
