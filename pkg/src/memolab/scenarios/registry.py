"""
Named scenarios: description, parameter model and runner.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

from pydantic import BaseModel, ConfigDict, ValidationError

from memolab.datagen import DatasetSpec, generate
from memolab.errors import ConfigError
from memolab.linear_fc import TrainingSet
from memolab.net_engine import Network, NetworkSpec, OptimizerSpec, TrainReport, train
from memolab.telemetry import TelemetryCollector

from .config import ScenarioConfig, validation_details

logger = logging.getLogger(__name__)

RESULTS_TABLE = "results"


class ScenarioParams(BaseModel):
    """Base for the per-scenario ``analysis`` models."""

    model_config = ConfigDict(frozen=True, extra="forbid")


@dataclass
class RunContext:
    """What a runner sees: the config, its seed and a place to put rows."""

    config: ScenarioConfig
    collector: TelemetryCollector = field(default_factory=TelemetryCollector)

    @property
    def seed(self) -> int:
        return self.config.seed

    def record(self, table: str = RESULTS_TABLE, **row: Any) -> None:
        self.collector.log_event(table, row)

    def dataset(self, default: DatasetSpec) -> TrainingSet:
        """The configured dataset, or ``default`` reseeded with the run seed."""
        spec = self.config.dataset or default.model_copy(update={"seed": self.seed})
        return generate(spec)

    def network_spec(self, default: NetworkSpec) -> NetworkSpec:
        return self.config.network or default

    def fit(
        self,
        spec: NetworkSpec,
        ts: TrainingSet,
        optimizer: OptimizerSpec | None = None,
    ) -> TrainReport:
        """Train a fresh network with the config's optimizer and stopping rule."""
        training = self.config.training
        return train(
            Network(spec),
            ts,
            optimizer=optimizer or self.config.optimizer,
            stop_loss=training.stop_loss,
            max_steps=training.max_steps,
            log_every=training.log_every,
        )


Runner = Callable[[RunContext, Any], None]


@dataclass(frozen=True)
class Scenario:
    """
    ``plots`` pairs a table written by the runner with the plot kind that
    renders it.
    """

    name: str
    description: str
    params: type[BaseModel]
    runner: Runner
    plots: tuple[tuple[str, str], ...] = ()


SCENARIOS: dict[str, Scenario] = {}


def scenario(
    name: str,
    description: str,
    params: type[BaseModel],
    plots: tuple[tuple[str, str], ...] = (),
) -> Callable[[Runner], Runner]:
    """Register the decorated runner under ``name``."""

    def register(fn: Runner) -> Runner:
        if name in SCENARIOS:
            raise ValueError(f"scenario {name!r} registered twice")
        SCENARIOS[name] = Scenario(name, description, params, fn, plots)
        return fn

    return register


def get_scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]
    except KeyError:
        raise ConfigError(
            f"unknown scenario {name!r}", details=[f"scenario: known names are {sorted(SCENARIOS)}"]
        ) from None


def list_scenarios() -> list[tuple[str, str]]:
    """(name, description) pairs in registration order."""
    return [(s.name, s.description) for s in SCENARIOS.values()]


def resolve(config: ScenarioConfig) -> tuple[Scenario, BaseModel]:
    """
    Look up the scenario and validate its ``analysis`` section.

    Raises:
        ConfigError: For an unknown scenario or invalid analysis parameters
    """
    found = get_scenario(config.scenario)
    try:
        params = found.params.model_validate(config.analysis)
    except ValidationError as exc:
        details = [f"analysis.{line}" for line in validation_details(exc)]
        raise ConfigError(
            f"invalid analysis parameters for {found.name}", details=details
        ) from exc
    logger.debug("%s analysis parameters: %s", found.name, params.model_dump())
    return found, params
