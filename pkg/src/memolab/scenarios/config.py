"""
Scenario configuration: TOML (or the echoed JSON) validated by pydantic.
"""

import json
import re
import tomllib
from importlib import resources
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from memolab.datagen import DatasetSpec
from memolab.errors import ConfigError
from memolab.net_engine import NetworkSpec, OptimizerSpec


class TrainingSpec(BaseModel):
    """Stopping rule for network training inside a scenario."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    stop_loss: float = Field(default=1e-6, ge=0.0)
    max_steps: int = Field(default=20_000, ge=0)
    log_every: int = Field(default=1000, ge=1)


class ScenarioConfig(BaseModel):
    """
    Everything needed to reproduce a scenario run.

    ``analysis`` holds the scenario-specific parameters; they are validated
    against the scenario's own model when the run starts.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    scenario: str = Field(..., min_length=1)
    seed: int = 0
    output_dir: Path | None = None
    plot: bool = False
    dataset: DatasetSpec | None = None
    network: NetworkSpec | None = None
    optimizer: OptimizerSpec | None = None
    training: TrainingSpec = Field(default_factory=TrainingSpec)
    analysis: dict[str, Any] = Field(default_factory=dict)

    def with_overrides(
        self,
        seed: int | None = None,
        output_dir: Path | None = None,
        plot: bool | None = None,
    ) -> "ScenarioConfig":
        """
        Copy with command-line overrides applied. A new seed also reseeds
        the dataset and network sections.
        """
        update: dict[str, Any] = {}
        if seed is not None:
            update["seed"] = seed
            if self.dataset is not None:
                update["dataset"] = self.dataset.model_copy(update={"seed": seed})
            if self.network is not None:
                update["network"] = self.network.model_copy(update={"seed": seed})
        if output_dir is not None:
            update["output_dir"] = output_dir
        if plot is not None:
            update["plot"] = plot
        return self.model_copy(update=update)

    def resolved_output_dir(self) -> Path:
        return self.output_dir or Path("runs") / self.scenario


def _field_line(text: str, key: str) -> int | None:
    pattern = re.compile(rf"^\s*{re.escape(key)}\s*=", re.MULTILINE)
    match = pattern.search(text)
    if match is None:
        return None
    return text.count("\n", 0, match.start()) + 1


def validation_details(exc: ValidationError, text: str = "") -> list[str]:
    """One ``field: message`` line per pydantic error, with the TOML line when found."""
    details = []
    for err in exc.errors():
        loc = ".".join(str(part) for part in err["loc"])
        keys = [part for part in err["loc"] if isinstance(part, str)]
        line = _field_line(text, keys[-1]) if keys and text else None
        prefix = f"line {line}: " if line is not None else ""
        details.append(f"{prefix}{loc or '<root>'}: {err['msg']}")
    return details


def parse_config(text: str, fmt: str = "toml") -> ScenarioConfig:
    """
    Parse a config from text.

    Raises:
        ConfigError: On a syntax error or a failed validation
    """
    try:
        raw = tomllib.loads(text) if fmt == "toml" else json.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError("config is not valid TOML", details=[str(exc)]) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            "config is not valid JSON", details=[f"line {exc.lineno}: {exc.msg}"]
        ) from exc
    try:
        return ScenarioConfig.model_validate(raw)
    except ValidationError as exc:
        raise ConfigError(
            "config failed validation", details=validation_details(exc, text)
        ) from exc


def load_config(path: str | Path) -> ScenarioConfig:
    """
    Load a ``.toml`` config, or a ``.json`` config echoed by an earlier run.

    Raises:
        ConfigError: If the file is missing or invalid
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}", details=[str(path)])
    fmt = "json" if path.suffix == ".json" else "toml"
    return parse_config(path.read_text(encoding="utf-8"), fmt)


def default_config_text(name: str) -> str:
    """Text of the packaged default config of scenario ``name``."""
    resource = resources.files("memolab.scenarios") / "configs" / f"{name}.toml"
    if not resource.is_file():
        raise ConfigError(f"no default config for scenario {name!r}")
    return resource.read_text(encoding="utf-8")


def default_config(name: str) -> ScenarioConfig:
    return parse_config(default_config_text(name))
