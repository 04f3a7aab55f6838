"""
Running a scenario and writing its artifacts: ``results.csv`` (plus any
extra tables), ``config_echo.json`` and optional SVG plots.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd

from memolab import __version__
from memolab.utils.file_utils import ensure_dir, write_file

from .config import ScenarioConfig
from .plots import render_svg
from .registry import RESULTS_TABLE, RunContext, resolve

logger = logging.getLogger(__name__)

ARTIFACT_VERSION = f"v{__version__}"
CONFIG_ECHO = "config_echo.json"


@dataclass
class RunArtifacts:
    output_dir: Path
    tables: dict[str, Path] = field(default_factory=dict)
    plots: list[Path] = field(default_factory=list)

    @property
    def results(self) -> Path:
        return self.tables[RESULTS_TABLE]


def stamp(frame: pd.DataFrame, seed: int) -> pd.DataFrame:
    """Prefix the artifact version and seed columns."""
    out = frame.copy()
    out.insert(0, "seed", seed)
    out.insert(0, "version", ARTIFACT_VERSION)
    return out


def run_scenario(config: ScenarioConfig) -> RunArtifacts:
    """
    Run ``config`` and write every table it produced to its output directory.

    Raises:
        ConfigError: If the scenario or its analysis parameters are invalid
        NumericalError: If a numerical step fails
    """
    found, params = resolve(config)
    out_dir = ensure_dir(config.resolved_output_dir())
    logger.info("running %s (seed=%d) into %s", found.name, config.seed, out_dir)

    ctx = RunContext(config)
    found.runner(ctx, params)

    artifacts = RunArtifacts(output_dir=out_dir)
    names = [RESULTS_TABLE] + [t for t in ctx.collector.event_types() if t != RESULTS_TABLE]
    for name in names:
        frame = stamp(ctx.collector.to_frame(name), config.seed)
        path = out_dir / f"{name}.csv"
        write_file(str(path), frame.to_csv(index=False))
        artifacts.tables[name] = path

    write_file(str(out_dir / CONFIG_ECHO), config.model_dump_json(indent=2) + "\n")

    if config.plot:
        for table, kind in found.plots:
            frame = ctx.collector.to_frame(table)
            if frame.empty:
                logger.warning("no rows for %s; skipping the %s plot", table, kind)
                continue
            path = out_dir / f"{table}_{kind}.svg"
            write_file(str(path), render_svg(frame, kind))
            artifacts.plots.append(path)
    logger.info("wrote %d tables and %d plots", len(artifacts.tables), len(artifacts.plots))
    return artifacts
