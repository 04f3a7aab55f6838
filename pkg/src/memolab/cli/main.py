"""
Command-line interface for memolab.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, NoReturn

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from memolab import __version__
from memolab.errors import ConfigError, InvalidInputError, MemolabError, NumericalError
from memolab.scenarios import (
    PLOT_COLUMNS,
    SCENARIOS,
    ScenarioConfig,
    default_config,
    list_scenarios,
    load_config,
    plot_csv,
    run_scenario,
)

console = Console()
err_console = Console(stderr=True)

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def fail(exc: MemolabError) -> NoReturn:
    """Print a one-line JSON error on stderr and exit with the matching status."""
    details: Any
    match exc:
        case ConfigError():
            kind, code, details = "config", EXIT_CONFIG, exc.details
        case InvalidInputError():
            kind, code, details = "invalid_input", EXIT_CONFIG, []
        case NumericalError():
            kind, code, details = "numerical", EXIT_NUMERICAL, exc.diagnostics
        case _:
            kind, code, details = "error", 1, []
    payload = {"error": str(exc), "kind": kind, "details": details}
    click.echo(json.dumps(payload, default=str), err=True)
    sys.exit(code)


def resolve_target(target: str) -> ScenarioConfig:
    """A config file path, or the name of a packaged scenario."""
    if not Path(target).exists() and target in SCENARIOS:
        return default_config(target)
    return load_config(target)


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Enable debug logging")
@click.version_option(version=__version__, prog_name="memolab")
def main(verbose: bool) -> None:
    """
    memolab: memorization and attractors in overparameterized autoencoders.

    Run named scenarios that train small autoencoders and analyse the
    learned maps, write CSV results and render SVG plots.
    """
    configure_logging(verbose)


@main.command()
@click.argument("target")
@click.option("--seed", type=int, default=None, help="Override the config seed")
@click.option(
    "--out-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Directory for results.csv, config_echo.json and plots",
)
@click.option("--plot/--no-plot", default=None, help="Render the scenario's SVG plots")
def run(target: str, seed: int | None, out_dir: Path | None, plot: bool | None) -> None:
    """Run a scenario from a TOML config path or a scenario name."""
    try:
        config = resolve_target(target).with_overrides(seed=seed, output_dir=out_dir, plot=plot)
        console.print(
            Panel.fit(
                f"[bold blue]memolab[/bold blue] v{__version__}\n"
                f"[dim]scenario[/dim] {config.scenario}  [dim]seed[/dim] {config.seed}",
                border_style="blue",
            )
        )
        artifacts = run_scenario(config)
    except MemolabError as exc:
        fail(exc)

    table = Table(title="Artifacts", show_header=True)
    table.add_column("kind", style="cyan")
    table.add_column("path")
    for name, path in artifacts.tables.items():
        table.add_row(f"table: {name}", str(path))
    for path in artifacts.plots:
        table.add_row("plot", str(path))
    console.print(table)


@main.command(name="list")
def list_command() -> None:
    """List the available scenarios."""
    table = Table(show_header=True)
    table.add_column("scenario", style="bold", no_wrap=True)
    table.add_column("description")
    for name, description in list_scenarios():
        table.add_row(name, description)
    console.print(table)


@main.command()
@click.argument("csv_path", metavar="CSV", type=click.Path(path_type=Path))
@click.option(
    "--kind",
    required=True,
    type=click.Choice(sorted(PLOT_COLUMNS)),
    help="Plot to render; the CSV must carry its columns",
)
@click.option(
    "--output", "-o", required=True, type=click.Path(dir_okay=False, path_type=Path)
)
def plot(csv_path: Path, kind: str, output: Path) -> None:
    """Render a results CSV as a deterministic SVG."""
    try:
        plot_csv(csv_path, kind, output)
    except MemolabError as exc:
        fail(exc)
    console.print(f"wrote [green]{output}[/green]")


if __name__ == "__main__":
    main()
