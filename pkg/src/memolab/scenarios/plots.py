"""
SVG renderings of result tables.

Output is deterministic: the Agg backend, a fixed figure size, a fixed SVG
hash salt and no date metadata.
"""

import io
import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from memolab.errors import ConfigError  # noqa: E402
from memolab.utils.file_utils import write_file  # noqa: E402

logger = logging.getLogger(__name__)

PLOT_COLUMNS: dict[str, tuple[str, ...]] = {
    "spectrum_bars": ("label", "index", "magnitude"),
    "trajectory_2d": ("start_id", "step", "coord_0", "coord_1"),
    "recovery_curve": ("t", "recovery_probability"),
    "interpolant": ("x", "fx"),
}

_STYLE = {
    "svg.hashsalt": "memolab",
    "svg.fonttype": "path",
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 100,
    "axes.grid": True,
    "grid.alpha": 0.3,
}


def check_schema(frame: pd.DataFrame, kind: str) -> None:
    """
    Raises:
        ConfigError: For an unknown kind or missing columns
    """
    if kind not in PLOT_COLUMNS:
        raise ConfigError(
            f"unknown plot kind {kind!r}", details=[f"kind: one of {sorted(PLOT_COLUMNS)}"]
        )
    missing = [c for c in PLOT_COLUMNS[kind] if c not in frame.columns]
    if missing:
        raise ConfigError(
            f"CSV schema does not match plot kind {kind!r}",
            details=[f"missing column: {c}" for c in missing],
        )
    if frame.empty:
        raise ConfigError(f"nothing to plot: the {kind} table is empty")


def _spectrum_bars(ax, frame: pd.DataFrame) -> None:
    labels = list(dict.fromkeys(frame["label"]))
    width = 0.8 / len(labels)
    for k, label in enumerate(labels):
        mags = frame.loc[frame["label"] == label, "magnitude"].sort_values(ascending=False)
        positions = [i + 1 + (k - (len(labels) - 1) / 2) * width for i in range(len(mags))]
        ax.bar(positions, mags.to_numpy(), width=width, label=str(label))
    ax.set_xlabel("eigenvalue rank")
    ax.set_ylabel("|λ|")
    ax.legend(fontsize="small")


def _trajectory_2d(ax, frame: pd.DataFrame) -> None:
    for start_id, orbit in frame.sort_values("step").groupby("start_id", sort=True):
        line = ax.plot(orbit["coord_0"], orbit["coord_1"], marker=".", linewidth=1)[0]
        ax.plot(
            orbit["coord_0"].iloc[-1],
            orbit["coord_1"].iloc[-1],
            marker="*",
            markersize=10,
            color=line.get_color(),
            label=f"start {start_id}",
        )
    ax.set_xlabel("x₀")
    ax.set_ylabel("x₁")
    ax.legend(fontsize="small")


def _recovery_curve(ax, frame: pd.DataFrame) -> None:
    if "eps" in frame.columns:
        for eps, curve in frame.groupby("eps", sort=True):
            curve = curve.sort_values("t")
            ax.plot(curve["t"], curve["recovery_probability"], marker="o", label=f"ε = {eps:.3g}")
        ax.legend(fontsize="small")
    else:
        curve = frame.sort_values("t")
        ax.plot(curve["t"], curve["recovery_probability"], marker="o")
    ax.set_xlabel("t")
    ax.set_ylabel("R_t")
    ax.set_ylim(-0.05, 1.05)


def _interpolant(ax, frame: pd.DataFrame) -> None:
    curve = frame.sort_values("x")
    ax.plot(curve["x"], curve["x"], linestyle="--", color="grey", label="identity")
    ax.plot(curve["x"], curve["fx"], label="f")
    ax.set_xlabel("x")
    ax.set_ylabel("f(x)")
    ax.legend(fontsize="small")


_RENDERERS = {
    "spectrum_bars": _spectrum_bars,
    "trajectory_2d": _trajectory_2d,
    "recovery_curve": _recovery_curve,
    "interpolant": _interpolant,
}


def render_svg(frame: pd.DataFrame, kind: str) -> str:
    """Render ``frame`` as an SVG document."""
    check_schema(frame, kind)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        try:
            _RENDERERS[kind](ax, frame)
            fig.tight_layout()
            buf = io.BytesIO()
            fig.savefig(buf, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    return buf.getvalue().decode("utf-8")


def plot_csv(csv_path: str | Path, kind: str, out_path: str | Path) -> Path:
    """
    Render a results CSV to ``out_path``.

    Raises:
        ConfigError: If the CSV is missing, unreadable or has the wrong columns
    """
    csv_path = Path(csv_path)
    if not csv_path.is_file():
        raise ConfigError(f"CSV file not found: {csv_path}")
    try:
        frame = pd.read_csv(csv_path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read CSV {csv_path}", details=[str(exc)]) from exc
    write_file(str(out_path), render_svg(frame, kind))
    logger.info("wrote %s plot to %s", kind, out_path)
    return Path(out_path)
