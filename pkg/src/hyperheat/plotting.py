"""Figure rendering for the CLI. matplotlib is imported lazily and only here."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np


class PlottingUnavailable(RuntimeError):
    pass


def _figure():
    try:
        from matplotlib.backends.backend_agg import FigureCanvasAgg
        from matplotlib.figure import Figure
    except ImportError as exc:  # pragma: no cover - depends on the environment
        raise PlottingUnavailable("--plot needs matplotlib (pip install 'artifact[plot]')") from exc
    fig = Figure(figsize=(6.4, 4.0), dpi=100)
    FigureCanvasAgg(fig)
    return fig


def _save(fig, path: str | Path) -> None:
    # fixed metadata keeps repeated renders byte-identical
    fig.savefig(str(path), format="png", metadata={"Software": None})


def plot_trajectory(times: np.ndarray, values: np.ndarray, labels: Sequence[str], path: str | Path) -> None:
    """One curve per vertex, u(v) against t."""
    fig = _figure()
    ax = fig.add_subplot(1, 1, 1)
    for k, label in enumerate(labels):
        ax.plot(times, values[:, k], label=f"u({label})")
    ax.set_xlabel("t")
    ax.set_ylabel("u(t, v)")
    ax.legend(loc="best", fontsize="small")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    _save(fig, path)


def plot_threshold(
    times: np.ndarray, curve: np.ndarray, level: float, t0: float | None, ylabel: str, path: str | Path
) -> None:
    """Monitored quantity with the admissible level and the threshold time marked."""
    fig = _figure()
    ax = fig.add_subplot(1, 1, 1)
    ax.plot(times, curve, color="C0")
    ax.axhline(level, color="0.4", linestyle="--", linewidth=1)
    if t0 is not None:
        ax.axvline(t0, color="C3", linewidth=1, label=f"t0 = {t0:.6g}")
        ax.legend(loc="best", fontsize="small")
    ax.set_xlabel("t")
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    _save(fig, path)


def gnuplot_script(csv_name: str, labels: Sequence[str], png_name: str | None = None) -> str:
    """Plain-text gnuplot script that plots a trajectory CSV."""
    lines = ["set datafile separator ','", "set key autotitle columnhead", "set xlabel 't'"]
    if png_name:
        lines += ["set terminal pngcairo size 640,400", f"set output '{png_name}'"]
    parts = [f"'{csv_name}' using 1:{k + 2} with lines" for k in range(len(labels))]
    lines.append("plot " + ", \\\n     ".join(parts) if parts else "# nothing to plot")
    return "\n".join(lines) + "\n"
