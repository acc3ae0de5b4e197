"""Static line charts for scenario output.

Figures are written as SVG with a fixed hash salt and no date stamp so that
re-running a scenario rewrites identical files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "lines.linewidth": 1.4,
    "figure.figsize": (5.5, 3.4),
    "svg.hashsalt": "gdplab",
    "svg.fonttype": "path",
}


def _new(title: str, xlabel: str, ylabel: str):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.set_title(title)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
    return fig, ax


def _save(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context(STYLE):
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def plot_growth(series: Sequence, path: Path, title: str = "Measured real growth") -> Path:
    fig, ax = _new(title, "year", "growth rate (%)")
    for gs in series:
        ax.plot(gs.years, 100.0 * gs.rates, label=gs.policy.label)
    ax.legend(frameon=False)
    return _save(fig, path)


def plot_labor_shares(run, path: Path, title: str = "Labor allocation") -> Path:
    fig, ax = _new(title, "year", "share of labor (%)")
    shares = np.array([s.labor_shares for s in run.states])
    for k, name in enumerate(run.config.names):
        ax.plot(run.years, 100.0 * shares[:, k], label=name)
    ax.set_ylim(0, 100)
    ax.legend(frameon=False)
    return _save(fig, path)


def plot_prices(run, path: Path, title: str = "Long-run prices") -> Path:
    fig, ax = _new(title, "year", "price ($)")
    prices = np.array([r.prices for r in run.records])
    for k, name in enumerate(run.config.names):
        ax.semilogy(run.years, prices[:, k], label=name)
    ax.legend(frameon=False)
    return _save(fig, path)


def plot_xy(x, ys: dict, path: Path, title: str, xlabel: str, ylabel: str) -> Path:
    fig, ax = _new(title, xlabel, ylabel)
    for label, y in ys.items():
        ax.plot(x, y, label=label)
    if len(ys) > 1:
        ax.legend(frameon=False)
    return _save(fig, path)
