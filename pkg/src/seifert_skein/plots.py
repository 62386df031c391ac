"""Figures for census output and SU(2) trace samples."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .report import InvariantReport  # noqa: E402

STYLE = {
    "figure.figsize": (5.5, 3.4),
    "figure.dpi": 120,
    "savefig.dpi": 200,
    "savefig.bbox": "tight",
    "font.size": 8,
    "axes.labelsize": 8,
    "axes.titlesize": 9,
    "legend.fontsize": 7,
    "xtick.labelsize": 7,
    "ytick.labelsize": 7,
    "lines.linewidth": 1.0,
    "lines.markersize": 3,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_dimension_vs_h1(reports: Sequence[InvariantReport], path: Path) -> Path:
    """|X(M)| against |H_1|, reduced and non-reduced instances marked apart."""
    h = np.array([r.homology["h1_order"] for r in reports])
    d = np.array([r.characters["skein_dim"] for r in reports])
    red = np.array([r.characters["reduced"] for r in reports], dtype=bool)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.scatter(h[red], d[red], s=6, alpha=0.5, label="reduced (dim = |X(M)|)")
        ax.scatter(h[~red], d[~red], s=6, alpha=0.5, marker="x",
                   label="non-reduced (|X(M)| is a lower bound)")
        ax.set_xscale("symlog")
        ax.set_xlabel("|H_1(M)|")
        ax.set_ylabel("|X(M)|")
        ax.legend(loc="upper left", frameon=False)
        return _save(fig, path)


def plot_exceptional_histogram(reports: Sequence[InvariantReport], path: Path) -> Path:
    """How often each number x_M of exceptional characters occurs."""
    x = np.array([r.characters["x_M"] for r in reports])
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        vals, counts = np.unique(x, return_counts=True)
        ax.bar(vals, counts, width=0.8)
        ax.set_yscale("log")
        ax.set_xlabel("x_M (exceptional abelian characters)")
        ax.set_ylabel("instances")
        return _save(fig, path)


def plot_irreducible_share(reports: Sequence[InvariantReport], path: Path) -> Path:
    """Mean fraction of irreducible characters, grouped by max p_i."""
    groups: dict = {}
    for r in reports:
        pm = max(r.slopes.p)
        c = r.characters
        total = c["abelian_count"] + c["x_irr"]
        groups.setdefault(pm, []).append(c["x_irr"] / total)
    keys = sorted(groups)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.plot(keys, [np.mean(groups[k]) for k in keys], marker="o")
        ax.set_xlabel("max p_i")
        ax.set_ylabel("mean |X^irr| / |X(M)|")
        return _save(fig, path)


def plot_census(reports: Iterable[InvariantReport], directory: Path) -> List[Path]:
    reports = [r for r in reports if r.characters is not None]
    directory = Path(directory)
    return [
        plot_dimension_vs_h1(reports, directory / "dimension_vs_h1.png"),
        plot_exceptional_histogram(reports, directory / "exceptional_histogram.png"),
        plot_irreducible_share(reports, directory / "irreducible_share.png"),
    ]


def plot_trace_samples(samples: Sequence[float], lo: float, hi: float, path: Path) -> Path:
    """Histogram of sampled traces with the predicted interval shaded."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.axvspan(lo, hi, color="0.9", label="[alpha - beta, alpha + beta]")
        ax.hist(samples, bins=30)
        ax.set_xlabel("Tr rho(c1 c2)")
        ax.set_ylabel("samples")
        ax.legend(frameon=False)
        return _save(fig, Path(path))


__all__ = [
    "plot_census", "plot_dimension_vs_h1", "plot_exceptional_histogram",
    "plot_irreducible_share", "plot_trace_samples",
]
