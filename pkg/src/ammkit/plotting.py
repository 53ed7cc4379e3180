"""Figure rendering for the CLI report paths.

Rendering is deliberately thin: the data products are the CSV and JSON
outputs, and these helpers draw them to PNG files next to those outputs.
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analysis import CurveSample
from .attacks import FamilyOutcome


def render_sample(sample: CurveSample, path: str, title: str | None = None) -> None:
    """Draw one constant-cost locus as a line plot."""
    xs = [p[0] for p in sample.points]
    ys = [p[1] for p in sample.points]
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    ax.plot(xs, ys, lw=1.8)
    ax.set_xlabel("token x reserve")
    ax.set_ylabel("token y reserve")
    ax.set_title(title or f"constant-cost locus, C = {sample.cost_value:.6g}")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_profit_bars(outcomes: Sequence[FamilyOutcome], path: str) -> None:
    """Bar chart of attacker profit per family; failed runs are marked."""
    labels = []
    values = []
    for o in outcomes:
        labels.append(o.family)
        values.append(o.report.attacker_profit if o.report is not None else 0.0)
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    bars = ax.bar(range(len(labels)), values, color="#4878a8")
    for i, o in enumerate(outcomes):
        if o.report is None:
            ax.text(i, 0, "failed", ha="center", va="bottom", fontsize=8, rotation=90)
            bars[i].set_color("#c0c0c0")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=20, ha="right", fontsize=8)
    ax.set_ylabel("attacker profit (out-token coins)")
    ax.axhline(0.0, color="black", lw=0.8)
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
