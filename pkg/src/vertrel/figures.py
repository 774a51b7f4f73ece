"""Matplotlib renderings of the report tables.

These consume the same data that goes into the CSV files and are written
next to them by the CLI report paths. Rendering is headless (Agg backend).
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .evaluation import RdiRecord, TimingSample, _heuristic_sort_key


def rdi_boxplot(records: Iterable[RdiRecord], path: str | os.PathLike) -> None:
    """Distribution of per-insertion RDI values, one box per heuristic."""
    pooled: dict[str, list[float]] = {}
    for rec in records:
        pooled.setdefault(rec.heuristic_id, []).extend(float(o.rdi) for o in rec.outcomes)
    labels = sorted(pooled, key=_heuristic_sort_key)
    data = [pooled[hid] for hid in labels]
    fig, ax = plt.subplots(figsize=(1.1 * len(labels) + 2.0, 4.0))
    ax.boxplot(data, tick_labels=labels, showfliers=True, whis=(0, 100))
    ax.set_ylabel("RDI")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def timing_boxplot(samples: Sequence[TimingSample], path: str | os.PathLike) -> None:
    """Per-heuristic wall-clock distributions, one panel per graph order."""
    orders = sorted({s.order for s in samples})
    fig, axes = plt.subplots(
        1, len(orders), figsize=(5.0 * len(orders), 4.0), squeeze=False, sharey=True
    )
    for ax, order in zip(axes[0], orders):
        pooled: dict[str, list[float]] = {}
        for s in samples:
            if s.order == order:
                pooled.setdefault(s.heuristic_id, []).append(s.millis)
        labels = sorted(pooled, key=_heuristic_sort_key)
        ax.boxplot([pooled[hid] for hid in labels], tick_labels=labels)
        ax.set_yscale("log")
        ax.set_title(f"n = {order}")
        ax.set_ylabel("milliseconds")
        ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
