"""Render sweep tables as line-chart figures next to the delimited output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .experiment import SweepFamily, SweepTable, cell_value

_X_LABELS = {
    SweepFamily.L1_SWEEP: "L1 capacity (blocks)",
    SweepFamily.PAIR_SWEEP: "L2 capacity (blocks)",
    SweepFamily.LIST_SWEEP: "list length (elements)",
}

_MARKERS = "osD^vPX*"


def plot_sweep(
    table: SweepTable,
    path: str,
    rate: str = "global",
    variant: str = "nocomp",
    title: str | None = None,
) -> None:
    """Save one figure with a line per compared policy or pair."""
    axis = list(table.spec.axis)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for i, label in enumerate(table.labels):
        ys = [cell_value(table.cell(label, x), rate, variant) for x in axis]
        ax.plot(axis, ys, marker=_MARKERS[i % len(_MARKERS)], label=label)
    if table.spec.family is SweepFamily.LIST_SWEEP:
        ax.set_xscale("log", base=2)
    ax.set_xlabel(_X_LABELS[table.spec.family])
    suffix = " (excl. compulsory)" if variant == "nocomp" else ""
    ax.set_ylabel(f"{rate} miss rate (%){suffix}")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
