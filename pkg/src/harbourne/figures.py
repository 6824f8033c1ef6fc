"""Matplotlib renderings saved next to the delimited outputs.

Both entry points write a file and return its path; the format follows
the file extension (png, pdf, svg).  matplotlib loads lazily with the
Agg backend so the rest of the package works on headless machines and
never pays the import unless a figure is requested.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:  # pragma: no cover
    from .pipeline import CertifiedValue, Verdict


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_table_figure(results: Sequence["CertifiedValue"], path: str | Path) -> Path:
    """Plot H(d) against d with the analytic lower envelope."""
    from .bounds import naive_upper_bound

    plt = _plt()
    path = Path(path)
    ds = [r.d for r in results]
    values = [float(r.value) for r in results]
    fig, ax = plt.subplots(figsize=(7.5, 4.8))
    lo, hi = min(ds), max(ds)
    xs = [lo + i * (hi - lo) / 400 for i in range(401)] if hi > lo else [lo]
    ax.plot(
        xs,
        [(1 - math.sqrt(4 * x - 3)) / 2 for x in xs],
        color="#888888",
        linestyle="--",
        linewidth=1.2,
        label="(1 - sqrt(4d-3))/2",
    )
    naive_ds, naive_vals = [], []
    for r in results:
        if r.d >= 7:
            value, _ = naive_upper_bound(r.d)
            naive_ds.append(r.d)
            naive_vals.append(float(value))
    if naive_ds:
        ax.plot(
            naive_ds, naive_vals,
            marker="v", linestyle="none", color="#cc7722",
            markersize=4, label="subplane upper bound",
        )
    ax.plot(
        ds, values,
        marker="o", color="#225588", linewidth=1.4, markersize=4.5,
        label="H(d)",
    )
    ax.set_xlabel("number of lines d")
    ax.set_ylabel("Harbourne constant")
    ax.set_title("Absolute linear Harbourne constants")
    ax.grid(True, alpha=0.25)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_check_figure(verdict: "Verdict", path: str | Path) -> Path:
    """Bar chart of exclusion-reason counts for one certification run."""
    from .pipeline import REASON_ORDER
    from .profiles import format_rational

    plt = _plt()
    path = Path(path)
    reasons = [r for r in REASON_ORDER]
    counts = [verdict.counters.reasons[r] for r in reasons]
    fig, ax = plt.subplots(figsize=(7.5, 4.2))
    colors = ["#2a7f4f" if r != "survivor" else "#aa3333" for r in reasons]
    bars = ax.barh(reasons, counts, color=colors)
    for bar, count in zip(bars, counts):
        ax.text(
            bar.get_width(), bar.get_y() + bar.get_height() / 2,
            f" {count}", va="center", fontsize=9,
        )
    status = "certified" if verdict.all_excluded else "NOT certified"
    ax.set_xlabel("profiles excluded")
    ax.set_title(
        f"check d={verdict.d} bound={format_rational(verdict.bound)}: "
        f"{verdict.counters.tested} tested, {status}"
    )
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
