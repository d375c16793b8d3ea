"""Figures for reports: Newton polygons of one prime, and a summary of a scan."""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .ore import OreReport


def _points(fa):
    return [(pt.abscissa, pt.ordinate) for pt in fa.polygon.points]


def plot_report(report: OreReport, path: str | Path, title: str | None = None) -> Path:
    """One panel per factor of F mod p, showing the cloud and its principal polygon."""
    panels = [fa for fa in report.factors if fa.polygon is not None] or report.factors[:1]
    fig, axes = plt.subplots(1, len(panels), figsize=(4.2 * len(panels), 3.6), squeeze=False)
    for ax, fa in zip(axes[0], panels):
        ax.set_title(f"phi = {fa.phi}  (ind {fa.index})", fontsize=9)
        ax.set_xlabel("i")
        ax.set_ylabel("v_p(a_i)")
        ax.grid(True, lw=0.3, alpha=0.5)
        if fa.polygon is None:
            ax.text(0.5, 0.5, "simple factor", ha="center", va="center", transform=ax.transAxes)
            continue
        pts = _points(fa)
        if pts:
            ax.scatter(*zip(*pts), s=14, color="0.4", zorder=2)
        for sa in fa.sides:
            (x0, y0), (x1, y1) = sa.side.start, sa.side.end
            ax.plot([x0, x1], [y0, y1], color="C0" if sa.separable else "C3", lw=1.6, zorder=3)
            ax.annotate(str(sa.side.slope), ((x0 + x1) / 2, (y0 + y1) / 2), fontsize=8, xytext=(4, 4), textcoords="offset points")
        ax.set_xlim(left=-0.5)
        ax.set_ylim(bottom=-0.5)
    state = "regular" if report.regular else "not regular"
    fig.suptitle(title or f"{report.F}  at p = {report.p}: index >= {report.index_lower_bound}, {state}", fontsize=10)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_scan_summary(records: list[dict], path: str | Path) -> Path:
    """Bar chart of certificates per (n, source)."""
    tally = Counter((int(r["trinomial"]["n"]), r["source"]) for r in records)
    fig, ax = plt.subplots(figsize=(6, 3.6))
    if tally:
        keys = sorted(tally)
        ax.bar(range(len(keys)), [tally[k] for k in keys], color="C0")
        ax.set_xticks(range(len(keys)))
        ax.set_xticklabels([f"n={n}\n{src}" for n, src in keys], fontsize=8)
    else:
        ax.text(0.5, 0.5, "no certificates", ha="center", va="center", transform=ax.transAxes)
    ax.set_ylabel("certificates")
    ax.set_title("scan summary", fontsize=10)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
