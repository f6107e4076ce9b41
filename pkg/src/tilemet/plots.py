"""Figure rendering for tilings and check reports.

Matplotlib is imported lazily with the Agg backend, so figures only
ever go to files and importing the library never needs a display.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

from .analysis import AxiomReport, ConvergenceCurve, InequalityReport
from .descriptions import TilingDescription
from .vec import ORIGIN


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


_FALLBACK = "#d9d9d9"
_EDGE = "#444444"


def _facecolor(color: Optional[str]) -> str:
    return color if color else _FALLBACK


def _draw_tiling(ax, desc: TilingDescription, radius: Fraction) -> None:
    from matplotlib.patches import Polygon as MplPolygon

    for tile in desc.tiles_near(ORIGIN, radius):
        pts = [tuple(map(float, (v.x, v.y))) for v in tile.polygon.vertices]
        ax.add_patch(
            MplPolygon(pts, closed=True, facecolor=_facecolor(tile.color),
                       edgecolor=_EDGE, linewidth=0.7)
        )
    r = float(radius)
    ax.set_xlim(-r, r)
    ax.set_ylim(-r, r)
    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])


def tiling_figure(
    entries: Sequence[tuple[str, TilingDescription]],
    path: str,
    *,
    radius: Fraction = Fraction(4),
    cols: int = 4,
) -> str:
    """Gallery of tilings drawn inside a square window."""
    plt = _plt()
    cols = max(1, min(cols, len(entries)))
    rows = math.ceil(len(entries) / cols)
    fig, axes = plt.subplots(rows, cols, figsize=(3.2 * cols, 3.4 * rows))
    flat = axes.flat if hasattr(axes, "flat") else [axes]
    for ax in flat:
        ax.set_axis_off()
    for ax, (label, desc) in zip(flat, entries):
        ax.set_axis_on()
        _draw_tiling(ax, desc, radius)
        ax.set_title(label, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def convergence_figure(curves: Sequence[ConvergenceCurve], path: str) -> str:
    """Interval brackets along each family, log-scaled when possible."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    positive = True
    for curve in curves:
        xs = range(len(curve.rows))
        his = [r.hi for r in curve.rows]
        los = [r.lo for r in curve.rows]
        ax.plot(xs, his, marker="o", label=f"{curve.metric} hi")
        ax.plot(xs, los, marker=".", linestyle="--", label=f"{curve.metric} lo")
        positive = positive and all(v > 0 for v in his)
        labels = [r.label for r in curve.rows]
    ax.set_xticks(range(len(labels)), labels, rotation=30, fontsize=8)
    if positive:
        ax.set_yscale("log")
    ax.set_xlabel("family member")
    ax.set_ylabel("certified distance to the limit")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def inequality_figure(report: InequalityReport, path: str) -> str:
    """Scatter of each inequality instance against the diagonal."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(5.2, 5.2))
    names = sorted({r.name for r in report.rows})
    for name in names:
        xs = [r.rhs_hi for r in report.rows if r.name == name]
        ys = [r.lhs_lo for r in report.rows if r.name == name]
        ax.scatter(xs, ys, s=18, label=name, alpha=0.8)
    lim = max(
        [r.rhs_hi for r in report.rows] + [r.lhs_lo for r in report.rows] + [1.0]
    )
    ax.plot([0, lim * 1.05], [0, lim * 1.05], color="#888888", linewidth=1)
    ax.set_xlabel("scaled upper bound of the right side")
    ax.set_ylabel("lower bound of the left side")
    ax.set_title("points at or below the diagonal satisfy the inequality")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def axiom_figure(reports: Sequence[AxiomReport], path: str) -> str:
    """Triangle slack per case; expected raw-infimum breaks marked."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6.8, 4.2))
    x = 0
    for rep in reports:
        tri = [r for r in rep.rows if r.axiom.startswith("triangle")]
        xs = list(range(x, x + len(tri)))
        finite = [
            (i, r.slack) for i, r in zip(xs, tri) if r.slack not in (None, math.inf)
        ]
        if finite:
            ax.scatter(
                [i for i, _ in finite],
                [s for _, s in finite],
                s=14,
                label=f"{rep.metric} slack",
            )
        broken = [i for i, r in zip(xs, tri) if r.expected_failure]
        if broken:
            ax.scatter(broken, [0.0] * len(broken), marker="x", color="#b22222",
                       label=f"{rep.metric} expected break")
        x += len(tri) + 2
    ax.axhline(0.0, color="#888888", linewidth=1)
    ax.set_xlabel("triangle instance")
    ax.set_ylabel("slack (sum of short legs minus long leg)")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


__all__ = [
    "axiom_figure",
    "convergence_figure",
    "inequality_figure",
    "tiling_figure",
]
