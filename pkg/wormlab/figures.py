"""
SVG illustrations of capacity minimisers and hull-of-worms configurations.
"""
import os
import numpy as np
import matplotlib as mpl
mpl.use("Agg")

# fixed salt and no date stamp: identical input gives identical bytes
mpl.rcParams.update({
    "svg.hashsalt": "wormlab",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.titlesize": 9,
    "figure.figsize": (5.0, 5.0),
})

import matplotlib.pyplot as plt
from logging import getLogger
from typing import Optional, Union

from .capacity import CapacityReport
from .exceptions import Degenerate, IoError, ReportError
from .geom2 import ConvexBody2, convex_hull, to_polygon
from .wormcover import BoundReport

logger = getLogger("wormlab")


def _closed(points: np.ndarray) -> np.ndarray:
    return np.vstack([points, points[:1]])


def _outline(ax, body: ConvexBody2, **kwargs) -> None:
    verts = _closed(to_polygon(body, 512).vertices)
    ax.plot(verts[:, 0], verts[:, 1], **kwargs)


def new(ncols: int = 1):
    fig, axes = plt.subplots(nrows=1, ncols=ncols, figsize=(5.0 * ncols, 5.0))
    return fig, np.atleast_1d(axes)


def save(fig, path: str) -> None:
    try:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as e:
        raise IoError(f"Could not write {path}: {e}") from e
    finally:
        plt.close(fig)
    logger.info(f"Wrote SVG: {path}")


def _capacity_figure(report: CapacityReport, k_body: Optional[ConvexBody2],
                     t_body: Optional[ConvexBody2]):
    if report.minimizer is None or len(report.minimizer) < 2:
        raise ReportError("Capacity report has no minimiser to draw")
    show_dual = t_body is not None and report.dual is not None
    fig, axes = new(2 if show_dual else 1)

    ax = axes[0]
    if k_body is not None:
        _outline(ax, k_body, color="0.3", lw=1.0, label="K")
    q = _closed(report.minimizer.vertices)
    ax.plot(q[:, 0], q[:, 1], "-o", color="C3", lw=1.5, ms=3,
            label=f"{report.bounce_count}-bounce minimiser")
    ax.set_title(f"c_EHZ = {report.value:.6f}")

    if show_dual:
        ax_t = axes[1]
        _outline(ax_t, t_body, color="0.3", lw=1.0, label="T")
        p = _closed(report.dual.vertices)
        ax_t.plot(p[:, 0], p[:, 1], "-o", color="C0", lw=1.5, ms=3, label="dual curve")
        ax_t.set_title("dual curve on T")

    for a in axes:
        a.set_aspect("equal")
        a.legend(loc="upper right", fontsize=7)
    return fig


def _bound_figure(report: BoundReport):
    if not report.generators:
        raise ReportError("Bound report has no generators to draw")
    fig, axes = new(1)
    ax = axes[0]
    res = min(report.resolution, 512)
    clouds = [g.points(res) for g in report.generators]
    for k, (gen, pts) in enumerate(zip(report.generators, clouds)):
        outline = _closed(pts) if len(pts) > 2 else pts
        ax.plot(outline[:, 0], outline[:, 1], color=f"C{k}", lw=1.2, label=gen.kind)
    try:
        hull = _closed(convex_hull(np.vstack(clouds)).vertices)
        ax.plot(hull[:, 0], hull[:, 1], "--", color="k", lw=1.0, label="convex hull")
    except Degenerate:
        logger.debug("Degenerate hull, outline skipped")
    theta = report.outer_params.get("theta", 0.0)
    q_hat = report.outer_params.get("q_hat", 1.0)
    ax.set_title(f"area {report.lower_bound:.6f}  (θ = {theta:.4f}, q̂ = {q_hat:.4f})")
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=7)
    return fig


def emit_svg(report: Union[CapacityReport, BoundReport], path: str,
             k_body: Optional[ConvexBody2] = None, t_body: Optional[ConvexBody2] = None) -> None:
    """Standalone SVG of a capacity minimiser (with K, T and the dual curve) or a bound configuration."""
    if isinstance(report, CapacityReport):
        fig = _capacity_figure(report, k_body, t_body)
    elif isinstance(report, BoundReport):
        fig = _bound_figure(report)
    else:
        raise ReportError(f"Cannot draw {type(report).__name__}")
    save(fig, path)
