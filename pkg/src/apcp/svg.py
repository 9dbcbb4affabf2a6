"""Static SVG rendering of the bundled parallel-coordinates plot.

Curves are emitted as polylines sampled uniformly per Bézier segment, so
the file stands alone without curve primitives and the sampling density is
caller-controlled.
"""

from __future__ import annotations

from typing import Sequence


from .bundling import AdpLayout, BundledPath, sample_path
from .pipeline import ApcpResult

MEMBER_COLOR = "#3a6ea5"
TRUE_STATE_COLOR = "#111111"
AXIS_COLOR = "#444444"
POINT_COLOR = "#c4452b"


def _fmt(v: float) -> str:
    return f"{v:.10g}"


class _PlotTransform:
    """Plot space (x in axis units, y in [0, 1]) to pixel space, y flipped."""

    def __init__(self, n_axes: int, axis_gap_px: float, height_px: float, margin_px: float):
        self.margin = margin_px
        self.gap = axis_gap_px
        self.plot_h = height_px
        self.width = 2 * margin_px + (n_axes - 1) * axis_gap_px
        self.height = 2 * margin_px + height_px

    def x(self, x: float) -> float:
        return self.margin + x * self.gap

    def y(self, y: float) -> float:
        return self.margin + (1.0 - y) * self.plot_h

    def pt(self, p) -> str:
        return f"{_fmt(self.x(float(p[0])))} {_fmt(self.y(float(p[1])))}"


def render_apcp_svg(
    result: ApcpResult,
    layouts: Sequence[AdpLayout],
    paths: Sequence[BundledPath],
    variable_names: Sequence[str],
    true_state: Sequence[bool] | None = None,
    samples_per_segment: int = 24,
    axis_gap_px: float = 160.0,
    height_px: float = 420.0,
    margin_px: float = 40.0,
) -> str:
    """SVG 1.1 document: axes, scatter bands with points, sampled member curves."""
    n_axes = len(result.order)
    tf = _PlotTransform(n_axes, axis_gap_px, height_px, margin_px)
    flags = list(true_state) if true_state is not None else [False] * result.n_members

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(tf.width)}" height="{_fmt(tf.height)}" '
        f'viewBox="0 0 {_fmt(tf.width)} {_fmt(tf.height)}">',
        f'<rect width="{_fmt(tf.width)}" height="{_fmt(tf.height)}" fill="white"/>',
    ]

    for a in range(n_axes):
        x = _fmt(tf.x(a))
        parts.append(
            f'<line x1="{x}" y1="{_fmt(tf.y(0.0))}" x2="{x}" y2="{_fmt(tf.y(1.0))}" '
            f'stroke="{AXIS_COLOR}" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x}" y="{_fmt(tf.y(0.0) + 18)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{variable_names[a]}</text>'
        )

    for layout in layouts:
        b = layout.band
        parts.append(
            f'<rect x="{_fmt(tf.x(b.x0))}" y="{_fmt(tf.y(b.y1))}" '
            f'width="{_fmt(tf.x(b.x1) - tf.x(b.x0))}" '
            f'height="{_fmt(tf.y(b.y0) - tf.y(b.y1))}" '
            f'fill="none" stroke="#cccccc" stroke-width="0.5"/>'
        )

    for path in paths:
        flag = flags[path.member]
        points = sample_path(path, samples_per_segment)
        d_parts = [f"M {tf.pt(points[0])}"]
        d_parts.extend(f"L {tf.pt(p)}" for p in points[1:])
        color = TRUE_STATE_COLOR if flag else MEMBER_COLOR
        dash = ' stroke-dasharray="6 3"' if flag else ""
        parts.append(
            f'<path d="{" ".join(d_parts)}" fill="none" stroke="{color}" '
            f'stroke-width="1.2" stroke-opacity="0.7"{dash}/>'
        )

    for layout in layouts:
        for row in range(layout.points.shape[0]):
            parts.append(
                f'<circle cx="{_fmt(tf.x(float(layout.points[row, 0])))}" '
                f'cy="{_fmt(tf.y(float(layout.points[row, 1])))}" r="2.4" '
                f'fill="{POINT_COLOR}" fill-opacity="0.8"/>'
            )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
