"""Byte-stable SVG emission for the layout dataclasses.

All floats are written with six decimal places and attributes in a fixed
order, so identical layouts always produce identical bytes.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .layout import (
    DistributionLayout,
    ScriptLayout,
    SpiralLayout,
    StripLayout,
    TypeLayout,
)

_SPIRAL_SCALE = 100.0  # px per abstract radius unit


def _f(x: float) -> str:
    return f"{x:.6f}"


def _svg(view_box: tuple[float, float, float, float], body: list[str]) -> str:
    x, y, w, h = view_box
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_f(x)} {_f(y)} {_f(w)} {_f(h)}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _render_spiral(layout: SpiralLayout) -> str:
    extent = 0.0
    for c in layout.circles:
        reach = max(abs(c.cx), abs(c.cy)) + c.radius
        extent = max(extent, reach)
    extent = (extent + 0.05) * _SPIRAL_SCALE
    body = []
    for c in layout.circles:
        body.append(
            f'<circle cx="{_f(c.cx * _SPIRAL_SCALE)}" cy="{_f(c.cy * _SPIRAL_SCALE)}" '
            f'r="{_f(c.radius * _SPIRAL_SCALE)}" fill="{c.color}" '
            f'fill-opacity="{_f(c.opacity)}" data-interval="{c.interval_index}" '
            f'data-start="{_f(c.start_s)}"/>'
        )
    return _svg((-extent, -extent, 2 * extent, 2 * extent), body)


def _render_script(layout: ScriptLayout) -> str:
    height = (layout.line_count + 1) * layout.params["line_height"]
    body = []
    for run in layout.runs:
        stroke_w = 0.5 + 1.5 * run.shape_weight
        body.append(
            f'<text x="{_f(run.x)}" y="{_f(run.y)}" font-size="{_f(run.font_size)}" '
            f'letter-spacing="{_f(run.tracking)}" fill="{run.color}" stroke="{run.color}" '
            f'stroke-width="{_f(stroke_w)}" data-weight="{_f(run.shape_weight)}" '
            f'data-start="{_f(run.start_s)}">{escape(run.text)}</text>'
        )
    return _svg((0.0, 0.0, layout.width, height), body)


def _render_type(layout: TypeLayout) -> str:
    rect_w = layout.width / len(layout.rects)
    body = []
    for r in layout.rects:
        top = r.y_center - r.height / 2.0
        body.append(
            f'<rect x="{_f(r.x)}" y="{_f(top)}" width="{_f(rect_w)}" '
            f'height="{_f(r.height)}" fill="{r.color}"/>'
        )
    points = " ".join(f"{_f(px)},{_f(py)}" for px, py in layout.polyline)
    body.append(f'<polyline points="{points}" fill="none" stroke="#d62728" stroke-width="1.5"/>')
    return _svg((0.0, 0.0, layout.width, layout.height), body)


def _render_strip(layout: StripLayout) -> str:
    width, row_h, margin = 800.0, 40.0, 40.0
    lo, hi = layout.x_domain
    span = hi - lo if hi > lo else 1.0

    def sx(v: float) -> float:
        return margin + (v - lo) / span * (width - 2 * margin)

    body = []
    for i, row in enumerate(layout.rows):
        cy = (i + 0.5) * row_h
        body.append(
            f'<rect x="{_f(sx(row.x25))}" y="{_f(cy - 10)}" '
            f'width="{_f(max(0.0, sx(row.x75) - sx(row.x25)))}" height="20.000000" '
            f'fill="{row.color}" fill-opacity="0.400000"/>'
        )
        body.append(
            f'<line x1="{_f(sx(row.median_x))}" y1="{_f(cy - 12)}" '
            f'x2="{_f(sx(row.median_x))}" y2="{_f(cy + 12)}" stroke="#08306b" stroke-width="2.000000"/>'
        )
        for sid, v in row.dots:
            body.append(
                f'<circle cx="{_f(sx(v))}" cy="{_f(cy)}" r="3.000000" fill="{row.color}" '
                f'stroke="#333333" stroke-width="0.500000" data-id="{escape(sid)}"/>'
            )
        body.append(
            f'<text x="4.000000" y="{_f(cy + 4)}" font-size="11.000000" fill="#333333">{escape(row.label)}</text>'
        )
    height = len(layout.rows) * row_h
    return _svg((0.0, 0.0, width, height), body)


def _render_distribution(layout: DistributionLayout) -> str:
    width, height, margin = 800.0, 300.0, 20.0
    lo, hi = layout.xs[0], layout.xs[-1]
    span = hi - lo if hi > lo else 1.0
    body = []
    for j, line in enumerate(layout.lines):
        pts = []
        for x, p in zip(layout.xs, line):
            px = margin + (x - lo) / span * (width - 2 * margin)
            py = height - margin - p * (height - 2 * margin)
            pts.append(f"{_f(px)},{_f(py)}")
        body.append(
            f'<polyline points="{" ".join(pts)}" fill="none" '
            f'stroke="{layout.colors[j]}" stroke-width="2.000000" data-level="{j + 1}"/>'
        )
    return _svg((0.0, 0.0, width, height), body)


def render_svg(layout) -> str:
    """Deterministic SVG text for any layout dataclass."""
    if isinstance(layout, SpiralLayout):
        return _render_spiral(layout)
    if isinstance(layout, ScriptLayout):
        return _render_script(layout)
    if isinstance(layout, TypeLayout):
        return _render_type(layout)
    if isinstance(layout, StripLayout):
        return _render_strip(layout)
    if isinstance(layout, DistributionLayout):
        return _render_distribution(layout)
    raise TypeError(f"no renderer for {type(layout).__name__}")
