"""Deterministic SVG emitters for heatmaps and bar charts.

Hand-rolled so that re-running a command yields byte-identical files
(plotting libraries embed timestamps and hashed ids).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

_CELL = 28
_PAD_LEFT = 90
_PAD_TOP = 70
_FONT = "font-family=\"monospace\" font-size=\"11\""


def _shade(value: float) -> str:
    """Interpolate white -> dark blue for value in [0, 1]."""
    v = min(max(value, 0.0), 1.0)
    r = round(255 + (8 - 255) * v)
    g = round(255 + (48 - 255) * v)
    b = round(255 + (107 - 255) * v)
    return f"#{r:02x}{g:02x}{b:02x}"


def heatmap_svg(
    grid: np.ndarray,
    row_labels: Sequence[str],
    col_labels: Sequence[str],
    title: str = "",
) -> str:
    rows, cols = grid.shape
    width = _PAD_LEFT + cols * _CELL + 20
    height = _PAD_TOP + rows * _CELL + 20
    top = grid.max() if grid.size else 0.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{_PAD_LEFT}" y="20" {_FONT}>{title}</text>')
    for j, label in enumerate(col_labels):
        x = _PAD_LEFT + j * _CELL + _CELL // 2
        parts.append(
            f'<text x="{x}" y="{_PAD_TOP - 8}" {_FONT} text-anchor="start" '
            f'transform="rotate(-60 {x} {_PAD_TOP - 8})">{label}</text>'
        )
    for i, label in enumerate(row_labels):
        y = _PAD_TOP + i * _CELL + _CELL // 2 + 4
        parts.append(f'<text x="{_PAD_LEFT - 6}" y="{y}" {_FONT} text-anchor="end">{label}</text>')
    for i in range(rows):
        for j in range(cols):
            value = float(grid[i, j])
            rel = value / top if top > 0 else 0.0
            x = _PAD_LEFT + j * _CELL
            y = _PAD_TOP + i * _CELL
            parts.append(
                f'<rect x="{x}" y="{y}" width="{_CELL}" height="{_CELL}" '
                f'fill="{_shade(rel)}" stroke="#cccccc"/>'
            )
            parts.append(
                f'<text x="{x + _CELL // 2}" y="{y + _CELL // 2 + 4}" {_FONT} '
                f'text-anchor="middle" fill="{"white" if rel > 0.6 else "black"}">'
                f"{value:.2f}".rstrip("0").rstrip(".")
                + "</text>"
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def bar_chart_svg(
    items: Sequence[tuple[str, float]],
    title: str = "",
    value_format: str = "{:.3f}",
) -> str:
    bar_h = 18
    gap = 6
    label_w = 110
    chart_w = 360
    width = label_w + chart_w + 90
    height = 40 + len(items) * (bar_h + gap) + 10
    top = max((v for _, v in items), default=0.0)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="10" y="20" {_FONT}>{title}</text>')
    for i, (label, value) in enumerate(items):
        y = 40 + i * (bar_h + gap)
        w = round(chart_w * (value / top)) if top > 0 else 0
        parts.append(f'<text x="{label_w - 6}" y="{y + bar_h - 5}" {_FONT} text-anchor="end">{label}</text>')
        parts.append(f'<rect x="{label_w}" y="{y}" width="{w}" height="{bar_h}" fill="#3b6ea5"/>')
        parts.append(
            f'<text x="{label_w + w + 6}" y="{y + bar_h - 5}" {_FONT}>'
            + value_format.format(value)
            + "</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
