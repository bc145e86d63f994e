"""Deterministic SVG rendering of a point set with an optional witness overlay."""

from __future__ import annotations

from typing import Sequence

from .geometry import Point, PointSet
from .partition import ul_partition

UPPER_COLOR = "#1f77b4"
LOWER_COLOR = "#d62728"
OVERLAY_COLOR = "#2ca02c"


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render(
    S: PointSet,
    overlay: Sequence[Point] = (),
    closed: bool = False,
    size: int = 600,
    margin: int = 30,
    title: str = "",
) -> str:
    """Points as circles colored by upper/lower class; ``overlay`` drawn as a
    polyline, or as a polygon outline when ``closed``."""
    pts = list(S)
    if not pts:
        raise ValueError("nothing to plot")
    x0, x1 = min(p.x for p in pts), max(p.x for p in pts)
    y0, y1 = min(p.y for p in pts), max(p.y for p in pts)
    span = max(x1 - x0, y1 - y0) or 1
    inner = size - 2 * margin

    def xy(p: Point) -> tuple[str, str]:
        # exact up to here; floats only for emission
        u = margin + float((p.x - x0) / span) * inner
        v = size - margin - float((p.y - y0) / span) * inner
        return _fmt(u), _fmt(v)

    upper = set(ul_partition(S).upper) if len(S) >= 2 else set(pts)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if title:
        out.append(f'<title>{title}</title>')
    if overlay:
        coords = " ".join(",".join(xy(p)) for p in overlay)
        tag = "polygon" if closed else "polyline"
        out.append(f'<{tag} points="{coords}" fill="none" stroke="{OVERLAY_COLOR}" stroke-width="2"/>')
    for p in pts:
        cx, cy = xy(p)
        color = UPPER_COLOR if p in upper else LOWER_COLOR
        out.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
