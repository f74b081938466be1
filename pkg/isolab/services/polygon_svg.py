"""
SVG rendering of Hodge and Newton polygons.

Each polygon becomes one ``<polyline>``; its exact vertices are kept in a
``data-vertices`` attribute as JSON with rational strings, so the drawing
can be read back without floating-point loss.
"""

import json
import os
from fractions import Fraction
from html import escape
from typing import Dict, List, Optional

from isolab.errors import InputError
from isolab.services.constants import SVG_COLORS, SVG_HEIGHT, SVG_MARGIN, SVG_WIDTH
from isolab.services.padic_core import NewtonPolygon
from isolab.utils.serialization import format_rational


def vertices_json(poly: NewtonPolygon) -> List[List]:
    return [[int(x), format_rational(y)] for x, y in poly.vertices]


def _scale(polygons: Dict[str, NewtonPolygon]):
    xs = [Fraction(x) for poly in polygons.values() for x, _ in poly.vertices]
    ys = [Fraction(y) for poly in polygons.values() for _, y in poly.vertices]
    span_x = max(max(xs) - min(xs), 1)
    span_y = max(max(ys) - min(ys), 1)
    sx = Fraction(SVG_WIDTH - 2 * SVG_MARGIN) / span_x
    sy = Fraction(SVG_HEIGHT - 2 * SVG_MARGIN) / span_y
    x0, y0 = min(xs), min(ys)

    def to_screen(x, y):
        px = SVG_MARGIN + (Fraction(x) - x0) * sx
        py = SVG_HEIGHT - SVG_MARGIN - (Fraction(y) - y0) * sy
        return f"{float(px):.2f},{float(py):.2f}"

    return to_screen


def render_svg(polygons: Dict[str, NewtonPolygon], title: Optional[str] = None) -> str:
    """
    Overlay the given polygons (keyed ``"hodge"``, ``"newton"`` or any label).

    Polygons are drawn in sorted key order, which keeps the output stable.
    """
    if not polygons:
        raise InputError("nothing to draw")
    to_screen = _scale(polygons)
    exact = {name: vertices_json(poly) for name, poly in sorted(polygons.items())}
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" '
        f'data-polygons="{escape(json.dumps(exact, sort_keys=True, separators=(",", ":")))}">',
    ]
    if title:
        lines.append(f"  <title>{escape(title)}</title>")
    for name, poly in sorted(polygons.items()):
        color = SVG_COLORS.get(name, SVG_COLORS["polygon"])
        points = " ".join(to_screen(x, y) for x, y in poly.vertices)
        data = escape(json.dumps(exact[name], separators=(",", ":")))
        lines.append(
            f'  <polyline class="{escape(name)}" fill="none" stroke="{color}" stroke-width="2" '
            f'points="{points}" data-vertices="{data}"/>'
        )
        for x, y in poly.vertices:
            cx, cy = to_screen(x, y).split(",")
            lines.append(f'  <circle class="{escape(name)}-vertex" cx="{cx}" cy="{cy}" r="3" fill="{color}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(polygons: Dict[str, NewtonPolygon], path: str, title: Optional[str] = None) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(render_svg(polygons, title))
    return path
