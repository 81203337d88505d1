"""Deterministic SVG rendering of point sets.

Coordinates stay exact until the final text emission, where each number
is written with 12 significant digits (banker's rounding), so the same
point set always produces byte-identical output.  The y axis is flipped
to the usual mathematical orientation.
"""

from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

from .errors import InputError
from .visibility import (
    LineIncidenceMap,
    PointSet,
    _sorted_along_line,
    build_visibility_graph,
)

EDGE_MODES = ("visibility", "collinear", "none")

_PRECISION = 12


def _num(value: Fraction) -> str:
    """12-significant-digit decimal text, deterministic across platforms."""
    with localcontext() as ctx:
        ctx.prec = _PRECISION
        ctx.rounding = ROUND_HALF_EVEN
        d = Decimal(value.numerator) / Decimal(value.denominator)
    text = format(d, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text if text != "-0" else "0"


def _segments(ps: PointSet, edges: str) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
    if edges == "none" or ps.n < 2:
        return []
    segs: list[tuple[Fraction, Fraction, Fraction, Fraction]] = []
    if edges == "visibility":
        graph = build_visibility_graph(ps)
        for i, j in graph.edges:
            a, b = ps.point(i), ps.point(j)
            segs.append((a.x, a.y, b.x, b.y))
        return segs
    # collinear: one segment per line carrying >= 3 points, across its extremes
    lmap = LineIncidenceMap.from_point_set(ps)
    for line, lst in sorted(lmap.multi_entries()):
        ordered = _sorted_along_line(lst, ps.points, line)
        a, b = ps.point(ordered[0]), ps.point(ordered[-1])
        segs.append((a.x, a.y, b.x, b.y))
    return segs


def render_svg(ps: PointSet, edges: str = "none") -> str:
    """Render points (with 1-based index labels) and optional edges."""
    if edges not in EDGE_MODES:
        raise InputError(f"edge mode {edges!r} not one of {EDGE_MODES}")
    if ps.n < 1:
        raise InputError("nothing to render: the point set is empty")
    xs = [p.x for p in ps.points]
    ys = [p.y for p in ps.points]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    span = max(maxx - minx, maxy - miny)
    if span == 0:
        span = Fraction(2)
    pad = span / 20  # 5% margin around the exact bounding box
    radius = span / 100
    stroke = radius / 2
    font = radius * 4

    out: list[str] = ['<?xml version="1.0" encoding="UTF-8"?>']
    view = (
        f"{_num(minx - pad)} {_num(-(maxy + pad))} "
        f"{_num(maxx - minx + 2 * pad)} {_num(maxy - miny + 2 * pad)}"
    )
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{view}">')
    segs = _segments(ps, edges)
    if segs:
        out.append(
            f'  <g class="edges" stroke="#3366aa" stroke-width="{_num(stroke)}" '
            'fill="none">'
        )
        for x1, y1, x2, y2 in segs:
            out.append(
                f'    <line x1="{_num(x1)}" y1="{_num(-y1)}" '
                f'x2="{_num(x2)}" y2="{_num(-y2)}"/>'
            )
        out.append("  </g>")
    out.append('  <g class="points" fill="#202020">')
    for p in ps.points:
        out.append(f'    <circle cx="{_num(p.x)}" cy="{_num(-p.y)}" r="{_num(radius)}"/>')
    out.append("  </g>")
    out.append(
        f'  <g class="labels" font-family="monospace" font-size="{_num(font)}" '
        'fill="#202020">'
    )
    offset = radius * 3 / 2
    for idx, p in enumerate(ps.points, start=1):
        out.append(
            f'    <text x="{_num(p.x + offset)}" y="{_num(-(p.y + offset))}">{idx}</text>'
        )
    out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
