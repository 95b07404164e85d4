"""Deterministic SVG rendering of the Farey disc.

Slopes sit on the unit circle at angle 2*arctan(value) with infinity at the
top; edges are drawn as straight chords.  Vertices come from the mediant
subdivision of the two half-discs to a requested depth.  Output is plain
SVG 1.1 text with fixed-precision coordinates, byte-identical across runs.
"""
from __future__ import annotations

import math
from typing import Sequence

from .slopes import Slope

_SIZE = 800
_CENTER = _SIZE / 2
_RADIUS = 360.0

_HIGHLIGHT_COLORS = ("#c02030", "#1060c0", "#108040", "#b06010", "#702090")


def slope_angle(s: Slope) -> float:
    """Angle of a slope on the disc boundary, infinity at the top."""
    if s.is_infinity:
        return math.pi
    return 2.0 * math.atan2(s.p, s.q)


def slope_point(s: Slope) -> tuple[float, float]:
    theta = slope_angle(s)
    return (_CENTER + _RADIUS * math.sin(theta),
            _CENTER + _RADIUS * math.cos(theta))


def mediant_edges(depth: int) -> list[tuple[Slope, Slope]]:
    """Farey edges from mediant subdivision of both half-discs."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    edges: list[tuple[Slope, Slope]] = []

    def recurse(a: tuple[int, int], b: tuple[int, int], level: int) -> None:
        edges.append((Slope(*a), Slope(*b)))
        if level >= depth:
            return
        mid = (a[0] + b[0], a[1] + b[1])
        recurse(a, mid, level + 1)
        recurse(mid, b, level + 1)

    recurse((1, 0), (0, 1), 1)
    recurse((0, 1), (-1, 0), 1)
    return edges


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def _chord(u: Slope, v: Slope, color: str, width: float) -> str:
    x1, y1 = slope_point(u)
    x2, y2 = slope_point(v)
    return (
        f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
        f'stroke="{color}" stroke-width="{_fmt(width)}" />'
    )


def farey_disc_svg(
    depth: int,
    highlight_paths: Sequence[Sequence[Slope]] = (),
    label_depth: int = 3,
) -> str:
    """The Farey disc to the given mediant depth with optional highlighted
    paths, returned as an SVG document string."""
    edges = mediant_edges(depth)
    seen_vertices: dict[Slope, None] = {}
    for u, v in edges:
        seen_vertices.setdefault(u)
        seen_vertices.setdefault(v)
    for path in highlight_paths:
        for v in path:
            seen_vertices.setdefault(v)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_SIZE}" height="{_SIZE}" viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<circle cx="{_fmt(_CENTER)}" cy="{_fmt(_CENTER)}" r="{_fmt(_RADIUS)}" '
        f'fill="none" stroke="#404040" stroke-width="1.5" />',
    ]
    for u, v in edges:
        lines.append(_chord(u, v, "#b0b0c0", 0.8))
    for index, path in enumerate(highlight_paths):
        color = _HIGHLIGHT_COLORS[index % len(_HIGHLIGHT_COLORS)]
        for u, v in zip(path, path[1:]):
            lines.append(_chord(u, v, color, 2.5))
        for v in path:
            x, y = slope_point(v)
            lines.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="5.0" fill="{color}" />'
            )
    for v in sorted(seen_vertices, key=lambda s: (s.q, s.p)):
        if abs(v.p) <= label_depth and abs(v.q) <= label_depth or any(
            v in path for path in highlight_paths
        ):
            x, y = slope_point(v)
            dx = 8.0 if x >= _CENTER else -8.0
            anchor = "start" if x >= _CENTER else "end"
            lines.append(
                f'<text x="{_fmt(x + dx)}" y="{_fmt(y)}" font-size="14" '
                f'text-anchor="{anchor}" fill="#202020">{v.p}/{v.q}</text>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
