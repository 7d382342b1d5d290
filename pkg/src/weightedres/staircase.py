"""Staircase diagrams for two-entry weight tuples.

Renders the lattice around the line a_1/d_1 + a_2/d_2 = 1: members of the
staircase set, its minimal generators (the staircase corners), and the line
itself, with an optional second tuple overlaid (dashed) for dominating-pair
pictures.  The first entry runs up the vertical axis, the second along the
horizontal, matching the usual figures.
"""

from __future__ import annotations

import math

from .errors import DomainError
from .lattice import LatticeIdeal, MultiOrder


def _grid_data(d: MultiOrder):
    lattice = LatticeIdeal(d)
    gens = set(lattice.minimal_generators())
    rows = math.ceil(d.entries[0]) + 2
    cols = math.ceil(d.entries[1]) + 2
    return lattice, gens, rows, cols


def staircase_text(d: MultiOrder, overlay: MultiOrder | None = None) -> str:
    """ASCII rendering: G = minimal generator, * = member, . = outside;
    with an overlay, o marks points that are members for the overlay only."""
    if len(d) != 2:
        raise DomainError("staircase diagrams need exactly two entries")
    lattice, gens, rows, cols = _grid_data(d)
    over = LatticeIdeal(overlay) if overlay is not None else None
    lines = []
    for a1 in range(rows, -1, -1):
        cells = []
        for a2 in range(cols + 1):
            point = (a1, a2)
            if point in gens:
                cells.append("G")
            elif lattice.contains(point):
                cells.append("*")
            elif over is not None and over.contains(point):
                cells.append("o")
            else:
                cells.append(".")
        lines.append(f"{a1:>3} " + " ".join(cells))
    lines.append("    " + " ".join(f"{a2 % 10}" for a2 in range(cols + 1)))
    header = [f"staircase of {d}"]
    if overlay is not None:
        header.append(f"overlay {overlay}")
    legend = "G minimal generator, * member, o overlay-only member, . outside"
    return "\n".join([" / ".join(header)] + lines + [legend])


def _svg_line(x1, y1, x2, y2, stroke, dash="") -> str:
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return (
        f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
        f'stroke="{stroke}" stroke-width="2"{dash_attr}/>'
    )


def staircase_svg(d: MultiOrder, overlay: MultiOrder | None = None) -> str:
    """Self-contained SVG: lattice dots, the value-one line, staircase hull."""
    if len(d) != 2:
        raise DomainError("staircase diagrams need exactly two entries")
    lattice, gens, rows, cols = _grid_data(d)
    scale = 40
    margin = 30
    width = margin * 2 + cols * scale
    height = margin * 2 + rows * scale

    def X(a2) -> float:
        return margin + float(a2) * scale

    def Y(a1) -> float:
        return height - margin - float(a1) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        _svg_line(X(0), Y(0), X(cols), Y(0), "black"),
        _svg_line(X(0), Y(0), X(0), Y(rows), "black"),
    ]
    # the nu = 1 line through (d1, 0) and (0, d2)
    parts.append(_svg_line(X(0), Y(d.entries[0]), X(d.entries[1]), Y(0), "black"))
    if overlay is not None:
        parts.append(
            _svg_line(
                X(0), Y(overlay.entries[0]), X(overlay.entries[1]), Y(0), "blue", "6 4"
            )
        )
    # staircase hull through the minimal generators, sorted by first entry
    corners = sorted(gens, key=lambda p: (-p[0], p[1]))
    for (a, b), (c, e) in zip(corners, corners[1:]):
        parts.append(_svg_line(X(b), Y(a), X(b), Y(c), "red"))
        parts.append(_svg_line(X(b), Y(c), X(e), Y(c), "red"))
    for a1 in range(rows + 1):
        for a2 in range(cols + 1):
            point = (a1, a2)
            if point in gens:
                fill, r = "black", 5
            elif lattice.contains(point):
                fill, r = "red", 4
            else:
                fill, r = "lightgray", 2
            parts.append(
                f'<circle cx="{X(a2):.1f}" cy="{Y(a1):.1f}" r="{r}" fill="{fill}"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts)


def staircase(d: MultiOrder, overlay: MultiOrder | None = None, fmt: str = "text") -> str:
    if fmt == "svg":
        return staircase_svg(d, overlay)
    if fmt in ("text", "ascii"):
        return staircase_text(d, overlay)
    raise DomainError(f"unknown staircase format {fmt!r}")
