"""SVG rendering of a planar net (presentation only; JSON is the exact record)."""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import quoteattr

from .unfold import Layout

STYLE = """
    path { fill: #f3ead8; stroke: #333; stroke-width: 0.04; }
    path.Base { fill: #d9c7a3; }
    path.Top { fill: #cfe3c1; }
    path.WallYZ, path.ConnXZ { fill: #c6d6ea; }
    line.fold { stroke: #888; stroke-width: 0.03; stroke-dasharray: 0.15 0.1; }
"""


def _num(q: Fraction) -> str:
    text = f"{float(q):.6f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def layout_to_svg(layout: Layout, margin: Fraction = Fraction(1, 2)) -> str:
    """Render ``layout``; planar +y points up on screen."""
    xmin, ymin, xmax, ymax = layout.bbox
    w, h = xmax - xmin + 2 * margin, ymax - ymin + 2 * margin
    # screen y = -planar y, so the top of the net is at -ymax
    view = f"{_num(xmin - margin)} {_num(-ymax - margin)} {_num(w)} {_num(h)}"
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{view}" '
        f'width="{_num(w * 40)}" height="{_num(h * 40)}">',
        f"  <style>{STYLE}  </style>",
        '  <g id="faces">',
    ]
    for f in layout.faces:
        d = " ".join(f"{'M' if k == 0 else 'L'} {_num(x)} {_num(-y)}" for k, (x, y) in enumerate(f.vertices))
        out.append(f"    <path id={quoteattr(f.id)} class={quoteattr(f.kind)} d=\"{d} Z\"/>")
    out.append("  </g>")
    out.append('  <g id="folds">')
    for f in layout.faces:
        if f.fold_edge is None:
            continue
        (x1, y1), (x2, y2) = f.fold_edge
        out.append(f'    <line class="fold" x1="{_num(x1)}" y1="{_num(-y1)}" x2="{_num(x2)}" y2="{_num(-y2)}"/>')
    out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def export_svg(layout: Layout, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(layout_to_svg(layout))
