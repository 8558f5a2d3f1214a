"""Render the refined pair classification as a grid.

One glyph per pair (i, j), i increasing left to right and j decreasing top
to bottom, mirroring the figure convention: '|' MinusOne, 'o' ZeroZero,
'+' PlusOne, open square MinusTwo, filled square PlusTwo, and a centered
dot for the remaining Zero-region pairs.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from .perm import Refined, refine

GLYPH = {
    Refined.MINUS_ONE: "|",
    Refined.ZERO_ZERO: "o",
    Refined.PLUS_ONE: "+",
    Refined.MINUS_TWO: "□",   # white square
    Refined.PLUS_TWO: "■",    # black square
    Refined.ZERO_PLAIN: "·",  # middle dot
}

SVG_COLOR = {
    Refined.MINUS_ONE: "#1f77b4",
    Refined.ZERO_ZERO: "#2ca02c",
    Refined.PLUS_ONE: "#d62728",
    Refined.MINUS_TWO: "#9467bd",
    Refined.PLUS_TWO: "#8c564b",
    Refined.ZERO_PLAIN: "#bbbbbb",
}


def ascii_diagram(datum, table=None, axes=True):
    """Rows j = r..1 top to bottom, columns i = 1..r left to right."""
    table = refine(datum) if table is None else table
    r = datum.r
    lines = []
    for j in range(r, 0, -1):
        row = " ".join(GLYPH[table.refined[(i, j)]] for i in range(1, r + 1))
        lines.append("%2d  %s" % (j, row) if axes else row)
    if axes:
        lines.append("    " + " ".join(str(i % 10) for i in range(1, r + 1)))
    return "\n".join(lines)


def svg_diagram(datum, table=None, cell=24):
    """Same grid as SVG: one glyph per cell plus a frame, as a unicode string."""
    table = refine(datum) if table is None else table
    r = datum.r
    size = cell * (r + 1)
    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg",
                     width=str(size), height=str(size),
                     viewBox="0 0 %d %d" % (size, size))
    ET.SubElement(svg, "rect", x="0", y="0", width=str(size),
                  height=str(size), fill="white", stroke="black")
    for (i, j), kind in sorted(table.refined.items()):
        x = cell * i
        y = cell * (r + 1 - j)
        text = ET.SubElement(svg, "text", x=str(x), y=str(y),
                             fill=SVG_COLOR[kind],
                             attrib={"text-anchor": "middle",
                                     "font-size": str(cell * 2 // 3),
                                     "data-pair": "%d,%d" % (i, j),
                                     "data-kind": kind.value})
        text.text = GLYPH[kind]
    return ET.tostring(svg, encoding="unicode")


def validate_svg(text):
    """Well-formed XML with an svg root and one text node per pair."""
    root = ET.fromstring(text)
    if not root.tag.endswith("svg"):
        return False
    cells = [el for el in root.iter() if el.tag.endswith("text")]
    pairs = {el.get("data-pair") for el in cells}
    return len(pairs) == len(cells) and len(cells) > 0
