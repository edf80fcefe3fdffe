"""SVG rendering of current maps."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .currents import CurrentMap
from .lattice import embed

SCALE = 40.0  # user units per lattice spacing
MAX_STROKE = 6.0
MIN_STROKE = 0.3
MARGIN = 30.0


def render_current_map(cmap: CurrentMap, title: str = "") -> str:
    """Arrows along every bond, pointing with the current, width proportional to |I|.

    Removed bonds are not drawn; bonds restored by augmentation are dashed.
    The source is a filled red disc and the sink a filled blue one.
    """
    kind = cmap.kind
    (m0, n0), (m1, n1) = cmap.window
    corners = [embed(kind, (m, n)) for m in (m0, m1) for n in (n0, n1)]
    xmin = min(c[0] for c in corners)
    xmax = max(c[0] for c in corners)
    ymin = min(c[1] for c in corners)
    ymax = max(c[1] for c in corners)
    width = (xmax - xmin) * SCALE + 2 * MARGIN
    height = (ymax - ymin) * SCALE + 2 * MARGIN

    def xy(s):
        x, y = embed(kind, s)
        # SVG y axis points down
        return MARGIN + (x - xmin) * SCALE, MARGIN + (ymax - y) * SCALE

    imax = cmap.max_abs
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height:.1f}" '
        f'viewBox="0 0 {width:.1f} {height:.1f}">',
        "<defs>",
        '<marker id="head" viewBox="0 0 10 10" refX="8" refY="5" markerWidth="4" markerHeight="4" '
        'orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="black"/></marker>',
        "</defs>",
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append('<g fill="none" stroke="black" stroke-linecap="round">')
    for e in cmap.entries:
        a, b = e.bond.start, e.bond.end
        if e.current < 0:
            a, b = b, a
        (x0, y0), (x1, y1) = xy(a), xy(b)
        w = MAX_STROKE * abs(e.current) / imax if imax > 0 else 0.0
        w = max(w, MIN_STROKE)
        attrs = f'stroke-width="{w:.3f}"'
        if e.restored:
            attrs += ' stroke-dasharray="4 3" stroke="magenta"'
        elif imax > 0 and abs(e.current) > 1e-12 * imax:
            attrs += ' marker-end="url(#head)"'
        out.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" {attrs}/>')
    out.append("</g>")
    for s, colour, label in ((cmap.source, "red", "source"), (cmap.sink, "blue", "sink")):
        x, y = xy(s)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="6" fill="{colour}" class="{label}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
