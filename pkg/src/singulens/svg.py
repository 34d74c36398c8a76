"""SVG drawing of a two-dimensional Newton polygon.

The unbounded region is clipped to a box a little past the last vertex; the
boundary of the polyhedron inside that box is drawn as one polyline and each
vertex is labelled with its exact coordinates.
"""

from fractions import Fraction
from xml.sax.saxutils import escape

from .errors import IoError, UnsupportedDimension

UNIT = 40
MARGIN = 40


def _clip(polygon, facet):
    """Sutherland-Hodgman step against ``<normal, x> >= offset`` (exact)."""
    out = []
    m = len(polygon)
    for i in range(m):
        p, q = polygon[i], polygon[(i + 1) % m]
        vp, vq = facet.value(p) - facet.offset, facet.value(q) - facet.offset
        if vp >= 0:
            out.append(p)
        if (vp >= 0) != (vq >= 0) and vp != vq:
            t = vp / (vp - vq)
            out.append(tuple(a + t * (b - a) for a, b in zip(p, q)))
    cleaned = []
    for p in out:
        if not cleaned or cleaned[-1] != p:
            cleaned.append(p)
    if len(cleaned) > 1 and cleaned[0] == cleaned[-1]:
        cleaned.pop()
    return cleaned


def _region(P, box):
    poly = [(Fraction(0), Fraction(0)), (box, Fraction(0)), (box, box), (Fraction(0), box)]
    for f in P.facets:
        poly = _clip(poly, f)
    return poly


def _boundary_chain(P, poly):
    """Consecutive region edges lying on facets of ``P``, as one point list."""
    m = len(poly)

    def on_boundary(i):
        p, q = poly[i], poly[(i + 1) % m]
        return any(f.tight(p) and f.tight(q) for f in P.facets)

    marks = [on_boundary(i) for i in range(m)]
    if all(marks) or not any(marks):
        return list(poly)
    start = next(i for i in range(m) if marks[i] and not marks[i - 1])
    chain = [poly[start]]
    i = start
    while marks[i % m]:
        chain.append(poly[(i + 1) % m])
        i += 1
    return chain


def _fmt(x):
    return str(Fraction(x))


def newton_svg(P):
    """SVG 1.1 text for a two-dimensional polyhedron."""
    if P.dim != 2:
        raise UnsupportedDimension(f"only two-dimensional polyhedra are drawn, got dimension {P.dim}")
    top = max([max(v) for v in P.vertices] + [Fraction(0)])
    box = Fraction(int(top) + 2)
    size = int(box) * UNIT + 2 * MARGIN

    def px(p):
        return (float(MARGIN + p[0] * UNIT), float(size - MARGIN - p[1] * UNIT))

    def pts(seq):
        return " ".join(f"{x:.2f},{y:.2f}" for x, y in map(px, seq))

    region = _region(P, box)
    chain = _boundary_chain(P, region)
    ox, oy = px((0, 0))
    ex, _ = px((box, 0))
    _, ey = px((0, box))
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="3" orient="auto">'
        '<path d="M0,0 L6,3 L0,6 z" fill="black"/></marker></defs>',
        f'<polygon class="region" points="{pts(region)}" fill="#9ecae1" fill-opacity="0.6" stroke="none"/>',
        f'<line class="axis" x1="{ox:.2f}" y1="{oy:.2f}" x2="{ex + 15:.2f}" y2="{oy:.2f}" '
        'stroke="black" marker-end="url(#arrow)"/>',
        f'<line class="axis" x1="{ox:.2f}" y1="{oy:.2f}" x2="{ox:.2f}" y2="{ey - 15:.2f}" '
        'stroke="black" marker-end="url(#arrow)"/>',
    ]
    for k in range(1, int(box) + 1):
        tx, _ = px((k, 0))
        _, ty = px((0, k))
        parts.append(f'<text x="{tx:.2f}" y="{oy + 15:.2f}" font-size="10" text-anchor="middle">{k}</text>')
        parts.append(f'<text x="{ox - 8:.2f}" y="{ty + 3:.2f}" font-size="10" text-anchor="end">{k}</text>')
    parts.append(
        f'<polyline class="boundary" points="{pts(chain)}" fill="none" stroke="#08519c" stroke-width="2"/>'
    )
    for v in P.vertices:
        x, y = px(v)
        label = "(" + ", ".join(_fmt(c) for c in v) + ")"
        data = ",".join(_fmt(c) for c in v)
        parts.append(f'<circle class="vertex" data-vertex="{data}" cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#08519c"/>')
        parts.append(f'<text class="vertex-label" x="{x + 6:.2f}" y="{y - 6:.2f}" font-size="12">{escape(label)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_newton_svg(P, path):
    """Write :func:`newton_svg` of ``P`` to ``path`` and return the path."""
    text = newton_svg(P)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path
