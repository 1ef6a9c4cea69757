"""The 0/1 coefficient diagrams on the (stratum, degree) lattice.

Two families of lattice diagrams drive the cohomology bookkeeping:

* ``m_coeff(s, t, r, i)`` marks the cells carrying intermediate-extension
  cohomology.  The normative definition is a set of explicit inequalities
  plus a parity rule; a convex-hull description of the same region is kept
  as an independent oracle (exact integer cross products, no floats).

* ``n_coeff(s, t, r, i)`` marks the shriek-extension cells: all lattice
  points of the convex hull of (s+t-1,0), (s,0), (1,s-1), (t,s-1).

Superposition glues the per-block diagrams of a product local component,
remembering for every cell which blocks contribute and from which source
vertex the contribution descends.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .segments import CuspidalLabel

Point = tuple[int, int]


# ---------------------------------------------------------------------------
# normative inequalities
# ---------------------------------------------------------------------------


def m_coeff(s: int, t: int, r: int, i: int) -> int:
    """1 when (r, i) is a marked intermediate-extension cell, else 0."""
    _check_st(s, t)
    lo = max(1, s + t - 1 - 2 * (s - 1))
    if not (lo <= r <= s + t - 1):
        return 0
    if t <= r:
        bound = s + t - 1 - r
        parity = (s + t - 1 - r) % 2
    else:
        # here lo <= r <= t
        bound = s - 1 - (t - r)
        parity = (s - t - 1 + r) % 2
    return int(abs(i) <= bound and i % 2 == parity % 2)


def n_coeff(s: int, t: int, r: int, i: int) -> int:
    """1 when (r, i) lies in the closed shriek-extension hull, else 0."""
    _check_st(s, t)
    if i < 0:
        return 0
    verts = n_polygon_vertices(s, t)
    return int(hull_contains(verts, (r, i)))


def _check_st(s: int, t: int):
    if s < 1 or t < 1:
        raise ValueError("s and t must be >= 1")


def m_polygon_vertices(s: int, t: int) -> list[Point]:
    if s >= t:
        return [(s + t - 1, 0), (t, s - 1), (1, s - t), (1, t - s), (t, 1 - s)]
    return [(s + t - 1, 0), (t, s - 1), (t - s + 1, 0), (t, 1 - s)]


def n_polygon_vertices(s: int, t: int) -> list[Point]:
    return [(s + t - 1, 0), (s, 0), (1, s - 1), (t, s - 1)]


# ---------------------------------------------------------------------------
# exact convex-hull membership (the oracle side)
# ---------------------------------------------------------------------------


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Sequence[Point]) -> list[Point]:
    """Monotone-chain hull over integer points; handles degenerate input."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if not hull:  # all points collinear
        hull = [pts[0], pts[-1]]
    return hull


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    if _cross(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(
        a[1], b[1]
    )


def hull_contains(vertices: Sequence[Point], p: Point) -> bool:
    """Closed-hull membership of the integer point p, decided exactly."""
    hull = convex_hull(vertices)
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        return _on_segment(hull[0], hull[1], p)
    sign = 0
    for a, b in zip(hull, hull[1:] + hull[:1]):
        c = _cross(a, b, p)
        if c == 0:
            if _on_segment(a, b, p):
                return True
            return False
        if sign == 0:
            sign = 1 if c > 0 else -1
        elif (c > 0) != (sign > 0):
            return False
    return True


def hull_column_max_i(vertices: Sequence[Point], r: int) -> int | None:
    """Largest integer i with (r, i) in the hull, or None when the column is empty."""
    hull = convex_hull(vertices)
    if len(hull) >= 3:
        edges = list(zip(hull, hull[1:] + hull[:1]))
    elif len(hull) == 2:
        edges = [(hull[0], hull[1])]
    else:
        edges = []
    ys: list[Fraction] = [Fraction(v[1]) for v in hull if v[0] == r]
    for a, b in edges:
        if a[0] != b[0] and min(a[0], b[0]) <= r <= max(a[0], b[0]):
            ys.append(Fraction(a[1]) + Fraction(b[1] - a[1], b[0] - a[0]) * (r - a[0]))
    if not ys:
        return None
    top, bottom = max(ys), min(ys)
    candidate = top.numerator // top.denominator  # floor
    while candidate >= bottom and not hull_contains(vertices, (r, candidate)):
        candidate -= 1
    return candidate if candidate >= bottom - 1 and hull_contains(vertices, (r, candidate)) else None


def m_coeff_hull(s: int, t: int, r: int, i: int) -> int:
    """Hull-plus-parity evaluation of the intermediate diagram (oracle)."""
    _check_st(s, t)
    verts = m_polygon_vertices(s, t)
    if not hull_contains(verts, (r, i)):
        return 0
    top = hull_column_max_i(verts, r)
    if top is None:
        return 0
    return int((top - i) % 2 == 0)


# ---------------------------------------------------------------------------
# supports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagramSupport:
    kind: str  # "M" or "N"
    s: int
    t: int
    points: frozenset[Point]

    def __iter__(self):
        return iter(sorted(self.points))

    def __len__(self):
        return len(self.points)


def m_support(s: int, t: int) -> DiagramSupport:
    pts = {
        (r, i)
        for r in range(1, s + t)
        for i in range(-(s + t), s + t + 1)
        if m_coeff(s, t, r, i)
    }
    return DiagramSupport("M", s, t, frozenset(pts))


def n_support(s: int, t: int) -> DiagramSupport:
    pts = {
        (r, i)
        for r in range(1, s + t)
        for i in range(0, s + t + 1)
        if n_coeff(s, t, r, i)
    }
    return DiagramSupport("N", s, t, frozenset(pts))


# ---------------------------------------------------------------------------
# superposition of block diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalComponent:
    """A product of rectangle blocks Speh_s(St_{t_k}(pi_k)) with twist tags."""

    s: int
    blocks: tuple[tuple[CuspidalLabel, int, Fraction], ...]  # (cuspidal, t_k, xi_k)

    def __post_init__(self):
        if self.s < 1 or any(t < 1 for _, t, _ in self.blocks):
            raise ValueError("block sizes must be >= 1")


@dataclass(frozen=True)
class BlockContribution:
    block: int  # index into LocalComponent.blocks
    source: Point  # the vertex (s + t_k - 1, 0) the cell descends from
    from_higher: bool  # source stratum strictly deeper than the cell


def superpose(
    comp: LocalComponent, target: CuspidalLabel, kind: str
) -> dict[Point, list[BlockContribution]]:
    """Overlay the diagrams of all blocks inertially equivalent to target.

    Every marked cell lists the contributing block indices; each contribution
    back-references its source vertex (s + t_k - 1, 0), flagged when that
    source sits at a strictly deeper stratum.
    """
    if kind not in ("M", "N"):
        raise ValueError("kind must be 'M' or 'N'")
    support_fn = m_support if kind == "M" else n_support
    out: dict[Point, list[BlockContribution]] = {}
    for k, (cusp, t_k, _xi) in enumerate(comp.blocks):
        if cusp != target:
            continue
        src = (comp.s + t_k - 1, 0)
        for pt in support_fn(comp.s, t_k):
            out.setdefault(pt, []).append(
                BlockContribution(block=k, source=src, from_higher=src[0] > pt[0])
            )
    return {pt: contribs for pt, contribs in sorted(out.items())}


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _points_of(obj) -> list[Point]:
    if isinstance(obj, DiagramSupport):
        return sorted(obj.points)
    if isinstance(obj, dict):
        return sorted(obj.keys())
    raise TypeError("expected a DiagramSupport or a superposition mapping")


def render_ascii(obj) -> str:
    """Plot with r on the horizontal axis and i vertical (larger i on top)."""
    pts = _points_of(obj)
    if not pts:
        return "(empty diagram)\n  r ->\n"
    rs = [p[0] for p in pts]
    is_ = [p[1] for p in pts]
    r_min, r_max = min(rs + [1]), max(rs)
    i_min, i_max = min(is_ + [0]), max(is_ + [0])
    marks = set(pts)
    lines = []
    for i in range(i_max, i_min - 1, -1):
        row = "".join("# " if (r, i) in marks else ". " for r in range(r_min, r_max + 1))
        axis = "i=0 |" if i == 0 else f"{i:>3} |"
        lines.append(f"{axis} {row.rstrip()}")
    lines.append("     " + "--" * (r_max - r_min + 1))
    lines.append("      " + " ".join(str(r % 10) for r in range(r_min, r_max + 1)) + "   (r)")
    return "\n".join(lines) + "\n"


SVG_SCALE = 24


def render_svg(obj) -> str:
    """Hand-written SVG 1.1: one circle per marked cell, light axis lines."""
    pts = _points_of(obj)
    rs = [p[0] for p in pts] or [1]
    is_ = [p[1] for p in pts] or [0]
    r_min, r_max = min(rs + [1]), max(rs)
    i_min, i_max = min(is_ + [0]), max(is_ + [0])
    pad = SVG_SCALE

    def x(r: int) -> int:
        return pad + (r - r_min) * SVG_SCALE

    def y(i: int) -> int:
        return pad + (i_max - i) * SVG_SCALE

    width = x(r_max) + pad
    height = y(i_min) + pad
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}">',
        f'<line x1="{x(r_min)}" y1="{y(0)}" x2="{x(r_max)}" y2="{y(0)}" '
        f'stroke="#999" stroke-width="1"/>',
    ]
    for r in range(r_min, r_max + 1):
        parts.append(
            f'<text x="{x(r)}" y="{height - 4}" font-size="10" '
            f'text-anchor="middle">{r}</text>'
        )
    for r, i in pts:
        parts.append(f'<circle cx="{x(r)}" cy="{y(i)}" r="5" fill="#c22" data-r="{r}" data-i="{i}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_svg_panels(objs: Sequence) -> str:
    """Several diagrams side by side in one SVG (multi-panel figures)."""
    panels = [render_svg(obj) for obj in objs]
    import re

    sizes = []
    for svg in panels:
        m = re.search(r'width="(\d+)" height="(\d+)"', svg)
        sizes.append((int(m.group(1)), int(m.group(2))))
    total_w = sum(w for w, _ in sizes) + SVG_SCALE * (len(panels) - 1)
    total_h = max(h for _, h in sizes)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{total_w}" height="{total_h}">'
    ]
    x = 0
    for svg, (w, _) in zip(panels, sizes):
        body = svg.split(">", 1)[1].rsplit("</svg>", 1)[0]
        parts.append(f'<g transform="translate({x},0)">{body}</g>')
        x += w + SVG_SCALE
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def svg_point_set(svg_text: str) -> set[Point]:
    """Extract the marked cells back out of a rendered SVG (golden-file keys)."""
    import re

    pts = set()
    for m in re.finditer(r'data-r="(-?\d+)" data-i="(-?\d+)"', svg_text):
        pts.add((int(m.group(1)), int(m.group(2))))
    return pts


def render(obj, format: str = "ascii") -> str:
    if format == "ascii":
        return render_ascii(obj)
    if format == "svg":
        return render_svg(obj)
    raise ValueError(f"unknown format {format!r}")
