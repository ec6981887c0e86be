"""SVG diagrams of pseudo-walls and pseudo-chambers.

Rank 2 spaces are drawn in the plane: each wall is a union of rays from the
origin.  Rank 3 spaces are drawn by intersecting walls with the unit sphere
and projecting stereographically from a pole.  Geometry is exact up to the
final float conversion, which is formatted to three decimals so that output
is byte-stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

from .chambers import ChamberComplex, _cross, _dot
from .errors import PreconditionError

SIZE = 480
RADIUS = 200
DEFAULT_SEGMENTS = 128
STEREO_LIMIT = 4.0


@dataclass(frozen=True)
class DiagramSpec:
    space: str = "ambient"  # ambient | reduced
    projection: str = "auto"  # auto | rank2-planar | rank3-stereographic
    pole: tuple | None = None  # default -(1, ..., 1)
    segments: int = DEFAULT_SEGMENTS
    output: str | None = None


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def _names(cc: ChamberComplex, idxs) -> str:
    cat = cc.st.cat
    return ", ".join(cat[i].name for i in sorted(idxs, key=lambda i: (cat[i].total_dim, i)))


def wall_groups(cc: ChamberComplex):
    """Wall pieces grouped by plane: (plane normal, facets on walls, joined labels)."""
    arr = cc.arrangement
    groups: dict[int, list] = {}
    labels: dict[int, set] = {}
    for f in arr.facets:
        walls = cc.wall_labels_at(f.sample) or tuple(cc.walls_at(f.sample))
        if not walls:
            continue
        groups.setdefault(f.plane, []).append(f)
        labels.setdefault(f.plane, set()).update(walls)
    return [(arr.normals[p], groups[p], labels[p]) for p in sorted(groups)]


def _label_text(cc, labels) -> str:
    cat = cc.st.cat
    return " = ".join(f"D({cat[i].name})" for i in sorted(labels, key=lambda i: (cat[i].total_dim, i)))


def _header(title: str) -> list[str]:
    h = SIZE // 2
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="{-h} {-h} {SIZE} {SIZE}">',
        f"<title>{escape(title)}</title>",
        f'<circle cx="0" cy="0" r="{RADIUS}" fill="none" stroke="#cccccc" stroke-width="1"/>',
    ]


def _chamber_labels(cc, records, place) -> list[str]:
    out = []
    for r in records:
        x, y = place(r.sample)
        out.append(
            f'<text class="chamber" x="{_f(x)}" y="{_f(y)}" font-size="11" text-anchor="middle">'
            f"<title>{escape(_names(cc, r.P))}</title>P{r.id}</text>"
        )
    return out


def render_rank2(cc: ChamberComplex, title: str = "") -> str:
    if cc.st.space.rank != 2:
        raise PreconditionError(f"planar rendering needs rank 2, got {cc.st.space.rank}")
    records = cc.enumerate()
    lines = _header(title or "pseudo-walls")

    def screen(v, scale):
        n = math.hypot(float(v[0]), float(v[1])) or 1.0
        return scale * float(v[0]) / n, -scale * float(v[1]) / n

    for normal, facets, labels in wall_groups(cc):
        text = _label_text(cc, labels)
        lines.append(f'<g class="wall" data-normal="{",".join(str(x) for x in normal)}">')
        for f in facets:
            x, y = screen(f.sample, RADIUS)
            lines.append(f'<line x1="0" y1="0" x2="{_f(x)}" y2="{_f(y)}" stroke="black" stroke-width="2"/>')
        x, y = screen(facets[0].sample, RADIUS + 14)
        lines.append(f'<text x="{_f(x)}" y="{_f(y)}" font-size="10" text-anchor="middle">{escape(text)}</text>')
        lines.append("</g>")
    lines += _chamber_labels(cc, records, lambda s: screen(s, 0.6 * RADIUS))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _unit(v):
    n = math.sqrt(sum(float(x) ** 2 for x in v))
    return tuple(float(x) / n for x in v)


class Stereo:
    """Stereographic projection of the unit sphere from ``pole``."""

    def __init__(self, pole):
        self.p = _unit(pole)
        seed = (1, 0, 0) if abs(self.p[0]) < 0.9 else (0, 1, 0)
        self.e1 = _unit(_cross(self.p, seed))
        self.e2 = _unit(_cross(self.p, self.e1))

    def __call__(self, v):
        u = _unit(v)
        d = 1.0 - _dot(u, self.p)
        x, y = _dot(u, self.e1) / d, _dot(u, self.e2) / d
        r = math.hypot(x, y)
        if r > STEREO_LIMIT:
            x, y = x * STEREO_LIMIT / r, y * STEREO_LIMIT / r
        s = RADIUS / 2.0
        return s * x, -s * y


def _arc(a, b, mid, segments: int):
    """Points along the great-circle arc from a through mid to b."""
    ua, ub, um = _unit(a), _unit(b), _unit(mid)
    half = max(1, segments // 2)
    pts = []
    for p, q, last in ((ua, um, False), (um, ub, True)):
        ang = math.acos(max(-1.0, min(1.0, _dot(p, q))))
        s = math.sin(ang)
        for k in range(half + last):
            t = k / half
            if s < 1e-12:
                w1, w2 = 1.0 - t, t
            else:
                w1, w2 = math.sin((1 - t) * ang) / s, math.sin(t * ang) / s
            pts.append(tuple(w1 * x + w2 * y for x, y in zip(p, q)))
    return pts


def render_rank3_stereo(cc: ChamberComplex, pole=None, segments: int = DEFAULT_SEGMENTS,
                        title: str = "") -> str:
    if cc.st.space.rank != 3:
        raise PreconditionError(f"stereographic rendering needs rank 3, got {cc.st.space.rank}")
    pole = tuple(Fraction(x) for x in (pole or (-1, -1, -1)))
    if not any(pole):
        raise PreconditionError("the pole must be nonzero")
    if cc.walls_at(pole):
        raise PreconditionError(
            f"pole {tuple(str(x) for x in pole)} lies on a wall; choose a generic pole such as (-2,-3,-5)")
    records = cc.enumerate()
    proj = Stereo(pole)
    lines = _header(title or "pseudo-walls (stereographic)")
    for normal, facets, labels in wall_groups(cc):
        text = _label_text(cc, labels)
        lines.append(f'<g class="wall" data-normal="{",".join(str(x) for x in normal)}">')
        for f in facets:
            if f.ends:
                a, b = f.ends
                pts = _arc(a, b, f.sample, segments)
            elif f is not facets[0]:
                continue
            else:
                # the whole great circle of a plane meeting no other plane
                u = f.sample
                w = _cross(normal, u)
                neg = tuple(-x for x in u)
                pts = _arc(u, neg, w, segments) + _arc(neg, u, tuple(-x for x in w), segments)[1:]
            xy = [proj(p) for p in pts]
            d = " ".join(f"{_f(x)},{_f(y)}" for x, y in xy)
            lines.append(f'<polyline points="{d}" fill="none" stroke="black" stroke-width="1.5"/>')
        x, y = proj(facets[0].sample)
        lines.append(f'<text x="{_f(x)}" y="{_f(y - 6)}" font-size="9" text-anchor="middle">{escape(text)}</text>')
        lines.append("</g>")
    lines += _chamber_labels(cc, records, proj)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render(model, spec: DiagramSpec) -> str:
    reduced = spec.space == "reduced"
    if spec.space not in ("ambient", "reduced"):
        raise PreconditionError(f"unknown space {spec.space!r}")
    cc = model.chambers(reduced)
    rank = cc.st.space.rank
    proj = spec.projection
    if proj == "auto":
        proj = {2: "rank2-planar", 3: "rank3-stereographic"}.get(rank, "")
    title = f"{spec.space} space, rank {rank}"
    if proj == "rank2-planar":
        return render_rank2(cc, title)
    if proj == "rank3-stereographic":
        return render_rank3_stereo(cc, spec.pole, spec.segments, title)
    raise PreconditionError(f"no projection for rank {rank} ({spec.projection})")


def count_wall_curves(svg: str) -> int:
    return svg.count('<g class="wall"')


def count_regions(svg: str) -> int:
    return svg.count('<text class="chamber"')
