"""Exact pseudo-chamber enumeration in rank at most 3.

The hyperplanes of all G-members cut the space into open faces.  Every
pseudo-wall is a union of closed faces, so each face is either inside the
wall union or outside it.  Full-dimensional cells are identified by sign
vectors; two cells sharing a facet that lies off every wall belong to the
same pseudo-chamber.  Nothing here uses floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from math import gcd

from .errors import InconsistencyError, PreconditionError, UnsupportedRankError
from .stability import OFF, Stability, _integral

MAX_RANK = 3


def _primitive(v) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in v)
    w = [int(x) // g for x in v]
    for x in w:
        if x:
            if x < 0:
                w = [-y for y in w]
            break
    return tuple(w)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Facet:
    plane: int
    sample: tuple[int, ...]
    extra: tuple[tuple[int, ...], ...] = ()
    ends: tuple[tuple[int, ...], ...] = ()  # bounding directions in rank 3


@dataclass
class Arrangement:
    """Central arrangement of hyperplanes with one exact sample per face."""

    rank: int
    normals: list[tuple[int, ...]]
    facets: list[Facet] = field(default_factory=list)

    @classmethod
    def build(cls, rank: int, vectors) -> "Arrangement":
        if rank > MAX_RANK:
            raise UnsupportedRankError(f"exact enumeration supports rank <= {MAX_RANK}, got {rank}")
        normals = sorted({_primitive(v) for v in vectors if any(v)})
        arr = cls(rank, normals)
        arr.facets = arr._facets()
        return arr

    def _facets(self) -> list[Facet]:
        n, hs = self.rank, self.normals
        if not hs:
            return []
        if n == 1:
            return [Facet(0, (0,))]
        if n == 2:
            out = []
            for i, (a, b) in enumerate(hs):
                out.append(Facet(i, (-b, a)))
                out.append(Facet(i, (b, -a)))
            return out
        out = []
        for i, v in enumerate(hs):
            dirs = set()
            for j, w in enumerate(hs):
                if j != i:
                    c = _primitive(_cross(v, w))
                    if any(c):
                        dirs.add(c)
                        dirs.add(tuple(-x for x in c))
            if not dirs:
                b1 = _in_plane_vector(v)
                b2 = _primitive(_cross(v, b1))
                out += [Facet(i, b1), Facet(i, tuple(-x for x in b1)), Facet(i, b2)]
                continue
            ordered = _sort_around(v, sorted(dirs))
            for k, a in enumerate(ordered):
                b = ordered[(k + 1) % len(ordered)]
                if any(_cross(a, b)):
                    s = tuple(x + y for x, y in zip(a, b))
                    extra = (tuple(2 * x + y for x, y in zip(a, b)), tuple(x + 2 * y for x, y in zip(a, b)))
                else:
                    s = _primitive(_cross(v, a))
                    extra = (tuple(2 * x + y for x, y in zip(s, a)), tuple(2 * x - y for x, y in zip(s, a)))
                out.append(Facet(i, s, extra, (a, b)))
        return out

    def sign_vector(self, theta) -> tuple[int, ...]:
        t = _integral(theta)
        return tuple(_sign(_dot(t, h)) for h in self.normals)

    def offset(self, facet: Facet, side: int) -> tuple[int, ...]:
        """Integral point k·e + side·v just off the facet plane, inside the adjacent cell."""
        e, v = facet.sample, self.normals[facet.plane]
        k = 1
        for j, w in enumerate(self.normals):
            if j == facet.plane:
                continue
            ew, vw = abs(_dot(e, w)), abs(_dot(v, w))
            if ew == 0:
                continue
            k = max(k, vw // ew + 1)
        return tuple(k * x + side * y for x, y in zip(e, v))


def _in_plane_vector(v) -> tuple[int, ...]:
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        c = _cross(v, e)
        if any(c):
            return _primitive(c)
    raise PreconditionError("zero normal")


def _sort_around(v, dirs):
    b1 = dirs[0]
    b2 = _cross(v, b1)

    def coords(d):
        return _dot(d, b1), _dot(d, b2)

    def half(d):
        x, y = coords(d)
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    def cmp(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return ha - hb
        ax, ay = coords(a)
        bx, by = coords(b)
        c = ax * by - ay * bx
        return -1 if c > 0 else (1 if c < 0 else 0)

    return sorted(dirs, key=cmp_to_key(cmp))


@dataclass(frozen=True)
class ChamberRecord:
    id: int
    kind: str  # open chamber | green component | red component
    sample: tuple
    P: frozenset
    Q: frozenset
    cells: tuple = ()
    samples: tuple = ()
    neighbors: tuple = ()  # (record id, wall labels)
    convex: bool = True
    infinitesimal: bool = False


class ChamberComplex:
    """Pseudo-chambers of a stability space."""

    def __init__(self, st: Stability, labels=None):
        self.st = st
        # optional restriction of the wall union to the walls of these labels
        self.labels = None if labels is None else frozenset(labels)
        if st.space.rank > MAX_RANK:
            raise UnsupportedRankError(f"exact enumeration supports rank <= {MAX_RANK}, got {st.space.rank}")
        self.zero = st.zero
        vecs = [st.space.vec(m) for m in st.G if m != st.zero]
        self.arrangement = Arrangement.build(st.space.rank, vecs)
        self._records: list[ChamberRecord] | None = None
        self.certificate: dict[str, bool] = {}

    # walls ----------------------------------------------------------------------------
    def walls_at(self, theta) -> list[int]:
        walls = self.st.on_some_wall(theta)
        if self.labels is not None:
            walls = [m for m in walls if m in self.labels]
        return walls

    def wall_labels_at(self, theta) -> tuple[int, ...]:
        """Pseudo-bricks whose wall interior contains θ."""
        vals = self.st.values(theta)
        return tuple(m for m in self.walls_at(theta)
                     if all(vals[c] < 0 for c in self.st.proper_ss[m]))

    # chambers -------------------------------------------------------------------------
    def enumerate(self) -> list[ChamberRecord]:
        if self._records is not None:
            return self._records
        arr, st = self.arrangement, self.st
        rank = st.space.rank
        cells: dict[tuple, list] = {}
        edges = []
        facets_constant = True
        if not arr.normals:
            pt = tuple([1] * rank)
            cells[()] = [pt]
        for f in arr.facets:
            walls = self.walls_at(f.sample)
            for extra in f.extra:
                if bool(self.walls_at(extra)) != bool(walls):
                    facets_constant = False
            keys = []
            for side in (1, -1):
                pt = arr.offset(f, side)
                key = arr.sign_vector(pt)
                if 0 in key:
                    raise InconsistencyError("offset sample landed on a hyperplane")
                cells.setdefault(key, []).append(pt)
                keys.append(key)
            edges.append((keys[0], keys[1], f, tuple(walls)))
        order = sorted(cells)
        parent = {k: k for k in order}

        def find(k):
            while parent[k] != k:
                parent[k] = parent[parent[k]]
                k = parent[k]
            return k

        for a, b, f, walls in edges:
            if not walls:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups: dict[tuple, list] = {}
        for k in order:
            groups.setdefault(find(k), []).append(k)
        prelim = []
        p_constant = True
        for root, members in groups.items():
            samples = []
            for k in members:
                for pt in cells[k]:
                    if pt not in samples:
                        samples.append(pt)
            sample = min(cells[members[0]], key=lambda p: (sum(abs(x) for x in p), p))
            P = st.P_key(sample)
            Q = st.classes_at(sample).Q
            if any(st.P_key(pt) != P for pt in samples):
                p_constant = False
            prelim.append((root, members, sample, samples, P, Q))
        prelim.sort(key=lambda r: (len(r[4]), sorted(r[4]), r[2]))
        rid = {r[0]: n for n, r in enumerate(prelim)}
        nbrs: dict[int, dict[int, set]] = {n: {} for n in range(len(prelim))}
        for a, b, f, walls in edges:
            ia, ib = rid[find(a)], rid[find(b)]
            if ia != ib:
                labels = self.wall_labels_at(f.sample)
                nbrs[ia].setdefault(ib, set()).update(labels)
                nbrs[ib].setdefault(ia, set()).update(labels)
        records = []
        for n, (root, members, sample, samples, P, Q) in enumerate(prelim):
            convex = all(st.P_key(tuple(Fraction(x + y, 2) for x, y in zip(p, q))) == P
                         for i, p in enumerate(samples) for q in samples[i + 1:])
            nb = tuple((m, tuple(sorted(ls))) for m, ls in sorted(nbrs[n].items()))
            records.append(ChamberRecord(n, "open chamber", sample, P, Q, tuple(members),
                                         tuple(samples), nb, convex))
        ps = [r.P for r in records]
        self.certificate = {
            "facets_constant": facets_constant,
            "P_constant": p_constant,
            "P_distinct": len(set(ps)) == len(ps),
            "convex": all(r.convex for r in records),
        }
        self._records = records
        return records

    def chamber_of(self, theta) -> ChamberRecord | None:
        if self.walls_at(theta):
            return None
        P = self.st.P_key(theta)
        for r in self.enumerate():
            if r.P == P:
                return r
        raise InconsistencyError("point off the walls matches no enumerated chamber")

    # paths ------------------------------------------------------------------------------
    def crossings(self, theta0, theta1) -> list[tuple[Fraction, int]]:
        """Transversal wall crossings strictly inside the segment, ordered by
        time, then total dimension, then catalog index."""
        st = self.st
        t0 = [Fraction(x) for x in theta0]
        t1 = [Fraction(x) for x in theta1]
        d = [b - a for a, b in zip(t0, t1)]
        out = []
        for m in st.G:
            if m == st.zero:
                continue
            v = st.space.vec(m)
            a, b = _dot(t0, v), _dot(t1, v)
            if a == b:
                continue
            t = a / (a - b)
            if 0 < t < 1:
                pt = [x + t * y for x, y in zip(t0, d)]
                if st.wall_membership(pt, m) != OFF:
                    out.append((t, st.cat[m].total_dim, m))
        return [(t, m) for t, _, m in sorted(out)]

    def same_chamber(self, theta0, theta1) -> tuple[bool, int | None]:
        """Exact test of whether P agrees at both ends of the segment.

        Returns ``(flag, witness)``; the witness is the first wall crossed
        transversely, or an endpoint wall whose orientation fails.
        """
        st = self.st
        cr = self.crossings(theta0, theta1)
        if cr:
            return False, cr[0][1]
        t0 = [Fraction(x) for x in theta0]
        d = [Fraction(b) - a for a, b in zip(t0, theta1)]
        for m in st.on_some_wall(t0):
            if _dot(d, st.space.vec(m)) > 0:
                return False, m
        for m in st.on_some_wall(theta1):
            if _dot(d, st.space.vec(m)) < 0:
                return False, m
        return True, None

    # wall sides ---------------------------------------------------------------------------
    def virtual_side(self, theta) -> str | None:
        """'green', 'red' or None for a point off the walls (perturbation along (1,...,1))."""
        st = self.st
        if self.walls_at(theta):
            return None
        t = [Fraction(x) for x in theta]
        eta = [1] * st.space.rank
        out = []
        for side, s in (("green", 1), ("red", -1)):
            for m in st.G:
                if m == st.zero:
                    continue
                v = st.space.vec(m)
                if _dot(t, v) != 0 or _dot(eta, v) != 0:
                    continue

                def lex(w):
                    a = _dot(t, w)
                    return _sign(a) if a else _sign(s * _dot(eta, w))

                if all(lex(st.space.vec(c)) <= 0 for c in st.ss[m]):
                    out.append(side)
                    break
        return out[0] if len(out) == 1 else ("both" if out else None)

    def side_components(self, theta) -> "SideComponents":
        """Green and red component records of a wall point, with the
        minimal-extension certificate on thin and quasi-thin walls."""
        st = self.st
        on_wall = bool(self.walls_at(theta))
        virtual = None if on_wall else self.virtual_side(theta)
        if not on_wall and virtual is None:
            raise PreconditionError("θ lies on no pseudo-wall")
        c = st.classes_at(theta)
        open_ps = {r.P for r in self.enumerate()}
        green = ChamberRecord(-1, "green component", tuple(theta), c.P, c.Q,
                              infinitesimal=c.P not in open_ps)
        red = ChamberRecord(-1, "red component", tuple(theta), c.Pbar, c.Q,
                            infinitesimal=c.Pbar not in open_ps)
        kind = st.wall_kind_at(theta)
        ext = generated = minimal = None
        if kind.kind in ("thin", "quasi-thin"):
            ext = kind.generator
            gens = set(c.W0) - {st.zero}
            generated = st.sc.filt_closure(set(c.P) | gens) == set(c.Pbar)
            if kind.kind == "thin":
                # any pseudo-torsion class strictly above P contains some y of P̄ - P
                minimal = all(st.sc.filt_closure(set(c.P) | {y}) == set(c.Pbar)
                              for y in sorted(set(c.Pbar) - set(c.P)))
        return SideComponents(green, red, kind.kind, ext, generated, minimal, virtual)


@dataclass(frozen=True)
class SideComponents:
    green: ChamberRecord
    red: ChamberRecord
    wall_kind: str
    min_extension: int | None
    generated: bool | None  # P̄ = Filt(P ∪ generators of W)
    minimal: bool | None  # no pseudo-torsion class strictly between P and P̄
    virtual: str | None = None


def enumerate_chambers(st: Stability) -> list[ChamberRecord]:
    return ChamberComplex(st).enumerate()
