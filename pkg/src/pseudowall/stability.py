"""Stability conditions on a strict category.

A stability point θ is an exact rational vector.  It is evaluated on
catalog entries through a :class:`Space`: the ambient space uses dimension
vectors, the reduced space uses coordinates in a basis of the reduced
Grothendieck group (relations from strict exact sequences and [nX] = n[X]).
All sign tests are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np
import sympy

from .errors import InconsistencyError, PreconditionError
from .ffla import smith_invariants, smith_normal_form
from .strictcat import StrictCategory

OFF, INTERIOR, BOUNDARY = "off", "interior", "boundary"


def as_point(theta) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in theta)


def _integral(theta) -> list[int]:
    """Positive rescaling of θ to integers (sign tests are scale-invariant)."""
    den = lcm(*[Fraction(x).denominator for x in theta]) if len(theta) else 1
    return [int(Fraction(x) * den) for x in theta]


@dataclass(frozen=True)
class Space:
    """Linear coordinates ``vectors[idx]`` for every G-member of a catalog."""

    kind: str
    rank: int
    vectors: dict
    axis_labels: tuple[str, ...]

    def vec(self, idx: int):
        return self.vectors[idx]


def ambient_space(sc: StrictCategory) -> Space:
    cat = sc.catalog
    vecs = {i: tuple(cat[i].dim_vector) for i in sc.G}
    return Space("ambient", cat.quiver.n, vecs, tuple(f"e{i + 1}" for i in range(cat.quiver.n)))


@dataclass(frozen=True)
class WallDescriptor:
    label: int
    normal: tuple
    inequalities: tuple  # vectors v with θ·v <= 0 required


@dataclass(frozen=True)
class ClassesAt:
    P: frozenset
    Pbar: frozenset
    Q: frozenset
    Qbar: frozenset
    W: frozenset
    W0: frozenset


@dataclass(frozen=True)
class WallKind:
    kind: str  # none | thin | quasi-thin | thick
    generator: int | None = None


@dataclass(frozen=True)
class RegionFlags:
    in_U: bool
    in_Ubar: bool
    in_V: bool
    in_Vbar: bool
    boundary_wall: int | None = None


class Stability:
    """Stability computations for a strict category in a chosen space."""

    def __init__(self, sc: StrictCategory, space: Space | None = None):
        self.sc = sc
        self.cat = sc.catalog
        self.space = space or ambient_space(sc)
        self.G = sc.G
        self.zero = self.cat.zero()
        self._vecmat = np.array([list(self.space.vec(i)) for i in self.G], dtype=object).reshape(
            len(self.G), self.space.rank
        )
        self._row = {g: k for k, g in enumerate(self.G)}
        self.sq = {m: sorted(sc.nonzero_strict_quotient_classes(m)) for m in self.G}
        self.ss = {m: sorted(sc.nonzero_strict_sub_classes(m)) for m in self.G}
        self.proper_ss = {m: [c for c in self.ss[m] if c != m] for m in self.G}

    # evaluation ------------------------------------------------------------------
    def values(self, theta) -> dict:
        t = np.array(_integral(theta), dtype=object)
        if len(t) != self.space.rank:
            raise PreconditionError(f"θ has {len(t)} coordinates, space has rank {self.space.rank}")
        vals = self._vecmat.dot(t) if len(self.G) else []
        return {g: int(v) for g, v in zip(self.G, vals)}

    def evaluate(self, theta, m: int) -> Fraction:
        return sum((Fraction(a) * b for a, b in zip(theta, self.space.vec(m))), Fraction(0))

    def wall_descriptor(self, m: int) -> WallDescriptor:
        ineq = sorted({tuple(self.space.vec(c)) for c in self.ss[m]})
        return WallDescriptor(m, tuple(self.space.vec(m)), tuple(ineq))

    def wall_membership(self, theta, m: int, vals=None) -> str:
        if not self.cat[m].in_G:
            raise PreconditionError(f"{self.cat[m].name} is not in G")
        vals = vals or self.values(theta)
        if vals[m] != 0 or any(vals[c] > 0 for c in self.ss[m]):
            return OFF
        if any(vals[c] == 0 for c in self.proper_ss[m]):
            return BOUNDARY
        return INTERIOR

    def classes_at(self, theta, vals=None) -> ClassesAt:
        vals = vals or self.values(theta)
        P, Pb, Q, Qb, W, W0 = ({self.zero} for _ in range(6))
        for m in self.G:
            if m == self.zero:
                continue
            quots = [vals[c] for c in self.sq[m]]
            subs = [vals[c] for c in self.ss[m]]
            if all(v > 0 for v in quots):
                P.add(m)
            if all(v >= 0 for v in quots):
                Pb.add(m)
            if all(v < 0 for v in subs):
                Q.add(m)
            if all(v <= 0 for v in subs):
                Qb.add(m)
            if vals[m] == 0 and all(v <= 0 for v in subs):
                W.add(m)
                if all(vals[c] < 0 for c in self.proper_ss[m]):
                    W0.add(m)
        return ClassesAt(*(frozenset(s) for s in (P, Pb, Q, Qb, W, W0)))

    def P_key(self, theta) -> frozenset:
        vals = self.values(theta)
        out = {self.zero}
        for m in self.G:
            if m != self.zero and all(vals[c] > 0 for c in self.sq[m]):
                out.add(m)
        return frozenset(out)

    def on_some_wall(self, theta, vals=None) -> list[int]:
        vals = vals or self.values(theta)
        return [m for m in self.G if m != self.zero and vals[m] == 0
                and all(vals[c] <= 0 for c in self.ss[m])]

    def is_pseudo_brick(self, m: int) -> bool:
        return self.sc.is_pseudo_brick(m)

    def bricks(self) -> list[int]:
        return [m for m in self.G if m != self.zero and self.sc.is_pseudo_brick(m)]

    def wall_kind_at(self, theta) -> WallKind:
        c = self.classes_at(theta)
        if c.W == {self.zero}:
            return WallKind("none")
        simple = sorted(c.W0 - {self.zero}, key=lambda i: (self.cat[i].total_dim, i))
        if len(simple) == 1 and self.sc.filt_closure([simple[0]]) == set(c.W):
            return WallKind("thin", simple[0])
        base = set()
        for i in simple:
            mult = self.cat[i].mult
            nz = [j for j, k in enumerate(mult) if k]
            if len(nz) != 1:
                base = None
                break
            base.add(nz[0])
        if base is not None and len(base) == 1:
            (j,) = base
            return WallKind("quasi-thin", self.cat.entry_of_indecomposable(j))
        return WallKind("thick")

    def region_membership(self, m: int, theta) -> RegionFlags:
        if not self.cat[m].in_G:
            raise PreconditionError(f"{self.cat[m].name} is not in G")
        vals = self.values(theta)
        quots = [vals[c] for c in self.sq[m]]
        subs = [vals[c] for c in self.ss[m]]
        in_u = all(v > 0 for v in quots)
        in_ub = all(v >= 0 for v in quots)
        wall = None
        if in_ub and not in_u:
            for c in sorted(self.sq[m], key=lambda i: (self.cat[i].total_dim, i)):
                if vals[c] == 0 and self.wall_membership(theta, c, vals) != OFF:
                    wall = c
                    break
        return RegionFlags(in_u, in_ub, all(v < 0 for v in subs), all(v <= 0 for v in subs), wall)


# reduced K-theory --------------------------------------------------------------------


@dataclass(frozen=True)
class ReducedK0:
    generators: tuple[int, ...]
    relations: tuple[tuple[int, ...], ...]
    snf_diagonal: tuple[int, ...]
    rank: int
    torsion: tuple[int, ...]
    basis: tuple[int, ...]
    coordinates: dict
    psi: tuple[tuple[int, ...], ...]

    def space(self, cat) -> Space:
        return Space("reduced", self.rank, dict(self.coordinates),
                     tuple(f"[{cat[b].name}]" for b in self.basis))


def _rref_q(mat) -> tuple[dict[int, dict[int, Fraction]], list[int]]:
    """Sparse reduced row echelon form over Q, keyed by pivot column."""
    piv: dict[int, dict[int, Fraction]] = {}
    for raw in mat:
        r = {j: Fraction(int(v)) for j, v in enumerate(raw) if v}
        while r:
            c = min(r)
            if c not in piv:
                break
            f = r[c]
            for k, v in piv[c].items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if not r:
            continue
        c = min(r)
        lead = r[c]
        piv[c] = {k: v / lead for k, v in r.items()}
    for c in sorted(piv, reverse=True):
        row = piv[c]
        for d in sorted(piv):
            if d < c and c in piv[d]:
                f = piv[d][c]
                for k, v in row.items():
                    nv = piv[d].get(k, 0) - f * v
                    if nv:
                        piv[d][k] = nv
                    else:
                        piv[d].pop(k, None)
    return piv, sorted(piv)


def reduced_K0(sc: StrictCategory) -> ReducedK0:
    """Presentation of the reduced Grothendieck group of G over the catalog."""
    cat = sc.catalog
    gens = [g for g in sc.G]
    # simplest generators last so that the free columns of the RREF pick them
    order = sorted(gens, key=lambda i: (-cat[i].total_dim, tuple(-x for x in cat[i].dim_vector), -i))
    col = {g: k for k, g in enumerate(order)}
    rels = set()
    for b in gens:
        lat = cat.lattice(b)
        for a in sc.strict_subobject_indices(b):
            row = [0] * len(order)
            row[col[lat.cls(a)]] += 1
            row[col[b]] -= 1
            row[col[lat.cls(lat.top, a)]] += 1
            if any(row):
                rels.add(tuple(row))
    for x in gens:
        mult = cat[x].mult
        if not any(mult):
            continue
        n = 2
        while True:
            nm = tuple(n * k for k in mult)
            if nm not in cat._by_mult:
                break
            row = [0] * len(order)
            row[col[cat.index_of_mult(nm)]] += 1
            row[col[x]] -= n
            rels.add(tuple(row))
            n += 1
    rels = sorted(rels)
    z = cat.zero()
    zrow = [0] * len(order)
    zrow[col[z]] = 1
    rels.append(tuple(zrow))
    mat = np.array(rels, dtype=object).reshape(len(rels), len(order))
    nonzero = smith_invariants(mat)
    diag = nonzero
    rank = len(order) - len(nonzero)
    torsion = tuple(d for d in nonzero if d > 1)
    red, piv = _rref_q(mat)
    pivset = set(piv)
    free = [k for k in range(len(order)) if k not in pivset]
    basis = [order[k] for k in free]
    coords = {}
    for k, g in enumerate(order):
        v = [Fraction(0)] * len(free)
        if k in free:
            v[free.index(k)] = Fraction(1)
        else:
            for fi, fk in enumerate(free):
                v[fi] = -red[k].get(fk, Fraction(0))
        if any(x.denominator != 1 for x in v):
            raise InconsistencyError(f"generator {cat[g].name} has non-integral reduced coordinates")
        coords[g] = tuple(int(x) for x in v)
    psi = tuple(tuple(cat[b].dim_vector) for b in basis)
    for g in gens:
        img = tuple(sum(c * psi[k][i] for k, c in enumerate(coords[g])) for i in range(cat.quiver.n))
        if img != tuple(cat[g].dim_vector):
            raise InconsistencyError(f"ψ is not well defined on {cat[g].name}")
    return ReducedK0(tuple(order), tuple(rels), tuple(diag), rank, torsion, tuple(basis), coords, psi)


def psi_is_injective(k0: ReducedK0) -> bool:
    m = sympy.Matrix(list(k0.psi)) if k0.psi else sympy.zeros(0, 0)
    return m.rank() == k0.rank


def psi_is_surjective(k0: ReducedK0, n: int) -> bool:
    if not k0.psi:
        return n == 0
    diag, _ = smith_normal_form(np.array(k0.psi, dtype=object))
    return len([d for d in diag if d]) == n and all(d == 1 for d in diag if d)
