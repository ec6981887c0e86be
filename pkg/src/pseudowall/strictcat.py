"""The strict category of a torsion class G = ⊥X.

A submodule A ⊆ B (with B in G) is a *strict subobject* when A lies in G
and A ∩ B' lies in G for every submodule B' of B that lies in G.  All
strictness questions about subquotients of one module are answered inside
its submodule lattice: the submodules of V/U are the lattice interval
[U, V], so relative strictness never needs a new lattice.

Existence of a nonzero strict morphism X → Y is decided structurally: a
strict morphism factors as a strict quotient of X isomorphic to a strict
subobject of Y, and conversely any such isomorphism gives one.  An
independent exhaustive search over Hom(X, Y) is available for
cross-checking on small Hom spaces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import Catalog, Lattice, TorsionSpec
from .errors import CapacityError, InconsistencyError, PreconditionError
from .ffla import Subspace, _all_vectors
from .quiver import (
    RepMorphism,
    Representation,
    hom_basis,
    induced_map,
    linear_combination,
)

HOM_EXHAUSTIVE_CAP = 6

__all__ = ["TorsionSpec", "StrictCategory", "Ghost", "MainDiagram", "StrictRelation"]


@dataclass(frozen=True)
class StrictRelation:
    is_subobject: bool
    is_strict: bool
    witness: Subspace | None = None


@dataclass(frozen=True)
class Ghost:
    missing: int
    middle: int
    quotient: int
    embedding: Subspace


@dataclass
class MainDiagram:
    """Nine subquotients of B; ``grid[r][c]`` with rows (top, middle,
    bottom) and columns (A-column, B-column, C-column)."""

    lattice: Lattice
    cells: list[list[tuple[int, int]]]
    grid: list[list[Representation]] | None
    horizontal: list[list[RepMorphism]] | None
    vertical: list[list[RepMorphism]] | None
    in_G: list[list[bool]]
    horizontal_strict: list[list[bool]]
    vertical_strict: list[list[bool]]

    def all_strict(self) -> bool:
        return all(all(r) for r in self.horizontal_strict + self.vertical_strict)

    def all_in_G(self) -> bool:
        return all(all(r) for r in self.in_G)


# lattice-level strictness -----------------------------------------------------


def strict_in(lat: Lattice, a: int, v: int | None = None, u: int = 0):
    """Whether a/u is a strict subobject of v/u; returns (flag, witness)."""
    v = lat.top if v is None else v
    if not (lat.leq(u, a) and lat.leq(a, v)):
        raise PreconditionError("not a submodule of the given subquotient")
    if not lat.in_G(a, u):
        return False, None
    for x in lat.interval(u, v):
        if lat.in_G(x, u) and not lat.in_G(lat.meet(a, x), u):
            return False, x
    return True, None


def strict_flags(lat: Lattice, v: int | None = None, u: int = 0) -> list[int]:
    """Lattice indices a in [u, v] with a/u strict in v/u, cached."""
    v = lat.top if v is None else v
    memo = lat.__dict__.setdefault("_strict", {})
    if (v, u) not in memo:
        inter = lat.interval(u, v)
        gx = [x for x in inter if lat.in_G(x, u)]
        out = []
        for a in gx:
            if all(lat.in_G(lat.meet(a, x), u) for x in gx):
                out.append(a)
        memo[(v, u)] = out
    return memo[(v, u)]


def strict_set(lat: Lattice, v: int | None = None, u: int = 0) -> frozenset[int]:
    v = lat.top if v is None else v
    memo = lat.__dict__.setdefault("_strict_set", {})
    if (v, u) not in memo:
        memo[(v, u)] = frozenset(strict_flags(lat, v, u))
    return memo[(v, u)]


def is_strict_induced(lat: Lattice, src: tuple[int, int], dst: tuple[int, int]) -> bool:
    """Strictness of the map v/u → v'/u' induced by the identity of B."""
    (v, u), (v2, u2) = src, dst
    if not (lat.leq(v, v2) and lat.leq(u, u2)):
        raise PreconditionError("identity does not induce a map between these subquotients")
    ker = lat.meet(v, u2)  # (v ∩ u')/u
    img = lat.join(v, u2)  # (v + u')/u'
    if not lat.in_G(ker, u):
        return False
    return ker in strict_set(lat, v, u) and img in strict_set(lat, v2, u2)


class StrictCategory:
    """Strict-category computations over a catalog.

    Class sets are Python sets of catalog indices (closed under iso by
    construction, since each iso class has exactly one entry).
    """

    def __init__(self, catalog: Catalog):
        self.catalog = catalog
        self._lat_by_key: dict = {}
        self._sq: dict[int, frozenset[int]] = {}
        self._ss: dict[int, frozenset[int]] = {}

    # basic --------------------------------------------------------------------
    @property
    def G(self) -> list[int]:
        return self.catalog.G_members()

    def in_torsion_class(self, m) -> bool:
        if isinstance(m, (int, np.integer)):
            return self.catalog[int(m)].in_G
        return self.catalog.in_G(m)

    def lattice_of(self, m) -> Lattice:
        if isinstance(m, (int, np.integer)):
            return self.catalog.lattice(int(m))
        key = m.key
        if key not in self._lat_by_key:
            idx = self.catalog._by_dims.get(m.dims, [])
            for i in idx:
                if self.catalog[i].rep.key == key:
                    self._lat_by_key[key] = self.catalog.lattice(i)
                    break
            else:
                self._lat_by_key[key] = Lattice(self.catalog, m)
        return self._lat_by_key[key]

    def _require_G(self, idx: int):
        if not self.catalog[idx].in_G:
            raise PreconditionError(f"{self.catalog[idx].name} does not lie in G")

    # strict subobjects -----------------------------------------------------------
    def is_strict_subobject(self, b, a: Subspace) -> StrictRelation:
        """Strictness of the submodule ``a`` of ``b`` (an index or representation)."""
        lat = self.lattice_of(b)
        if a.key not in lat.index:
            raise PreconditionError("not a submodule")
        ai = lat.find(a)
        if not lat.in_G(ai):
            return StrictRelation(False, False)
        flag, wit = strict_in(lat, ai)
        return StrictRelation(True, flag, None if wit is None else lat.subs[wit])

    def strict_subobject_indices(self, idx: int) -> list[int]:
        self._require_G(idx)
        return strict_flags(self.catalog.lattice(idx))

    def strict_subobjects(self, idx: int) -> list[int]:
        """Catalog classes of strict subobjects (sorted, without repetition)."""
        lat = self.catalog.lattice(idx)
        return sorted({lat.cls(a) for a in self.strict_subobject_indices(idx)})

    def strict_quotients(self, idx: int) -> list[int]:
        lat = self.catalog.lattice(idx)
        return sorted({lat.cls(lat.top, a) for a in self.strict_subobject_indices(idx)})

    def nonzero_strict_quotient_classes(self, idx: int) -> frozenset[int]:
        if idx not in self._sq:
            z = self.catalog.zero()
            self._sq[idx] = frozenset(c for c in self.strict_quotients(idx) if c != z)
        return self._sq[idx]

    def nonzero_strict_sub_classes(self, idx: int) -> frozenset[int]:
        if idx not in self._ss:
            z = self.catalog.zero()
            self._ss[idx] = frozenset(c for c in self.strict_subobjects(idx) if c != z)
        return self._ss[idx]

    def strict_subquotients(self, idx: int, how: str = "c") -> list[int]:
        """Strict subquotient classes by one of three characterizations:
        (a) strict quotients of strict subobjects, (b) strict subobjects of
        strict quotients, (c) B/A for strict subobjects A ⊆ B of M."""
        lat = self.catalog.lattice(idx)
        strict = self.strict_subobject_indices(idx)
        out = set()
        if how == "a":
            for b in strict:
                for a in strict_flags(lat, b, 0):
                    out.add(lat.cls(b, a))
        elif how == "b":
            for a in strict:
                for b in strict_flags(lat, lat.top, a):
                    out.add(lat.cls(b, a))
        elif how == "c":
            for a in strict:
                for b in strict:
                    if lat.leq(a, b):
                        out.add(lat.cls(b, a))
        else:
            raise PreconditionError(f"unknown characterization {how!r}")
        return sorted(out)

    def strict_sequences(self, a_cls: int, b_idx: int, c_cls: int) -> list[tuple[int, bool]]:
        """All embeddings A ↣ B with quotient C, each with its strictness flag."""
        lat = self.catalog.lattice(b_idx)
        strict = set(strict_flags(lat)) if self.catalog[b_idx].in_G else set()
        out = []
        for x in range(len(lat)):
            if lat.dim(x) != self.catalog[a_cls].total_dim:
                continue
            if lat.cls(x) == a_cls and lat.cls(lat.top, x) == c_cls:
                out.append((x, x in strict))
        return out

    # morphisms ---------------------------------------------------------------------
    def is_strict_morphism(self, f: RepMorphism) -> bool:
        src, dst = self.lattice_of(f.source), self.lattice_of(f.target)
        k = src.find(f.kernel_sub())
        i = dst.find(f.image_sub())
        if not src.in_G(k):
            return False
        return k in strict_flags(src) and i in strict_flags(dst)

    def strict_hom_exists(self, x: int, y: int) -> bool:
        """Whether a nonzero strict morphism x → y exists (structural test)."""
        return bool(self.nonzero_strict_quotient_classes(x) & self.nonzero_strict_sub_classes(y))

    def strict_hom_exists_exhaustive(self, x: int, y: int, cap: int = HOM_EXHAUSTIVE_CAP) -> bool:
        """Independent check: test every nonzero element of Hom(x, y)."""
        basis = hom_basis(self.catalog[x].rep, self.catalog[y].rep)
        if not basis:
            return False
        if len(basis) > cap:
            raise CapacityError(
                f"Hom({self.catalog[x].name}, {self.catalog[y].name}) has dimension {len(basis)} > cap {cap}"
            )
        for c in _all_vectors(self.catalog.field.q, len(basis))[1:]:
            if self.is_strict_morphism(linear_combination(basis, c)):
                return True
        return False

    def is_pseudo_brick(self, idx: int) -> bool:
        """Every nonzero strict endomorphism is an isomorphism.

        A strict non-iso endomorphism has a strict kernel K with 0 ≠ K ≠ B
        and image ≅ B/K strict in B.
        """
        self._require_G(idx)
        lat = self.catalog.lattice(idx)
        subs = self.nonzero_strict_sub_classes(idx)
        for k in self.strict_subobject_indices(idx):
            if k == lat.bottom or k == lat.top:
                continue
            if lat.cls(lat.top, k) in subs:
                return False
        return self.catalog[idx].total_dim > 0

    # class sets ----------------------------------------------------------------------
    def perp_right(self, xs) -> set[int]:
        xs = list(xs)
        return {y for y in self.G if not any(self.strict_hom_exists(x, y) for x in xs)}

    def perp_left(self, ys) -> set[int]:
        ys = list(ys)
        return {x for x in self.G if not any(self.strict_hom_exists(x, y) for y in ys)}

    def relative_perp(self, p0, x) -> set[int]:
        p0 = list(p0)
        return {y for y in x if not any(self.strict_hom_exists(p, y) for p in p0)}

    def relative_perp_left(self, q0, x) -> set[int]:
        q0 = list(q0)
        return {y for y in x if not any(self.strict_hom_exists(y, q) for q in q0)}

    def strict_extension_pairs(self, idx: int) -> set[tuple[int, int]]:
        """(class A, class C) over strict exact sequences A ↣ B ↠ C."""
        memo = self.catalog.memo.setdefault("ext_pairs", {})
        if idx not in memo:
            lat = self.catalog.lattice(idx)
            memo[idx] = {(lat.cls(a), lat.cls(lat.top, a)) for a in self.strict_subobject_indices(idx)}
        return memo[idx]

    def all_extension_pairs(self, idx: int) -> set[tuple[int, int]]:
        """(class U, class B/U) over all short exact sequences with middle B ∈ G
        and both ends in G."""
        memo = self.catalog.memo.setdefault("all_ext_pairs", {})
        if idx not in memo:
            lat = self.catalog.lattice(idx)
            memo[idx] = {(lat.cls(a), lat.cls(lat.top, a)) for a in range(len(lat)) if lat.in_G(a)}
        return memo[idx]

    def filt_closure(self, xs) -> set[int]:
        """Smallest class containing ``xs`` closed under strict quotients and
        strict extensions (within the catalog)."""
        s = set(xs) | {self.catalog.zero()}
        for x in s:
            self._require_G(x)
        changed = True
        while changed:
            changed = False
            for x in list(s):
                for c in self.strict_quotients(x):
                    if c not in s:
                        s.add(c)
                        changed = True
            for b in self.G:
                if b in s:
                    continue
                if any(a in s and c in s for a, c in self.strict_extension_pairs(b)):
                    s.add(b)
                    changed = True
        return s

    def filt_closure_torsionfree(self, xs) -> set[int]:
        """Dual closure: strict subobjects and strict extensions."""
        s = set(xs) | {self.catalog.zero()}
        changed = True
        while changed:
            changed = False
            for x in list(s):
                for c in self.strict_subobjects(x):
                    if c not in s:
                        s.add(c)
                        changed = True
            for b in self.G:
                if b not in s and any(a in s and c in s for a, c in self.strict_extension_pairs(b)):
                    s.add(b)
                    changed = True
        return s

    def _ext_violation(self, s: set[int]):
        for b in self.G:
            if b in s:
                continue
            for a, c in self.strict_extension_pairs(b):
                if a in s and c in s:
                    return ("strict extension", a, b, c)
        return None

    def is_pseudo_torsion_class(self, s):
        """(True, None) or (False, counterexample)."""
        s = set(s)
        for x in s:
            if not self.catalog[x].in_G:
                return False, ("not in G", x)
        if self.catalog.zero() not in s:
            return False, ("missing zero",)
        for x in sorted(s):
            for c in self.strict_quotients(x):
                if c not in s:
                    return False, ("strict quotient", x, c)
        v = self._ext_violation(s)
        return (v is None), v

    def is_pseudo_torsionfree(self, s):
        s = set(s)
        for x in s:
            if not self.catalog[x].in_G:
                return False, ("not in G", x)
        if self.catalog.zero() not in s:
            return False, ("missing zero",)
        for x in sorted(s):
            for c in self.strict_subobjects(x):
                if c not in s:
                    return False, ("strict subobject", x, c)
        v = self._ext_violation(s)
        return (v is None), v

    def is_pseudo_wide(self, s):
        """Closed under kernels, images and cokernels of strict morphisms
        between members, and under strict extensions."""
        s = set(s)
        for x in s:
            if not self.catalog[x].in_G:
                return False, ("not in G", x)
        if self.catalog.zero() not in s:
            return False, ("missing zero",)
        for x in sorted(s):
            latx = self.catalog.lattice(x)
            for k in self.strict_subobject_indices(x):
                q = latx.cls(latx.top, k)
                for y in sorted(s):
                    laty = self.catalog.lattice(y)
                    for i in self.strict_subobject_indices(y):
                        if laty.cls(i) != q:
                            continue
                        for part, c in (("kernel", latx.cls(k)), ("image", q), ("cokernel", laty.cls(laty.top, i))):
                            if c not in s:
                                return False, (part, x, y, c)
        v = self._ext_violation(s)
        return (v is None), v

    def is_extension_closed(self, s):
        """Plain extension closure over the catalog."""
        s = set(s)
        for b in self.G:
            if b in s:
                continue
            for a, c in self.all_extension_pairs(b):
                if a in s and c in s:
                    return False, ("extension", a, b, c)
        return True, None

    # torsion pairs -----------------------------------------------------------------------
    def torsion_pair_split(self, m: int, p) -> tuple[int, int, int]:
        """(lattice index of tM, class of tM, class of fM) for a pseudo-torsion class p."""
        self._require_G(m)
        p = set(p)
        pperp = self.perp_right(p)
        lat = self.catalog.lattice(m)
        hits = [a for a in self.strict_subobject_indices(m)
                if lat.cls(a) in p and lat.cls(lat.top, a) in pperp]
        if len(hits) != 1:
            raise InconsistencyError(
                f"{self.catalog[m].name}: {len(hits)} strict subobjects split it into P and P-perp"
            )
        a = hits[0]
        return a, lat.cls(a), lat.cls(lat.top, a)

    # ghosts -------------------------------------------------------------------------------
    def find_ghosts(self) -> list[Ghost]:
        cat = self.catalog
        seen = {}
        for b in cat.G_indecomposables():
            lat = cat.lattice(b)
            for a in range(len(lat)):
                if a == lat.bottom or lat.in_G(a):
                    continue
                ac = lat.cls(a)
                if not cat[ac].is_indecomposable:
                    continue
                if not lat.in_G(lat.top, a):
                    continue
                c = lat.cls(lat.top, a)
                key = (ac, b, c)
                if key not in seen:
                    seen[key] = Ghost(ac, b, c, lat.subs[a])
        return [seen[k] for k in sorted(seen)]

    # main diagram --------------------------------------------------------------------------
    def main_diagram(self, b, bp: Subspace, a: Subspace) -> MainDiagram:
        """Diagram for a strict subobject ``bp`` of ``b`` and the fibration
        ``b ↠ b/a``."""
        lat = self.lattice_of(b)
        for name, sub in (("B'", bp), ("ker p", a)):
            if sub.key not in lat.index:
                raise PreconditionError(f"{name} is not a submodule")
        bpi, ai = lat.find(bp), lat.find(a)
        return self.main_diagram_at(lat, bpi, ai)

    def main_diagram_at(self, lat: Lattice, bpi: int, ai: int, check: bool = True,
                        reps: bool = True) -> MainDiagram:
        if check:
            problems = []
            if not lat.in_G(lat.top):
                problems.append("B is not in G")
            if not strict_in(lat, bpi)[0]:
                problems.append("B' is not a strict subobject of B")
            if not strict_in(lat, ai)[0]:
                problems.append("the kernel of p is not a strict subobject of B (p is not a fibration)")
            if problems:
                corner = lat.meet(ai, bpi)
                if not lat.in_G(corner):
                    problems.append("upper-left corner A∩B' is not in G")
                raise PreconditionError("; ".join(problems))
        top, zero = lat.top, lat.bottom
        meet, join = lat.meet(ai, bpi), lat.join(ai, bpi)
        cells = [
            [(meet, zero), (bpi, zero), (join, ai)],
            [(ai, zero), (top, zero), (top, ai)],
            [(ai, meet), (top, bpi), (top, join)],
        ]
        grid = horiz = vert = None
        if reps:
            sq = [[lat.subquotient(*c) for c in row] for row in cells]
            grid = [[s.rep for s in row] for row in sq]
            horiz = [[induced_map(sq[r][c], sq[r][c + 1]) for c in range(2)] for r in range(3)]
            vert = [[induced_map(sq[r][c], sq[r + 1][c]) for c in range(3)] for r in range(2)]
        in_g = [[lat.in_G(*c) for c in row] for row in cells]
        hs = [[is_strict_induced(lat, cells[r][c], cells[r][c + 1]) for c in range(2)] for r in range(3)]
        vs = [[is_strict_induced(lat, cells[r][c], cells[r + 1][c]) for c in range(3)] for r in range(2)]
        return MainDiagram(lat, cells, grid, horiz, vert, in_g, hs, vs)
