"""Valued quivers, their representations over F_q, and morphisms.

Conventions.  An arrow ``(s, t)`` is a linear map from the space at ``s`` to
the space at ``t``; its matrix has shape ``(dim_t, dim_s)`` and acts on
column vectors.  A vertex of degree ``d > 1`` carries the field
F_{q^d}, realized on F_q^d by the companion matrix ``J`` of a fixed
irreducible polynomial; a space at that vertex is F_q^{d m} with ``J``
acting block-diagonally.  Arrows between two vertices of equal degree must
commute with ``J``; arrows between a degree-d vertex and a degree-1 vertex
are arbitrary F_q-linear maps.

Vertices are 0-based internally; names and file formats use 1-based labels.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, PreconditionError
from .ffla import DTYPE, FieldSpec, GF, Subspace, default_modulus, gf


def companion(field: GF, d: int) -> np.ndarray:
    """Companion matrix of the default degree-d irreducible polynomial over F_q."""
    if d == 1:
        return field.eye(1)
    poly = _irreducible_over(field, d)
    j = np.zeros((d, d), dtype=DTYPE)
    for i in range(d - 1):
        j[i + 1, i] = 1
    for i in range(d):
        j[i, d - 1] = int(field.neg(poly[i]))
    return j


@functools.lru_cache(maxsize=None)
def _irreducible_over_cached(spec: FieldSpec, d: int) -> tuple[int, ...]:
    field = gf(spec)
    if field.prime:
        return default_modulus(field.p, d)
    # search monic polynomials over F_q with no roots / factors, by trial
    # division using field arithmetic
    import itertools

    def polymod(a, m):
        a = list(a)
        while len(a) >= len(m):
            lead = a[-1]
            if lead:
                shift = len(a) - len(m)
                for i, c in enumerate(m):
                    a[shift + i] = int(field.sub(a[shift + i], field.mul(lead, c)))
            a.pop()
        return a

    def monic(deg):
        for coeffs in itertools.product(range(field.q), repeat=deg):
            yield list(coeffs) + [1]

    for f in monic(d):
        if f[0] == 0:
            continue
        if all(any(polymod(f, g)) for k in range(1, d // 2 + 1) for g in monic(k)):
            return tuple(f)
    raise PreconditionError(f"no irreducible polynomial of degree {d} over F_{field.q}")


def _irreducible_over(field: GF, d: int) -> tuple[int, ...]:
    return _irreducible_over_cached(field.spec, d)


def block_action(field: GF, d: int, copies: int) -> np.ndarray:
    j = companion(field, d)
    out = np.zeros((d * copies, d * copies), dtype=DTYPE)
    for c in range(copies):
        out[c * d : (c + 1) * d, c * d : (c + 1) * d] = j
    return out


@dataclass(frozen=True)
class ValuedQuiver:
    """Acyclic quiver whose vertex i carries F_{q^{d_i}}."""

    n: int
    arrows: tuple[tuple[int, int], ...]
    field_spec: FieldSpec
    degrees: tuple[int, ...] = ()

    def __post_init__(self):
        arrows = tuple((int(s), int(t)) for s, t in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        degrees = tuple(self.degrees) if self.degrees else (1,) * self.n
        object.__setattr__(self, "degrees", degrees)
        if len(degrees) != self.n or min(degrees, default=1) < 1:
            raise PreconditionError("vertex degrees must be positive, one per vertex")
        for s, t in arrows:
            if not (0 <= s < self.n and 0 <= t < self.n):
                raise PreconditionError(f"arrow {(s + 1, t + 1)} has a vertex out of range")
            ds, dt = degrees[s], degrees[t]
            if ds != dt and min(ds, dt) != 1:
                raise PreconditionError(
                    f"valued arrow {s + 1}->{t + 1} between degrees {ds} and {dt} is not supported"
                )
        if self._has_cycle():
            raise PreconditionError("quiver has an oriented cycle")

    def _has_cycle(self) -> bool:
        indeg = [0] * self.n
        for _, t in self.arrows:
            indeg[t] += 1
        stack = [v for v in range(self.n) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        stack.append(t)
        return seen != self.n

    @property
    def field(self) -> GF:
        return gf(self.field_spec)

    def arrow_commutes(self, a: int) -> bool:
        """Whether arrow ``a`` must intertwine the division-ring actions."""
        s, t = self.arrows[a]
        return self.degrees[s] == self.degrees[t] > 1

    def arrow_constraint_basis(self, ms: int, mt: int, a: int) -> np.ndarray:
        """Basis (as flattened row-major matrices) of allowed matrices for
        arrow ``a`` from F_q^ms to F_q^mt."""
        f = self.field
        size = ms * mt
        if not self.arrow_commutes(a) or size == 0:
            return f.eye(size)
        d = self.degrees[self.arrows[a][0]]
        js, jt = block_action(f, d, ms // d), block_action(f, d, mt // d)
        # X js - jt X = 0
        cons = f.sub(f.kron(f.eye(mt), js.T), f.kron(jt, f.eye(ms)))
        return f.nullspace(cons)


class Representation:
    """A representation of a :class:`ValuedQuiver` over F_q.

    ``dims`` are F_q-dimensions (multiples of the vertex degrees) and
    ``maps[a]`` is the matrix of arrow ``a``.
    """

    __slots__ = ("quiver", "dims", "maps", "__dict__")

    def __init__(self, quiver: ValuedQuiver, dims, maps, check: bool = True):
        self.quiver = quiver
        self.dims = tuple(int(x) for x in dims)
        f = quiver.field
        self.maps = tuple(f.asarray(np.asarray(m, dtype=DTYPE).reshape(
            self.dims[t], self.dims[s])) for m, (s, t) in zip(maps, quiver.arrows))
        for m in self.maps:
            m.setflags(write=False)
        if check:
            self._check()

    def _check(self):
        q = self.quiver
        if len(self.dims) != q.n or len(self.maps) != len(q.arrows):
            raise PreconditionError("representation shape does not match quiver")
        for i, (m, d) in enumerate(zip(self.dims, q.degrees)):
            if m < 0 or m % d:
                raise PreconditionError(f"dimension {m} at vertex {i + 1} is not a multiple of {d}")
        f = q.field
        for a, (s, t) in enumerate(q.arrows):
            if q.arrow_commutes(a):
                js, jt = self.action(s), self.action(t)
                m = self.maps[a]
                if np.any(f.sub(f.matmul(m, js), f.matmul(jt, m))):
                    raise PreconditionError(f"arrow {s + 1}->{t + 1} does not commute with the F_q^d action")

    # basic data ---------------------------------------------------------------
    @property
    def field(self) -> GF:
        return self.quiver.field

    @functools.cached_property
    def total_dim(self) -> int:
        return sum(self.dims)

    @functools.cached_property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(m // d for m, d in zip(self.dims, self.quiver.degrees))

    @functools.cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for m in self.dims:
            out.append(acc)
            acc += m
        return tuple(out)

    def action(self, i: int) -> np.ndarray:
        d = self.quiver.degrees[i]
        return block_action(self.field, d, self.dims[i] // d)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    @functools.cached_property
    def key(self) -> tuple:
        return (self.dims, tuple(m.tobytes() for m in self.maps))

    def __repr__(self):
        return f"Representation(dims={self.dims}, maps={[m.tolist() for m in self.maps]})"

    # total-space operators ----------------------------------------------------
    @functools.cached_property
    def total_operators(self) -> tuple[np.ndarray, ...]:
        """Arrow maps and division-ring actions as N x N block matrices."""
        n = self.total_dim
        ops = []
        for a, (s, t) in enumerate(self.quiver.arrows):
            if self.dims[s] == 0 or self.dims[t] == 0:
                continue
            m = np.zeros((n, n), dtype=DTYPE)
            m[self.offsets[t] : self.offsets[t] + self.dims[t],
              self.offsets[s] : self.offsets[s] + self.dims[s]] = self.maps[a]
            ops.append(m)
        for i, d in enumerate(self.quiver.degrees):
            if d > 1 and self.dims[i]:
                m = np.zeros((n, n), dtype=DTYPE)
                o = self.offsets[i]
                m[o : o + self.dims[i], o : o + self.dims[i]] = self.action(i)
                ops.append(m)
        return tuple(ops)

    def vertex_part(self, sub: Subspace, i: int) -> np.ndarray:
        """Basis rows (in vertex-i coordinates) of the vertex-i part of a
        submodule given as a total-space subspace."""
        o, m = self.offsets[i], self.dims[i]
        rows = sub.basis[:, o : o + m]
        keep = np.any(rows, axis=1)
        other = np.delete(sub.basis, np.s_[o : o + m], axis=1)
        keep &= ~np.any(other, axis=1)
        return rows[keep]

    def submodule_from_parts(self, parts) -> Subspace:
        n = self.total_dim
        rows = []
        for i, p in enumerate(parts):
            if self.dims[i] == 0:
                continue
            p = np.asarray(p, dtype=DTYPE).reshape(-1, self.dims[i])
            for r in p:
                v = np.zeros(n, dtype=DTYPE)
                v[self.offsets[i] : self.offsets[i] + self.dims[i]] = r
                rows.append(v)
        if not rows:
            return Subspace.zero(self.field, n)
        return Subspace.from_rows(self.field, n, np.array(rows, dtype=DTYPE))

    def is_submodule(self, sub: Subspace) -> bool:
        if sub.n != self.total_dim:
            return False
        parts = sum(self.vertex_part(sub, i).shape[0] for i in range(self.quiver.n))
        if parts != sub.dim:
            return False
        return all(sub.is_invariant(op) for op in self.total_operators)

    def zero_sub(self) -> Subspace:
        return Subspace.zero(self.field, self.total_dim)

    def whole(self) -> Subspace:
        return Subspace.whole(self.field, self.total_dim)

    def sub_dims(self, sub: Subspace) -> tuple[int, ...]:
        return tuple(self.vertex_part(sub, i).shape[0] for i in range(self.quiver.n))


def zero_rep(quiver: ValuedQuiver) -> Representation:
    return Representation(quiver, (0,) * quiver.n,
                          [np.zeros((0, 0))] * len(quiver.arrows))


def direct_sum(reps) -> Representation:
    reps = list(reps)
    if not reps:
        raise PreconditionError("direct sum of an empty list")
    q = reps[0].quiver
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(q.n))
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        m = np.zeros((dims[t], dims[s]), dtype=DTYPE)
        ro = co = 0
        for r in reps:
            m[ro : ro + r.dims[t], co : co + r.dims[s]] = r.maps[a]
            ro += r.dims[t]
            co += r.dims[s]
        maps.append(m)
    return Representation(q, dims, maps, check=False)


# morphisms --------------------------------------------------------------------


class RepMorphism:
    """Per-vertex matrices ``mats[i]`` of shape (target.dims[i], source.dims[i])."""

    __slots__ = ("source", "target", "mats")

    def __init__(self, source: Representation, target: Representation, mats, check: bool = True):
        self.source, self.target = source, target
        f = source.field
        self.mats = tuple(
            f.asarray(np.asarray(m, dtype=DTYPE).reshape(target.dims[i], source.dims[i]))
            for i, m in enumerate(mats)
        )
        if check and not self.commutes():
            raise PreconditionError("per-vertex matrices do not define a morphism")

    def commutes(self) -> bool:
        f = self.source.field
        q = self.source.quiver
        for a, (s, t) in enumerate(q.arrows):
            lhs = f.matmul(self.mats[t], self.source.maps[a])
            rhs = f.matmul(self.target.maps[a], self.mats[s])
            if np.any(f.sub(lhs, rhs)):
                return False
        for i, d in enumerate(q.degrees):
            if d > 1:
                lhs = f.matmul(self.mats[i], self.source.action(i))
                rhs = f.matmul(self.target.action(i), self.mats[i])
                if np.any(f.sub(lhs, rhs)):
                    return False
        return True

    def is_zero(self) -> bool:
        return not any(np.any(m) for m in self.mats)

    def is_iso(self) -> bool:
        f = self.source.field
        return self.source.dims == self.target.dims and all(
            f.is_invertible(m) for m in self.mats if m.size
        )

    def compose(self, other: "RepMorphism") -> "RepMorphism":
        """``self ∘ other`` (apply ``other`` first)."""
        f = self.source.field
        return RepMorphism(other.source, self.target,
                           [f.matmul(a, b) for a, b in zip(self.mats, other.mats)], check=False)

    def total_matrix(self) -> np.ndarray:
        out = np.zeros((self.target.total_dim, self.source.total_dim), dtype=DTYPE)
        for i, m in enumerate(self.mats):
            out[self.target.offsets[i] : self.target.offsets[i] + m.shape[0],
                self.source.offsets[i] : self.source.offsets[i] + m.shape[1]] = m
        return out

    def kernel_sub(self) -> Subspace:
        f = self.source.field
        return Subspace.from_rows(f, self.source.total_dim, f.nullspace(self.total_matrix()))

    def image_sub(self) -> Subspace:
        return self.source.whole().image(self.total_matrix())

    def __repr__(self):
        return f"RepMorphism({[m.tolist() for m in self.mats]})"


def identity(m: Representation) -> RepMorphism:
    return RepMorphism(m, m, [m.field.eye(d) for d in m.dims], check=False)


def linear_combination(basis: list[RepMorphism], coeffs) -> RepMorphism:
    f = basis[0].source.field
    mats = []
    for i in range(len(basis[0].mats)):
        acc = np.zeros_like(basis[0].mats[i])
        for c, g in zip(coeffs, basis):
            if c:
                acc = f.add(acc, f.mul(int(c), g.mats[i]))
        mats.append(acc)
    return RepMorphism(basis[0].source, basis[0].target, mats, check=False)


def hom_basis(m: Representation, n: Representation) -> list[RepMorphism]:
    """Basis of Hom(m, n), from the commuting-square linear system."""
    if m.quiver != n.quiver:
        raise PreconditionError("representations of different quivers")
    q, f = m.quiver, m.field
    sizes = [n.dims[i] * m.dims[i] for i in range(q.n)]
    offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    total = int(offs[-1])
    if total == 0:
        return []
    blocks = []
    # row-major vec: vec(A X B) = (A kron B^T) vec(X)
    for a, (s, t) in enumerate(q.arrows):
        rows = n.dims[t] * m.dims[s]
        if rows == 0:
            continue
        c = np.zeros((rows, total), dtype=DTYPE)
        if sizes[t]:
            c[:, offs[t] : offs[t + 1]] = f.kron(f.eye(n.dims[t]), m.maps[a].T)
        if sizes[s]:
            c[:, offs[s] : offs[s + 1]] = f.sub(c[:, offs[s] : offs[s + 1]],
                                                 f.kron(n.maps[a], f.eye(m.dims[s])))
        blocks.append(c)
    for i, d in enumerate(q.degrees):
        if d > 1 and sizes[i]:
            c = np.zeros((sizes[i], total), dtype=DTYPE)
            c[:, offs[i] : offs[i + 1]] = f.sub(
                f.kron(f.eye(n.dims[i]), m.action(i).T), f.kron(n.action(i), f.eye(m.dims[i]))
            )
            blocks.append(c)
    cons = np.concatenate(blocks) if blocks else np.zeros((0, total), dtype=DTYPE)
    ker = f.nullspace(cons)
    out = []
    for v in ker:
        mats = [v[offs[i] : offs[i + 1]].reshape(n.dims[i], m.dims[i]) for i in range(q.n)]
        out.append(RepMorphism(m, n, mats, check=False))
    return out


def hom_dim(m: Representation, n: Representation) -> int:
    return len(hom_basis(m, n))


# subquotients -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subquotient:
    """V/U for submodules U ⊆ V of ``ambient`` (total-space subspaces).

    ``reps[i]`` are representatives (rows, vertex-i coordinates) of a basis
    of (V/U)_i adapted to the division-ring action; ``coords[i]`` maps a
    vector of V_i to its coordinates in the stacked basis [U_i; reps_i].
    """

    ambient: Representation
    upper: Subspace
    lower: Subspace
    rep: Representation
    reps: tuple[np.ndarray, ...]
    lower_parts: tuple[np.ndarray, ...]
    coords: tuple[np.ndarray, ...]

    def project(self, i: int, vecs: np.ndarray) -> np.ndarray:
        """Coordinates in (V/U)_i of rows ``vecs`` lying in V_i."""
        u = self.lower_parts[i].shape[0]
        return self.ambient.field.matmul(vecs, self.coords[i])[:, u:]


def _adapted_complement(field: GF, upper: np.ndarray, lower: np.ndarray, action, d: int):
    """Rows completing ``lower`` to a basis of span(upper), in blocks
    (v, Jv, ..., J^{d-1} v)."""
    span = Subspace.from_rows(field, upper.shape[1], lower)
    chosen = []
    for v in upper:
        if span.contains_vectors(v):
            continue
        block = [v]
        for _ in range(d - 1):
            block.append(field.matmul(block[-1][None, :], action.T)[0])
        chosen.extend(block)
        span = Subspace.from_rows(field, upper.shape[1], np.concatenate([span.basis, np.array(block)]))
    width = upper.shape[1]
    if not chosen:
        return np.zeros((0, width), dtype=DTYPE)
    return np.array(chosen, dtype=DTYPE)


def subquotient(ambient: Representation, upper: Subspace, lower: Subspace) -> Subquotient:
    f, q = ambient.field, ambient.quiver
    if not upper.contains(lower):
        raise PreconditionError("lower submodule is not contained in upper")
    reps, lowers, coords, dims = [], [], [], []
    for i in range(q.n):
        up = ambient.vertex_part(upper, i)
        lo = ambient.vertex_part(lower, i)
        comp = _adapted_complement(f, up, lo, ambient.action(i), q.degrees[i])
        stack = np.concatenate([lo.reshape(lo.shape[0], ambient.dims[i]),
                                comp.reshape(comp.shape[0], ambient.dims[i])])
        coords.append(f.coordinate_matrix(stack))
        reps.append(comp)
        lowers.append(lo)
        dims.append(comp.shape[0])
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        img = f.matmul(reps[s], ambient.maps[a].T) if reps[s].size else np.zeros((0, ambient.dims[t]), dtype=DTYPE)
        c = f.matmul(img, coords[t])[:, lowers[t].shape[0]:] if img.size else np.zeros((dims[s], dims[t]), dtype=DTYPE)
        maps.append(c.T.reshape(dims[t], dims[s]))
    rep = Representation(q, dims, maps, check=False)
    return Subquotient(ambient, upper, lower, rep, tuple(reps), tuple(lowers), tuple(coords))


def induced_map(src: Subquotient, dst: Subquotient, morph: RepMorphism | None = None) -> RepMorphism:
    """Map src → dst induced by ``morph`` (identity if None) between ambients.

    Requires morph(V) ⊆ V' and morph(U) ⊆ U'.
    """
    f = src.ambient.field
    mats = []
    for i in range(src.ambient.quiver.n):
        r = src.reps[i]
        if morph is not None:
            r = f.matmul(r, morph.mats[i].T) if r.size else np.zeros((0, dst.ambient.dims[i]), dtype=DTYPE)
        if r.shape[0] == 0 or dst.rep.dims[i] == 0:
            mats.append(np.zeros((dst.rep.dims[i], src.rep.dims[i]), dtype=DTYPE))
        else:
            mats.append(dst.project(i, r).T)
    return RepMorphism(src.rep, dst.rep, mats, check=False)


def kernel_image_cokernel(f: RepMorphism):
    """Kernel, image and cokernel of ``f`` with their canonical maps.

    Returns ``(K, I, C, maps)`` where ``maps`` holds the inclusion K → source,
    the corestriction source → I, the inclusion I → target and the
    projection target → C.
    """
    src, dst = f.source, f.target
    ker = subquotient(src, f.kernel_sub(), src.zero_sub())
    img_sub = f.image_sub()
    img = subquotient(dst, img_sub, dst.zero_sub())
    cok = subquotient(dst, dst.whole(), img_sub)
    whole_src = subquotient(src, src.whole(), src.zero_sub())
    whole_dst = subquotient(dst, dst.whole(), dst.zero_sub())
    maps = {
        "kernel_inclusion": _to_ambient(ker),
        "coimage": induced_map(whole_src, img, f),
        "image_inclusion": _to_ambient(img),
        "cokernel_projection": induced_map(whole_dst, cok),
    }
    return ker.rep, img.rep, cok.rep, maps


def _to_ambient(sq: Subquotient) -> RepMorphism:
    """Inclusion of a submodule V/0 into its ambient."""
    return RepMorphism(sq.rep, sq.ambient, [r.T for r in sq.reps], check=False)


def inclusion(sq: Subquotient) -> RepMorphism:
    if sq.lower.dim:
        raise PreconditionError("not a submodule")
    return _to_ambient(sq)


def projection(sq: Subquotient) -> RepMorphism:
    """Projection ambient → ambient/U for a quotient subquotient."""
    whole = subquotient(sq.ambient, sq.ambient.whole(), sq.ambient.zero_sub())
    return induced_map(whole, sq)


# isomorphism and decomposition ----------------------------------------------------

ISO_EXHAUSTIVE_CAP = 1 << 12


def _combos(field: GF, h: int, limit: int):
    from .ffla import _all_vectors

    if field.q**h > limit:
        raise CapacityError(f"Hom space of dimension {h} over F_{field.q} exceeds exhaustive cap {limit}")
    return _all_vectors(field.q, h)[1:]


def find_isomorphism(m: Representation, n: Representation, cap: int = ISO_EXHAUSTIVE_CAP):
    if m.dims != n.dims:
        return None
    if m.total_dim == 0:
        return identity(m)
    basis = hom_basis(m, n)
    if not basis:
        return None
    for g in basis:
        if g.is_iso():
            return g
    rng = np.random.default_rng(len(basis))
    for _ in range(32):
        c = rng.integers(0, m.field.q, size=len(basis))
        g = linear_combination(basis, c)
        if g.is_iso():
            return g
    for c in _combos(m.field, len(basis), cap):
        g = linear_combination(basis, c)
        if g.is_iso():
            return g
    return None


def is_isomorphic(m: Representation, n: Representation, cap: int = ISO_EXHAUSTIVE_CAP) -> bool:
    return find_isomorphism(m, n, cap) is not None


def _fitting_split(m: Representation, g: RepMorphism):
    """(ker g^N, im g^N) when that splits m nontrivially, else None."""
    f = m.field
    mat = g.total_matrix()
    power = f.eye(m.total_dim)
    for _ in range(m.total_dim):
        power = f.matmul(power, mat)
    r = f.rank(power)
    if 0 < r < m.total_dim:
        ker = Subspace.from_rows(f, m.total_dim, f.nullspace(power))
        img = m.whole().image(power)
        return ker, img
    return None


def splitting_endomorphism(m: Representation, tries: int = 64):
    """A Fitting-splitting endomorphism of ``m`` or None.

    Basis elements and pairwise sums are tried first, then seeded random
    combinations, then the whole End(m) when it is small enough.
    """
    basis = hom_basis(m, m)
    f = m.field
    cands = list(basis)
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            cands.append(linear_combination([basis[a], basis[b]], [1, 1]))
    for g in cands:
        if _fitting_split(m, g):
            return g
    rng = np.random.default_rng(7)
    for _ in range(tries):
        g = linear_combination(basis, rng.integers(0, f.q, size=len(basis)))
        if _fitting_split(m, g):
            return g
    if f.q ** len(basis) <= ISO_EXHAUSTIVE_CAP:
        for c in _combos(f, len(basis), ISO_EXHAUSTIVE_CAP):
            g = linear_combination(basis, c)
            if _fitting_split(m, g):
                return g
    return None


def decompose(m: Representation) -> list[Representation]:
    """Split ``m`` into indecomposable summands by repeated Fitting splits."""
    if m.total_dim == 0:
        return []
    g = splitting_endomorphism(m)
    if g is None:
        return [m]
    ker, img = _fitting_split(m, g)
    zero = m.zero_sub()
    parts = [subquotient(m, ker, zero).rep, subquotient(m, img, zero).rep]
    out = []
    for p in parts:
        out.extend(decompose(p))
    out.sort(key=lambda r: (r.total_dim, r.dims))
    return out


def is_direct_summand(x: Representation, m: Representation) -> bool:
    """Whether the indecomposable ``x`` is a direct summand of ``m``.

    For indecomposable x, End(x) is local, so x | m iff g∘f is invertible
    for some f: x → m, g: m → x; the non-units form an ideal, so basis
    elements suffice.
    """
    if any(a > b for a, b in zip(x.dims, m.dims)) or x.total_dim == 0:
        return False
    fs = hom_basis(x, m)
    if not fs:
        return False
    gs = hom_basis(m, x)
    fld = x.field
    for g in gs:
        for h in fs:
            if all(fld.is_invertible(fld.matmul(a, b)) for a, b in zip(g.mats, h.mats) if a.shape[0]):
                return True
    return False
