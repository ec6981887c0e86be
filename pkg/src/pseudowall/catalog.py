"""Exhaustive catalog of representations up to a total-dimension bound.

Indecomposables are discovered by brute force over arrow matrices, in
increasing total dimension; every module of bounded size is then a direct
sum of known indecomposables (Krull–Schmidt), so catalog entries are
indexed by multiplicity vectors.  Arbitrary modules are identified with
entries through their Hom-signature (dimension plus dim Hom(X, M) for every
indecomposable X).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import CapacityError, InconsistencyError, PreconditionError
from .ffla import DTYPE, Subspace, enumerate_subspaces, _all_vectors
from .quiver import (
    Representation,
    ValuedQuiver,
    _fitting_split,
    direct_sum,
    hom_basis,
    hom_dim,
    is_direct_summand,
    is_isomorphic,
    subquotient,
    zero_rep,
)

CANDIDATE_BUDGET = 1 << 14
LATTICE_BUDGET = 1 << 15


@dataclass(frozen=True)
class TorsionSpec:
    """G = ⊥X for cogenerators X given by dimension vectors.

    An empty cogenerator list means G is all of mod-Λ.
    """

    cogenerators: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cogenerators", tuple(tuple(int(x) for x in v) for v in self.cogenerators))


@dataclass(frozen=True, eq=False)
class Indecomposable:
    index: int
    rep: Representation
    name: str

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return self.rep.dim_vector


@dataclass(frozen=True, eq=False)
class Entry:
    index: int
    mult: tuple[int, ...]
    rep: Representation
    name: str
    in_G: bool

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return self.rep.dim_vector

    @property
    def total_dim(self) -> int:
        return self.rep.total_dim

    @property
    def is_indecomposable(self) -> bool:
        return sum(self.mult) == 1


def _connected_support(quiver: ValuedQuiver, dims) -> bool:
    support = [i for i, d in enumerate(dims) if d]
    if not support:
        return False
    seen = {support[0]}
    stack = [support[0]]
    while stack:
        v = stack.pop()
        for s, t in quiver.arrows:
            for a, b in ((s, t), (t, s)):
                if a == v and dims[b] and b not in seen:
                    seen.add(b)
                    stack.append(b)
    return len(seen) == len(support)


def _dimension_tuples(quiver: ValuedQuiver, total: int):
    ranges = [range(0, total + 1, d) for d in quiver.degrees]
    out = [dims for dims in itertools.product(*ranges) if sum(dims) == total]
    return sorted(out)


def _candidates(quiver: ValuedQuiver, dims, budget: int):
    f = quiver.field
    bases = []
    for a, (s, t) in enumerate(quiver.arrows):
        bases.append(quiver.arrow_constraint_basis(dims[s], dims[t], a))
    free = sum(b.shape[0] for b in bases)
    if f.q**free > budget:
        raise CapacityError(
            f"dimension tuple {dims}: {f.q}^{free} arrow-matrix candidates exceed budget {budget}"
        )
    for coeffs in _all_vectors(f.q, free):
        maps, pos = [], 0
        for a, (s, t) in enumerate(quiver.arrows):
            k = bases[a].shape[0]
            if k:
                flat = f.matmul(coeffs[None, pos : pos + k], bases[a])[0]
            else:
                flat = np.zeros(dims[s] * dims[t], dtype=DTYPE)
            maps.append(flat.reshape(dims[t], dims[s]))
            pos += k
        yield Representation(quiver, dims, maps, check=False)


def _quick_split(rep: Representation) -> bool:
    """Cheap decomposability test via Fitting splits of End basis elements."""
    basis = hom_basis(rep, rep)
    if len(basis) == 1:
        return False
    return any(_fitting_split(rep, g) is not None for g in basis)


def discover_indecomposables(quiver: ValuedQuiver, L: int, budget: int = CANDIDATE_BUDGET):
    """Representatives of all indecomposables with total F_q-dim <= L."""
    found: list[Representation] = []
    for total in range(1, L + 1):
        for dims in _dimension_tuples(quiver, total):
            if not _connected_support(quiver, dims):
                continue
            for cand in _candidates(quiver, dims, budget):
                if _quick_split(cand):
                    continue
                if any(is_direct_summand(x, cand) for x in found):
                    continue
                found.append(cand)
    return found


def _simple_top_socle(quiver: ValuedQuiver, reps):
    f = quiver.field
    simples = []
    for i in range(quiver.n):
        dims = tuple(quiver.degrees[i] if j == i else 0 for j in range(quiver.n))
        maps = [np.zeros((dims[t], dims[s]), dtype=DTYPE) for s, t in quiver.arrows]
        simples.append(Representation(quiver, dims, maps, check=False))
    return simples


def default_names(quiver: ValuedQuiver, reps: list[Representation]) -> list[str]:
    """S_i for simples, then P_i / I_i for the largest indecomposable with
    simple top / socle S_i, otherwise M followed by the dimension vector."""
    simples = _simple_top_socle(quiver, reps)
    n = quiver.n
    names: list[str | None] = [None] * len(reps)
    tops, socles = {}, {}
    for k, r in enumerate(reps):
        top = [hom_dim(r, s) // quiver.degrees[i] for i, s in enumerate(simples)]
        soc = [hom_dim(s, r) // quiver.degrees[i] for i, s in enumerate(simples)]
        if sum(top) == 1:
            i = top.index(1)
            if i not in tops or reps[tops[i]].total_dim < r.total_dim:
                tops[i] = k
        if sum(soc) == 1:
            i = soc.index(1)
            if i not in socles or reps[socles[i]].total_dim < r.total_dim:
                socles[i] = k
    for k, r in enumerate(reps):
        dv = r.dim_vector
        if sum(dv) == 1:
            names[k] = f"S{dv.index(1) + 1}"
    for i in range(n):
        if i in tops and names[tops[i]] is None:
            names[tops[i]] = f"P{i + 1}"
    for i in range(n):
        if i in socles and names[socles[i]] is None:
            names[socles[i]] = f"I{i + 1}"
    for k, r in enumerate(reps):
        if names[k] is None:
            names[k] = "M" + "".join(str(x) for x in r.dim_vector)
    return names  # type: ignore[return-value]


def _multisets(sizes: list[int], L: int):
    out = []

    def rec(j, remaining, acc):
        if j == len(sizes):
            out.append(tuple(acc))
            return
        for m in range(remaining // sizes[j] + 1):
            acc.append(m)
            rec(j + 1, remaining - m * sizes[j], acc)
            acc.pop()

    rec(0, L, [])
    return out


def sum_name(names: list[str], mult) -> str:
    parts = []
    for name, m in zip(names, mult):
        if m == 1:
            parts.append(name)
        elif m > 1:
            parts.append(f"{m}{name}")
    return "+".join(parts) if parts else "0"


class Catalog:
    """Iso-class representatives of all modules with total F_q-dim <= L."""

    def __init__(
        self,
        quiver: ValuedQuiver,
        torsion: TorsionSpec,
        L: int,
        names: dict[tuple[int, ...], str] | None = None,
        budget: int = CANDIDATE_BUDGET,
    ):
        if L < 0:
            raise PreconditionError("length bound must be nonnegative")
        self.quiver, self.torsion, self.L = quiver, torsion, L
        reps = discover_indecomposables(quiver, L, budget)
        reps.sort(key=lambda r: (r.total_dim, tuple(-x for x in r.dim_vector)))
        auto = default_names(quiver, reps)
        names = dict(names or {})
        final = [names.get(r.dim_vector, a) for r, a in zip(reps, auto)]
        self.indecomposables = [Indecomposable(k, r, nm) for k, (r, nm) in enumerate(zip(reps, final))]
        self.hom_matrix = np.array(
            [[hom_dim(x.rep, y.rep) for y in self.indecomposables] for x in self.indecomposables],
            dtype=np.int64,
        ).reshape(len(reps), len(reps))
        self.cogenerators = [self.resolve(v) for v in torsion.cogenerators]
        self.indec_in_G = [
            all(hom_dim(x.rep, self.indecomposables[c].rep) == 0 for c in self.cogenerators)
            for x in self.indecomposables
        ]
        sizes = [x.rep.total_dim for x in self.indecomposables]
        mults = _multisets(sizes, L)
        zero = zero_rep(quiver)

        def sort_key(m):
            dims = tuple(sum(mi * x.rep.dims[i] for mi, x in zip(m, self.indecomposables))
                         for i in range(quiver.n))
            return (sum(dims), dims, tuple(-x for x in m))

        mults.sort(key=sort_key)
        self.entries: list[Entry] = []
        self._by_mult: dict[tuple[int, ...], int] = {}
        for idx, m in enumerate(mults):
            parts = [x.rep for x, k in zip(self.indecomposables, m) for _ in range(k)]
            rep = direct_sum(parts) if parts else zero
            in_g = all(self.indec_in_G[j] for j, k in enumerate(m) if k)
            self.entries.append(Entry(idx, m, rep, sum_name(final, m), in_g))
            self._by_mult[m] = idx
        self._by_dims: dict[tuple[int, ...], list[int]] = {}
        for e in self.entries:
            self._by_dims.setdefault(e.rep.dims, []).append(e.index)
        self._lattices: dict[int, "Lattice"] = {}
        self.memo: dict = {}

    # lookup ----------------------------------------------------------------------
    def __len__(self):
        return len(self.entries)

    def __getitem__(self, idx: int) -> Entry:
        return self.entries[idx]

    @property
    def field(self):
        return self.quiver.field

    def resolve(self, dim_vector) -> int:
        """Index (among indecomposables) of the unique indecomposable with this
        dimension vector."""
        dv = tuple(int(x) for x in dim_vector)
        hits = [x.index for x in self.indecomposables if x.dim_vector == dv]
        if len(hits) != 1:
            raise PreconditionError(
                f"dimension vector {dv} matches {len(hits)} indecomposables, need exactly one"
            )
        return hits[0]

    def entry_of_indecomposable(self, j: int) -> int:
        m = tuple(1 if k == j else 0 for k in range(len(self.indecomposables)))
        return self._by_mult[m]

    def by_name(self, name: str) -> int:
        for e in self.entries:
            if e.name == name:
                return e.index
        raise PreconditionError(f"no catalog entry named {name!r}")

    def index_of_mult(self, mult) -> int:
        mult = tuple(mult)
        if mult not in self._by_mult:
            raise CapacityError(f"module with multiplicities {mult} exceeds length bound {self.L}")
        return self._by_mult[mult]

    def zero(self) -> int:
        return self._by_mult[(0,) * len(self.indecomposables)]

    def G_members(self) -> list[int]:
        return [e.index for e in self.entries if e.in_G]

    def G_indecomposables(self) -> list[int]:
        return [e.index for e in self.entries if e.in_G and e.is_indecomposable]

    def in_G(self, rep: Representation) -> bool:
        return all(hom_dim(rep, self.indecomposables[c].rep) == 0 for c in self.cogenerators)

    def add_of(self, indec_entries) -> list[int]:
        """add(X) restricted to the catalog: all sums of the given indecomposable entries."""
        allowed = set()
        for i in indec_entries:
            allowed |= {j for j, k in enumerate(self.entries[i].mult) if k}
        return [e.index for e in self.entries if all(k == 0 or j in allowed for j, k in enumerate(e.mult))]

    def identify(self, rep: Representation) -> int:
        """Catalog index of the entry isomorphic to ``rep``."""
        if rep.total_dim > self.L:
            raise CapacityError(f"module of dims {rep.dims} exceeds length bound {self.L}")
        cands = self._by_dims.get(rep.dims, [])
        if not cands:
            raise InconsistencyError(f"no catalog entry with dims {rep.dims}")
        if len(cands) == 1:
            return cands[0]
        sig: dict[int, int] = {}
        alive = list(cands)
        for j in range(len(self.indecomposables)):
            vals = {c: int(np.dot(self.entries[c].mult, self.hom_matrix[j])) for c in alive}
            if len(set(vals.values())) == 1:
                continue
            sig[j] = hom_dim(self.indecomposables[j].rep, rep)
            alive = [c for c in alive if vals[c] == sig[j]]
            if len(alive) <= 1:
                break
        if len(alive) == 1:
            return alive[0]
        for c in alive:
            if is_isomorphic(self.entries[c].rep, rep):
                return c
        raise InconsistencyError(f"module with dims {rep.dims} matches no catalog entry")

    def lattice(self, idx: int) -> "Lattice":
        if idx not in self._lattices:
            self._lattices[idx] = Lattice(self, self.entries[idx].rep)
        return self._lattices[idx]


def submodules(rep: Representation, budget: int = LATTICE_BUDGET) -> list[Subspace]:
    """All submodules, as total-space subspaces, in canonical order."""
    q, f = rep.quiver, rep.field
    per_vertex = []
    for i in range(q.n):
        acts = [rep.action(i)] if q.degrees[i] > 1 and rep.dims[i] else []
        per_vertex.append(enumerate_subspaces(rep.dims[i], f, acts, max_elements=1 << 12))
    out = []
    count = [0]
    order = list(range(q.n))
    chosen: list[Subspace | None] = [None] * q.n

    def rec(k):
        if k == q.n:
            count[0] += 1
            if count[0] > budget:
                raise CapacityError(f"submodule lattice of dims {rep.dims} exceeds budget {budget}")
            out.append(rep.submodule_from_parts([c.basis for c in chosen]))
            return
        v = order[k]
        for sub in per_vertex[v]:
            ok = True
            for a, (s, t) in enumerate(q.arrows):
                if s == v and t < v and chosen[t] is not None:
                    ok = chosen[t].contains_vectors(f.matmul(sub.basis, rep.maps[a].T)) if sub.dim else True
                elif t == v and s < v and chosen[s] is not None:
                    src = chosen[s]
                    ok = sub.contains_vectors(f.matmul(src.basis, rep.maps[a].T)) if src.dim else True
                if not ok:
                    break
            if ok:
                chosen[v] = sub
                rec(k + 1)
        chosen[v] = None

    rec(0)
    out.sort(key=lambda s: (s.dim, s.basis.tobytes()))
    return out


class Lattice:
    """The submodule lattice of a representation, with fast meet/containment."""

    def __init__(self, catalog: Catalog | None, rep: Representation):
        self.catalog, self.rep = catalog, rep
        self.subs = submodules(rep)
        self.index = {s.key: k for k, s in enumerate(self.subs)}
        self.masks = [s.mask for s in self.subs]
        self._use_masks = all(m is not None for m in self.masks)
        self.by_mask = {m: k for k, m in enumerate(self.masks)} if self._use_masks else {}
        self.bottom = 0
        self.top = len(self.subs) - 1
        self._sq: dict[tuple[int, int], object] = {}
        self._inG: dict[tuple[int, int], bool] = {}
        self._cls: dict[tuple[int, int], int] = {}
        self._join: dict[tuple[int, int], int] = {}

    def __len__(self):
        return len(self.subs)

    def dim(self, a: int) -> int:
        return self.subs[a].dim

    def leq(self, a: int, b: int) -> bool:
        if self._use_masks:
            return self.masks[a] & ~self.masks[b] == 0
        return self.subs[b].contains(self.subs[a])

    def meet(self, a: int, b: int) -> int:
        if self._use_masks:
            return self.by_mask[self.masks[a] & self.masks[b]]
        return self.index[self.subs[a].intersect(self.subs[b]).key]

    def join(self, a: int, b: int) -> int:
        if self.leq(a, b):
            return b
        if self.leq(b, a):
            return a
        key = (a, b) if a < b else (b, a)
        if key not in self._join:
            self._join[key] = self.index[(self.subs[a] + self.subs[b]).key]
        return self._join[key]

    def find(self, sub: Subspace) -> int:
        return self.index[sub.key]

    def below(self, a: int) -> list[int]:
        return [x for x in range(len(self.subs)) if self.leq(x, a)]

    def interval(self, u: int, v: int) -> list[int]:
        return [x for x in range(len(self.subs)) if self.leq(u, x) and self.leq(x, v)]

    def subquotient(self, v: int, u: int):
        key = (v, u)
        if key not in self._sq:
            self._sq[key] = subquotient(self.rep, self.subs[v], self.subs[u])
        return self._sq[key]

    def in_G(self, v: int, u: int = 0) -> bool:
        """Whether the subquotient v/u lies in G."""
        key = (v, u)
        if key not in self._inG:
            if self.dim(v) == self.dim(u):
                self._inG[key] = True
            else:
                self._inG[key] = self.catalog.in_G(self.subquotient(v, u).rep)
        return self._inG[key]

    def cls(self, v: int, u: int = 0) -> int:
        """Catalog index of the subquotient v/u."""
        key = (v, u)
        if key not in self._cls:
            self._cls[key] = self.catalog.identify(self.subquotient(v, u).rep)
        return self._cls[key]
