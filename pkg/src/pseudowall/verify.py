"""Exhaustive invariant checks over a catalog.

Every check returns a :class:`CheckResult` naming the property, the number of
cases examined and the first few counterexamples.  The suite is deterministic:
sample points come from a fixed integer grid plus the facet samples of the
chamber arrangement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .errors import PseudowallError
from .ffla import _all_vectors
from .quiver import hom_basis, linear_combination
from .stability import INTERIOR
from .strictcat import strict_flags, strict_set

MIN_SAMPLES = 50
PERP_CLASSES = 20
MORPHISM_DIM_CAP = 3
MAX_EXAMPLES = 3
ORBIT_MIN_LATTICE = 48
ORBIT_GENERATORS = 6


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.cases > 0

    def fail(self, what) -> None:
        self.failures.append(what)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = "" if self.passed else f"  e.g. {self.failures[:MAX_EXAMPLES]}"
        return f"{status}  {self.name:<48} cases={self.cases}{tail}"


def _run(name, fn) -> CheckResult:
    res = CheckResult(name)
    try:
        fn(res)
    except PseudowallError as exc:
        res.fail(f"{type(exc).__name__}: {exc}")
    return res


# automorphism orbits ----------------------------------------------------------------------


def automorphism_permutations(cat, m: int, lat, count: int = ORBIT_GENERATORS, seed: int = 0):
    """Permutations of the submodule lattice induced by seeded random automorphisms of m.

    Any set of genuine automorphisms is sound for orbit reduction; more
    generators only make the reduction coarser.
    """
    memo = lat.__dict__.setdefault("_aut_perms", None)
    if memo is not None:
        return memo
    rep = cat[m].rep
    basis = hom_basis(rep, rep)
    q = cat.field.q
    rng = np.random.default_rng(seed)
    perms = []
    for _ in range(10 * count):
        if len(perms) >= count or len(basis) <= 1:
            break
        f = linear_combination(basis, rng.integers(0, q, size=len(basis)))
        if not f.is_iso():
            continue
        mat = f.total_matrix()
        perms.append(tuple(lat.find(s.image(mat)) for s in lat.subs))
    lat.__dict__["_aut_perms"] = perms
    return perms


def orbit_representatives(cat, m: int, lat, items) -> list[int]:
    """One element of each automorphism orbit meeting ``items`` (an invariant set)."""
    items = sorted(items)
    if len(lat) < ORBIT_MIN_LATTICE:
        return items
    perms = automorphism_permutations(cat, m, lat)
    if not perms:
        return items
    parent = {x: x for x in items}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for x in items:
            y = p[x]
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    return sorted({find(x) for x in items})


# strict structure ---------------------------------------------------------------------


def check_composition(model) -> list[CheckResult]:
    sc, cat = model.strict, model.catalog

    def cofib(res):
        for m in sc.G:
            lat = cat.lattice(m)
            top = strict_set(lat)
            for b in orbit_representatives(cat, m, lat, top):
                for a in strict_flags(lat, b, 0):
                    res.cases += 1
                    if a not in top:
                        res.fail((cat[m].name, a, b))

    def fib(res):
        for m in sc.G:
            lat = cat.lattice(m)
            top = strict_set(lat)
            for b in orbit_representatives(cat, m, lat, top):
                for a in strict_flags(lat, lat.top, b):
                    res.cases += 1
                    if a not in top:
                        res.fail((cat[m].name, b, a))

    def morph(res):
        small = [m for m in sc.G if 0 < cat[m].total_dim <= MORPHISM_DIM_CAP]
        strict_maps = {}
        for x, y in itertools.product(small, repeat=2):
            basis = hom_basis(cat[x].rep, cat[y].rep)
            if len(basis) > MORPHISM_DIM_CAP:
                continue
            maps = [linear_combination(basis, c) for c in _all_vectors(cat.field.q, len(basis))[1:]]
            strict_maps[(x, y)] = [f for f in maps if sc.is_strict_morphism(f)]
        verdict = {}  # composites repeat a lot over small fields
        for (x, y), fs in sorted(strict_maps.items()):
            for z in small:
                for g in strict_maps.get((y, z), ()):
                    for f in fs:
                        h = g.compose(f)
                        res.cases += 1
                        key = (x, z, b"|".join(m.tobytes() for m in h.mats))
                        if key not in verdict:
                            verdict[key] = h.is_zero() or sc.is_strict_morphism(h)
                        if not verdict[key]:
                            res.fail((cat[x].name, cat[y].name, cat[z].name))

    return [_run("composition of cofibrations", cofib),
            _run("composition of fibrations", fib),
            _run("composition of strict morphisms", morph)]


def _map_checker(lat):
    cache = {}

    def ok(src, dst):
        key = (src, dst)
        r = cache.get(key)
        if r is None:
            (v, u), (v2, u2) = src, dst
            ker, img = lat.meet(v, u2), lat.join(v, u2)
            r = lat.in_G(ker, u) and ker in strict_set(lat, v, u) and img in strict_set(lat, v2, u2)
            cache[key] = r
        return r

    return ok


def diagram_cells(lat, bp: int, a: int):
    """Rows (top, middle, bottom) by columns (A, B, C) as (numerator, denominator) pairs."""
    top, meet, join = lat.top, lat.meet(a, bp), lat.join(a, bp)
    return ((meet, 0), (bp, 0), (join, a),
            (a, 0), (top, 0), (top, a),
            (a, meet), (top, bp), (top, join))


def check_main_lemma(model) -> list[CheckResult]:
    """Strictness in main diagrams, one B' per automorphism orbit and every A."""
    sc, cat = model.strict, model.catalog

    def full(res):
        for m in sc.G:
            lat = cat.lattice(m)
            ok = _map_checker(lat)
            strict = strict_flags(lat)
            for bp in orbit_representatives(cat, m, lat, strict):
                for a in strict:
                    c = diagram_cells(lat, bp, a)
                    res.cases += 1
                    good = all(lat.in_G(*x) for x in c)
                    good = good and all(ok(c[3 * r + k], c[3 * r + k + 1]) for r in range(3) for k in range(2))
                    good = good and all(ok(c[3 * r + k], c[3 * r + k + 3]) for r in range(2) for k in range(3))
                    if not good:
                        res.fail((cat[m].name, bp, a))

    def parallel(res):
        # any short exact sequence A -> B -> C in G, B' strict in B
        for m in sc.G:
            lat = cat.lattice(m)
            sub_seq = [a for a in range(len(lat)) if lat.in_G(a) and lat.in_G(lat.top, a)]
            for bp in orbit_representatives(cat, m, lat, strict_flags(lat)):
                for a in sub_seq:
                    meet, join = lat.meet(a, bp), lat.join(a, bp)
                    res.cases += 1
                    if not (lat.in_G(meet) and meet in strict_set(lat, a, 0)
                            and join in strict_set(lat, lat.top, a)):
                        res.fail((cat[m].name, bp, a))

    return [_run("main lemma (parallel columns)", parallel),
            _run("main diagram all strict", full)]


def check_subquotients(model) -> list[CheckResult]:
    sc, cat = model.strict, model.catalog

    def run(res):
        for m in sc.G:
            res.cases += 1
            a, b, c = (sc.strict_subquotients(m, h) for h in "abc")
            if not (a == b == c):
                res.fail(cat[m].name)

    return [_run("strict subquotients (a)=(b)=(c)", run)]


def generated_classes(model, count: int = PERP_CLASSES):
    """Distinct classes Filt(S), found breadth first by adding one G-member at a time.

    Every generated class is reached this way, since Filt(S ∪ {x}) =
    Filt(Filt(S) ∪ {x}).  Returns ``(classes, exhausted)`` where ``classes``
    holds ``(generators, class)`` pairs and ``exhausted`` says that no other
    generated class exists.
    """
    sc, cat = model.strict, model.catalog
    members = sorted(sc.G, key=lambda i: (cat[i].total_dim, i))
    start = frozenset(sc.filt_closure(()))
    found = [((), start)]
    seen = {start}
    queue = [((), start)]
    while queue:
        gens, cls = queue.pop(0)
        for x in members:
            if x in cls:
                continue
            new = frozenset(sc.filt_closure(set(gens) | {x}))
            if new in seen:
                continue
            seen.add(new)
            found.append((gens + (x,), new))
            queue.append((gens + (x,), new))
            if len(found) >= count:
                return found, False
    return found, True


def check_perp_bijection(model) -> list[CheckResult]:
    sc = model.strict

    def run(res):
        classes, exhausted = generated_classes(model)
        for gens, cls in classes:
            res.cases += 1
            if sc.perp_left(sc.perp_right(gens)) != set(cls):
                res.fail(tuple(model.catalog[x].name for x in gens))
        if res.cases < PERP_CLASSES and not exhausted:
            res.fail(f"only {res.cases} distinct generated classes")

    return [_run("perp bijection", run)]


# sampled stability points ---------------------------------------------------------------


def sample_points(model, reduced: bool = False, minimum: int = MIN_SAMPLES) -> list[tuple]:
    st = model.stability(reduced)
    n = st.space.rank
    pts: list[tuple] = []
    r = 1
    while True:
        grid = [p for p in itertools.product(range(-r, r + 1), repeat=n)]
        if len(grid) >= minimum // 2 or r >= 3:
            break
        r += 1
    pts += grid
    try:
        arr = model.chambers(reduced).arrangement
        for f in arr.facets:
            pts.append(tuple(f.sample))
    except PseudowallError:
        pass
    seen, out = set(), []
    for p in pts:
        if p not in seen:
            seen.add(p)
            out.append(p)
    r = 2
    while len(out) < minimum:
        for p in itertools.product(range(-r, r + 1), repeat=n):
            if p not in seen:
                seen.add(p)
                out.append(p)
        r += 1
    return out


def check_stability_classes(model, reduced: bool = False) -> list[CheckResult]:
    sc, st = model.strict, model.stability(reduced)
    z = st.zero
    names = ["P pseudo-torsion", "P extension-closed", "Pbar pseudo-torsion", "Pbar extension-closed",
             "Q pseudo-torsionfree", "Q extension-closed", "Qbar pseudo-torsionfree", "Qbar extension-closed",
             "W pseudo-wide", "P-perp = Qbar", "Pbar-perp = Q", "P-perp meet Pbar = W",
             "W = 0 iff P = Pbar"]
    results = {n: CheckResult(n) for n in names}
    for p in sample_points(model, reduced):
        c = st.classes_at(p)
        pperp = sc.perp_right(c.P)
        got = {
            names[0]: sc.is_pseudo_torsion_class(c.P)[0],
            names[1]: sc.is_extension_closed(c.P)[0],
            names[2]: sc.is_pseudo_torsion_class(c.Pbar)[0],
            names[3]: sc.is_extension_closed(c.Pbar)[0],
            names[4]: sc.is_pseudo_torsionfree(c.Q)[0],
            names[5]: sc.is_extension_closed(c.Q)[0],
            names[6]: sc.is_pseudo_torsionfree(c.Qbar)[0],
            names[7]: sc.is_extension_closed(c.Qbar)[0],
            names[8]: sc.is_pseudo_wide(c.W)[0],
            names[9]: pperp == set(c.Qbar),
            names[10]: sc.perp_right(c.Pbar) == set(c.Q),
            names[11]: (pperp & set(c.Pbar)) == set(c.W),
            names[12]: (c.W == {z}) == (c.P == c.Pbar),
        }
        for k, ok in got.items():
            results[k].cases += 1
            if not ok:
                results[k].fail(p)
    return list(results.values())


def check_walls(model, reduced: bool = False) -> list[CheckResult]:
    st = model.stability(reduced)
    bricks = st.bricks()

    def union(res):
        for p in sample_points(model, reduced):
            vals = st.values(p)
            on = bool(st.on_some_wall(p, vals))
            inner = any(st.wall_membership(p, b, vals) == INTERIOR for b in bricks)
            res.cases += 1
            if on != inner:
                res.fail(p)

    def boundary(res):
        for p in sample_points(model, reduced):
            vals = st.values(p)
            for m in st.on_some_wall(p, vals):
                if st.wall_membership(p, m, vals) == INTERIOR:
                    continue
                res.cases += 1
                q_ok = any(vals[q] == 0 and st.wall_membership(p, q, vals) == INTERIOR for q in st.sq[m])
                s_ok = any(vals[s] == 0 and st.wall_membership(p, s, vals) == INTERIOR for s in st.ss[m])
                if not (q_ok and s_ok):
                    res.fail((p, model.catalog[m].name))

    return [_run("wall union = brick interiors", union),
            _run("boundary points in interiors", boundary)]


def check_torsion_pairs(model, reduced: bool = False) -> list[CheckResult]:
    sc, st, cat = model.strict, model.stability(reduced), model.catalog
    classes = []
    for p in sample_points(model, reduced):
        c = st.classes_at(p)
        for s in (c.P, c.Pbar):
            if s not in classes:
                classes.append(s)

    def run(res):
        for P in classes:
            pperp = sc.perp_right(P)
            for m in sc.G:
                lat = cat.lattice(m)
                res.cases += 1
                try:
                    tm, _, _ = sc.torsion_pair_split(m, P)
                except PseudowallError as exc:
                    res.fail(str(exc))
                    continue
                strict = strict_flags(lat)
                for n in strict:
                    tn = [x for x in strict_flags(lat, n, 0)
                          if lat.cls(x) in P and lat.cls(n, x) in pperp]
                    if len(tn) != 1 or not lat.leq(tn[0], tm):
                        res.fail((cat[m].name, "sub", n))
                for k in strict:
                    tq = [y for y in strict_flags(lat, lat.top, k)
                          if lat.cls(y, k) in P and lat.cls(lat.top, y) in pperp]
                    if len(tq) != 1 or not lat.leq(lat.join(tm, k), tq[0]):
                        res.fail((cat[m].name, "quotient", k))

    return [_run("tM/fM existence, uniqueness, functoriality", run)]


# chambers and paths -----------------------------------------------------------------------


def check_chambers(model, reduced: bool = False) -> list[CheckResult]:
    def run(res):
        cc = model.chambers(reduced)
        cc.enumerate()
        for k, ok in sorted(cc.certificate.items()):
            res.cases += 1
            if not ok:
                res.fail(k)

    label = "reduced" if reduced else "ambient"
    return [_run(f"chamber certificates ({label})", run)]


def check_classical(model) -> list[CheckResult]:
    """With G = mod-Λ every chamber class is an honest torsion class."""

    def run(res):
        for r in model.chambers().enumerate():
            res.cases += 1
            if not model.strict.is_extension_closed(r.P)[0]:
                res.fail(r.id)

    return [_run("classical chambers are torsion classes", run)]


def check_green_paths(model) -> list[CheckResult]:
    out = []
    for name, (theta0, eta) in sorted(model.problem.paths.items()):
        out.extend(check_green_path(model, theta0, eta, name))
    return out


def check_green_path(model, theta0, eta, label: str = "path") -> list[CheckResult]:
    cat = model.catalog
    eng = model.green_path(theta0, eta)

    def fho(res):
        seq = eng.fho_sequence()
        res.cases += len(seq.members) or 1
        for v in eng.fho_violations(seq.members):
            res.fail(v)

    def hn(res):
        for m in eng.st.G:
            h = eng.hn_filtration(m)
            res.cases += 1
            for p in eng.check_hn(h):
                res.fail((cat[m].name, p))
            if cat[m].total_dim <= 5 and not eng.hn_unique(m):
                res.fail((cat[m].name, "not unique"))

    def membership(res):
        for m in eng.st.G:
            for t in eng.candidate_times():
                res.cases += 1
                eng.membership_via_hn(m, t)

    def extremal(res):
        rep = eng.fho_extremality_checks()
        res.cases += len(rep.maximality_witnesses) + len(eng.fho_sequence().members)
        for f in rep.maximality_failures:
            res.fail(("maximality", cat[f[0]].name, str(f[1])))
        for f in rep.minimality_failures:
            res.fail(("minimality", cat[f[0]].name, str(f[1])))

    def linear(res):
        st = eng.st
        for ev in eng.crossing_schedule():
            for x in ev.labels:
                for dt in (Fraction(1, 2), Fraction(1), Fraction(2)):
                    th = eng.path.at(ev.time + dt)
                    for q in st.sq[x]:
                        res.cases += 1
                        if st.evaluate(th, q) <= 0:
                            res.fail((cat[x].name, str(ev.time + dt), cat[q].name))

    return [_run(f"{label}: forward orthogonality", fho),
            _run(f"{label}: HN valid and unique", hn),
            _run(f"{label}: HN membership", membership),
            _run(f"{label}: FHO extremality", extremal),
            _run(f"{label}: quotients positive after crossing", linear)]


def run_suite(model, classical_model=None) -> list[CheckResult]:
    """All checks for one problem, memoized on the model.  With
    ``classical_model`` the same suite also runs for G = mod-A."""
    key = "_verify_results"
    out = getattr(model, key, None)
    if out is None:
        out = []
        out += check_composition(model)
        out += check_main_lemma(model)
        out += check_subquotients(model)
        out += check_perp_bijection(model)
        out += check_torsion_pairs(model)
        out += check_stability_classes(model)
        out += check_walls(model)
        out += check_chambers(model)
        out += check_green_paths(model)
        setattr(model, key, out)
    if classical_model is not None:
        extra = run_suite(classical_model) + check_classical(classical_model)
        out = out + [_renamed(r, "classical: ") for r in extra]
    return out


def _renamed(r: CheckResult, prefix: str) -> CheckResult:
    return replace(r, name=prefix + r.name)


def report(results) -> str:
    return "\n".join(r.line() for r in results) + "\n"
