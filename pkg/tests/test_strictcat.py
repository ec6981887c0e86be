from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from conftest import idx, named
from pseudowall import fixture_model
from pseudowall.errors import PreconditionError
from pseudowall.ffla import Subspace
from pseudowall.quiver import hom_basis, identity
from pseudowall.strictcat import strict_flags, strict_in


def copies(model, b: str, a: str, quotient: str | None = None) -> list[int]:
    """Lattice indices of submodules of ``b`` isomorphic to ``a`` (with the given quotient)."""
    lat = model.catalog.lattice(idx(model, b))
    out = [x for x in range(len(lat)) if lat.cls(x) == idx(model, a)]
    if quotient is not None:
        out = [x for x in out if lat.cls(lat.top, x) == idx(model, quotient)]
    return out


def test_membership(b2, a3l):
    assert b2.strict.in_torsion_class(idx(b2, "I2"))
    assert not b2.strict.in_torsion_class(idx(b2, "P2"))
    assert not a3l.strict.in_torsion_class(idx(a3l, "S1"))
    assert a3l.strict.in_torsion_class(a3l.catalog[idx(a3l, "P3")].rep)


def test_simple_summand_is_strict(a3l):
    lat = a3l.catalog.lattice(idx(a3l, "S2+P3"))
    (s2,) = copies(a3l, "S2+P3", "S2")
    rel = a3l.strict.is_strict_subobject(idx(a3l, "S2+P3"), lat.subs[s2])
    assert rel.is_subobject and rel.is_strict and rel.witness is None


def test_split_sequences_are_not_strict(a3l):
    b = idx(a3l, "S2+P3")
    lat = a3l.catalog.lattice(b)
    (p3,) = copies(a3l, "S2+P3", "P3")
    rel = a3l.strict.is_strict_subobject(b, lat.subs[p3])
    assert rel.is_subobject and not rel.is_strict
    # the witness cuts P3 down to something outside G
    w = lat.find(rel.witness)
    assert not lat.in_G(lat.meet(p3, w))
    for a, c in (("P3", "S2"), ("P2", "I2")):
        seqs = a3l.strict.strict_sequences(idx(a3l, a), b, idx(a3l, c))
        assert seqs and not any(flag for _, flag in seqs)


def test_projective_inclusion_is_strict(a3l):
    seqs = a3l.strict.strict_sequences(idx(a3l, "P2"), idx(a3l, "P3"), idx(a3l, "S3"))
    assert [flag for _, flag in seqs] == [True]


def test_zero_is_strict_everywhere(a3l):
    for m in a3l.catalog.G_members():
        lat = a3l.catalog.lattice(m)
        assert lat.bottom in strict_flags(lat) and lat.top in strict_flags(lat)


def test_subobject_must_be_a_submodule(a3l):
    m = idx(a3l, "P3")
    lat = a3l.catalog.lattice(m)
    # the vertex-1 line of P3 is a submodule, the vertex-3 line is not
    bad = Subspace.from_rows(a3l.catalog.field, 3, [[0, 0, 1]])
    assert bad.key not in lat.index
    with pytest.raises(PreconditionError):
        a3l.strict.is_strict_subobject(m, bad)


def test_strict_subobjects_and_quotients(b2, a3l):
    assert b2.strict.strict_subobjects(idx(b2, "2I2")) == sorted(named(b2, "0", "2I2"))
    assert b2.strict.strict_quotients(idx(b2, "2I2")) == sorted(named(b2, "0", "2I2"))
    assert set(a3l.strict.strict_quotients(idx(a3l, "P3"))) == named(a3l, "0", "S3", "P3")
    for s in ("S2", "S3"):
        for how in "abc":
            assert set(a3l.strict.strict_subquotients(idx(a3l, s), how)) == named(a3l, "0", s)


def test_b2_indecomposables_have_no_proper_strict_quotients(b2):
    # the G-indecomposables are P1, I2, I1 (P2 lies outside G)
    for name in ("P1", "I2", "I1"):
        m = idx(b2, name)
        assert set(b2.strict.strict_quotients(m)) == {b2.catalog.zero(), m}


def _morphisms(model, a, b):
    return [f for f in hom_basis(model.catalog[idx(model, a)].rep, model.catalog[idx(model, b)].rep)]


def test_strict_morphisms(a3l):
    sc = a3l.strict
    for m in a3l.catalog.G_members():
        assert sc.is_strict_morphism(identity(a3l.catalog[m].rep))
    (epi,) = _morphisms(a3l, "P2", "S2")
    assert not sc.is_strict_morphism(epi)
    (inc,) = _morphisms(a3l, "P2", "P3")
    assert sc.is_strict_morphism(inc)


def test_no_strict_morphisms_between_b2_indecomposables(b2):
    ind = b2.catalog.G_indecomposables()
    for x in ind:
        for y in ind:
            if x != y:
                assert not b2.strict.strict_hom_exists(x, y)
                assert not b2.strict.strict_hom_exists_exhaustive(x, y)


def test_main_diagram_rejects_non_strict_input(b2):
    lat = b2.catalog.lattice(idx(b2, "2I2"))
    bp = copies(b2, "2I2", "I2")[0]
    (a,) = [x for x in range(len(lat)) if lat.cls(lat.top, x) == idx(b2, "I1")][:1]
    with pytest.raises(PreconditionError, match="strict"):
        b2.strict.main_diagram(idx(b2, "2I2"), lat.subs[bp], lat.subs[a])


def test_main_diagram_with_zero_subobject(a3l):
    lat = a3l.catalog.lattice(idx(a3l, "P3"))
    (a,) = copies(a3l, "P3", "P2")
    d = a3l.strict.main_diagram_at(lat, lat.bottom, a)
    assert all(r.total_dim == 0 for r in d.grid[0])
    assert [r.dims for r in d.grid[1]] == [r.dims for r in d.grid[2]]
    assert d.all_in_G() and d.all_strict()


def test_main_diagram_projective_pair(a3l):
    lat = a3l.catalog.lattice(idx(a3l, "P3"))
    (p2,) = copies(a3l, "P3", "P2")
    d = a3l.strict.main_diagram(idx(a3l, "P3"), lat.subs[p2], lat.subs[p2])
    assert lat.cls(*d.cells[1][0]) == idx(a3l, "P2")
    assert lat.cls(*d.cells[0][0]) == idx(a3l, "P2")
    assert lat.cls(*d.cells[0][2]) == idx(a3l, "0")
    assert lat.cls(*d.cells[1][2]) == lat.cls(*d.cells[2][2]) == idx(a3l, "S3")
    assert d.all_in_G() and d.all_strict()
    for row in d.horizontal + d.vertical:
        assert all(f.commutes() for f in row)


def test_perpendicular_classes(b2, a3r):
    sc = b2.strict
    assert sc.perp_left([]) == set(b2.catalog.G_members())
    left = sc.perp_left([idx(b2, "I1")])
    ind = {m for m in left if b2.catalog[m].is_indecomposable}
    assert ind == named(b2, "P1", "I2")
    assert set(b2.catalog.add_of(ind)) <= left
    s1perp = a3r.strict.perp_right([idx(a3r, "S1")])
    assert s1perp == a3r.strict.filt_closure(named(a3r, "I2", "S3"))


def test_filt_closure_extremes(a3l):
    sc = a3l.strict
    assert sc.filt_closure([]) == {a3l.catalog.zero()}
    g = set(a3l.catalog.G_members())
    assert sc.filt_closure(g) == g


def test_torsion_pair_split(a3l):
    sc = a3l.strict
    p = sc.filt_closure(named(a3l, "S3"))
    p3 = idx(a3l, "P3")
    _, t, f = sc.torsion_pair_split(p3, p)
    assert (t, f) == (a3l.catalog.zero(), p3)
    s3 = idx(a3l, "S3")
    assert sc.torsion_pair_split(s3, p)[1:] == (s3, a3l.catalog.zero())


def test_pseudo_torsion_classes(b2):
    sc, cat = b2.strict, b2.catalog
    zero = {cat.zero()}
    for check in (sc.is_pseudo_torsion_class, sc.is_pseudo_torsionfree, sc.is_pseudo_wide):
        assert check(zero)[0]
    p1_i1 = cat.add_of(named(b2, "P1", "I1"))
    assert sc.is_pseudo_torsion_class(p1_i1)[0]
    assert not sc.is_extension_closed(p1_i1)[0]
    assert sc.is_pseudo_torsion_class(cat.add_of(named(b2, "I2")))[0]
    ok, why = sc.is_pseudo_torsion_class(named(b2, "0", "I1+I2"))
    assert not ok and why is not None


def test_relative_perp(b2):
    sc = b2.strict
    w = b2.stability().classes_at((1, -1)).W
    assert set(w) == named(b2, "0", "I2", "2I2")
    assert sc.relative_perp([b2.catalog.zero()], w) == set(w)
    assert sc.relative_perp(w, w) == {b2.catalog.zero()}
    assert sc.relative_perp(named(b2, "I2"), w) == named(b2, "0", "2I2")


def ghost_names(model):
    return {(model.name(g.middle), model.name(g.quotient), model.name(g.missing))
            for g in model.strict.find_ghosts()}


def test_ghosts(b2, a3l, a3r):
    assert ghost_names(a3l) == {("P2", "S2", "S1"), ("P3", "I2", "S1")}
    assert ghost_names(a3r) == {("P1", "S1", "P2"), ("I2", "S1", "S2")}
    assert ghost_names(b2) == {("I2", "I1", "P2"), ("P1", "I2", "P2")}
    for g in a3l.strict.find_ghosts():
        lat = a3l.catalog.lattice(g.middle)
        a = lat.find(g.embedding)
        assert not lat.in_G(a) and lat.in_G(lat.top, a)


def test_no_ghosts_without_torsion():
    m = fixture_model("a3-left.quiver", 3, classical=True)
    assert m.strict.find_ghosts() == []


def test_pseudo_bricks(b2, a3l):
    assert b2.strict.is_pseudo_brick(idx(b2, "2I2"))
    assert a3l.strict.is_pseudo_brick(idx(a3l, "S2+P3"))
    assert a3l.strict.is_pseudo_brick(idx(a3l, "S2"))
    assert not a3l.strict.is_pseudo_brick(idx(a3l, "2S2"))


# lattice-level properties ---------------------------------------------------------------

A3L = fixture_model("a3-left.quiver")
SMALL = [m for m in A3L.catalog.G_members() if 0 < A3L.catalog[m].total_dim <= 4]


@given(st.sampled_from(SMALL), st.data())
def test_parallel_inclusions(m, data):
    lat = A3L.catalog.lattice(m)
    a = data.draw(st.sampled_from(strict_flags(lat)))
    b = data.draw(st.sampled_from([x for x in range(len(lat)) if lat.in_G(x)]))
    assert strict_in(lat, lat.meet(a, b), b)[0]


@given(st.sampled_from(SMALL), st.data())
def test_cofibrations_compose(m, data):
    lat = A3L.catalog.lattice(m)
    b = data.draw(st.sampled_from(strict_flags(lat)))
    a = data.draw(st.sampled_from(strict_flags(lat, b)))
    assert a in strict_flags(lat)


@given(st.sampled_from(SMALL))
def test_subquotient_characterizations_agree(m):
    sc = A3L.strict
    assert sc.strict_subquotients(m, "a") == sc.strict_subquotients(m, "b") == sc.strict_subquotients(m, "c")


@given(st.sets(st.sampled_from(A3L.catalog.G_indecomposables()), max_size=3))
def test_perp_bijection(gens):
    sc = A3L.strict
    assert sc.perp_left(sc.perp_right(sc.filt_closure(gens))) == sc.filt_closure(gens)
    assert sc.is_pseudo_torsion_class(sc.filt_closure(gens))[0]
