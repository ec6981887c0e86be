from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import idx, named
from pseudowall import fixture_model
from pseudowall.errors import PreconditionError
from pseudowall.stability import psi_is_injective, psi_is_surjective


def test_wall_membership(b2, a3r):
    stb = b2.stability()
    assert stb.wall_membership((1, -1), idx(b2, "I2")) == "interior"
    assert stb.wall_membership((1, -1), idx(b2, "I1")) == "off"
    for m in b2.catalog.G_members():
        assert stb.wall_membership((0, 0), m) != "off"
    sta = a3r.stability()
    assert sta.wall_membership((2, -5, 0), idx(a3r, "S3")) == "interior"


def test_wall_descriptor_of_brick(b2):
    d = b2.stability().wall_descriptor(idx(b2, "2I2"))
    assert d.normal == (2, 2)
    assert set(d.inequalities) <= {(2, 2), (0, 0)}


def test_extreme_points(a3l):
    stb, g, zero = a3l.stability(), set(a3l.catalog.G_members()), {a3l.catalog.zero()}
    c = stb.classes_at((1, 2, 3))
    assert (set(c.P), set(c.Q), set(c.W)) == (g, zero, zero)
    c = stb.classes_at((-1, -2, -3))
    assert (set(c.P), set(c.Q), set(c.W)) == (zero, g, zero)


def test_quasi_thin_point(b2):
    stb = b2.stability()
    c = stb.classes_at((1, -1))
    assert set(c.W) == named(b2, "0", "I2", "2I2")
    assert set(c.P) == set(b2.catalog.add_of(named(b2, "I1")))
    assert set(c.Pbar) == set(b2.catalog.add_of(named(b2, "I1", "I2")))
    assert set(c.W0) == named(b2, "0", "I2", "2I2")
    kind = stb.wall_kind_at((1, -1))
    assert (kind.kind, kind.generator) == ("quasi-thin", idx(b2, "I2"))


def test_same_wall_for_multiples(b2):
    stb = b2.stability()
    pts = [(a, -a) for a in range(1, 4)] + [(0, 0), (1, 1), (3, -1), (1, -2)]
    for p in pts:
        assert (stb.wall_membership(p, idx(b2, "I2")) == "off") == (stb.wall_membership(p, idx(b2, "2I2")) == "off")


def test_wall_kinds(a3r, b2):
    kind = a3r.stability().wall_kind_at((1, 1, 0))
    assert (kind.kind, kind.generator) == ("thin", idx(a3r, "S3"))
    assert b2.stability().wall_kind_at((0, 0)).kind == "thick"
    assert b2.stability().wall_kind_at((3, -1)).kind == "none"


def test_region_membership(b2, a3r):
    stb = b2.stability()
    r = stb.region_membership(idx(b2, "I1"), (0, 5))
    assert r.in_Ubar and not r.in_U and r.boundary_wall == idx(b2, "I1")
    r = a3r.stability().region_membership(idx(a3r, "S1"), (1, 0, 0))
    assert r.in_U and not r.in_V
    r = stb.region_membership(idx(b2, "P1"), (-1, -1))
    assert r.in_V and r.in_Vbar
    with pytest.raises(PreconditionError):
        stb.region_membership(idx(b2, "P2"), (1, 1))


def test_pseudo_bricks(b2):
    bricks = set(b2.stability().bricks())
    assert named(b2, "I1", "I2", "P1", "2I2") <= bricks
    assert not bricks & named(b2, "2I1", "3I1")


def test_reduced_k0_classical():
    m = fixture_model("a3-left.quiver", 4, classical=True)
    assert m.k0.rank == 3 and m.k0.torsion == ()
    assert psi_is_injective(m.k0) and psi_is_surjective(m.k0, 3)


def test_reduced_k0_a3_left(a3l):
    k = a3l.k0
    assert k.rank == 3 and set(k.basis) == named(a3l, "P2", "S2", "S3")
    co = {a3l.name(g): k.coordinates[g] for g in k.generators}
    pos = {a3l.name(b): i for i, b in enumerate(k.basis)}

    def vec(*names):
        v = [0, 0, 0]
        for n in names:
            v[pos[n]] += 1
        return tuple(v)

    assert co["P3"] == vec("P2", "S3")
    assert co["I2"] == vec("S2", "S3")
    assert co["2S2"] == vec("S2", "S2")


def test_reduced_k0_b2(b2):
    k = b2.k0
    assert k.rank == 3 and set(k.basis) == named(b2, "P1", "I2", "I1")
    # psi sends each basis class to its dimension vector, and cannot be injective in rank 2
    for b, row in zip(k.basis, k.psi):
        assert row == b2.catalog[b].dim_vector
    assert not psi_is_injective(k)
    assert k.coordinates[idx(b2, "2I2")] == tuple(2 * x for x in k.coordinates[idx(b2, "I2")])


def test_reduced_k0_saturation():
    assert fixture_model("b2.species", 7).k0.rank == fixture_model("b2.species").k0.rank == 3


def test_reduced_space_classes(b2):
    st_r = b2.stability(reduced=True)
    assert st_r.space.rank == 3
    # coordinates follow the basis of the reduced group: the point is positive on I2 only
    pos = {b: i for i, b in enumerate(b2.k0.basis)}
    theta = [Fraction(-1)] * 3
    theta[pos[idx(b2, "I2")]] = Fraction(1)
    c = st_r.classes_at(theta)
    assert set(c.P) == set(b2.catalog.add_of(named(b2, "I2")))


# properties ------------------------------------------------------------------------------

MODELS = {name: fixture_model(name) for name in ("b2.species", "a3-right.quiver")}


@st.composite
def points(draw):
    name = draw(st.sampled_from(sorted(MODELS)))
    n = MODELS[name].catalog.quiver.n
    return name, tuple(draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n)))


@given(points())
def test_class_sets_are_nested(pt):
    name, theta = pt
    c = MODELS[name].stability().classes_at(theta)
    assert c.P <= c.Pbar and c.Q <= c.Qbar and c.W0 <= c.W
    assert c.W == c.Pbar & c.Qbar
    assert (c.W == {MODELS[name].catalog.zero()}) == (c.P == c.Pbar and c.Q == c.Qbar)


@given(points())
def test_dualities(pt):
    name, theta = pt
    m = MODELS[name]
    sc, c = m.strict, m.stability().classes_at(theta)
    assert sc.perp_right(c.P) == set(c.Qbar)
    assert sc.perp_right(c.Pbar) == set(c.Q)
    assert sc.perp_right(c.P) & set(c.Pbar) == set(c.W)
    assert sc.is_pseudo_torsion_class(c.P)[0] and sc.is_extension_closed(c.P)[0]
    assert sc.is_pseudo_torsionfree(c.Q)[0] and sc.is_extension_closed(c.Q)[0]
    assert sc.is_pseudo_wide(c.W)[0]


@given(points())
def test_walls_are_covered_by_brick_interiors(pt):
    name, theta = pt
    stb = MODELS[name].stability()
    on = stb.on_some_wall(theta)
    interiors = [b for b in stb.bricks() if stb.wall_membership(theta, b) == "interior"]
    assert bool(on) == bool(interiors)
