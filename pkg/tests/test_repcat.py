from __future__ import annotations

import json

import numpy as np
import pytest

from conftest import idx
from pseudowall import load_fixture, parse_problem
from pseudowall.errors import PreconditionError, ProblemFileError
from pseudowall.problem import to_json
from pseudowall.quiver import (
    RepMorphism,
    decompose,
    direct_sum,
    hom_basis,
    hom_dim,
    identity,
    is_isomorphic,
    kernel_image_cokernel,
)


def rep(model, name):
    return model.catalog[idx(model, name)].rep


def test_endomorphisms_of_a_simple(a3r):
    assert hom_dim(rep(a3r, "S1"), rep(a3r, "S1")) == 1


def test_hom_right_orientation(a3r):
    assert hom_dim(rep(a3r, "P1"), rep(a3r, "I2")) == 1
    assert hom_dim(rep(a3r, "S3"), rep(a3r, "S1")) == 0


def test_hom_basis_elements_commute(a3l):
    for f in hom_basis(rep(a3l, "P2"), rep(a3l, "P3")):
        assert f.commutes()


def test_kernel_of_projective_onto_injective(a3l):
    p3, i2 = rep(a3l, "P3"), rep(a3l, "I2")
    (f,) = [f for f in hom_basis(p3, i2) if not f.is_zero()]
    k, im, c, _ = kernel_image_cokernel(f)
    assert is_isomorphic(k, rep(a3l, "S1"))
    assert is_isomorphic(im, i2) and c.total_dim == 0


def test_cokernel_of_projective_inclusion(a3l):
    (f,) = hom_basis(rep(a3l, "P2"), rep(a3l, "P3"))
    k, _, c, _ = kernel_image_cokernel(f)
    assert k.total_dim == 0
    assert is_isomorphic(c, rep(a3l, "S3"))


def test_identity_has_trivial_kernel_and_cokernel(a3l):
    m = rep(a3l, "P3")
    k, im, c, _ = kernel_image_cokernel(identity(m))
    assert k.total_dim == c.total_dim == 0 and is_isomorphic(im, m)


def test_decompose(a3l):
    p3, s2, s1 = rep(a3l, "P3"), rep(a3l, "S2"), rep(a3l, "S1")
    parts = decompose(direct_sum([p3, s2]))
    assert [x.dim_vector for x in parts] == [(0, 1, 0), (1, 1, 1)]
    assert is_isomorphic(parts[0], s2) and is_isomorphic(parts[1], p3)
    assert [x.dim_vector for x in decompose(direct_sum([s1, s1]))] == [(1, 0, 0)] * 2
    assert len(decompose(p3)) == 1 and hom_dim(p3, p3) == 1


def test_isomorphism(a3l):
    assert is_isomorphic(rep(a3l, "P3"), rep(a3l, "P3"))
    assert not is_isomorphic(rep(a3l, "S1"), rep(a3l, "S2"))


@pytest.mark.parametrize("scalars", [(1, 1), (0, 1), (1, 0), (0, 0)])
def test_other_realizations_of_p3(a3l, scalars):
    from pseudowall.quiver import Representation

    q = a3l.catalog.quiver
    other = Representation(q, (1, 1, 1), [[[scalars[0]]], [[scalars[1]]]])
    assert is_isomorphic(other, rep(a3l, "P3")) == (scalars == (1, 1))


def test_morphism_must_commute(a3l):
    p2, p3 = rep(a3l, "P2"), rep(a3l, "P3")
    with pytest.raises(PreconditionError):
        # identity at vertex 1 only: breaks the square at the arrow 2 -> 1
        RepMorphism(p3, p2, [[[1]], [[0]], np.zeros((0, 1))])


def test_torsion_class_members(b2, a3l, a3r):
    def names(m):
        return set(m.names(m.catalog.G_indecomposables()))

    assert names(a3l) == {"P2", "P3", "I2", "S2", "S3"}
    assert names(a3r) == {"S1", "P1", "I2", "S3"}
    assert names(b2) == {"P1", "I2", "I1"}


def test_dimension_vectors(b2, a3r):
    assert b2.catalog[idx(b2, "P1")].dim_vector == (1, 2)
    assert a3r.catalog[idx(a3r, "P1")].dim_vector == (1, 1, 1)
    for i, name in enumerate(["S1", "S2", "S3"]):
        assert a3r.catalog[idx(a3r, name)].dim_vector == tuple(int(j == i) for j in range(3))


def test_catalog_is_closed_under_sums(a3l):
    cat = a3l.catalog
    for e in cat.entries:
        assert e.total_dim <= cat.L
        assert e.in_G == all(cat.indec_in_G[j] for j, k in enumerate(e.mult) if k)
    assert cat[cat.zero()].total_dim == 0


def test_species_vertex_degrees(b2):
    cat = b2.catalog
    p1 = cat[idx(b2, "P1")].rep
    assert p1.dims == (2, 2)  # F_4 at vertex 1 is two-dimensional over F_2
    assert len(cat.indecomposables) == 4


def test_torsion_class_is_quotient_and_extension_closed(a3l, b2):
    for m in (a3l, b2):
        cat = m.catalog
        for b in cat.G_members():
            lat = cat.lattice(b)
            for a in range(len(lat)):
                assert lat.in_G(lat.top, a)
        g = set(cat.G_members())
        assert m.strict.is_extension_closed(g)[0]


# problem files ----------------------------------------------------------------------------

B2_TEXT = """pseudowall-problem v1
field 2
vertices 2
degrees 2 1
arrow 1 2
torsion perp 0,1
length 6
name 1,0 I1
point here 1,-1
path walk -1,-2 1,1
"""


def test_parse_text():
    p = parse_problem(B2_TEXT)
    assert (p.p, p.k, p.degrees, p.arrows, p.cogenerators, p.length) == (2, 1, (2, 1), ((0, 1),), ((0, 1),), 6)
    assert p.names == {(1, 0): "I1"}
    assert p.paths["walk"] == ((-1, -2), (1, 1))


def test_json_roundtrip():
    p = parse_problem(B2_TEXT)
    q = parse_problem(to_json(p))
    assert p == q
    assert q.points == p.points and q.paths == p.paths and q.names == p.names
    assert json.loads(to_json(p))["torsion"] == [[0, 1]]


@pytest.mark.parametrize("name", ["b2.species", "a3-left.quiver", "a3-right.quiver"])
def test_fixture_roundtrip(name):
    p = load_fixture(name)
    assert parse_problem(to_json(p)) == p


@pytest.mark.parametrize("text", [
    "nonsense v1\n",
    "pseudowall-problem v1\nfield 2\nvertices 2\ndegrees 1\nlength 3\n",
    "pseudowall-problem v1\nfield 2\nvertices 2\narrow 1 5\nlength 3\n",
    "pseudowall-problem v1\nfield 2\nvertices 2\ntorsion perp 1,a\nlength 3\n",
])
def test_bad_problem_files(text):
    with pytest.raises(ProblemFileError):
        parse_problem(text)
