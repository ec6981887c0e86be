from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pseudowall.errors import CapacityError, PreconditionError
from pseudowall.ffla import (
    FieldSpec,
    Subspace,
    enumerate_subspaces,
    gaussian_binomial,
    gf,
    rref_rank_kernel,
    smith_invariants,
    smith_normal_form,
)

F2 = gf(FieldSpec(2))
F3 = gf(FieldSpec(3))
F4 = gf(FieldSpec(2, 2))


def test_identity_has_full_rank():
    rank, ker = rref_rank_kernel(np.eye(2, dtype=int), F2)
    assert (rank, ker.dim) == (2, 0)


def test_zero_map_kernel_is_everything():
    rank, ker = rref_rank_kernel(np.zeros((2, 3), dtype=int), F2)
    assert (rank, ker.dim) == (0, 3)


def test_repeated_row():
    rank, ker = rref_rank_kernel([[1, 1], [1, 1]], F2)
    assert (rank, ker.dim) == (1, 1)
    assert ker.contains_vectors(np.array([[1, 1]]))


def test_plane_over_f2_has_five_subspaces():
    subs = enumerate_subspaces(2, F2)
    assert len(subs) == 5
    assert [s.dim for s in subs] == [0, 1, 1, 1, 2]


def test_f4_line_is_simple():
    # J^2 + J + 1 = 0 makes F_2^2 a one-dimensional F_4-space
    j = np.array([[0, 1], [1, 1]])
    assert not ((j @ j + j + np.eye(2, dtype=int)) % 2).any()
    assert [s.dim for s in enumerate_subspaces(2, F2, [j])] == [0, 2]


@pytest.mark.parametrize("field", [F2, F3, F4])
def test_line_has_two_subspaces(field):
    assert len(enumerate_subspaces(1, field)) == 2


def test_enumeration_capacity():
    with pytest.raises(CapacityError):
        enumerate_subspaces(9, F2)


def test_field_guards():
    with pytest.raises(PreconditionError):
        FieldSpec(4)
    with pytest.raises(CapacityError):
        FieldSpec(2, 5)
    with pytest.raises(PreconditionError):
        FieldSpec(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2


def test_f4_arithmetic_is_a_field():
    for a in range(1, 4):
        assert F4.mul(a, F4.inv(a)) == 1
    # distributivity on all triples
    for a in range(4):
        for b in range(4):
            for c in range(4):
                assert F4.mul(a, F4.add(b, c)) == F4.add(F4.mul(a, b), F4.mul(a, c))


def test_smith_examples():
    assert smith_normal_form(np.eye(3, dtype=int))[0] == [1, 1, 1]
    assert smith_normal_form([[2, 0], [0, 3]])[0] == [1, 6]
    assert smith_normal_form(np.zeros((2, 2), dtype=int))[0] == [0, 0]


# properties ------------------------------------------------------------------------------

fields = st.sampled_from([F2, F3, F4])


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    field = draw(fields)
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.integers(0, field.q - 1), min_size=r * c, max_size=r * c))
    return field, np.array(entries, dtype=np.int64).reshape(r, c)


@given(matrices())
def test_rank_nullity(fm):
    field, m = fm
    rank, ker = rref_rank_kernel(m, field)
    assert rank + ker.dim == m.shape[1]
    if ker.dim:
        assert not field.matmul(m, ker.basis.T).any()


@given(fields, st.integers(1, 3))
def test_subspace_count_is_gaussian(field, n):
    if field.q**n > 256:
        return
    subs = enumerate_subspaces(n, field)
    assert len(subs) == sum(gaussian_binomial(n, k, field.q) for k in range(n + 1))
    assert len({s.key for s in subs}) == len(subs)


@given(st.data())
def test_subspaces_closed_under_sum_and_meet(data):
    field = data.draw(fields)
    subs = enumerate_subspaces(2 if field.q > 2 else 3, field)
    keys = {s.key for s in subs}
    a = data.draw(st.sampled_from(subs))
    b = data.draw(st.sampled_from(subs))
    meet = a.intersect(b)
    join = Subspace.from_rows(field, a.n, np.vstack([a.basis, b.basis]))
    assert meet.key in keys and join.key in keys
    assert a.dim + b.dim == meet.dim + join.dim
    assert a.contains(meet) and join.contains(a) and join.contains(b)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_divisibility_and_transforms(rows):
    m = np.array(rows, dtype=object)
    diag, (s, t) = smith_normal_form(m)
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[: len(nz)] == nz
    d = s.dot(m).dot(t)
    for i in range(d.shape[0]):
        for j in range(d.shape[1]):
            assert d[i, j] == (diag[i] if i == j else 0)
    assert smith_invariants(m) == nz
