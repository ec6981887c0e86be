from __future__ import annotations

from fractions import Fraction as Fr

import pytest

from conftest import idx
from pseudowall import crossing_schedule, fho_sequence, validate_green
from pseudowall.errors import PreconditionError


def walk(model):
    theta0, eta = model.problem.paths["walk"]
    return model.green_path(theta0, eta)


def test_validate_green():
    assert validate_green((0, 0), (1, 1)).eta == (1, 1)
    with pytest.raises(PreconditionError, match="coordinate 2"):
        validate_green((0, 0), (1, -1))
    with pytest.raises(PreconditionError, match="coordinate 1"):
        validate_green((0, 0), (0, 1))


def test_b2_schedule(b2):
    sched = walk(b2).crossing_schedule()
    got = [(e.time, set(b2.names(e.labels)), e.kind) for e in sched]
    assert got == [
        (Fr(1), {"I1"}, "thin"),
        (Fr(3, 2), {"I2", "2I2"}, "quasi-thin"),
        (Fr(5, 3), {"P1"}, "thin"),
    ]


def test_b2_fho(b2):
    seq = walk(b2).fho_sequence().members
    assert [(b2.name(b), t) for b, t in seq] == [
        ("I1", Fr(1)), ("I2", Fr(3, 2)), ("2I2", Fr(3, 2)), ("P1", Fr(5, 3))]


def test_a3_left_schedule(a3l):
    eng = walk(a3l)
    seq = [(a3l.name(b), t) for b, t in eng.fho_sequence().members]
    assert seq == [
        ("P2", Fr(3, 2)), ("S2+2P2", Fr(8, 5)), ("S2+P2", Fr(5, 3)), ("2S2+P2", Fr(7, 4)),
        ("3S2+P2", Fr(9, 5)), ("S2", Fr(2)), ("S3", Fr(4)),
    ]
    # P3 vanishes at 7/3 but P2 is already positive there; I2 vanishes at 3 after S2 turned positive
    for name, t in (("P3", Fr(7, 3)), ("I2", Fr(3))):
        assert eng.vanishing_time(idx(a3l, name)) == t
        assert not eng.in_W(idx(a3l, name), t)


def test_positive_start_has_no_crossings(a3l):
    path = validate_green((1, 1, 1), (1, 2, 3))
    st_ = a3l.stability()
    assert crossing_schedule(st_, path) == [] and fho_sequence(st_, path).members == ()
    # over the whole line the walls are still crossed, at negative times
    eng = a3l.green_path((1, 1, 1), (1, 2, 3))
    assert eng.times() and max(eng.times()) < 0


def test_walk_from_start_matches_whole_line(b2):
    eng = walk(b2)
    assert crossing_schedule(eng.st, eng.path) == eng.crossing_schedule()
    assert fho_sequence(eng.st, eng.path) == eng.fho_sequence()
    assert [e.time for e in eng.crossing_schedule(since=Fr(3, 2))] == [Fr(3, 2), Fr(5, 3)]


def test_hn_of_p3(a3l):
    eng = walk(a3l)
    hn = eng.hn_filtration(idx(a3l, "P3"))
    assert [a3l.name(x) for x in hn.layers] == ["S3", "P2"]
    assert hn.times == (Fr(4), Fr(3, 2))
    lat = a3l.catalog.lattice(idx(a3l, "P3"))
    assert [a3l.name(lat.cls(a)) for a in hn.chain] == ["P3", "P2", "0"]
    assert eng.hn_unique(idx(a3l, "P3"))


def test_hn_single_layer(b2):
    eng = walk(b2)
    hn = eng.hn_filtration(idx(b2, "2I2"))
    assert hn.times == (Fr(3, 2),) and hn.layers == (idx(b2, "2I2"),)
    # 2I2 has no proper strict subobjects, so it already lies in W0
    assert eng.in_W0(idx(b2, "2I2"), Fr(3, 2))
    hn = eng.hn_filtration(idx(b2, "I1"))
    assert hn.times == (Fr(1),)


def test_membership_via_hn(a3l):
    eng = walk(a3l)
    p3 = idx(a3l, "P3")
    assert eng.membership_via_hn(p3, 5)["in_P"]
    assert eng.membership_via_hn(p3, 1)["in_Q"]
    got = eng.membership_via_hn(p3, 3)
    assert not got["in_P"] and not got["in_Q"]


def test_extremality(a3l):
    eng = walk(a3l)
    rep = eng.fho_extremality_checks()
    assert rep.maximal and rep.minimal
    members = list(eng.fho_sequence().members)
    p2, p3, s3 = idx(a3l, "P2"), idx(a3l, "P3"), idx(a3l, "S3")
    assert (p2, Fr(3, 2), p3, Fr(3)) in eng.fho_violations(members + [(p3, Fr(3))])
    rest = [(b, t) for b, t in members if b != s3]
    assert eng.filtration_through(p3, rest) is None
    assert eng.filtration_through(p3, members) is not None


@pytest.mark.parametrize("fixture", ["b2", "a3l", "a3r"])
def test_hn_everywhere(fixture, request):
    model = request.getfixturevalue(fixture)
    eng = walk(model)
    times = eng.times()
    probes = set(times) | {(a + b) / 2 for a, b in zip(times, times[1:])}
    for m in model.catalog.G_members():
        if m == model.catalog.zero():
            continue
        hn = eng.hn_filtration(m)
        assert eng.check_hn(hn) == []
        if model.catalog[m].total_dim <= 5:
            assert eng.hn_unique(m)
        for t in probes:
            eng.membership_via_hn(m, t)


@pytest.mark.parametrize("fixture", ["b2", "a3l"])
def test_crossings_follow_chamber_adjacency(fixture, request):
    model = request.getfixturevalue(fixture)
    eng, cc = walk(model), model.chambers()
    times = eng.times()
    probes = [times[0] - 1] + [(a + b) / 2 for a, b in zip(times, times[1:])] + [times[-1] + 1]
    recs = [cc.chamber_of(eng.path.at(t)) for t in probes]
    assert recs[0].P == {model.catalog.zero()}
    assert recs[-1].P == set(model.catalog.G_members())
    for r, s in zip(recs, recs[1:]):
        assert s.id in {n for n, _ in r.neighbors}


def test_non_green_direction_rejected(b2):
    with pytest.raises(PreconditionError):
        b2.green_path((0, 0), (1, -1))
