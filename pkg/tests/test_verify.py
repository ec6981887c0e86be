from __future__ import annotations

import pytest

from pseudowall import fixture_model
from pseudowall.verify import CheckResult, generated_classes, report, run_suite, sample_points

FIXTURES = ["b2.species", "a3-left.quiver", "a3-right.quiver"]
CLASSICAL_LENGTH = 4


def suite(name):
    return run_suite(fixture_model(name), fixture_model(name, CLASSICAL_LENGTH, classical=True))


@pytest.mark.parametrize("name", FIXTURES)
def test_invariant_suite(name):
    results = suite(name)
    failed = [r.line() for r in results if not r.passed]
    assert not failed, "\n".join(failed)
    names = {r.name for r in results}
    for expected in ("main lemma (parallel columns)", "perp bijection", "P-perp = Qbar",
                     "walk: FHO extremality", "classical: main lemma (parallel columns)",
                     "classical: classical chambers are torsion classes"):
        assert expected in names


@pytest.mark.parametrize("name", FIXTURES)
def test_enough_classes_and_points(name):
    m = fixture_model(name)
    classes, _ = generated_classes(m)
    assert len({c for _, c in classes}) >= 20
    assert len(sample_points(m)) >= 50


def test_small_categories_exhaust_their_classes():
    m = fixture_model("b2.species", CLASSICAL_LENGTH, classical=True)
    classes, exhausted = generated_classes(m)
    # mod-A for B2 has six torsion classes
    assert exhausted and len(classes) == 6


def test_report_lines():
    ok = CheckResult("fine", cases=2)
    bad = CheckResult("broken", cases=1, failures=["x"])
    empty = CheckResult("nothing")
    assert ok.passed and not bad.passed and not empty.passed
    text = report([ok, bad])
    assert text.splitlines()[0].startswith("PASS  fine")
    assert text.splitlines()[1].startswith("FAIL  broken") and "e.g. ['x']" in text
