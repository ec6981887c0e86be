from __future__ import annotations

import re

import pytest

from pseudowall import Model, fixture_model, load_fixture
from pseudowall.cli import main
from pseudowall.render import DiagramSpec, count_regions, count_wall_curves, render


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_command(capsys):
    code, out, _ = run(capsys, "catalog", "fixture:b2.species")
    assert code == 0
    assert out.startswith("catalog: 27 modules with total dimension <= 6, 9 in G")
    table = out.split("row -> column):\n")[1].splitlines()
    # strict morphisms among P1, I2, I1: only the identities
    marks = [line.split()[1:] for line in table[1:]]
    assert marks == [["x", ".", "."], [".", "x", "."], [".", ".", "x"]]


def test_classify_origin_puts_everything_in_w(capsys, b2):
    code, out, _ = run(capsys, "classify", "fixture:b2.species", "--theta", "0,0")
    assert code == 0
    w = re.search(r"^W +\{(.*)\}$", out, re.M).group(1).split(", ")
    assert set(w) == set(b2.names(b2.catalog.G_members()))
    assert out.rstrip().endswith("wall  thick")


def test_classify_named_point(capsys):
    code, out, _ = run(capsys, "classify", "fixture:b2.species", "--theta", "quasi_thin")
    assert code == 0 and "wall  quasi-thin generator I2" in out


def test_walls_and_k0(capsys):
    _, out, _ = run(capsys, "walls", "fixture:b2.species")
    assert "D(2I2): normal (2, 2)" in out
    _, out, _ = run(capsys, "k0", "fixture:b2.species")
    assert "rank 3" in out and "psi injective: False" in out


def test_chambers_command(capsys):
    code, out, _ = run(capsys, "chambers", "fixture:b2.species")
    assert code == 0 and out.startswith("7 pseudo-chambers (ambient space)")
    assert "certificates: P_constant=ok, P_distinct=ok, convex=ok, facets_constant=ok" in out


def test_greenpath_command(capsys):
    code, out, _ = run(capsys, "greenpath", "fixture:b2.species", "--theta0", "-1,-2", "--eta", "1,1")
    assert code == 0
    assert "FHO sequence: I1@1, I2@3/2, 2I2@3/2, P1@5/3" in out
    _, named_out, _ = run(capsys, "greenpath", "fixture:b2.species", "--path", "walk")
    assert named_out == out


def test_ghosts_command(capsys):
    code, out, _ = run(capsys, "ghosts", "fixture:a3-left.quiver")
    assert code == 0 and out.splitlines()[0] == "2 ghosts"
    assert "P2 ->> S2  (missing S1)" in out and "P3 ->> I2  (missing S1)" in out


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "fixture:b2.species")
    assert code == 0 and "FAIL" not in out
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_problem_file(tmp_path, capsys):
    path = tmp_path / "b2.txt"
    path.write_text("pseudowall-problem v1\nfield 2\nvertices 2\ndegrees 2 1\narrow 1 2\n"
                    "torsion perp 0,1\nlength 6\n")
    code, out, _ = run(capsys, "chambers", str(path))
    assert code == 0 and out.startswith("7 pseudo-chambers")


@pytest.mark.parametrize("argv, status", [
    (["greenpath", "fixture:b2.species", "--theta0", "0,0", "--eta", "1,-1"], 4),
    (["catalog", "/nonexistent/problem.txt"], 2),
    (["render", "fixture:a3-left.quiver", "--pole", "0,0,1"], 4),
    (["greenpath", "fixture:b2.species", "--path", "nowhere"], 4),
])
def test_exit_codes(capsys, argv, status):
    code, out, err = run(capsys, *argv)
    assert code == status and out == "" and err.startswith("error: ")


def test_pole_error_suggests_a_pole(capsys):
    _, _, err = run(capsys, "render", "fixture:a3-left.quiver", "--pole", "0,0,1")
    assert "lies on a wall" in err and "(-2,-3,-5)" in err


def test_rank_four_exit_code(tmp_path, capsys):
    path = tmp_path / "a4.txt"
    path.write_text("pseudowall-problem v1\nfield 2\nvertices 4\narrow 1 2\narrow 2 3\narrow 3 4\n"
                    "torsion all\nlength 2\n")
    code, _, err = run(capsys, "chambers", str(path))
    assert code == 5 and "rank" in err


def test_render_to_file(tmp_path, capsys):
    out = tmp_path / "b2.svg"
    code, text, _ = run(capsys, "render", "fixture:b2.species", "-o", str(out))
    assert code == 0 and text == f"wrote {out}\n"
    assert out.read_text().startswith('<?xml version="1.0"')


# rendering ------------------------------------------------------------------------------


def test_b2_planar_diagram(b2):
    svg = render(b2, DiagramSpec())
    assert count_regions(svg) == len(b2.chambers().enumerate()) == 7
    assert count_wall_curves(svg) == 4
    # I1+P1 shares the dimension line of I2 and its wall is the same ray
    assert "D(I2) = D(I1+P1) = D(2I2)" in svg


def test_classical_b2_diagram():
    m = fixture_model("b2.species", classical=True)
    svg = render(m, DiagramSpec())
    assert (count_wall_curves(svg), count_regions(svg)) == (4, 6)


def test_empty_wall_set_is_one_region():
    text = "pseudowall-problem v1\nfield 2\nvertices 2\narrow 1 2\ntorsion perp 1,0 0,1\nlength 2\n"
    from pseudowall import parse_problem

    svg = render(Model(parse_problem(text)), DiagramSpec())
    assert (count_wall_curves(svg), count_regions(svg)) == (0, 1)


@pytest.mark.parametrize("name, space, walls", [
    ("b2.species", "reduced", 5),
    ("a3-left.quiver", "ambient", 12),
    ("a3-right.quiver", "ambient", 10),
])
def test_stereographic_diagrams(name, space, walls):
    m = fixture_model(name)
    svg = render(m, DiagramSpec(space, pole=(-2, -3, -5)))
    assert count_wall_curves(svg) == walls
    assert count_regions(svg) == len(m.chambers(space == "reduced").enumerate())
    assert "<polyline" in svg


def test_render_is_deterministic():
    a = render(Model(load_fixture("b2.species")), DiagramSpec())
    b = render(Model(load_fixture("b2.species")), DiagramSpec())
    assert a == b
    m = fixture_model("a3-right.quiver")
    assert render(m, DiagramSpec(segments=32)) == render(m, DiagramSpec(segments=32))
