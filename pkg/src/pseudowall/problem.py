"""Problem files: a field, a valued quiver, a torsion class and a length bound.

Line format (``#`` starts a comment, vertices are 1-based)::

    pseudowall-problem v1
    field 2              # p, optionally followed by k
    vertices 2
    degrees 2 1          # optional, default all 1
    arrow 1 2            # one line per arrow, source then target
    torsion perp 0,1     # G = ⊥X for the listed dimension vectors; or "torsion all"
    length 6
    name 1,0 I1          # optional display names by dimension vector
    point wall 1,-1      # optional named stability points
    path walk -1,-2 1,1  # optional named linear paths: θ0 then η

A JSON object with the same keys (``format``, ``version``, ``field``,
``vertices``, ``degrees``, ``arrows``, ``torsion``, ``length``, ``names``,
``points``, ``paths``) is accepted interchangeably.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from importlib import resources
from pathlib import Path

from .catalog import Catalog, TorsionSpec
from .errors import ProblemFileError
from .ffla import FieldSpec
from .quiver import ValuedQuiver

FORMAT = "pseudowall-problem"
VERSION = 1
FIXTURES = ("b2.species", "a3-left.quiver", "a3-right.quiver")


def parse_vector(text: str, kind=int) -> tuple:
    try:
        return tuple(kind(x) for x in text.strip().split(",") if x.strip() != "")
    except ValueError as exc:
        raise ProblemFileError(f"bad vector {text!r}") from exc


@dataclass(frozen=True)
class Problem:
    p: int
    k: int
    vertices: int
    degrees: tuple[int, ...]
    arrows: tuple[tuple[int, int], ...]  # 0-based
    cogenerators: tuple[tuple[int, ...], ...]
    length: int
    names: dict = field(default_factory=dict, compare=False, hash=False)
    points: dict = field(default_factory=dict, compare=False, hash=False)
    paths: dict = field(default_factory=dict, compare=False, hash=False)

    def quiver(self) -> ValuedQuiver:
        return ValuedQuiver(self.vertices, self.arrows, FieldSpec(self.p, self.k), self.degrees)

    def torsion(self) -> TorsionSpec:
        return TorsionSpec(self.cogenerators)

    def with_length(self, length: int) -> "Problem":
        return Problem(self.p, self.k, self.vertices, self.degrees, self.arrows, self.cogenerators,
                       length, self.names, self.points, self.paths)

    def without_torsion(self) -> "Problem":
        return Problem(self.p, self.k, self.vertices, self.degrees, self.arrows, (),
                       self.length, self.names, self.points, self.paths)

    def model(self) -> "Model":
        return Model(self)


def _check(problem: Problem) -> Problem:
    n = problem.vertices
    if n < 1:
        raise ProblemFileError("vertex count must be positive")
    if len(problem.degrees) != n:
        raise ProblemFileError(f"expected {n} degrees, got {len(problem.degrees)}")
    for v in problem.cogenerators:
        if len(v) != n:
            raise ProblemFileError(f"cogenerator {v} does not have {n} entries")
    for s, t in problem.arrows:
        if not (0 <= s < n and 0 <= t < n):
            raise ProblemFileError(f"arrow {s + 1}->{t + 1} is out of range")
    for key in problem.names:
        if len(key) != n:
            raise ProblemFileError(f"name key {key} does not have {n} entries")
    if problem.length < 0:
        raise ProblemFileError("length must be nonnegative")
    return problem


def parse_problem(text: str) -> Problem:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json(stripped)
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line.split())
    if not lines or lines[0][0] != FORMAT:
        raise ProblemFileError(f"missing '{FORMAT} v{VERSION}' header")
    if len(lines[0]) < 2 or lines[0][1] != f"v{VERSION}":
        raise ProblemFileError(f"unsupported version {' '.join(lines[0][1:])!r}")
    data = {"arrows": [], "names": {}, "points": {}, "paths": {}, "degrees": None, "torsion": None}
    for words in lines[1:]:
        key, args = words[0], words[1:]
        try:
            if key == "field":
                data["p"] = int(args[0])
                data["k"] = int(args[1]) if len(args) > 1 else 1
            elif key == "vertices":
                data["vertices"] = int(args[0])
            elif key == "degrees":
                data["degrees"] = tuple(int(x) for x in args)
            elif key == "arrow":
                data["arrows"].append((int(args[0]) - 1, int(args[1]) - 1))
            elif key == "torsion":
                if args[0] == "all":
                    data["torsion"] = ()
                elif args[0] == "perp":
                    data["torsion"] = tuple(parse_vector(a) for a in args[1:])
                else:
                    raise ProblemFileError(f"unknown torsion form {args[0]!r}")
            elif key == "length":
                data["length"] = int(args[0])
            elif key == "name":
                data["names"][parse_vector(args[0])] = args[1]
            elif key == "point":
                data["points"][args[0]] = parse_vector(args[1], Fraction)
            elif key == "path":
                data["paths"][args[0]] = (parse_vector(args[1], Fraction), parse_vector(args[2], Fraction))
            else:
                raise ProblemFileError(f"unknown key {key!r}")
        except (IndexError, ValueError) as exc:
            raise ProblemFileError(f"malformed line: {' '.join(words)}") from exc
    return _assemble(data)


def _assemble(data: dict) -> Problem:
    for req in ("p", "vertices", "length"):
        if req not in data:
            raise ProblemFileError(f"missing required key {req!r}")
    if data.get("torsion") is None:
        raise ProblemFileError("missing required key 'torsion'")
    n = data["vertices"]
    return _check(Problem(
        data["p"], data.get("k", 1), n, tuple(data.get("degrees") or (1,) * n),
        tuple(data["arrows"]), tuple(data["torsion"]), data["length"],
        dict(data["names"]), dict(data["points"]), dict(data["paths"]),
    ))


def _parse_json(text: str) -> Problem:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"invalid JSON: {exc}") from exc
    if obj.get("format") != FORMAT or obj.get("version") != VERSION:
        raise ProblemFileError(f"expected format {FORMAT!r} version {VERSION}")
    fld = obj.get("field", {})
    torsion = obj.get("torsion")
    data = {
        "p": fld.get("p"), "k": fld.get("k", 1), "vertices": obj.get("vertices"),
        "degrees": obj.get("degrees"), "length": obj.get("length"),
        "arrows": [(s - 1, t - 1) for s, t in obj.get("arrows", [])],
        "torsion": () if torsion == "all" else (None if torsion is None else [tuple(v) for v in torsion]),
        "names": {parse_vector(k): v for k, v in obj.get("names", {}).items()},
        "points": {k: tuple(Fraction(x) for x in v) for k, v in obj.get("points", {}).items()},
        "paths": {k: (tuple(Fraction(x) for x in v[0]), tuple(Fraction(x) for x in v[1]))
                  for k, v in obj.get("paths", {}).items()},
    }
    data = {k: v for k, v in data.items() if v is not None or k in ("degrees", "torsion")}
    return _assemble(data)


def to_json(problem: Problem) -> str:
    def vec(v):
        return ",".join(str(x) for x in v)

    obj = {
        "format": FORMAT, "version": VERSION,
        "field": {"p": problem.p, "k": problem.k},
        "vertices": problem.vertices, "degrees": list(problem.degrees),
        "arrows": [[s + 1, t + 1] for s, t in problem.arrows],
        "torsion": [list(v) for v in problem.cogenerators] if problem.cogenerators else "all",
        "length": problem.length,
        "names": {vec(k): v for k, v in problem.names.items()},
        "points": {k: [str(x) for x in v] for k, v in problem.points.items()},
        "paths": {k: [[str(x) for x in a], [str(x) for x in b]] for k, (a, b) in problem.paths.items()},
    }
    return json.dumps(obj, indent=2, sort_keys=True)


def load_problem(path) -> Problem:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc}") from exc
    return parse_problem(text)


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise ProblemFileError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return resources.files("pseudowall").joinpath("fixtures").joinpath(name).read_text()


def load_fixture(name: str) -> Problem:
    return parse_problem(fixture_text(name))


@lru_cache(maxsize=None)
def fixture_model(name: str, length: int | None = None, classical: bool = False) -> "Model":
    """Shared, cached model for a bundled fixture."""
    prob = load_fixture(name)
    if length is not None:
        prob = prob.with_length(length)
    if classical:
        prob = prob.without_torsion()
    return Model(prob)


class Model:
    """Lazily built computational objects for one problem."""

    def __init__(self, problem: Problem):
        self.problem = problem
        self._stab: dict = {}
        self._ch: dict = {}

    @cached_property
    def catalog(self) -> Catalog:
        p = self.problem
        return Catalog(p.quiver(), p.torsion(), p.length, p.names)

    @cached_property
    def strict(self):
        from .strictcat import StrictCategory

        return StrictCategory(self.catalog)

    @cached_property
    def k0(self):
        from .stability import reduced_K0

        return reduced_K0(self.strict)

    def stability(self, reduced: bool = False):
        from .stability import Stability

        if reduced not in self._stab:
            space = self.k0.space(self.catalog) if reduced else None
            self._stab[reduced] = Stability(self.strict, space)
        return self._stab[reduced]

    def chambers(self, reduced: bool = False):
        from .chambers import ChamberComplex

        if reduced not in self._ch:
            self._ch[reduced] = ChamberComplex(self.stability(reduced))
        return self._ch[reduced]

    def green_path(self, theta0, eta, reduced: bool = False):
        from .greenpath import GreenPathEngine, validate_green

        return GreenPathEngine(self.stability(reduced), validate_green(theta0, eta))

    def name(self, idx: int) -> str:
        return self.catalog[idx].name

    def names(self, idxs) -> list[str]:
        cat = self.catalog
        return [cat[i].name for i in sorted(idxs, key=lambda i: (cat[i].total_dim, i))]
