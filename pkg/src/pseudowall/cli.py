"""Command line interface.

Every subcommand renders a plain-text report from a problem file (or a
bundled fixture given as ``fixture:NAME``).  Reports are deterministic so
they can be diffed against golden copies.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .errors import PreconditionError, PseudowallError
from .problem import FIXTURES, Model, fixture_model, load_problem, parse_vector


def open_model(spec: str, length: int | None = None) -> Model:
    if spec.startswith("fixture:"):
        return fixture_model(spec.split(":", 1)[1], length)
    prob = load_problem(spec)
    if length is not None:
        prob = prob.with_length(length)
    return Model(prob)


def _vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _set(model: Model, s) -> str:
    return "{" + ", ".join(model.names(s)) + "}"


def _point(model: Model, text: str):
    if text in model.problem.points:
        return model.problem.points[text]
    return parse_vector(text, Fraction)


# reports ------------------------------------------------------------------------------------


def catalog_report(model: Model) -> str:
    cat, sc = model.catalog, model.strict
    out = [f"catalog: {len(cat)} modules with total dimension <= {cat.L}, {len(sc.G)} in G"]
    out.append("index  name           dims        in_G  strict subobjects / strict quotients")
    for e in cat.entries:
        line = f"{e.index:>5}  {e.name:<14} {_vec(e.dim_vector):<11} {'yes' if e.in_G else 'no ':<4}"
        if e.in_G:
            line += f"  {_set(model, sc.nonzero_strict_sub_classes(e.index))}"
            line += f" / {_set(model, sc.nonzero_strict_quotient_classes(e.index))}"
        out.append(line.rstrip())
    ind = cat.G_indecomposables()
    out.append("")
    out.append("strict morphisms among G-indecomposables (row -> column):")
    out.append("        " + " ".join(f"{cat[j].name:>6}" for j in ind))
    for i in ind:
        out.append(f"{cat[i].name:>6}  " + " ".join(
            f"{'x' if sc.strict_hom_exists(i, j) else '.':>6}" for j in ind))
    return "\n".join(out) + "\n"


def classify_report(model: Model, theta, reduced: bool = False) -> str:
    st = model.stability(reduced)
    c = st.classes_at(theta)
    kind = st.wall_kind_at(theta)
    out = [f"theta = {_vec(theta)} ({st.space.kind} space)"]
    for label, s in (("P", c.P), ("Pbar", c.Pbar), ("Q", c.Q), ("Qbar", c.Qbar), ("W", c.W), ("W0", c.W0)):
        out.append(f"{label:<5} {_set(model, s)}")
    gen = "" if kind.generator is None else f" generator {model.name(kind.generator)}"
    out.append(f"wall  {kind.kind}{gen}")
    return "\n".join(out) + "\n"


def walls_report(model: Model, reduced: bool = False) -> str:
    st = model.stability(reduced)
    out = [f"pseudo-walls of pseudo-bricks ({st.space.kind} space, axes {', '.join(st.space.axis_labels)})"]
    for b in sorted(st.bricks(), key=lambda i: (model.catalog[i].total_dim, i)):
        d = st.wall_descriptor(b)
        ineq = "; ".join(_vec(v) for v in d.inequalities if v != d.normal) or "none"
        out.append(f"D({model.name(b)}): normal {_vec(d.normal)}, theta.v <= 0 for v in {ineq}")
    return "\n".join(out) + "\n"


def chambers_report(model: Model, reduced: bool = False) -> str:
    cc = model.chambers(reduced)
    recs = cc.enumerate()
    out = [f"{len(recs)} pseudo-chambers ({cc.st.space.kind} space)"]
    for r in recs:
        out.append(f"P{r.id}: sample {_vec(r.sample)}  P = {_set(model, r.P)}")
        for nid, labels in r.neighbors:
            walls = ", ".join(f"D({model.name(x)})" for x in labels) or "(boundary face)"
            out.append(f"    -> P{nid} across {walls}")
    out.append("certificates: " + ", ".join(f"{k}={'ok' if v else 'FAILED'}" for k, v in sorted(cc.certificate.items())))
    return "\n".join(out) + "\n"


def greenpath_report(model: Model, theta0, eta) -> str:
    eng = model.green_path(theta0, eta)
    out = [f"path theta0 = {_vec(eng.path.theta0)}, eta = {_vec(eng.path.eta)}"]
    out.append("crossings:")
    for ev in eng.crossing_schedule():
        out.append(f"  t = {ev.time}: {', '.join(model.names(ev.labels))} ({ev.kind})")
    out.append("FHO sequence: " + ", ".join(f"{model.name(b)}@{t}" for b, t in eng.fho_sequence().members))
    out.append("HN filtrations:")
    for m in sorted(eng.st.G, key=lambda i: (model.catalog[i].total_dim, i)):
        if m == eng.st.zero:
            continue
        hn = eng.hn_filtration(m)
        layers = ", ".join(f"{model.name(x)}@{t}" for x, t in zip(hn.layers, hn.times))
        out.append(f"  {model.name(m)}: {layers}")
    rep = eng.fho_extremality_checks()
    out.append(f"extremality: maximal={rep.maximal} minimal={rep.minimal}")
    return "\n".join(out) + "\n"


def ghosts_report(model: Model) -> str:
    gs = model.strict.find_ghosts()
    out = [f"{len(gs)} ghosts"]
    for g in gs:
        out.append(f"  {model.name(g.middle)} ->> {model.name(g.quotient)}  (missing {model.name(g.missing)})")
    return "\n".join(out) + "\n"


def k0_report(model: Model) -> str:
    from .stability import psi_is_injective, psi_is_surjective

    k = model.k0
    out = [f"reduced K0: {len(k.generators)} generators, {len(k.relations)} relations"]
    out.append(f"rank {k.rank}, torsion {list(k.torsion) or 'none'}")
    out.append("basis: " + ", ".join(model.name(b) for b in k.basis))
    out.append("coordinates:")
    for g in sorted(k.generators, key=lambda i: (model.catalog[i].total_dim, i)):
        out.append(f"  {model.name(g)}: {_vec(k.coordinates[g])}")
    out.append("psi rows (dimension vectors of the basis): " + ", ".join(_vec(r) for r in k.psi))
    out.append(f"psi injective: {psi_is_injective(k)}, surjective: {psi_is_surjective(k, model.catalog.quiver.n)}")
    return "\n".join(out) + "\n"


def verify_report(model: Model, classical: Model | None = None) -> tuple[str, bool]:
    from .verify import report, run_suite

    res = run_suite(model, classical)
    return report(res), all(r.passed for r in res)


# entry point ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pseudowall", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("problem", help=f"problem file, or fixture:NAME with NAME in {', '.join(FIXTURES)}")
        s.add_argument("--length", type=int, default=None, help="override the length bound")
        return s

    add("catalog", "list the catalog with strictness tables")
    s = add("classify", "class sets at a stability point")
    s.add_argument("--theta", required=True, help="comma-separated coordinates or a named point")
    s.add_argument("--reduced", action="store_true")
    s = add("walls", "pseudo-wall descriptors")
    s.add_argument("--reduced", action="store_true")
    s = add("chambers", "pseudo-chambers with adjacency")
    s.add_argument("--reduced", action="store_true")
    s = add("greenpath", "crossings, FHO sequence and HN filtrations along a linear path")
    s.add_argument("--theta0", help="start point")
    s.add_argument("--eta", help="direction, every coordinate positive")
    s.add_argument("--path", help="named path from the problem file")
    add("ghosts", "non-strict epimorphisms coming from missing objects")
    add("k0", "presentation of the reduced Grothendieck group")
    s = add("render", "SVG diagram")
    s.add_argument("--diagram", default="ambient", choices=("ambient", "reduced"))
    s.add_argument("--pole", default=None, help="pole direction for rank 3, default -1,-1,-1")
    s.add_argument("--segments", type=int, default=128)
    s.add_argument("-o", "--output", default=None)
    s = add("verify", "run the invariant suite")
    s.add_argument("--classical-length", type=int, default=4,
                   help="length bound for the G = mod-A regression (0 to skip)")
    return p


def run(args) -> tuple[str, int]:
    model = open_model(args.problem, args.length)
    cmd = args.command
    if cmd == "catalog":
        return catalog_report(model), 0
    if cmd == "classify":
        return classify_report(model, _point(model, args.theta), args.reduced), 0
    if cmd == "walls":
        return walls_report(model, args.reduced), 0
    if cmd == "chambers":
        return chambers_report(model, args.reduced), 0
    if cmd == "greenpath":
        if args.path:
            if args.path not in model.problem.paths:
                raise PreconditionError(f"no path named {args.path!r} in the problem file")
            theta0, eta = model.problem.paths[args.path]
        else:
            if not (args.theta0 and args.eta):
                raise PreconditionError("give --theta0 and --eta, or --path")
            theta0, eta = parse_vector(args.theta0, Fraction), parse_vector(args.eta, Fraction)
        return greenpath_report(model, theta0, eta), 0
    if cmd == "ghosts":
        return ghosts_report(model), 0
    if cmd == "k0":
        return k0_report(model), 0
    if cmd == "render":
        from .render import DiagramSpec, render

        pole = parse_vector(args.pole, Fraction) if args.pole else None
        svg = render(model, DiagramSpec(args.diagram, pole=pole, segments=args.segments))
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(svg)
            return f"wrote {args.output}\n", 0
        return svg, 0
    if cmd == "verify":
        classical = None
        if args.classical_length:
            classical = Model(model.problem.without_torsion().with_length(args.classical_length))
        text, ok = verify_report(model, classical)
        return text, 0 if ok else 1
    raise AssertionError(cmd)


VECTOR_OPTIONS = ("--theta", "--theta0", "--eta", "--pole")


def _join_vector_options(argv: list[str]) -> list[str]:
    """Let ``--eta -1,2`` through: argparse would read ``-1,2`` as an option."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in VECTOR_OPTIONS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_join_vector_options(argv))
    try:
        text, code = run(args)
    except PseudowallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
