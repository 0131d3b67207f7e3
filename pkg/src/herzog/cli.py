"""Command-line front end.

Every command writes one JSON report (to stdout or ``--out``) carrying a
provenance block.  Exit codes: 0 success, 1 a verdict failed, 2 bad input,
3 a budget was exhausted or a verdict is inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .collapse import collapse, collapse_all_branches, is_connected, is_tree
from .corpus import example_corpus, small_graphs, SQUARE, TRIANGLE
from .errors import DegreeCeilingExceeded, HerzogError, InternalConsistencyError, SizeError
from .geometry import (
    DEFAULT_POWER_BOUND,
    ProjectivePoint,
    curve_summary,
    fiber_over_coordinate_point,
    is_nonsingular_at,
    is_smooth_projective_curve,
    project_from_p0,
)
from .groebner import (
    DEFAULT_DEGREE_CEILING,
    buchberger,
    eliminate,
    initial_ideal,
    minimal_basis,
    reduced_basis,
    zero_reduce,
)
from .io import as_complex, as_graph, graph_to_json, read_complex_file, read_ideal_file, read_sweep_file
from .poly import Field, MonomialOrder
from .search import CandidateFamily, sweep, verify_non_tree_is_singular
from .simplicial import (
    a_invariant_negative,
    complex_of,
    hochster_degree_zero,
    is_acyclic,
    is_cohen_macaulay,
    minimal_nonfaces,
    reduced_homology,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class Outcome:
    def __init__(self, report: dict, status: int = EXIT_OK, table: str | None = None):
        self.report = report
        self.status = status
        self.table = table


def _field_arg(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _order_arg(text: str) -> MonomialOrder:
    try:
        return MonomialOrder.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=_order_arg, default=None, help="lex | degrevlex")
    common.add_argument("--field", type=_field_arg, default=None, help="QQ | Fp:<p>")
    common.add_argument("--degree-ceiling", type=_positive, default=DEFAULT_DEGREE_CEILING)
    common.add_argument("--power-bound", type=_positive, default=DEFAULT_POWER_BOUND)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--jobs", type=_positive, default=1)
    common.add_argument("--out", type=Path, default=None, help="write the JSON report here")
    common.add_argument("--table", action="store_true", help="also print a readable table on stderr")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")

    p = argparse.ArgumentParser(prog="herzog", description="Groebner degenerations of projective curves")
    p.add_argument("--version", action="version", version=f"herzog {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)
    for verb, arg, helptext in [
        ("gb", "ideal", "reduced Groebner basis and initial ideal"),
        ("initial", "ideal", "initial ideal and its complex"),
        ("eliminate", "ideal", "eliminate the first --drop variables"),
        ("homology", "complex", "reduced homology and Cohen-Macaulay data of a complex"),
        ("collapse", "complex", "free-vertex collapse of a graph"),
        ("smooth", "ideal", "smoothness of a projective curve"),
        ("genus", "ideal", "Hilbert polynomial, degree, genus and smoothness"),
        ("project", "ideal", "projection from P0"),
        ("fiber", "ideal", "point of X over P'_a"),
        ("sweep", "config", "run a candidate sweep"),
    ]:
        sp = sub.add_parser(verb, parents=[common], help=helptext)
        sp.add_argument(arg, type=Path)
        if verb == "eliminate":
            sp.add_argument("--drop", type=_positive, default=1)
            sp.add_argument("--route", choices=["block", "extract"], default="block")
        if verb == "fiber":
            sp.add_argument("--a", type=_positive, required=True)
    sub.add_parser("verify-examples", parents=[common], help="re-certify the built-in examples")
    return p


def provenance(args, sha: str | None, order=None, field=None) -> dict:
    return {
        "tool": f"herzog {__version__}",
        "verb": args.verb,
        "input_sha256": sha,
        "order": order.name if order is not None else None,
        "field": field.name if field is not None else None,
        "seed": args.seed or 0,
        "degree_ceiling": args.degree_ceiling,
        "power_bound": args.power_bound,
    }


def _load_ideal(args):
    f = read_ideal_file(args.ideal, args.field, args.order)
    return f, provenance(args, f.sha256, f.order, f.field)


def _strs(polys, order):
    return [g.to_str(order) for g in polys]


def cmd_gb(args) -> Outcome:
    f, prov = _load_ideal(args)
    G = reduced_basis(buchberger(f.ideal, f.order, degree_ceiling=args.degree_ceiling))
    M = initial_ideal(G)
    return Outcome({"provenance": prov, "basis": _strs(G, f.order), "initial_ideal": str(M),
                    "squarefree": M.is_squarefree()})


def cmd_initial(args) -> Outcome:
    f, prov = _load_ideal(args)
    G = buchberger(f.ideal, f.order, degree_ceiling=args.degree_ceiling)
    M = initial_ideal(G)
    rep = {"provenance": prov, "initial_ideal": str(M), "squarefree": M.is_squarefree(), "complex": None}
    if M.is_squarefree():
        delta = complex_of(M, f.ring.nvars)
        rep["complex"] = {
            "n": f.ring.nvars - 1,
            "facets": sorted(sorted(s) for s in delta.facets),
            "minimal_nonfaces": [sorted(s) for s in minimal_nonfaces(delta)],
            "dimension": delta.dimension,
        }
    return Outcome(rep)


def cmd_eliminate(args) -> Outcome:
    f, prov = _load_ideal(args)
    drop = list(range(args.drop))
    basis = None
    if args.route == "extract":
        basis = zero_reduce(minimal_basis(buchberger(f.ideal, f.order, degree_ceiling=args.degree_ceiling)))
    J = eliminate(f.ideal, drop, route=args.route, basis=basis, order=f.order, degree_ceiling=args.degree_ceiling)
    return Outcome({"provenance": prov, "route": args.route, "dropped": [f"X{i}" for i in drop],
                    "generators": _strs(J.generators, f.order)})


def _load_complex(args):
    obj, sha = read_complex_file(args.complex)
    return obj, provenance(args, sha, None, args.field)


def cmd_homology(args) -> Outcome:
    obj, prov = _load_complex(args)
    delta = as_complex(obj)
    fields = [args.field] if args.field else [Field.parse("QQ"), Field.parse("Fp:2")]
    per_field = {}
    for fld in fields:
        h = reduced_homology(delta, fld)
        per_field[fld.name] = {
            "reduced_homology": {str(i): r for i, r in sorted(h.ranks.items())},
            "acyclic": is_acyclic(delta, fld),
            "cohen_macaulay": is_cohen_macaulay(delta, fld),
            "a_invariant_negative": a_invariant_negative(delta, fld),
            "local_cohomology_degree_0": {str(k): v for k, v in sorted(hochster_degree_zero(delta, fld).items())},
        }
    return Outcome({"provenance": prov, "dimension": delta.dimension, "f_vector": delta.f_vector(),
                    "fields": per_field})


def cmd_collapse(args) -> Outcome:
    obj, prov = _load_complex(args)
    G = as_graph(obj, str(args.complex))
    r = collapse(G)
    rep = {"provenance": prov, "graph": graph_to_json(G), "ell": r.ell, "removed": list(r.removed),
           "core": sorted(r.core), "n": G.n, "is_tree": is_tree(G), "ell_equals_n": r.ell == G.n,
           "branches": None}
    try:
        outs = collapse_all_branches(G)
        rep["branches"] = {
            "outcomes": sorted([o.ell, list(o.removed), sorted(o.core)] for o in outs),
            "agree": len({o.invariant() for o in outs}) == 1,
        }
    except SizeError:
        pass
    return Outcome(rep)


def _basis(args, f):
    return buchberger(f.ideal, f.order, degree_ceiling=args.degree_ceiling)


def cmd_smooth(args) -> Outcome:
    f, prov = _load_ideal(args)
    G = _basis(args, f)
    v = is_smooth_projective_curve(None, f.order, basis=G, power_bound=args.power_bound,
                                   degree_ceiling=args.degree_ceiling, seed=args.seed or 0)
    return Outcome({"provenance": prov, **v.to_json()}, EXIT_BUDGET if v.is_inconclusive else EXIT_OK)


def cmd_genus(args) -> Outcome:
    f, prov = _load_ideal(args)
    s = curve_summary(None, f.order, basis=_basis(args, f), power_bound=args.power_bound,
                      degree_ceiling=args.degree_ceiling, seed=args.seed or 0)
    return Outcome({"provenance": prov, **s.to_json()}, EXIT_BUDGET if s.smooth == "inconclusive" else EXIT_OK)


def cmd_project(args) -> Outcome:
    f, prov = _load_ideal(args)
    G = zero_reduce(minimal_basis(_basis(args, f)))
    J = project_from_p0(f.ideal, G)
    return Outcome({"provenance": prov, "zero_reduced_basis": _strs(G, f.order),
                    "projection": _strs(J.generators, f.order),
                    "note": "variables renumbered: X_i of the projection is X_{i+1} of the input"})


def cmd_fiber(args) -> Outcome:
    f, prov = _load_ideal(args)
    G = zero_reduce(minimal_basis(_basis(args, f)))
    r = fiber_over_coordinate_point(f.ideal, G, args.a)
    return Outcome({"provenance": prov, **r.to_json()}, EXIT_OK if r.verdicts_agree else EXIT_FAIL)


def _sweep_status(rep) -> int:
    if not rep.passed and (rep.alarms or rep.p0_mismatches or rep.genus_violations):
        return EXIT_FAIL
    if rep.inconclusive or rep.truncated:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_sweep(args) -> Outcome:
    fam, sha = read_sweep_file(args.config, args.field, args.order)
    if args.seed is not None and fam.mode == "random":
        fam.seed = args.seed
    prov = provenance(args, sha, fam.order, fam.field)
    prov.update(degree_ceiling=fam.degree_ceiling, power_bound=fam.power_bound, seed=fam.seed)
    G = fam.graph
    non_tree = is_connected(G) and not is_tree(G)
    if non_tree:
        rep = verify_non_tree_is_singular(G, fam, jobs=args.jobs)
    else:
        rep = sweep(fam, jobs=args.jobs, expect_smooth=True)
    out = {"provenance": prov, "graph_is_tree": is_tree(G), **rep.to_json(timing=args.timing)}
    return Outcome(out, _sweep_status(rep), rep.table())


def _check(name: str, ok: bool, detail=None) -> dict:
    return {"name": name, "ok": bool(ok), "detail": detail}


def cmd_verify_examples(args) -> Outcome:
    checks = []
    for entry in example_corpus():
        G = buchberger(entry.ideal, entry.order, degree_ceiling=args.degree_ceiling)
        M = initial_ideal(G)
        delta = complex_of(M, entry.ideal.ring.nvars) if M.is_squarefree() else None
        s = curve_summary(None, entry.order, basis=G, power_bound=args.power_bound,
                          degree_ceiling=args.degree_ceiling, seed=args.seed or 0)
        P0 = ProjectivePoint.coordinate(G.ring.nvars, 0, G.ring.field)
        ok = (delta is not None and as_graph(delta) == entry.graph and s.smooth is True and s.genus == 0
              and is_nonsingular_at(G, P0) == entry.graph.is_free(0))
        checks.append(_check(entry.name, ok, {"initial_ideal": str(M), **s.to_json()}))
    for name, G in small_graphs().items():
        r = collapse(G)
        checks.append(_check(f"collapse/{name}", (r.ell == G.n) == is_tree(G), {"ell": r.ell, "n": G.n}))
    for name, G, fld in [("triangle/Fp:2", TRIANGLE, "Fp:2"), ("triangle/Fp:3", TRIANGLE, "Fp:3"),
                         ("cycle4/Fp:2", SQUARE, "Fp:2")]:
        fam = CandidateFamily(G, field=Field.parse(fld))
        rep = verify_non_tree_is_singular(G, fam)
        checks.append(_check(f"sweep/{name}", rep.passed, rep.to_json()["counts"]))
    ok = all(c["ok"] for c in checks)
    table = "\n".join(f"{'PASS' if c['ok'] else 'FAIL'}  {c['name']}" for c in checks)
    prov = provenance(args, None, args.order, args.field)
    return Outcome({"provenance": prov, "passed": ok, "checks": checks}, EXIT_OK if ok else EXIT_FAIL, table)


COMMANDS = {
    "gb": cmd_gb, "initial": cmd_initial, "eliminate": cmd_eliminate, "homology": cmd_homology,
    "collapse": cmd_collapse, "smooth": cmd_smooth, "genus": cmd_genus, "project": cmd_project,
    "fiber": cmd_fiber, "sweep": cmd_sweep, "verify-examples": cmd_verify_examples,
}


def _json_default(x):
    if isinstance(x, (set, frozenset, tuple)):
        return sorted(x)
    return str(x)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        out = COMMANDS[args.verb](args)
    except DegreeCeilingExceeded as exc:
        print(f"herzog: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InternalConsistencyError as exc:
        print(f"herzog: consistency check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (HerzogError, OSError, ValueError) as exc:
        print(f"herzog: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = json.dumps(out.report, indent=2, sort_keys=True, default=_json_default) + "\n"
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    if args.table and out.table:
        print(out.table, file=sys.stderr)
    return out.status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
