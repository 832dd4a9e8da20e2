"""Command-line entry point.

Exit codes: 0 success, 2 infeasible, 3 dynamics not irreducible, 4 instance
too large for the oracle, 64 usage error, 65 unreadable or invalid input file.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import analysis, bench, codesign, generator, graph, oracle
from .errors import Infeasible, NotIrreducible, TooLarge, ValidationError
from .model import (
    Selection,
    instance_from_dict,
    instance_to_dict,
    load_selection,
    patterns_from_dict,
    save_instance,
    selection_to_dict,
    validate_selection,
)

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_NOT_IRREDUCIBLE = 3
EXIT_TOO_LARGE = 4
EXIT_USAGE = 64
EXIT_DATAERR = 65


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _instance(path: str):
    try:
        return instance_from_dict(_read_json(path))
    except ValidationError as exc:
        raise InputError(f"{path}: {exc}") from None


def _patterns(path: str):
    try:
        return patterns_from_dict(_read_json(path))
    except ValidationError as exc:
        raise InputError(f"{path}: {exc}") from None


def _selection(path: str | None, inst=None) -> Selection | None:
    if path is None:
        return None
    try:
        sel = load_selection(path)
        if inst is not None:
            validate_selection(inst, sel)
        return sel
    except (OSError, json.JSONDecodeError, ValidationError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(obj) -> None:
    print(json.dumps(obj))


def cmd_solve(args) -> int:
    report = codesign.solve_codesign(_instance(args.instance))
    _emit(report.as_dict())
    return EXIT_OK


def cmd_solve_io(args) -> int:
    inst = _instance(args.instance)
    inputs, cost = codesign.solve_io(inst.A, inst.B, inst.cost_u)
    out = selection_to_dict(Selection(inputs=inputs), cost)
    out["controllable"] = analysis.is_structurally_controllable(inst.A, inst.B.keep_cols(inputs))
    _emit(out)
    return EXIT_OK


def cmd_solve_cc(args) -> int:
    inst = _instance(args.instance)
    feedback, cost = codesign.solve_cc(inst.A, inst.B, inst.C, inst.cost_f)
    sel = Selection.from_feedback(feedback)
    out = selection_to_dict(sel, cost)
    out["verified"] = bool(
        analysis.has_no_sfms(inst.A, inst.B, inst.C, sel.feedback_pattern(inst.p, inst.m))
    )
    _emit(out)
    return EXIT_OK


def cmd_check_sfm(args) -> int:
    inst = _instance(args.instance)
    sel = _selection(args.selection, inst)
    if sel is None:
        sel = Selection.from_feedback(inst.finite_pairs())
    _emit(analysis.selection_has_no_sfms(inst, sel).as_dict())
    return EXIT_OK


def _restricted(args):
    A, B, C = _patterns(args.instance)
    if args.selection is not None:
        sel = _selection(args.selection)
        B, C = B.keep_cols(sel.inputs), C.keep_rows(sel.outputs)
    return A, B, C


def cmd_check_ctrb(args) -> int:
    A, B, _ = _restricted(args)
    print("true" if analysis.is_structurally_controllable(A, B) else "false")
    return EXIT_OK


def cmd_check_obsv(args) -> int:
    A, _, C = _restricted(args)
    print("true" if analysis.is_structurally_observable(A, C) else "false")
    return EXIT_OK


def cmd_check_irreducible(args) -> int:
    A, _, _ = _patterns(args.instance)
    print("true" if graph.is_irreducible(A) else "false")
    return EXIT_OK


def cmd_oracle(args) -> int:
    report = oracle.brute_force_codesign(
        _instance(args.instance), max_pairs=args.max_pairs, max_io=args.max_io
    )
    _emit(report.as_dict())
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = generator.GenSpec(
        n=args.n,
        p=args.p,
        m=args.m,
        edge_density=args.density,
        irreducible=not args.reducible,
        cost_range=(args.cost_min, args.cost_max),
        inf_fraction=args.inf_frac,
        seed=args.seed,
        backbone=args.backbone,
    )
    try:
        inst = generator.generate(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.out:
        save_instance(inst, args.out)
    else:
        _emit(instance_to_dict(inst))
    return EXIT_OK


def cmd_export_dot(args) -> int:
    inst = _instance(args.instance)
    sel = _selection(args.selection, inst)
    D = graph.build_digraph(inst.A, inst.B, inst.C, inst.full_feedback())
    bold, dashed_v, dashed_e = set(), set(), set()
    if sel is not None:
        report = analysis.selection_has_no_sfms(inst, sel)
        bold = report.certificate_edges()
        chosen = {graph.u(i) for i in sel.inputs} | {graph.y(j) for j in sel.outputs}
        dashed_v = {v for v in D.vertices if v.kind != "x" and v not in chosen}
        links = {(graph.y(j), graph.u(i)) for i, j in sel.feedback}
        for a, b in D.edges:
            if a in dashed_v or b in dashed_v or (a.kind == "y" and (a, b) not in links):
                dashed_e.add((a, b))
    text = graph.to_dot(D, bold=bold, dashed_vertices=dashed_v, dashed_edges=dashed_e)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad --sizes {args.sizes!r}") from None
    text = bench.to_csv(bench.run_bench(sizes, seed=args.seed, repeats=args.repeats))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="structcodesign", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, func, helptext in [
        ("solve", cmd_solve, "minimum-cost inputs, outputs and feedback links"),
        ("solve-io", cmd_solve_io, "minimum-cost input selection for controllability"),
        ("solve-cc", cmd_solve_cc, "minimum-cost feedback links with all inputs/outputs given"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("instance")
        p.set_defaults(func=func)

    p = sub.add_parser("check-sfm", help="test a selection for structurally fixed modes")
    p.add_argument("instance")
    p.add_argument("--selection")
    p.set_defaults(func=cmd_check_sfm)

    for name, func in [("check-ctrb", cmd_check_ctrb), ("check-obsv", cmd_check_obsv)]:
        p = sub.add_parser(name)
        p.add_argument("instance")
        p.add_argument("--selection")
        p.set_defaults(func=func)

    p = sub.add_parser("check-irreducible")
    p.add_argument("instance")
    p.set_defaults(func=cmd_check_irreducible)

    p = sub.add_parser("oracle", help="exhaustive search, any dynamics pattern")
    p.add_argument("instance")
    p.add_argument("--max-pairs", type=int, default=oracle.MAX_PAIRS)
    p.add_argument("--max-io", type=int, default=oracle.MAX_IO)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--inf-frac", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cost-min", type=int, default=0)
    p.add_argument("--cost-max", type=int, default=20)
    p.add_argument("--backbone", choices=generator.BACKBONES, default="cycle")
    p.add_argument("--reducible", action="store_true", help="skip the strongly connected backbone")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("export-dot", help="Graphviz rendering of the closed-loop digraph")
    p.add_argument("instance")
    p.add_argument("--selection")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("bench", help="median solver runtime per size, as CSV")
    p.add_argument("--sizes", default="100,200,400")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except NotIrreducible as exc:
        print(f"not irreducible: {exc}", file=sys.stderr)
        return EXIT_NOT_IRREDUCIBLE
    except TooLarge as exc:
        print(f"too large: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE


def main() -> None:
    sys.exit(run())
