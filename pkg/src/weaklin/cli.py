"""Command-line front end.

Exit codes: 0 success, 1 candidate rejected by ``check``, 2 iteration cap
reached, 3 unreadable or malformed input, 4 shape mismatch.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from weaklin import io
from weaklin.errors import InconsistencyError, ShapeMismatchError, WeaklinError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CAP_REACHED = 2
EXIT_PARSE = 3
EXIT_SHAPE = 4


def _emit(doc: dict, args) -> None:
    text = io.dumps(doc)
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _kind(args):
    if not getattr(args, "variant", None):
        return None
    text = args.variant
    if text.isdigit():
        text = f"wl2-{text}"
    return io.parse_kind(text, "--variant")


def _report_doc(command, system, report, decimal, crisp=False) -> dict:
    return {
        "command": command,
        "lattice": system.lattice.name,
        "variant": str(system.kind),
        "crisp": crisp,
        "A": io.labels_to_json(system.A),
        "B": io.labels_to_json(system.B),
        "status": report.status.value,
        "iterations": report.iterations,
        "verified": report.verified,
        "solution": io.matrix_to_json(report.solution, decimal),
    }


def cmd_solve(args) -> int:
    from weaklin import solver

    doc = io.load(args.instance)
    system = io.system_from_document(doc, _kind(args))
    if args.oracle:
        from weaklin.oracle import brute_force_greatest

        R = brute_force_greatest(system)
        _emit({"command": "solve", "lattice": system.lattice.name, "variant": str(system.kind),
               "oracle": True, "A": io.labels_to_json(system.A),
               "B": io.labels_to_json(system.B),
               "solution": io.matrix_to_json(R, args.decimal)}, args)
        return EXIT_OK
    if args.crisp:
        report = solver.solve_greatest_crisp(system)
    else:
        cap = args.max_iters
        if cap is None:
            options = doc.get("options") or {}
            cap = options.get("max_iterations", 1000) if isinstance(options, dict) else 1000
            if not isinstance(cap, int) or isinstance(cap, bool) or cap < 1:
                raise io.DocumentError("options.max_iterations: expected a positive integer")
        report = solver.solve_greatest(system, max_iterations=cap)
    _emit(_report_doc("solve", system, report, args.decimal, args.crisp), args)
    return EXIT_OK if report.stabilized else EXIT_CAP_REACHED


def cmd_check(args) -> int:
    from weaklin.solver import verify_solution

    system = io.system_from_document(io.load(args.instance), _kind(args))
    R = io.relation_from_document(io.load(args.candidate), system.lattice, system.A, system.B)
    ok = verify_solution(system, R)
    _emit({"command": "check", "variant": str(system.kind), "verified": ok}, args)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_quotient(args) -> int:
    from weaklin.quotient import FactorSet, FuzzyRelationalSystem, quotient_system

    doc = io.load(args.instance)
    lattice = io.parse_lattice_field(doc)
    mats = doc.get("relations") if isinstance(doc, dict) else None
    if not isinstance(mats, list) or not mats:
        raise io.DocumentError("relations: expected a non-empty list of matrices")
    rows = [io.parse_matrix(m, f"relations[{i}]") for i, m in enumerate(mats)]
    A = io._labels(doc, "A", len(rows[0]))
    rels = [io._relation(r, lattice, A, A, f"relations[{i}]") for i, r in enumerate(rows)]
    E = io._relation(io.parse_matrix(io._field(doc, "E", ""), "E"), lattice, A, A, "E")
    system = FuzzyRelationalSystem(rels, A)
    q = quotient_system(system, E)
    fs = FactorSet(E)
    _emit({
        "command": "quotient",
        "lattice": lattice.name,
        "A": io.labels_to_json(q.carrier),
        "classes": {str(lab): io.labels_to_json(fs.members(lab)) for lab in fs.labels},
        "relations": [io.matrix_to_json(v, args.decimal) for v in q.relations],
    }, args)
    return EXIT_OK


def cmd_reduce(args) -> int:
    from weaklin.automata import greatest_bisimulation_equivalence, reduce

    M = io.automaton_from_document(io.load(args.automaton))
    report = greatest_bisimulation_equivalence(M, args.mode, args.max_iters or 1000)
    out = {
        "command": "reduce",
        "mode": args.mode,
        "status": report.status.value,
        "iterations": report.iterations,
        "equivalence": io.matrix_to_json(report.solution, args.decimal),
    }
    if not report.stabilized:
        _emit(out, args)
        return EXIT_CAP_REACHED
    reduced = reduce(M, report.solution)
    out["classes"] = {str(k): io.labels_to_json(v) for k, v in reduced.metadata["classes"].items()}
    out["construction"] = reduced.metadata["construction"]
    out["automaton"] = io.automaton_to_document(reduced, args.decimal)
    _emit(out, args)
    return EXIT_OK


def cmd_bisim(args) -> int:
    from weaklin.automata import solve_between

    M = io.automaton_from_document(io.load(args.first))
    N = io.automaton_from_document(io.load(args.second))
    kind = _kind(args)
    if kind is None or kind.homogeneous:
        raise io.DocumentError("--variant: expected a heterogeneous variant 1-6 or wl2-1 .. wl2-6")
    Z = None
    if args.Z:
        Z = io.relation_from_document(io.load(args.Z), M.lattice, M.states, N.states,
                                      keys=("Z", "relation", "solution"))
    report = solve_between(M, N, kind.variant, Z, args.max_iters or 1000)
    _emit({
        "command": "bisim",
        "lattice": M.lattice.name,
        "variant": str(kind),
        "A": io.labels_to_json(M.states),
        "B": io.labels_to_json(N.states),
        "status": report.status.value,
        "iterations": report.iterations,
        "verified": report.verified,
        "solution": io.matrix_to_json(report.solution, args.decimal),
    }, args)
    return EXIT_OK if report.stabilized else EXIT_CAP_REACHED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weaklin",
                                description="Greatest solutions of weakly linear systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", "-o", help="write the result here instead of stdout")
        sp.add_argument("--decimal", action="store_true",
                        help="print terminating values as decimals (others stay fractions)")

    s = sub.add_parser("solve", help="greatest (crisp) solution of a system")
    s.add_argument("instance")
    s.add_argument("--variant", help="override the file's variant, e.g. wl2-3")
    s.add_argument("--max-iters", type=int, default=None)
    s.add_argument("--crisp", action="store_true", help="greatest crisp solution")
    s.add_argument("--oracle", action="store_true", help=argparse.SUPPRESS)
    common(s)
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("check", help="verify a candidate solution")
    c.add_argument("instance")
    c.add_argument("candidate")
    c.add_argument("--variant")
    common(c)
    c.set_defaults(func=cmd_check)

    q = sub.add_parser("quotient", help="quotient of a relational system by an equivalence E")
    q.add_argument("instance")
    common(q)
    q.set_defaults(func=cmd_quotient)

    r = sub.add_parser("reduce", help="reduce an automaton by its greatest bisimulation equivalence")
    r.add_argument("automaton")
    r.add_argument("--mode", choices=("forward", "backward"), default="forward")
    r.add_argument("--max-iters", type=int, default=None)
    common(r)
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("bisim", help="greatest simulation/bisimulation between two automata")
    b.add_argument("first")
    b.add_argument("second")
    b.add_argument("--variant", required=True, help="1-6 or wl2-1 .. wl2-6")
    b.add_argument("--Z", help="file with the bounding relation (default universal)")
    b.add_argument("--max-iters", type=int, default=None)
    common(b)
    b.set_defaults(func=cmd_bisim)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except io.DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ShapeMismatchError as exc:
        print(f"shape error: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except InconsistencyError:
        raise
    except WeaklinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
