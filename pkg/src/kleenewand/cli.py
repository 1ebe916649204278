"""``kwand``: batch command-line access to the flowchart language and the law suite.

Exit codes: 0 on success, 1 for usage, input and parse errors, 2 for semantic
errors (a disjointness violation, a failed precondition) and failing laws.
Results go to standard output and diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from typing import Any

from . import dsl
from .errors import KleeneWandError
from .finpar import map_from_json, map_to_json
from .matext import matrix_to_json
from .trace import trace_n, trace_request_from_json
from .wand import kleene_wand, upper_star

EXIT_OK, EXIT_USAGE, EXIT_SEMANTIC = 0, 1, 2


class _Usage(Exception):
    """Bad arguments or unreadable input; reported with exit code 1."""


def _die(message: str, code: int) -> int:
    print("kwand: " + message, file=sys.stderr)
    return code


def _emit(doc: Any) -> None:
    print(json.dumps(doc, ensure_ascii=False))


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Usage("cannot read %s: %s" % (path, exc.strerror or exc)) from None


def _read_json(path: str) -> Any:
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _Usage("%s is not valid JSON: %s" % (path, exc)) from None


def _load_map(path: str):
    try:
        return map_from_json(_read_json(path))
    except (ValueError, TypeError) as exc:
        raise _Usage("%s: %s" % (path, exc)) from None


# -- commands --------------------------------------------------------------------

def cmd_run(args: argparse.Namespace) -> int:
    text = _read_text(args.file)
    try:
        program = dsl.parse(text)
    except dsl.FlowError as exc:
        return _die(exc.format(args.file), EXIT_USAGE)
    results = []
    try:
        for res in dsl.Evaluator().run(program):
            results.append(res)
            if not args.json:
                print(res.output)
    except dsl.FlowError as exc:
        if args.json:
            _emit({"results": [r.to_json() for r in results], "error": str(exc)})
        return _die(exc.format(args.file), EXIT_SEMANTIC)
    if args.json:
        _emit({"results": [r.to_json() for r in results], "error": None})
    return EXIT_OK


def cmd_fmt(args: argparse.Namespace) -> int:
    text = _read_text(args.file)
    try:
        program = dsl.parse(text)
    except dsl.FlowError as exc:
        return _die(exc.format(args.file), EXIT_USAGE)
    out = dsl.print_program(program)
    if args.json:
        _emit({"program": out})
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _select_laws(args: argparse.Namespace) -> list[str]:
    from .lawlab import all_laws, resolve

    if args.all or args.area:
        laws = all_laws(args.area)
        if not laws:
            raise _Usage("no laws in area %r" % args.area)
        return [lw.id for lw in laws]
    if not args.law:
        raise _Usage("pass --law ID (repeatable), --area AREA or --all")
    ids = []
    for name in args.law:
        try:
            ids.append(resolve(name).id)
        except KeyError as exc:
            raise _Usage(exc.args[0]) from None
    return ids


def cmd_laws(args: argparse.Namespace) -> int:
    from .lawlab import MUTATIONS, all_laws, resolve, run_law

    if args.list:
        for lw in all_laws(args.area):
            if args.json:
                _emit({"law": lw.id, "area": lw.area, "statement": lw.statement,
                       "exhaustive": lw.exhaustive is not None})
            else:
                print("%-26s %-12s %s" % (lw.id, lw.area, lw.statement))
        return EXIT_OK
    if args.impl not in MUTATIONS:
        raise _Usage("unknown --impl %r; choose from %s" % (args.impl, ", ".join(MUTATIONS)))
    if args.cases < 0:
        raise _Usage("--cases must be nonnegative")
    ids = _select_laws(args)
    reports = []
    for law_id in ids:
        exhaustive = args.exhaustive and resolve(law_id).exhaustive is not None
        if args.exhaustive and not exhaustive and not (args.all or args.area):
            raise _Usage("law %s has no exhaustive mode" % law_id)
        rep = run_law(law_id, seed=args.seed, cases=args.cases, max_size=args.max_size,
                      impl=args.impl, exhaustive=exhaustive, workers=args.workers)
        reports.append(rep)
        if args.json:
            _emit(rep.to_json())
        else:
            print(rep.summary())
    failed = [r.law for r in reports if not r.passed]
    if failed:
        print("kwand: %d of %d laws failed: %s" % (len(failed), len(reports), ", ".join(failed)),
              file=sys.stderr)
        return EXIT_SEMANTIC
    return EXIT_OK


def cmd_trace(args: argparse.Namespace) -> int:
    try:
        matrix, cut = trace_request_from_json(_read_json(args.matrix))
    except (KeyError, ValueError, TypeError) as exc:
        raise _Usage("%s: %s" % (args.matrix, exc)) from None
    if args.cut is not None:
        cut = args.cut
    if cut is None:
        raise _Usage("no cut given: pass --cut K or put \"cut\" in the request")
    out = matrix_to_json(trace_n(matrix, cut))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(out, fh, ensure_ascii=False)
            fh.write("\n")
        if args.json:
            _emit({"written": args.output})
    else:
        _emit(out)
    return EXIT_OK


def cmd_star(args: argparse.Namespace) -> int:
    _emit(map_to_json(upper_star(_load_map(args.map))))
    return EXIT_OK


def cmd_wand(args: argparse.Namespace) -> int:
    f, g = _load_map(args.f), _load_map(args.g)
    _emit(map_to_json(kleene_wand(f, g)))
    return EXIT_OK


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="kwand", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("run", parents=[common], help="run a flowchart program")
    s.add_argument("file", help="program file, or - for standard input")
    s.set_defaults(fn=cmd_run)

    s = sub.add_parser("fmt", parents=[common], help="print a program in canonical form")
    s.add_argument("file")
    s.set_defaults(fn=cmd_fmt)

    s = sub.add_parser("laws", parents=[common], help="check registered laws")
    s.add_argument("--law", action="append", metavar="ID",
                   help="law id, alias or unique suffix (repeatable)")
    s.add_argument("--area", help="every law in one area")
    s.add_argument("--all", action="store_true", help="every registered law")
    s.add_argument("--list", action="store_true", help="list laws instead of running them")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=1000)
    s.add_argument("--max-size", type=int, default=None)
    s.add_argument("--impl", default="canonical", help="wand implementation under test")
    s.add_argument("--exhaustive", action="store_true",
                   help="enumerate all small cases instead of sampling")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(fn=cmd_laws)

    s = sub.add_parser("trace", parents=[common], help="trace out the first K parts")
    s.add_argument("matrix", help="matrix JSON, or {\"matrix\": ..., \"cut\": K}")
    s.add_argument("--cut", type=int, default=None)
    s.add_argument("-o", "--output", help="write the result here instead of stdout")
    s.set_defaults(fn=cmd_trace)

    s = sub.add_parser("star", parents=[common], help="upper star of an endomorphism")
    s.add_argument("map")
    s.set_defaults(fn=cmd_star)

    s = sub.add_parser("wand", parents=[common], help="f ⩚ g for disjoint f and g")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(fn=cmd_wand)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage; usage errors are 1 here
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.fn(args)
    except _Usage as exc:
        return _die(str(exc), EXIT_USAGE)
    except KleeneWandError as exc:
        return _die(str(exc), EXIT_SEMANTIC)


if __name__ == "__main__":
    sys.exit(main())
