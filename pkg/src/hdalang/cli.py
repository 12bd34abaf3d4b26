"""Command line front end.

Every command prints a record: ``key=value`` lines in text mode, one JSON
object with the same keys in json mode.  The first key is always
``status`` ("true", "false", or "error"); answers may add ``witness``,
``detail``, ``count``, ``i``, ``j``, ``members``, or ``up``.  Exit code 0
means a true answer or successful write, 1 a false answer, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import decide
from .hda import (DecompositionTooShort, InvalidHDA, NotAccepted,
                  count_sparse_accepting_paths, dump_hda, load_hda, pump,
                  skeleton)
from .ipomset import (IdentityHasNoDenseDecomposition, InterfaceMismatch,
                      InvalidIpomset, ParseError, WidthExceeded,
                      dense_decomposition)
from .oneletter import (InvalidUPFunction, NotUPRepresentable, analyze,
                        build, parse_up, print_up)
from .stauto import InvalidSTAutomaton, export_st, st_of_hda
from .text import parse_ipomset, print_ipomset


def _emit(record: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(record, sort_keys=True))
        return
    for key, value in record.items():
        if isinstance(value, bool):
            value = "true" if value else "false"
        print(f"{key}={value}")


def _status(flag: bool) -> str:
    return "true" if flag else "false"


def _cmd_validate(args) -> tuple[dict, int]:
    try:
        hda = load_hda(args.automaton)
    except InvalidHDA as exc:
        return {"status": "false",
                "detail": "; ".join(str(p) for p in exc.problems)}, 1
    return {"status": "true", "detail": f"{len(hda.cells)} cells"}, 0


def _cmd_member(args) -> tuple[dict, int]:
    hda = load_hda(args.automaton)
    p = parse_ipomset(args.ipomset)
    ok = decide.member(hda, p)
    return {"status": _status(ok)}, 0 if ok else 1


def _cmd_include(args) -> tuple[dict, int]:
    ok, witness = decide.include(load_hda(args.left), load_hda(args.right))
    record = {"status": _status(ok)}
    if witness is not None:
        record["witness"] = print_ipomset(witness)
    return record, 0 if ok else 1


def _cmd_equiv(args) -> tuple[dict, int]:
    ok, witness = decide.equivalent(load_hda(args.left), load_hda(args.right))
    record = {"status": _status(ok)}
    if witness is not None:
        record["witness"] = print_ipomset(witness)
    return record, 0 if ok else 1


def _cmd_empty(args) -> tuple[dict, int]:
    is_empty, witness = decide.empty(load_hda(args.automaton))
    record = {"status": _status(is_empty)}
    if witness is not None:
        record["witness"] = print_ipomset(witness)
    return record, 0 if is_empty else 1


def _cmd_intersect(args) -> tuple[dict, int]:
    z = decide.intersect(load_hda(args.left), load_hda(args.right))
    dump_hda(z, args.output)
    return {"status": "true", "detail": f"{len(z.cells)} cells"}, 0


def _cmd_complement_member(args) -> tuple[dict, int]:
    hda = load_hda(args.automaton)
    p = parse_ipomset(args.ipomset)
    k = hda.dim() if args.width is None else args.width
    ok, witness = decide.complement_member(hda, k, p)
    record = {"status": _status(ok)}
    if witness is not None:
        record["witness"] = print_ipomset(witness)
    return record, 0 if ok else 1


def _cmd_complement_empty(args) -> tuple[dict, int]:
    hda = load_hda(args.automaton)
    k = hda.dim() if args.width is None else args.width
    is_empty, witness = decide.complement_empty(hda, k)
    record = {"status": _status(is_empty)}
    if witness is not None:
        record["witness"] = print_ipomset(witness)
    return record, 0 if is_empty else 1


def _cmd_deterministic(args) -> tuple[dict, int]:
    ok, pair = decide.is_deterministic_language(load_hda(args.automaton))
    record = {"status": _status(ok)}
    if pair is not None:
        record["witness"] = f"{print_ipomset(pair[0])}|{print_ipomset(pair[1])}"
    return record, 0 if ok else 1


def _cmd_deterministic_hda(args) -> tuple[dict, int]:
    from .hda import is_deterministic_hda
    ok, why = is_deterministic_hda(load_hda(args.automaton))
    record = {"status": _status(ok)}
    if why is not None:
        record["detail"] = why
    return record, 0 if ok else 1


def _cmd_count_paths(args) -> tuple[dict, int]:
    hda = load_hda(args.automaton)
    p = parse_ipomset(args.ipomset)
    n = count_sparse_accepting_paths(hda, p)
    return {"status": _status(n > 0), "count": n}, 0 if n > 0 else 1


def _cmd_pump(args) -> tuple[dict, int]:
    hda = load_hda(args.automaton)
    p = parse_ipomset(args.ipomset)
    qs = [s.as_ipomset() for s in dense_decomposition(p).steps]
    try:
        result = pump(hda, qs, args.cut, args.repeat)
    except (NotAccepted, DecompositionTooShort) as exc:
        return {"status": "false", "detail": str(exc)}, 1
    return {"status": "true", "i": result.i, "j": result.j,
            "members": "|".join(print_ipomset(q) for q in result.members)}, 0


def _cmd_st_export(args) -> tuple[dict, int]:
    a = st_of_hda(load_hda(args.automaton))
    with open(args.output, "w", encoding="utf-8") as fp:
        fp.write(export_st(a))
    return {"status": "true",
            "detail": f"{len(a.states)} states, "
                      f"{len(a.transitions)} transitions"}, 0


def _cmd_skeleton(args) -> tuple[dict, int]:
    z = skeleton(load_hda(args.automaton), args.width)
    dump_hda(z, args.output)
    return {"status": "true", "detail": f"{len(z.cells)} cells"}, 0


def _cmd_oneletter_analyze(args) -> tuple[dict, int]:
    try:
        up = analyze(load_hda(args.automaton))
    except NotUPRepresentable as exc:
        return {"status": "false", "detail": str(exc)}, 1
    return {"status": "true", "up": print_up(up)}, 0


def _cmd_oneletter_build(args) -> tuple[dict, int]:
    hda = build(parse_up(args.up), args.letter)
    dump_hda(hda, args.output)
    return {"status": "true", "detail": f"{len(hda.cells)} cells"}, 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hdalang",
        description="Decision procedures for languages of "
                    "higher-dimensional automata.")
    parser.add_argument("--format", choices=("text", "json"), default="text",
                        help="record output format (default: text)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("validate", _cmd_validate, "check an automaton file")
    p.add_argument("automaton")

    p = add("member", _cmd_member, "is the ipomset accepted?")
    p.add_argument("automaton")
    p.add_argument("ipomset")

    p = add("include", _cmd_include, "is the left language in the right one?")
    p.add_argument("left")
    p.add_argument("right")

    p = add("equiv", _cmd_equiv, "do the languages coincide?")
    p.add_argument("left")
    p.add_argument("right")

    p = add("empty", _cmd_empty, "is the language empty?")
    p.add_argument("automaton")

    p = add("intersect", _cmd_intersect,
            "write an automaton for the intersection")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("-o", "--output", required=True)

    p = add("complement-member", _cmd_complement_member,
            "is the ipomset in the width-bounded complement?")
    p.add_argument("automaton")
    p.add_argument("ipomset")
    p.add_argument("-k", "--width", type=int, default=None,
                   help="width bound (default: the automaton's dimension)")

    p = add("complement-empty", _cmd_complement_empty,
            "is the width-bounded complement empty?")
    p.add_argument("automaton")
    p.add_argument("-k", "--width", type=int, default=None,
                   help="width bound (default: the automaton's dimension)")

    p = add("deterministic", _cmd_deterministic,
            "is the language deterministic?")
    p.add_argument("automaton")

    p = add("deterministic-hda", _cmd_deterministic_hda,
            "is the automaton structurally deterministic?")
    p.add_argument("automaton")

    p = add("count-paths", _cmd_count_paths,
            "count sparse accepting paths for an ipomset")
    p.add_argument("automaton")
    p.add_argument("ipomset")

    p = add("pump", _cmd_pump, "pump a long accepted ipomset")
    p.add_argument("automaton")
    p.add_argument("ipomset")
    p.add_argument("-m", "--cut", type=int, default=0,
                   help="leftmost segment the loop may start at")
    p.add_argument("-r", "--repeat", type=int, default=2,
                   help="largest repetition count to emit")

    p = add("st-export", _cmd_st_export,
            "write the automaton over starters and terminators")
    p.add_argument("automaton")
    p.add_argument("-o", "--output", required=True)

    p = add("skeleton", _cmd_skeleton, "restrict to cells of bounded dimension")
    p.add_argument("automaton")
    p.add_argument("-k", "--width", type=int, required=True)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("oneletter", help="ultimately periodic descriptions")
    olsub = p.add_subparsers(dest="oneletter_command", required=True)
    q = olsub.add_parser("analyze", help="describe a one-letter automaton")
    q.set_defaults(handler=_cmd_oneletter_analyze)
    q.add_argument("automaton")
    q = olsub.add_parser("build", help="build the automaton of a description")
    q.set_defaults(handler=_cmd_oneletter_build)
    q.add_argument("up")
    q.add_argument("-l", "--letter", default="a")
    q.add_argument("-o", "--output", required=True)

    return parser


_INPUT_ERRORS = (ParseError, InvalidIpomset, InterfaceMismatch, InvalidHDA,
                 InvalidSTAutomaton, InvalidUPFunction, WidthExceeded,
                 IdentityHasNoDenseDecomposition, OSError, ValueError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        record, code = args.handler(args)
    except _INPUT_ERRORS as exc:
        _emit({"status": "error", "detail": str(exc)}, args.format)
        return 2
    _emit(record, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
