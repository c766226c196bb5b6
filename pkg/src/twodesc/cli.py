"""``twodesc`` command line.

Exit codes: 0 pass, 1 semantic failure, 2 structural or parse error, 3 undecided.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .descent import descend, roundtrip_check
from .descent_data import (CoverDescentDatum, GaloisDescentDatum, action_to_descent,
                           cover_to_galois, galois_to_cover, validate_cover_datum,
                           validate_descent_morphism, validate_galois_datum)
from .equivalence import DEFAULT_BUDGET, are_equivalent, skeleton
from .groupoid import FiniteGroupoid, validate_groupoid
from .groups import FiniteGroup, GroupAction, trivial_action, validate_action, validate_group
from .oracles import compare_with_descent, h1
from .report import InvalidInput, OverBudget, StructuralError
from .weak_action import WeakAction, validate_weak_action

EXIT_PASS, EXIT_FAIL, EXIT_STRUCTURAL, EXIT_UNDECIDED = 0, 1, 2, 3


class _Out:
    """Collects a report and renders it as text or as one JSON line."""

    def __init__(self, command: str, mode: str, stream):
        self.command = command
        self.mode = mode
        self.stream = stream
        self.fields: dict = {}
        self.lines: list[str] = []

    def say(self, line: str = "", **fields) -> None:
        if line:
            self.lines.append(line)
        self.fields.update(fields)

    def finish(self, code: int) -> int:
        status = {0: "pass", 1: "fail", 2: "error", 3: "undecided"}[code]
        if self.mode == "machine":
            doc = {"command": self.command, "status": status, "exit": code, **self.fields}
            print(json.dumps(doc, sort_keys=True), file=self.stream)
        else:
            for line in self.lines:
                print(line, file=self.stream)
        return code


def _validator(kind: str, entity):
    return {
        "groupoid": validate_groupoid,
        "group": validate_group,
        "weak_action": validate_weak_action,
        "galois_datum": validate_galois_datum,
        "cover_datum": validate_cover_datum,
        "descent_morphism": validate_descent_morphism,
    }[kind](entity)


def _as_galois(kind: str, entity) -> GaloisDescentDatum:
    if kind == "galois_datum":
        return entity
    if kind == "cover_datum":
        return cover_to_galois(entity)
    if kind == "weak_action":
        return action_to_descent(entity)
    raise InvalidInput(f"a {kind} document does not define a descent datum")


def _emit_document(text: str, out_path, report: _Out) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
        report.say(f"wrote {out_path}", out=str(out_path))
    else:
        sys.stdout.write(text)


def _summary(g: FiniteGroupoid) -> tuple[str, list[int]]:
    sizes = skeleton(g).class_sizes
    n = len(sizes)
    word = "class" if n == 1 else "classes"
    return f"{n} {word}, |Aut|={','.join(map(str, sizes))}", sizes


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args, report: _Out) -> int:
    kind, entity = io.load(args.path)
    r = _validator(kind, entity)
    report.say(f"{kind}: {r}", kind=kind, axiom=r.axiom, where=list(r.where), message=r.message)
    return EXIT_PASS if r else EXIT_FAIL


def cmd_descend(args, report: _Out) -> int:
    kind, entity = io.load(args.path)
    d = _as_galois(kind, entity)
    r = validate_galois_datum(d)
    if not r:
        report.say(f"invalid datum: {r}", axiom=r.axiom, where=list(r.where))
        return EXIT_FAIL
    D = descend(d, check=False)
    text = io.dumps(io.to_document(D))
    line, sizes = _summary(D.groupoid)
    _emit_document(text, args.out, report)
    report.say(f"descended groupoid: {D.groupoid.n_objects} objects, "
               f"{D.groupoid.n_morphisms} morphisms; {line}",
               objects=D.groupoid.n_objects, morphisms=D.groupoid.n_morphisms,
               classes=len(sizes), aut_orders=sizes)
    return EXIT_PASS


def cmd_convert(args, report: _Out) -> int:
    kind, entity = io.load(args.path)
    if args.to == "galois":
        out = _as_galois(kind, entity)
    else:
        out = entity if kind == "cover_datum" else galois_to_cover(_as_galois(kind, entity))
    _emit_document(io.serialize(out), args.out, report)
    report.say(f"converted {kind} to {args.to} form", source_kind=kind, to=args.to)
    return EXIT_PASS


def _load_kind(path, kind: str):
    got, entity = io.load(path)
    if got != kind:
        raise io.ParseError(f"{path}: expected a {kind} document, got {got}")
    return entity


def cmd_equiv(args, report: _Out) -> int:
    g = _load_kind(args.a, "groupoid")
    h = _load_kind(args.b, "groupoid")
    for x in (g, h):
        r = validate_groupoid(x)
        if not r:
            report.say(f"invalid groupoid: {r}", axiom=r.axiom)
            return EXIT_FAIL
    try:
        w = are_equivalent(g, h, args.budget)
    except OverBudget as exc:
        report.say(f"UNDECIDED: over budget ({exc})", verdict="undecided")
        return EXIT_UNDECIDED
    if w is None:
        report.say("NOT EQUIVALENT", verdict="not equivalent")
        return EXIT_FAIL
    report.say(f"EQUIVALENT: functor on objects {w.functor.obj.tolist()}",
               verdict="equivalent", functor_obj=w.functor.obj.tolist(), verified=w.verify())
    return EXIT_PASS


def _parse_action(spec, gamma: FiniteGroup, group: FiniteGroup) -> GroupAction:
    if spec is None:
        return trivial_action(gamma, group)
    text = Path(spec).read_text(encoding="utf-8") if Path(spec).is_file() else spec
    try:
        auts = json.loads(text)
    except json.JSONDecodeError as exc:
        raise io.ParseError(f"--action is neither a file nor JSON: {exc}") from exc
    arr = np.asarray(auts, dtype=np.int64)
    if arr.shape != (gamma.order, group.order):
        raise io.ParseError("--action needs one automorphism table per element of the acting group")
    return GroupAction(gamma, group, arr)


def cmd_h1(args, report: _Out) -> int:
    gamma = _load_kind(args.gamma, "group")
    group = _load_kind(args.group, "group")
    for x in (gamma, group):
        r = validate_group(x)
        if not r:
            report.say(f"invalid group: {r}")
            return EXIT_FAIL
    action = _parse_action(args.action, gamma, group)
    r = validate_action(action)
    if not r:
        report.say(f"invalid action: {r}")
        return EXIT_FAIL
    try:
        cs = h1(gamma, group, action)
    except OverBudget as exc:
        report.say(f"UNDECIDED: {exc}")
        return EXIT_UNDECIDED
    report.say(cs.table(), classes=cs.n_classes,
               representatives=cs.representatives.tolist(),
               stabilizer_orders=[int(s.size) for s in cs.stabilizers],
               cocycles=int(cs.cocycles.shape[0]))
    if args.compare:
        cmp = compare_with_descent(gamma, group, action)
        report.say(f"descent comparison: {'agrees' if cmp.ok else 'DISAGREES'} {cmp.message}".rstrip(),
                   comparison=cmp.ok)
        if not cmp.ok:
            return EXIT_FAIL
    return EXIT_PASS


def cmd_roundtrip(args, report: _Out) -> int:
    h = _load_kind(args.groupoid, "groupoid")
    gamma = _load_kind(args.gamma, "group")
    for r in (validate_groupoid(h), validate_group(gamma)):
        if not r:
            report.say(f"invalid input: {r}")
            return EXIT_FAIL
    try:
        w = roundtrip_check(h, gamma, args.budget)
    except OverBudget as exc:
        report.say(f"UNDECIDED: over budget ({exc})", verdict="undecided")
        return EXIT_UNDECIDED
    if w is None or not w.verify():
        report.say("NOT EQUIVALENT", verdict="not equivalent")
        return EXIT_FAIL
    src = w.functor.source
    report.say(f"EQUIVALENT: descended groupoid has {src.n_objects} objects and "
               f"{src.n_morphisms} morphisms; witness is full, faithful and essentially surjective",
               verdict="equivalent", descended_objects=src.n_objects,
               descended_morphisms=src.n_morphisms)
    return EXIT_PASS


def cmd_selftest(args, report: _Out) -> int:
    from .acceptance import run_all

    results = run_all(args.only)
    for r in results:
        report.say(r.line())
    report.say(criteria=[{"number": r.number, "title": r.title, "passed": r.passed,
                          "detail": r.detail, "seconds": round(r.seconds, 2)} for r in results])
    return EXIT_PASS if all(r.passed for r in results) else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", choices=("text", "machine"), default="text")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="morphism-count cap for equivalence searches (default %(default)s)")
    common.add_argument("--out", default=None, help="write the output document here")

    p = argparse.ArgumentParser(prog="twodesc", description="Finite-model 2-descent engine.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("validate", parents=[common], help="run the validator for a document's kind")
    s.add_argument("path")
    s = sub.add_parser("descend", parents=[common], help="compute the descended groupoid")
    s.add_argument("path")
    s = sub.add_parser("convert", parents=[common], help="switch between Galois and cover form")
    s.add_argument("path")
    s.add_argument("--to", choices=("galois", "cover"), required=True)
    s = sub.add_parser("equiv", parents=[common], help="decide equivalence of two groupoids")
    s.add_argument("a")
    s.add_argument("b")
    s = sub.add_parser("h1", parents=[common], help="nonabelian H1 by exhaustive enumeration")
    s.add_argument("gamma")
    s.add_argument("group")
    s.add_argument("--action", default=None,
                   help="JSON (inline or file) listing the automorphism for each acting element")
    s.add_argument("--compare", action="store_true", help="cross-check against descend")
    s = sub.add_parser("roundtrip", parents=[common], help="descend the base change and compare")
    s.add_argument("groupoid")
    s.add_argument("gamma")
    s = sub.add_parser("selftest", parents=[common], help="run the acceptance catalog")
    s.add_argument("--only", type=int, nargs="*", default=None, help="criterion numbers to run")
    return p


COMMANDS = {"validate": cmd_validate, "descend": cmd_descend, "convert": cmd_convert,
            "equiv": cmd_equiv, "h1": cmd_h1, "roundtrip": cmd_roundtrip, "selftest": cmd_selftest}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    # the report shares stdout unless a document is being written there
    writes_doc = args.command in ("descend", "convert") and not args.out
    report = _Out(args.command, args.report, sys.stderr if writes_doc else sys.stdout)
    try:
        code = COMMANDS[args.command](args, report)
    except (StructuralError, io.ParseError) as exc:
        report.say(f"structural error: {exc}", error=str(exc))
        code = EXIT_STRUCTURAL
    except InvalidInput as exc:
        report.say(f"invalid input: {exc}", error=str(exc))
        code = EXIT_FAIL
    except OverBudget as exc:
        report.say(f"UNDECIDED: {exc}", error=str(exc))
        code = EXIT_UNDECIDED
    return report.finish(code)


if __name__ == "__main__":
    sys.exit(main())
