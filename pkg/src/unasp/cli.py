"""Command line front end: solve, revise, explain, check and fuzz."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .interval import DISTANCE_VARIANTS
from .program import GroundingError, ParseError, Program, ground, parse_program
from .revision import DEFAULT_CONFIG, RevisionConfig, RevisionFailure, revise
from .semantics import NoAnswerSet, NonConvergence, answer_sets
from .transform import resolution_tree, transform

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_REVISION = 3


class UsageError(Exception):
    pass


def _load(path: str) -> Program:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        program = parse_program(text)
        return program if program.is_ground else ground(program)
    except (ParseError, GroundingError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _config(args) -> RevisionConfig:
    try:
        return RevisionConfig(delta=args.delta, distance_variant=args.distance,
                              prs_cardinality_cap=args.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_solve(args) -> int:
    program = _load(args.file)
    try:
        ans = answer_sets(program)
    except (NoAnswerSet, NonConvergence) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    if args.json:
        print(_dump(ans.to_json()))
        return EXIT_OK
    for lit, value in sorted(ans.interpretation.items()):
        print(f"{lit} = {value}")
    print("consistent" if ans.consistent else
          "inconsistent: " + ", ".join(sorted(str(a) for a in ans.contradiction_atoms)))
    return EXIT_OK


def cmd_revise(args) -> int:
    p, q = _load(args.base), _load(args.new)
    cfg = _config(args)
    try:
        rev = revise(p, q, cfg)
    except RevisionFailure as exc:
        print(f"revision failed: {exc}", file=sys.stderr)
        return EXIT_REVISION
    if args.json:
        print(_dump(rev.to_json()))
        return EXIT_OK
    report = rev.to_json()
    print("removed: " + (", ".join(report["removed"]) or "(nothing)"))
    print("contradiction set: " + (", ".join(report["contradiction_set"]) or "(empty)"))
    for atom, sets in report["prs"].items():
        print(f"PRS {atom}: " + " ".join("{" + ",".join(s) + "}" for s in sets))
    if report["distance"] is not None:
        print(f"distance: {report['distance']:.6g}")
    print(report["program"], end="")
    return EXIT_OK


def cmd_explain(args) -> int:
    program = _load(args.file)
    try:
        target = parse_program(f"{args.atom}.").rules[0].head
    except ParseError as exc:
        raise UsageError(f"bad atom {args.atom!r}: {exc}") from exc
    tp, table = transform(program)
    if target.atom not in tp.atoms():
        raise UsageError(f"atom {target.atom} does not occur in {args.file}")
    tree = resolution_tree(tp, target)
    rules = sorted(r for eid in tree.used for r in table.sources(eid))
    if args.json:
        print(_dump({"tree": tree.to_json(), "equations": sorted(tree.used), "rules": rules}))
    else:
        print(tree.text())
        print("rules: " + ", ".join(rules))
    return EXIT_OK


def cmd_check(args) -> int:
    from .harness.postulates import POSTULATES, check_all

    p, q = _load(args.base), _load(args.new)
    r = _load(args.third) if args.third else None
    which = POSTULATES if args.postulates == "all" else (args.postulates,)
    report = check_all(p, q, r, _config(args), which)
    if args.json:
        print(_dump(report.to_json()))
    else:
        for name, result in report.results.items():
            extra = f" ({'; '.join(result.notes)})" if result.notes else ""
            print(f"{name}: {result.status}{extra}")
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_fuzz(args) -> int:
    from .harness.fuzz import run_fuzz

    summary = run_fuzz(seed=args.seed, cases=args.cases, atoms=args.atoms, rules=args.rules,
                       cfg=_config(args))
    if args.json:
        print(_dump(summary.to_json()))
    else:
        print(f"{summary.cases} cases, {summary.revisions_with_removal} with removals, "
              f"{summary.elapsed:.1f}s")
        for name, counts in sorted(summary.counts.items()):
            print(f"  {name}: " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))
        for v in summary.violations:
            print(f"VIOLATION seed={v['seed']} {v['postulate']}")
    return EXIT_OK if summary.ok else EXIT_VIOLATION


def _revision_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--delta", type=float, default=DEFAULT_CONFIG.delta)
    parser.add_argument("--distance", choices=DISTANCE_VARIANTS,
                        default=DEFAULT_CONFIG.distance_variant)
    parser.add_argument("--cap", type=int, default=DEFAULT_CONFIG.prs_cardinality_cap)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unasp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="print the answer set of a program")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("revise", help="revise a base program by a new one")
    s.add_argument("base")
    s.add_argument("new")
    _revision_options(s)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_revise)

    s = sub.add_parser("explain", help="print the resolution tree of an atom")
    s.add_argument("file")
    s.add_argument("--atom", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_explain)

    s = sub.add_parser("check", help="check revision postulates on one pair")
    s.add_argument("base")
    s.add_argument("new")
    s.add_argument("--third", help="second new base for uniformity")
    s.add_argument("--postulates", default="all",
                   choices=("all", "success", "inclusion", "nm", "fullness", "uniformity",
                            "disjunction", "parallelism"))
    _revision_options(s)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("fuzz", help="postulate campaign over random pairs")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=200)
    s.add_argument("--atoms", type=int, default=4)
    s.add_argument("--rules", type=int, default=5)
    _revision_options(s)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
