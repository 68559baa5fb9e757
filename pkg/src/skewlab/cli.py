"""Command-line front end: ``python -m skewlab <command> ...``.

Exit codes: 0 clean, 2 a property fails (or a theorem is REFUTED),
3 only inconclusive results, 64 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from typing import Any, Sequence

from . import __version__
from .catalog import CatalogEntry, all_instances, builtin_catalog, find_entry, select_instance
from .deffile import dump_entry, load_definitions
from .errors import SkewlabError, UnsupportedOperation
from .finmod import annihilator
from .finring import find_idempotent_generator, idempotents
from .properties import (
    ALL_PROPERTIES,
    BASE_PROPERTIES,
    DEFAULT_DEGREE,
    Evaluator,
    Instance,
    Verdict,
    budget_from_env,
)
from .theorems import BUILTIN_SPECS, REFUTED, SEVERITY, get_spec, hunt, run_suite

EXIT_OK, EXIT_FAILS, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2, which means "fails" here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj: dict[str, Any]) -> None:
    print(json.dumps(obj, sort_keys=True))


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _entries(args) -> list[CatalogEntry]:
    entries = builtin_catalog()
    known = {e.id for e in entries}
    for path in args.defs or ():
        for entry in load_definitions(path):
            if entry.id in known:
                raise UsageError(f"{path}: ring id {entry.id!r} is already defined")
            known.add(entry.id)
            entries.append(entry)
    return entries


def _instances(args, entries: list[CatalogEntry]) -> list[Instance]:
    if args.all:
        return all_instances(entries)
    if not args.ring:
        raise UsageError("give --ring (with optional --sigma and --module) or --all")
    return [select_instance(entries, args.ring, args.sigma, args.module)]


def _budget(args) -> int:
    return args.budget if args.budget is not None else budget_from_env()


def cmd_check(args) -> int:
    props = [p.strip() for p in args.props.split(",") if p.strip()] if args.props else list(BASE_PROPERTIES)
    unknown = [p for p in props if p not in ALL_PROPERTIES]
    if unknown:
        raise UsageError(f"unknown property {', '.join(unknown)}; valid ids: {', '.join(ALL_PROPERTIES)}")
    worst = EXIT_OK
    for inst in _instances(args, _entries(args)):
        ev = Evaluator(inst, _budget(args))
        for prop in props:
            try:
                rep = ev.check(prop, args.degree)
            except UnsupportedOperation as exc:
                raise UsageError(f"{inst.id}: {prop}: {exc}") from None
            if rep.verdict is Verdict.FAILS:
                worst = EXIT_FAILS
            elif rep.verdict is Verdict.INCONCLUSIVE and worst == EXIT_OK:
                worst = EXIT_INCONCLUSIVE
            if args.format == "json":
                _emit({"instance": inst.id, **rep.to_dict()})
            else:
                line = f"{inst.id}  {prop}: {rep.verdict_text()}"
                if rep.witness is not None:
                    line += f"  witness={json.dumps(rep.witness, sort_keys=True)}"
                if rep.verdict is not Verdict.HOLDS and rep.detail:
                    line += f"  ({rep.detail})"
                print(line)
                for note in rep.notes:
                    print(f"    note: {note}")
    return worst


def _print_theorem_report(rep, fmt: str) -> None:
    if fmt == "json":
        _emit(rep.to_dict())
        return
    line = f"{rep.theorem:<15} {rep.instance:<28} {rep.status}"
    if rep.status != "verified" and rep.witnesses:
        line += f"  witnesses={json.dumps(rep.witnesses, sort_keys=True)}"
    print(line)
    if rep.status in ("inconclusive", REFUTED):
        for note in rep.notes:
            print(f"    note: {note}")


def _summary(reports) -> str:
    counts = Counter(r.status for r in reports)
    return "summary: " + " ".join(f"{s}={counts.get(s, 0)}" for s in SEVERITY)


def cmd_suite(args) -> int:
    instances = _instances(args, _entries(args))
    order = {s.id: i for i, s in enumerate(BUILTIN_SPECS)}
    reports = []
    for i, inst in enumerate(instances):
        reports += [(order[r.theorem], i, r) for r in run_suite(inst, args.degree, _budget(args))]
    reports = [r for _, _, r in sorted(reports, key=lambda t: t[:2])]
    for rep in reports:
        _print_theorem_report(rep, args.format)
    print(_summary(reports), file=sys.stderr if args.format == "json" else sys.stdout)
    return EXIT_FAILS if any(r.status == REFUTED for r in reports) else EXIT_OK


def cmd_hunt(args) -> int:
    spec = get_spec(args.theorem)
    instances = _instances(args, _entries(args))
    result = hunt(instances, spec, args.degree, _budget(args))
    for rep in result.anomalies:
        _print_theorem_report(rep, args.format)
    counts = Counter(r.status for r in result.anomalies)
    summary = (
        f"hunt {spec.id}: {len(instances)} instances, verified={result.verified} "
        + " ".join(f"{s}={counts.get(s, 0)}" for s in ("vacuous", "inconclusive", REFUTED))
    )
    print(summary, file=sys.stderr if args.format == "json" else sys.stdout)
    return EXIT_FAILS if result.refuted else EXIT_OK


def cmd_catalog(args) -> int:
    entries = _entries(args)
    if args.action == "list":
        for e in entries:
            row = {
                "id": e.id,
                "size": e.ring.size,
                "endomorphisms": [s.name for s in e.endomorphisms],
                "modules": [m.name for m in e.modules],
                "provenance": e.provenance,
            }
            if args.format == "json":
                _emit(row)
            else:
                print(
                    f"{e.id:<8} size={e.ring.size:<3} sigma={','.join(row['endomorphisms'])}  "
                    f"modules={','.join(row['modules'])}  [{e.provenance}]"
                )
        return EXIT_OK
    if not args.id:
        raise UsageError("catalog dump needs a ring id")
    sys.stdout.write(dump_entry(find_entry(entries, args.id)))
    return EXIT_OK


def cmd_ann(args) -> int:
    entry = find_entry(_entries(args), args.ring)
    module = entry.module(args.module)
    if not 0 <= args.element < module.size:
        raise UsageError(f"element {args.element} outside 0..{module.size - 1}")
    ann = annihilator(module, [args.element], args.mode)
    e = find_idempotent_generator(ann.as_ideal())
    if args.format == "json":
        _emit({"ring": entry.id, "module": module.name, "element": args.element, "mode": args.mode,
               "annihilator": ann.sorted(), "idempotent_generator": e})
    else:
        labels = ", ".join(entry.ring.label(a) for a in ann.sorted())
        gen = "none" if e is None else entry.ring.label(e)
        print(f"annihilator ({ann.source}) = {{{labels}}}  idempotent generator: {gen}")
    return EXIT_OK


def cmd_idempotents(args) -> int:
    entry = find_entry(_entries(args), args.ring)
    ids = idempotents(entry.ring)
    if args.format == "json":
        _emit({"ring": entry.id, "idempotents": list(ids), "labels": [entry.ring.label(e) for e in ids]})
    else:
        print(" ".join(entry.ring.label(e) for e in ids))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--defs", action="append", metavar="FILE", help="extra definition file (repeatable)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    select = _Parser(add_help=False)
    select.add_argument("--ring")
    select.add_argument("--sigma", default="id")
    select.add_argument("--module", default="regular")
    select.add_argument("--all", action="store_true", help="every instance in the catalog")
    select.add_argument("--degree", type=_nonnegative, default=DEFAULT_DEGREE, help="degree bound D")
    select.add_argument("--budget", type=_positive, default=None,
                        help="enumeration budget in pairs (default: $SKEWLAB_BUDGET or 10^8)")

    parser = _Parser(prog="skewlab", description="Check module conditions on finite rings and skew extensions.")
    parser.add_argument("--version", action="version", version=f"skewlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common, select], help="evaluate properties on instances")
    p.add_argument("--props", help="comma-separated property ids")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("suite", parents=[common, select], help="run every builtin theorem")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("hunt", parents=[common, select], help="look for anomalies of one theorem")
    p.add_argument("theorem")
    p.set_defaults(func=cmd_hunt)

    p = sub.add_parser("catalog", parents=[common], help="list or dump catalog entries")
    p.add_argument("action", choices=("list", "dump"))
    p.add_argument("id", nargs="?")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("ann", parents=[common], help="annihilator of one module element")
    p.add_argument("--ring", required=True)
    p.add_argument("--module", default="regular")
    p.add_argument("--element", type=int, required=True)
    p.add_argument("--mode", choices=("set", "cyclic-submodule"), default="set")
    p.set_defaults(func=cmd_ann)

    p = sub.add_parser("idempotents", parents=[common], help="idempotents of a ring")
    p.add_argument("--ring", required=True)
    p.set_defaults(func=cmd_idempotents)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SkewlabError) as exc:
        print(f"skewlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
