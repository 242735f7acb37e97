"""Command-line front end: run the pipeline stages and print structured results.

Every command reads an agent spec file (UTF-8 JSON) and emits a versioned
output document, JSON by default. The commands contain no logic of their
own; they compose the module APIs and serialise the results.

Exit codes: 0 success, 1 I/O failure, 2 validation failure, 3 an
enumeration limit was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any

from .argue import (
    FrameworkTooLargeError,
    GoalFramework,
    Semantics,
    build_framework,
    to_dot,
)
from .detect import IncompatibilityKind, IncompatibilityReport, resource_incom
from .feasibility import EnabledGoals, eval_resources
from .model import AgentSpec, SpecValidationError, load_agent_spec, quantity_to_number
from .oracle import TooManyGoalsError, enumerate_feasible, semantics_by_definition
from .resolve import (
    STRATEGY_ALGORITHMIC,
    STRATEGY_ARGUMENTATION,
    Resolution,
    TieBreak,
    solve_algorithmic,
    solve_argumentation,
)

SCHEMA_VERSION = "1"
SEED_ENV_VAR = "GOAL_ARBITER_SEED"

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_LIMIT = 3


def _num(q) -> int | float:
    return quantity_to_number(q)


def _enabled_payload(spec: AgentSpec, enabled: EnabledGoals) -> dict[str, Any]:
    return {
        "goals": sorted(enabled.goals),
        "excluded": {
            g: {
                "reason": exc.reason,
                "shortfalls": [
                    {
                        "resource": s.resource,
                        "needed": _num(s.needed),
                        "available": _num(s.available),
                    }
                    for s in exc.shortfalls
                ],
            }
            for g, exc in sorted(enabled.excluded.items())
        },
        "warnings": [
            {"code": w.code, "where": w.where, "message": w.message} for w in spec.warnings
        ],
    }


def _conflicts_payload(report: IncompatibilityReport) -> dict[str, Any]:
    return {
        "kind": report.kind.value,
        "incompatible_goals": sorted(report.incompatible_goals),
        "sets": [
            {
                "resource": cs.resource,
                "goals": sorted(cs.goals),
                "total_need": _num(cs.total_need),
                "available": _num(cs.available),
            }
            for cs in report.sets
        ],
    }


def _framework_payload(gf: GoalFramework) -> dict[str, Any]:
    return {
        "goals": sorted(gf.goals),
        "incompatible_pairs": sorted(sorted(pair) for pair in gf.incompatibility),
        "worth": {g: _num(w) for g, w in sorted(gf.worth.items())},
    }


def _resolution_payload(resolution: Resolution) -> dict[str, Any]:
    return {
        "strategy": resolution.strategy,
        "semantics": resolution.semantics,
        "consistent_goals": sorted(resolution.consistent_goals),
        "extensions": [sorted(e) for e in resolution.extensions],
        "audit": [
            {
                "goal": d.goal,
                "kept": d.kept,
                "reason": d.reason,
                "note": d.note,
                "residual": (
                    {res: _num(q) for res, q in d.residual} if d.residual is not None else None
                ),
            }
            for d in resolution.audit
        ],
    }


def _emit(doc: dict[str, Any], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        _emit_text(doc)


def _emit_text(doc: dict[str, Any]) -> None:
    if "enabled" in doc:
        enabled = doc["enabled"]
        print("enabled:", " ".join(enabled["goals"]) or "(none)")
        for g, exc in enabled["excluded"].items():
            detail = ", ".join(
                f"{s['resource']}: need {s['needed']}, have {s['available']}"
                for s in exc["shortfalls"]
            )
            print(f"excluded: {g} [{exc['reason']}]" + (f" ({detail})" if detail else ""))
        for w in enabled["warnings"]:
            print(f"warning: {w['message']}")
    if "conflicts" in doc:
        conflicts = doc["conflicts"]
        print(f"conflicts [{conflicts['kind']}]:")
        for cs in conflicts["sets"]:
            print(
                f"  {cs['resource']}: {' '.join(cs['goals'])} "
                f"(need {cs['total_need']}, have {cs['available']})"
            )
    if "resolution" in doc:
        res = doc["resolution"]
        header = res["strategy"] + (f"/{res['semantics']}" if res["semantics"] else "")
        print(f"consistent [{header}]:", " ".join(res["consistent_goals"]) or "(none)")
        for e in res["extensions"]:
            print("  extension:", " ".join(e) or "(empty)")
        for d in res["audit"]:
            flag = "keep" if d["kept"] else "drop"
            note = f" ({d['note']})" if d["note"] else ""
            print(f"  {flag} {d['goal']}: {d['reason']}{note}")


def _tiebreak_from(args: argparse.Namespace) -> TieBreak:
    if args.tiebreak is not None:
        return TieBreak.parse(args.tiebreak)
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return TieBreak.seeded(int(env))
        except ValueError:
            raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from None
    return TieBreak.by_id()


def cmd_feasibility(args: argparse.Namespace) -> int:
    spec = load_agent_spec(args.spec)
    enabled = eval_resources(spec)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "feasibility",
        "enabled": _enabled_payload(spec, enabled),
    }
    _emit(doc, args.format)
    return EXIT_OK


def cmd_detect(args: argparse.Namespace) -> int:
    spec = load_agent_spec(args.spec)
    enabled = eval_resources(spec)
    report = resource_incom(spec, enabled)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "detect",
        "enabled": _enabled_payload(spec, enabled),
        "conflicts": _conflicts_payload(report),
    }
    _emit(doc, args.format)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    spec = load_agent_spec(args.spec)
    enabled = eval_resources(spec)
    report = resource_incom(spec, enabled)
    if args.strategy == STRATEGY_ARGUMENTATION:
        resolution = solve_argumentation(spec, report, Semantics(args.semantics))
    else:
        resolution = solve_algorithmic(spec, report, _tiebreak_from(args))
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "solve",
        "enabled": _enabled_payload(spec, enabled),
        "conflicts": _conflicts_payload(report),
        "resolution": _resolution_payload(resolution),
    }
    if report.kind is not IncompatibilityKind.NONE:
        doc["framework"] = _framework_payload(build_framework(report, spec.worths()))
    _emit(doc, args.format)
    return EXIT_OK


def cmd_export_af(args: argparse.Namespace) -> int:
    spec = load_agent_spec(args.spec)
    enabled = eval_resources(spec)
    report = resource_incom(spec, enabled)
    gf = build_framework(report, spec.worths())
    Path(args.out).write_text(to_dot(gf), encoding="utf-8")
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    from .report import render_report  # defers the matplotlib import

    spec = load_agent_spec(args.spec)
    paths = render_report(
        spec,
        args.out_dir,
        strategy=args.strategy,
        semantics=Semantics(args.semantics),
        tiebreak=_tiebreak_from(args),
    )
    for path in paths:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    # Debugging aid: brute-force views of the same spec.
    spec = load_agent_spec(args.spec)
    enabled = eval_resources(spec)
    feasible = enumerate_feasible(spec, enabled)
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "command": "oracle",
        "feasible_count": len(feasible.feasible),
        "maximal": [sorted(s) for s in feasible.maximal],
        "best_worth": [sorted(s) for s in feasible.best_worth],
    }
    report = resource_incom(spec, enabled)
    if report.kind is not IncompatibilityKind.NONE:
        semantics = semantics_by_definition(build_framework(report, spec.worths()))
        doc["grounded"] = sorted(semantics.grounded)
        doc["preferred"] = [sorted(s) for s in semantics.preferred]
    print(json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_OK


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goal-arbiter",
        description="Detect resource conflicts among agent goals and select the ones to keep.",
    )
    sub = parser.add_subparsers(
        dest="command",
        required=True,
        metavar="{feasibility,detect,solve,export-af,report}",
    )

    p = sub.add_parser("feasibility", help="list individually affordable goals")
    p.add_argument("spec")
    _add_format(p)
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("detect", help="show conflict sets and their kind")
    p.add_argument("spec")
    _add_format(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("solve", help="select the consistent goal set")
    p.add_argument("spec")
    p.add_argument(
        "--strategy",
        choices=(STRATEGY_ALGORITHMIC, STRATEGY_ARGUMENTATION),
        default=STRATEGY_ALGORITHMIC,
    )
    p.add_argument("--semantics", choices=("grounded", "preferred", "auto"), default="auto")
    p.add_argument("--tiebreak", metavar="id|seed:N", default=None)
    _add_format(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("export-af", help="write the defeat graph as DOT")
    p.add_argument("spec")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_af)

    p = sub.add_parser("report", help="write CSV summaries and figures")
    p.add_argument("spec")
    p.add_argument("--out-dir", required=True)
    p.add_argument(
        "--strategy",
        choices=(STRATEGY_ALGORITHMIC, STRATEGY_ARGUMENTATION),
        default=STRATEGY_ALGORITHMIC,
    )
    p.add_argument("--semantics", choices=("grounded", "preferred", "auto"), default="auto")
    p.add_argument("--tiebreak", metavar="id|seed:N", default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("oracle")
    p.add_argument("spec")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecValidationError as exc:
        for issue in exc.issues:
            print(str(issue), file=sys.stderr)
        if not exc.issues:
            print("validation failed", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VALIDATION
    except (FrameworkTooLargeError, TooManyGoalsError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
