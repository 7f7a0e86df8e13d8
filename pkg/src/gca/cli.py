"""Command-line front end.

Exit codes: 0 success, 1 a checked theorem instance failed, 2 parse error,
3 validation error, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .corpus import parse_corpus, run_corpus
from .groups import ball
from .scenario import (
    ScenarioParseError,
    ScenarioValidationError,
    jsonable,
    load_scenario,
    parse_scenario,
    registry,
    resolve,
    run_scenario,
)
from .sofic import GraphFormatError, LabeledGraph, NondeterministicGraph, SoficWitness, counting_audit

OK, CHECK_FAILED, PARSE, VALIDATION, INTERNAL = 0, 1, 2, 3, 4


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, indent=2, sort_keys=False) + "\n")
        return
    if "checks" in report:
        out.write(f"scenario {report['scenario']}\n")
        for c in report["checks"]:
            extra = f"  witness={json.dumps(c['witness'])}" if c["witness"] is not None else ""
            out.write(f"  {c['name']:<16} {c['status']:<20} {c['ms']:>9.1f} ms{extra}\n")
        for v in report.get("violations", []):
            out.write(f"  VIOLATION: {v}\n")
        for m in report.get("expectation_mismatches", []):
            out.write(f"  MISMATCH: {m['name']} expected {m['expected']}, got {m['got']}\n")
    elif "tallies" in report:
        out.write(f"corpus of {report['corpus']['size']} (seed {report['corpus']['seed']})\n")
        for p, t in report["tallies"].items():
            out.write(f"  {p:<16} " + ", ".join(f"{k}: {n}" for k, n in t.items()) + "\n")
        out.write(f"  violations: {len(report['violations'])}\n")
    elif "lines" in report:
        for ln in report["lines"]:
            mark = "ok " if ln["holds"] else "NO "
            out.write(f"  {mark}[{ln['kind']:<10}] {ln['label']}  ({ln['lhs']:.6g} {ln['relation']} {ln['rhs']:.6g})\n")
        for n in report["notes"]:
            out.write(f"  note: {n}\n")
    else:
        out.write(json.dumps(report, indent=2) + "\n")


def cmd_run(args) -> int:
    sc = load_scenario(args.file)
    report = run_scenario(sc)
    _emit(report, args.format, sys.stdout)
    return CHECK_FAILED if report["violations"] or report["expectation_mismatches"] else OK


def cmd_corpus(args) -> int:
    _, text = resolve(args.file)
    spec = parse_corpus(text)
    report = run_corpus(spec)
    _emit(report, args.format, sys.stdout)
    return CHECK_FAILED if report["violations"] else OK


def _graph_path(path: str):
    from importlib import resources
    from pathlib import Path

    if Path(path).is_file():
        return path
    shipped = resources.files("gca.scenarios") / Path(path).name
    if shipped.is_file():
        return shipped
    raise FileNotFoundError(path)


def cmd_audit(args) -> int:
    graph = LabeledGraph.read(_graph_path(args.graph))
    name, text = resolve(args.scenario)
    sc = parse_scenario(text, name)
    cfg = sc.extra.get("sofic", {})
    r = args.r if args.r is not None else int(cfg.get("r", 1))
    eps = Fraction(str(args.epsilon if args.epsilon is not None else cfg.get("epsilon", "1/1000")))
    u = sc.ca.universe
    if graph.n_labels != len(u.generators):
        raise ScenarioValidationError("graph labels do not match the universe generators")
    if not graph.deterministic:
        raise NondeterministicGraph("graph labeling is not deterministic")
    try:
        report = counting_audit(sc.ca, SoficWitness(graph, u, 3 * r, eps), r)
    except ValueError as exc:
        raise ScenarioValidationError(str(exc)) from None
    out = {
        "scenario": sc.name,
        "radius": r,
        "ball_sizes": [len(ball(u, r)), len(ball(u, 2 * r))],
        "phi_surjective": report.phi_surjective,
        "numbers": report.numbers,
        "lines": [ln.__dict__ for ln in report.lines],
        "notes": report.notes,
        "derived_hold": report.derived_hold,
    }
    _emit(jsonable(out), args.format, sys.stdout)
    premises_hold = all(ln.holds for ln in report.lines if ln.kind == "premise")
    derived_bad = [ln for ln in report.lines if ln.kind == "derived" and not ln.holds]
    return CHECK_FAILED if premises_hold and derived_bad else OK


def cmd_examples(args) -> int:
    for name, text in registry().items():
        try:
            sc = parse_scenario(text, name)
            desc = f"{sc.ca.universe}, alphabet {sc.ca.alphabet}, memory {list(sc.ca.memory)}"
        except (ScenarioParseError, ScenarioValidationError):
            desc = "corpus configuration"
        print(f"{name:<12} {desc}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gca", description="Group cellular automata: deciders and theorem checks")
    sub = p.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["json", "text"], default="json")
    r = sub.add_parser("run", parents=[fmt], help="run the checks of a scenario file")
    r.add_argument("file")
    r.set_defaults(func=cmd_run)
    c = sub.add_parser("corpus", parents=[fmt], help="sweep a random corpus for theorem violations")
    c.add_argument("file")
    c.set_defaults(func=cmd_corpus)
    a = sub.add_parser("audit-sofic", parents=[fmt], help="audit the counting argument on a labeled graph")
    a.add_argument("graph")
    a.add_argument("scenario")
    a.add_argument("--r", type=int, default=None)
    a.add_argument("--epsilon", default=None)
    a.set_defaults(func=cmd_audit)
    e = sub.add_parser("examples", help="shipped scenarios")
    e.add_argument("action", choices=["list"])
    e.set_defaults(func=cmd_examples)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioParseError, GraphFormatError, FileNotFoundError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE
    except (ScenarioValidationError, NondeterministicGraph) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return VALIDATION
    except Exception as exc:  # noqa: BLE001 - reported as an internal failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
