"""Command line front end.

Exit status is 0 on success, 1 on a domain failure (invalid model,
ungeneratable sequence, refused scenario under ``--strict``) and 2 on usage
or input-format errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .coverage import STRUCTURAL, measure_suite, measure_trace
from .documents import (DocumentError, SuiteDocument, read_suite, read_traces,
                        write_faults, write_suite, write_traces)
from .dsl import emit_dot, format_testcase, parse_model, parse_scenarios
from .expr import SourceError
from .graph import build_graph, transition_pairs
from .interpreter import run_scenario
from .minimizer import compute_nc, effective_set, nc_table, setcover_reduce
from .model import Statechart, flatten, validate_statechart
from .testgen import (NotEmbeddable, TestSuite, embed_complete, fault_suite,
                      k_transition_suite, prefix_suite)


class DomainError(Exception):
    pass


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _output(text: str, path: str | None):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(path: str) -> Statechart:
    try:
        sc = parse_model(_read(path))
    except SourceError as exc:
        raise UsageError(f"{path}:{exc}") from None
    report = validate_statechart(sc)
    if report:
        raise DomainError(f"{path}: invalid model: " + ", ".join(map(str, report)))
    return flatten(sc)


def _load_suite(args, g):
    try:
        return read_suite(_read(args.suite), g, plain=args.plain)
    except DocumentError as exc:
        raise UsageError(f"{args.suite}: {exc}") from None


def cmd_validate(args) -> int:
    try:
        sc = parse_model(_read(args.model))
    except SourceError as exc:
        raise UsageError(f"{args.model}:{exc}") from None
    report = validate_statechart(sc)
    if report:
        for issue in report:
            print(f"invalid: {issue}")
        return 1
    flat = flatten(sc)
    print(f"valid: {len(flat.simple_states)} states, {len(flat.transitions)} transitions")
    return 0


def cmd_graph(args) -> int:
    g = build_graph(_load(args.model))
    pairs = transition_pairs(g)
    print(f"{len(g.nodes)} nodes, {len(g.edges)} edges, {len(pairs)} transition pairs")
    print("pairs: " + " ".join(f"({a},{b})" for a, b in pairs))
    if args.dot:
        Path(args.dot).write_text(emit_dot(g), encoding="utf-8")
    return 0


def cmd_generate(args) -> int:
    sc = _load(args.model)
    g = build_graph(sc)
    if args.method == "faults":
        _output(write_faults(sc.name, g, fault_suite(sc)), args.output)
        return 0
    params = {}
    if args.method == "prefix":
        suite = prefix_suite(g)
    else:
        if args.k is None or args.k < 1:
            raise UsageError("--method ktrans needs --k N with N >= 1")
        params["k"] = str(args.k)
        cases = k_transition_suite(g, args.k)
        if args.embed:
            params["embed"] = "true"
            embedded, seen = [], set()
            for tc in cases:
                try:
                    full = embed_complete(tc, g)
                except NotEmbeddable as exc:
                    raise DomainError(f"{tc.id} ({format_testcase(tc)}): {exc}") from None
                if full.edge_seq not in seen:
                    seen.add(full.edge_seq)
                    embedded.append(full)
            cases = embedded
        suite = TestSuite(cases)
    _output(write_suite(SuiteDocument(sc.name, args.method, params, suite)), args.output)
    return 0


def _report(report, json_path):
    sys.stdout.write(report.table())
    if json_path:
        Path(json_path).write_text(json.dumps(report.to_dict(), indent=2) + "\n",
                                   encoding="utf-8")


def cmd_coverage(args) -> int:
    sc = _load(args.model)
    if args.suite:
        g = build_graph(sc)
        _report(measure_suite(_load_suite(args, g).suite, g), args.json)
    else:
        try:
            traces = read_traces(_read(args.trace))
        except (ValueError, KeyError) as exc:
            raise UsageError(f"{args.trace}: malformed trace file ({exc})") from None
        try:
            report = measure_trace(traces, sc)
        except ValueError as exc:
            raise DomainError(str(exc)) from None
        _report(report, args.json)
    return 0


def cmd_minimize(args) -> int:
    sc = _load(args.model)
    g = build_graph(sc)
    doc = _load_suite(args, g)
    if args.mode == "subsumption":
        if args.nc_table:
            sys.stdout.write(nc_table(compute_nc(doc.suite)))
        reduced = effective_set(doc.suite)
        params = {"mode": "subsumption"}
    else:
        criteria = [c.strip() for c in args.criteria.split(",") if c.strip()]
        bad = [c for c in criteria if c not in STRUCTURAL]
        if not criteria or bad:
            raise UsageError(f"--criteria: expected a subset of {','.join(STRUCTURAL)}")
        reduced = setcover_reduce(doc.suite, g, criteria)
        params = {"mode": "setcover", "criteria": ",".join(criteria)}
    out = SuiteDocument(doc.model or sc.name, doc.method or "plain", params, reduced)
    _output(write_suite(out), args.output)
    return 0


def cmd_run(args) -> int:
    sc = _load(args.model)
    try:
        scenarios = parse_scenarios(_read(args.scenario), sc)
    except SourceError as exc:
        raise UsageError(f"{args.scenario}:{exc}") from None
    traces = [run_scenario(sc, scn) for scn in scenarios]
    failed = False
    for t in traces:
        status = "ok"
        if t.refused is not None:
            status = f"refused {t.refused.event} in {t.refused.state}"
            failed = True
        elif t.error is not None:
            status = t.error
            failed = True
        fired = ",".join(t.fired)
        print(f"{t.scenario}: fired ({fired}) end {t.final_state} {status}")
    if args.output:
        Path(args.output).write_text(write_traces(traces), encoding="utf-8")
    if args.report:
        sys.stdout.write(measure_trace(traces, sc).table())
    return 1 if (failed and args.strict) else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sctestgen",
                                description="Generate, measure and minimize statechart test suites.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check reachability of every state")
    s.add_argument("model")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("graph", help="summarize the transition graph")
    s.add_argument("model")
    s.add_argument("--dot", metavar="OUT", help="write a Graphviz rendering")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("generate", help="generate a test suite")
    s.add_argument("model")
    s.add_argument("--method", required=True, choices=["prefix", "ktrans", "faults"])
    s.add_argument("--k", type=int)
    s.add_argument("--embed", action="store_true",
                   help="extend k-transition sequences to complete ones")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("coverage", help="measure coverage of a suite or traces")
    s.add_argument("model")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--suite")
    src.add_argument("--trace")
    s.add_argument("--plain", action="store_true", help="suite file holds text forms only")
    s.add_argument("--json", metavar="OUT", help="also write the report as JSON")
    s.set_defaults(func=cmd_coverage)

    s = sub.add_parser("minimize", help="reduce a suite")
    s.add_argument("model")
    s.add_argument("--suite", required=True)
    s.add_argument("--plain", action="store_true", help="suite file holds text forms only")
    s.add_argument("--mode", required=True, choices=["subsumption", "setcover"])
    s.add_argument("--criteria", default="state,transition,path,action")
    s.add_argument("--nc-table", action="store_true", help="print NC(tc) for every case")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_minimize)

    s = sub.add_parser("run", help="execute scenario scripts")
    s.add_argument("model")
    s.add_argument("--scenario", required=True)
    s.add_argument("--report", action="store_true", help="print coverage of the runs")
    s.add_argument("--strict", action="store_true", help="exit 1 if any event is refused")
    s.add_argument("-o", "--output", help="write the traces as JSON")
    s.set_defaults(func=cmd_run)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
