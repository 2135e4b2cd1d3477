"""Suite, fault-suite and trace files.

A suite file holds a header line and one record per test case::

    suite RTVM method=prefix
    tc1 IN-(a)-IDL partial
    tc14 IN-(a)-IDL-(b)-TS-(c)-CM-(d)-TS-(e)-OP-(g)-EP-(h)-IDL complete

Edge and state sequences are recovered from the text form, so the file
round-trips without loss.  A *plain* suite is just the text forms, one per
line.  Traces are stored as JSON.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .dsl import format_testcase, parse_testcase_text
from .graph import TransitionGraph
from .interpreter import Refusal, Step, Trace
from .testgen import FaultSequence, TestCase, TestSuite, make_case


class DocumentError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class SuiteDocument:
    model: str
    method: str
    params: dict[str, str] = field(default_factory=dict)
    suite: TestSuite = field(default_factory=TestSuite)


def write_suite(doc: SuiteDocument) -> str:
    head = " ".join([f"suite {doc.model}", f"method={doc.method}"]
                    + [f"{k}={v}" for k, v in doc.params.items()])
    lines = [head]
    for tc in doc.suite:
        lines.append(f"{tc.id} {format_testcase(tc)} {'complete' if tc.complete else 'partial'}")
    return "\n".join(lines) + "\n"


def _content(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _case_from_text(n: int, tid: str, form: str, g: Optional[TransitionGraph]) -> TestCase:
    try:
        states, edges = parse_testcase_text(form)
    except ValueError as exc:
        raise DocumentError(n, str(exc)) from None
    if g is None:
        return TestCase(tid, states[0], edges, states)
    try:
        tc = make_case(g, edges, tid, start=states[0])
    except ValueError as exc:
        raise DocumentError(n, str(exc)) from None
    if tc.state_seq != states:
        raise DocumentError(n, f"{tid}: states do not match the edges in the model")
    return tc


def read_suite(text: str, g: Optional[TransitionGraph] = None, plain: bool = False) -> SuiteDocument:
    """Parse a suite file.  With ``g`` given, every case is checked to be a
    walk of the graph and its complete flag is recomputed from the model."""
    lines = list(_content(text))
    if plain:
        cases = [_case_from_text(n, f"tc{i}", line, g)
                 for i, (n, line) in enumerate(lines, start=1)]
        return SuiteDocument(g.name if g else "", "plain", {}, _suite(cases, lines))
    if not lines:
        raise DocumentError(1, "empty suite file")
    n, head = lines[0]
    words = head.split()
    if words[0] == "faults":
        raise DocumentError(n, "this is a fault-sequence file, not a test suite")
    if words[0] != "suite" or len(words) < 2:
        raise DocumentError(n, "expected 'suite <model> method=<name>'")
    params = {}
    for w in words[2:]:
        key, sep, value = w.partition("=")
        if not sep:
            raise DocumentError(n, f"expected key=value, got {w!r}")
        params[key] = value
    method = params.pop("method", "")
    cases = []
    for n, line in lines[1:]:
        parts = line.split()
        if len(parts) != 3 or parts[2] not in ("complete", "partial"):
            raise DocumentError(n, "expected '<id> <sequence> complete|partial'")
        tc = _case_from_text(n, parts[0], parts[1], g)
        if g is None:
            tc = TestCase(tc.id, tc.initial_state, tc.edge_seq, tc.state_seq,
                          parts[2] == "complete")
        cases.append(tc)
    return SuiteDocument(words[1], method, params, _suite(cases, lines[1:]))


def _suite(cases, lines) -> TestSuite:
    try:
        return TestSuite(cases)
    except ValueError as exc:
        raise DocumentError(lines[0][0] if lines else 1, str(exc)) from None


def fault_text(g: TransitionGraph, fs: FaultSequence) -> str:
    """``IN-(a)-IDL-[insertCash]``: the start walk, then the faulty event."""
    if fs.start_seq:
        walk = format_testcase(make_case(g, fs.start_seq))
    else:
        walk = g.nodes[g.initial]
    return f"{walk}-[{fs.fault.event}]"


def write_faults(model: str, g: TransitionGraph, faults: list[FaultSequence]) -> str:
    lines = [f"faults {model}"]
    for i, fs in enumerate(faults, start=1):
        lines.append(f"f{i} {fault_text(g, fs)} {'transient' if fs.transient else 'stable'}")
    return "\n".join(lines) + "\n"


# --- traces -----------------------------------------------------------------

def _pairs(items):
    return [list(p) for p in items]


def trace_to_dict(t: Trace) -> dict:
    return {
        "scenario": t.scenario,
        "initial_state": t.initial_state,
        "initial_env": _pairs(t.initial_env),
        "steps": [
            {
                "stimulus": None if s.stimulus is None
                else {"event": s.stimulus[0], "params": _pairs(s.stimulus[1])},
                "fired": s.fired,
                "guards": _pairs(s.guard_outcomes),
                "atoms": _pairs(s.atom_outcomes),
                "env_after": _pairs(s.env_after),
                "state_after": s.state_after,
            }
            for s in t.steps
        ],
        "signals": list(t.signals),
        "refused": None if t.refused is None else {
            "state": t.refused.state,
            "event": t.refused.event,
            "guards": _pairs(t.refused.guard_outcomes),
            "atoms": _pairs(t.refused.atom_outcomes),
        },
        "error": t.error,
    }


def _tuples(items):
    return tuple(tuple(p) for p in items)


def trace_from_dict(d: dict) -> Trace:
    steps = []
    for s in d["steps"]:
        stim = s["stimulus"]
        steps.append(Step(
            None if stim is None else (stim["event"], _tuples(stim["params"])),
            s["fired"], _tuples(s["guards"]), _tuples(s["atoms"]),
            _tuples(s["env_after"]), s["state_after"]))
    r = d.get("refused")
    refused = None if r is None else Refusal(r["state"], r["event"],
                                             _tuples(r["guards"]), _tuples(r["atoms"]))
    return Trace(d["initial_state"], _tuples(d["initial_env"]), tuple(steps),
                 tuple(d.get("signals", ())), refused, d.get("error"), d.get("scenario", ""))


def write_traces(traces: list[Trace]) -> str:
    return json.dumps([trace_to_dict(t) for t in traces], indent=2) + "\n"


def read_traces(text: str) -> list[Trace]:
    data = json.loads(text)
    if isinstance(data, dict):
        data = [data]
    return [trace_from_dict(d) for d in data]
