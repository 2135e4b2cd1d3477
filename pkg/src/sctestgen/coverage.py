"""State, transition, path, action and condition coverage.

Structural suites are measured against the transition graph; condition
coverage needs guard valuations and so only applies to interpreter traces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .expr import atoms
from .graph import TransitionGraph, build_graph
from .interpreter import Trace
from .model import Statechart, flatten
from .testgen import TestCase, maximal_paths

STRUCTURAL = ("state", "transition", "path", "action")
CRITERIA = STRUCTURAL + ("condition",)


class InvalidWalk(ValueError):
    def __init__(self, case_id: str):
        super().__init__(f"test case {case_id} is not a walk of the graph")
        self.case_id = case_id


class ModelMismatch(ValueError):
    pass


def occurs_in(small: Sequence, big: Sequence) -> bool:
    """True when ``small`` is a contiguous run inside ``big``."""
    n, m = len(small), len(big)
    small = tuple(small)
    big = tuple(big)
    return any(big[i:i + n] == small for i in range(m - n + 1))


@dataclass(frozen=True)
class Criterion:
    covered: frozenset = frozenset()
    universe: frozenset = frozenset()
    applicable: bool = True

    @property
    def ratio(self) -> Fraction:
        if not self.universe:
            return Fraction(1)
        return Fraction(len(self.covered), len(self.universe))

    def __str__(self):
        if not self.applicable:
            return "n/a"
        return f"{len(self.covered)}/{len(self.universe)}"


@dataclass(frozen=True)
class CoverageReport:
    state: Criterion
    transition: Criterion
    path: Criterion
    action: Criterion
    condition: Criterion = field(default_factory=lambda: Criterion(applicable=False))

    def __getitem__(self, name: str) -> Criterion:
        if name not in CRITERIA:
            raise KeyError(name)
        return getattr(self, name)

    def to_dict(self) -> dict:
        out = {}
        for name in CRITERIA:
            c = self[name]
            out[name] = {
                "applicable": c.applicable,
                "covered": sorted(c.covered),
                "universe": sorted(c.universe),
                "ratio": str(c.ratio) if c.applicable else None,
            }
        return out

    def table(self) -> str:
        rows = [f"{'criterion':<11} {'covered':>9} {'ratio':>7}"]
        for name in CRITERIA:
            c = self[name]
            ratio = f"{float(c.ratio):.1%}" if c.applicable else "-"
            rows.append(f"{name:<11} {str(c):>9} {ratio:>7}")
        return "\n".join(rows) + "\n"


def _structural(walks: Iterable[tuple[tuple[str, ...], tuple[str, ...]]],
                g: TransitionGraph) -> dict[str, Criterion]:
    walks = list(walks)
    paths = maximal_paths(g)
    states, edges = set(), set()
    for state_seq, edge_seq in walks:
        states.update(state_seq)
        edges.update(edge_seq)
    covered_paths = {p.id for p in paths
                     if any(occurs_in(p.edge_seq, e) for _, e in walks)}
    with_actions = {e.id for e in g.edges if e.has_actions}
    return {
        "state": Criterion(frozenset(states), frozenset(g.nodes)),
        "transition": Criterion(frozenset(edges), frozenset(g.edge_ids)),
        "path": Criterion(frozenset(covered_paths), frozenset(p.id for p in paths)),
        "action": Criterion(frozenset(edges & with_actions), frozenset(with_actions)),
    }


def measure_suite(suite: Iterable[TestCase], g: TransitionGraph) -> CoverageReport:
    """Structural coverage of ``suite``; condition coverage is marked n/a."""
    walks = []
    for tc in suite:
        if tc.edge_seq:
            ok = g.is_walk(tc.edge_seq) and tc.state_seq == (
                (g.nodes[g.edge(tc.edge_seq[0]).source],)
                + tuple(g.nodes[g.edge(e).target] for e in tc.edge_seq))
        else:
            ok = tc.state_seq[0] in g.nodes
        if not ok:
            raise InvalidWalk(tc.id)
        walks.append((tc.state_seq, tc.edge_seq))
    return CoverageReport(**_structural(walks, g))


def condition_items(sc: Statechart) -> list[str]:
    """Each guard is an item; a guard with several atomic conditions adds
    one item per atom, named ``<transition>.<index>``."""
    items = []
    for t in sc.transitions:
        if t.guard is None:
            continue
        items.append(t.id)
        parts = atoms(t.guard)
        if len(parts) > 1:
            items.extend(f"{t.id}.{i}" for i in range(len(parts)))
    return items


def measure_trace(trace: Trace | Sequence[Trace], sc: Statechart) -> CoverageReport:
    """Coverage reached by one trace, or by several traces taken together."""
    traces = [trace] if isinstance(trace, Trace) else list(trace)
    flat = flatten(sc)
    g = build_graph(flat)
    universe = condition_items(flat)
    seen: dict[str, set[bool]] = {item: set() for item in universe}
    walks = []
    for tr in traces:
        if tr.initial_state not in g.nodes:
            raise ModelMismatch(f"unknown state {tr.initial_state}")
        for s in tr.steps:
            if not g.has_edge(s.fired):
                raise ModelMismatch(f"unknown transition {s.fired}")
        outcomes, atom_outcomes = [], []
        for s in tr.steps:
            outcomes += s.guard_outcomes
            atom_outcomes += s.atom_outcomes
        if tr.refused is not None:
            outcomes += tr.refused.guard_outcomes
            atom_outcomes += tr.refused.atom_outcomes
        for tid, value in outcomes:
            if tid not in seen:
                raise ModelMismatch(f"unknown guard {tid}")
            seen[tid].add(value)
        for tid, i, value in atom_outcomes:
            key = f"{tid}.{i}"
            if key in seen:
                seen[key].add(value)
        walks.append((tr.states, tr.fired))
    both = frozenset(item for item, values in seen.items() if len(values) == 2)
    return CoverageReport(**_structural(walks, g),
                          condition=Criterion(both, frozenset(universe)))
