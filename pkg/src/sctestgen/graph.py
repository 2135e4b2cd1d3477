"""State-level transition graph and the transition-pair (dual) graph."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .expr import to_text
from .model import Statechart, flatten

ENTRY = "<entry>"
EXIT = "<exit>"


@dataclass(frozen=True)
class Edge:
    id: str
    source: int
    target: int
    trigger: Optional[str] = None
    guard: Optional[str] = None
    has_actions: bool = False


@dataclass(frozen=True)
class TransitionGraph:
    """States as nodes, transitions as edges, both in declaration order."""

    name: str
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    initial: Optional[int]
    accepting: frozenset[int] = frozenset()
    _by_id: dict = field(init=False, repr=False, compare=False)
    _out: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "_by_id", {e.id: e for e in self.edges})
        out = [[] for _ in self.nodes]
        for e in self.edges:
            out[e.source].append(e)
        object.__setattr__(self, "_out", tuple(tuple(o) for o in out))

    def edge(self, eid: str) -> Edge:
        return self._by_id[eid]

    def has_edge(self, eid: str) -> bool:
        return eid in self._by_id

    def out_edges(self, node: int) -> tuple[Edge, ...]:
        return self._out[node]

    def index(self, state: str) -> int:
        return self.nodes.index(state)

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def is_walk(self, edge_seq) -> bool:
        if not all(self.has_edge(e) for e in edge_seq):
            return False
        return all(self.edge(x).target == self.edge(y).source
                   for x, y in zip(edge_seq, edge_seq[1:]))


def build_graph(sc: Statechart) -> TransitionGraph:
    """Transition graph of ``sc`` (flattened first if it has composite states)."""
    flat = flatten(sc)
    nodes = tuple(s.id for s in flat.states)
    index = {sid: i for i, sid in enumerate(nodes)}
    edges = tuple(
        Edge(t.id, index[t.source], index[t.target], t.trigger,
             to_text(t.guard) if t.guard is not None else None, bool(t.actions))
        for t in flat.transitions
    )
    initial = index[flat.initial] if flat.initial is not None else None
    accepting = frozenset(index[s.id] for s in flat.states if s.accepting)
    return TransitionGraph(flat.name, nodes, edges, initial, accepting)


def transition_pairs(g: TransitionGraph) -> list[tuple[str, str]]:
    """Every (t, t') where t enters the state that t' leaves, ordered by (t, t')."""
    return [(t.id, u.id) for t in g.edges for u in g.out_edges(t.target)]


@dataclass(frozen=True)
class DualGraph:
    """Transitions as vertices, transition pairs as arcs, plus virtual
    ``ENTRY``/``EXIT`` vertices wired to initial and accepting transitions."""

    vertices: tuple[str, ...]
    arcs: tuple[tuple[str, str], ...]

    def successors(self, v: str) -> list[str]:
        return [b for a, b in self.arcs if a == v]

    def predecessors(self, v: str) -> list[str]:
        return [a for a, b in self.arcs if b == v]


def build_dual(g: TransitionGraph) -> DualGraph:
    vertices = (ENTRY,) + g.edge_ids + (EXIT,)
    arcs = list(transition_pairs(g))
    arcs += [(ENTRY, e.id) for e in g.edges if e.source == g.initial]
    arcs += [(e.id, EXIT) for e in g.edges if e.target in g.accepting]
    return DualGraph(vertices, tuple(arcs))
