"""Test sequence generation over a transition graph.

Three generators are provided:

* the prefix method (:func:`prefix_suite`): every single transition, then
  the prefixes of the maximal paths found by :func:`maximal_paths`;
* k-transition coverage (:func:`k_transition_suite`): every legal sequence
  of k transitions plus the complete shorter sequences that no length-k
  sequence contains;
* sneak paths (:func:`fault_suite`): a shortest legal start sequence
  followed by an event the reached state does not handle.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .graph import TransitionGraph, build_graph
from .model import Statechart, flatten


class NotEmbeddable(ValueError):
    """No complete sequence contains the given one."""


@dataclass(frozen=True)
class TestCase:
    """A walk ``[I, S, O]``: start state, edge sequence, visited states."""

    __test__ = False  # not a pytest class

    id: str
    initial_state: str
    edge_seq: tuple[str, ...]
    state_seq: tuple[str, ...]
    complete: bool = False

    def __post_init__(self):
        object.__setattr__(self, "edge_seq", tuple(self.edge_seq))
        object.__setattr__(self, "state_seq", tuple(self.state_seq))
        if len(self.state_seq) != len(self.edge_seq) + 1:
            raise ValueError(f"{self.id}: state sequence must be one longer than edge sequence")
        if self.state_seq[0] != self.initial_state:
            raise ValueError(f"{self.id}: state sequence must begin at {self.initial_state}")

    def __len__(self):
        return len(self.edge_seq)


class TestSuite(Sequence):
    """Ordered test cases, unique by id and by edge sequence."""

    __test__ = False

    def __init__(self, cases: Iterable[TestCase] = ()):
        self.cases = tuple(cases)
        ids, seqs = set(), set()
        for tc in self.cases:
            if tc.id in ids:
                raise ValueError(f"duplicate test case id {tc.id}")
            if tc.edge_seq in seqs:
                raise ValueError(f"duplicate edge sequence in {tc.id}")
            ids.add(tc.id)
            seqs.add(tc.edge_seq)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return TestSuite(self.cases[i])
        return self.cases[i]

    def __len__(self):
        return len(self.cases)

    def __eq__(self, other):
        if isinstance(other, TestSuite):
            return self.cases == other.cases
        return NotImplemented

    def __repr__(self):
        return f"TestSuite({list(self.cases)!r})"

    def by_id(self, tid: str) -> TestCase:
        for tc in self.cases:
            if tc.id == tid:
                return tc
        raise KeyError(tid)

    @property
    def ids(self) -> list[str]:
        return [tc.id for tc in self.cases]


def make_case(g: TransitionGraph, edges: Sequence[str], id: str = "",
              start: Optional[str] = None) -> TestCase:
    """Build a test case for the walk ``edges``; ``start`` is only needed for
    the empty walk.  Raises ``ValueError`` if ``edges`` is not a walk of ``g``."""
    edges = tuple(edges)
    if not edges:
        if start is None:
            raise ValueError("an empty walk needs an explicit start state")
        states = (start,)
    else:
        if not g.is_walk(edges):
            raise ValueError(f"{id or edges}: not a walk of {g.name}")
        first = g.edge(edges[0])
        states = (g.nodes[first.source],) + tuple(g.nodes[g.edge(e).target] for e in edges)
    complete = (g.initial is not None and states[0] == g.nodes[g.initial]
                and g.index(states[-1]) in g.accepting)
    return TestCase(id, states[0], edges, states, complete)


def _numbered(g: TransitionGraph, seqs: Iterable[tuple[str, ...]], prefix: str) -> list[TestCase]:
    return [make_case(g, s, f"{prefix}{i}") for i, s in enumerate(seqs, start=1)]


# --- prefix method ----------------------------------------------------------

def _maximal_edge_seqs(g: TransitionGraph) -> list[tuple[str, ...]]:
    if g.initial is None:
        return []
    found = []
    # explicit stack of (node, path, used edges, nodes visited earlier on the path)
    stack = [(g.initial, (), frozenset(), frozenset())]
    while stack:
        node, path, used, earlier = stack.pop()
        free = [e for e in g.out_edges(node) if e.id not in used]
        if not free:
            if path:
                found.append(path)
            continue
        if node in earlier:
            # a revisit continues along its first unused edge, it does not branch again
            free = free[:1]
        for e in reversed(free):
            stack.append((e.target, path + (e.id,), used | {e.id}, earlier | {node}))
    return found


def maximal_paths(g: TransitionGraph) -> list[TestCase]:
    """Maximal edge-simple paths from the initial state, depth first.

    Out-edges are explored in declaration order.  A state branches over all
    of its unused out-edges the first time a path enters it; when the path
    re-enters it, the path continues along the first unused out-edge only.
    Loops are therefore taken at most once and then left by the first exit.
    Paths come out in backtrack order and are numbered ``p1, p2, ...``.
    """
    return _numbered(g, _maximal_edge_seqs(g), "p")


def prefix_suite(g: TransitionGraph) -> TestSuite:
    """Single transitions in declaration order, then for each maximal path
    its prefixes of two or more edges, shortest first, skipping repeats."""
    seqs: list[tuple[str, ...]] = [(e.id,) for e in g.edges]
    seen = set(seqs)
    for path in _maximal_edge_seqs(g):
        for n in range(2, len(path) + 1):
            if path[:n] not in seen:
                seen.add(path[:n])
                seqs.append(path[:n])
    return TestSuite(_numbered(g, seqs, "tc"))


# --- k-transition coverage --------------------------------------------------

def walks(g: TransitionGraph, k: int, start: Optional[int] = None) -> Iterator[tuple[str, ...]]:
    """All walks of exactly ``k`` edges (optionally from node ``start``),
    in lexicographic declaration order."""
    def extend(node, path):
        if len(path) == k:
            yield path
            return
        for e in g.out_edges(node):
            yield from extend(e.target, path + (e.id,))

    if k == 0:
        return
    firsts = g.edges if start is None else g.out_edges(start)
    for e in firsts:
        yield from extend(e.target, (e.id,))


def _max_walk(g: TransitionGraph, cap: int, backward: bool) -> list[int]:
    """Per node, the longest walk ending (backward) or starting there, capped at ``cap``."""
    n = len(g.nodes)
    can = [True] * n
    best = [0] * n
    for length in range(1, cap + 1):
        nxt = [False] * n
        for e in g.edges:
            # forward: a walk of `length` leaves e.source if one of length-1 leaves e.target
            a, b = (e.source, e.target) if backward else (e.target, e.source)
            if can[a]:
                nxt[b] = True
        can = nxt
        for v in range(n):
            if can[v]:
                best[v] = length
        if not any(can):
            break
    return best


def k_transition_suite(g: TransitionGraph, k: int) -> list[TestCase]:
    """Sequences for k-transition coverage, numbered ``k1, k2, ...``.

    Every legal sequence of exactly ``k`` transitions, plus every complete
    sequence (initial state to accepting state) shorter than ``k`` that is
    not contained in any legal sequence of length ``k``.  Sorted
    lexicographically by transition declaration order.
    """
    if k < 1:
        raise ValueError("k must be positive")
    seqs = list(walks(g, k))
    if g.initial is not None and g.accepting:
        back = _max_walk(g, k, backward=True)
        fwd = _max_walk(g, k, backward=False)
        slack = back[g.initial]
        for m in range(1, k):
            for w in walks(g, m, start=g.initial):
                end = g.edge(w[-1]).target
                if end in g.accepting and slack + m + fwd[end] < k:
                    seqs.append(w)
    order = {eid: i for i, eid in enumerate(g.edge_ids)}
    seqs.sort(key=lambda s: [order[e] for e in s])
    return _numbered(g, seqs, "k")


# --- completion -------------------------------------------------------------

def _bfs(g: TransitionGraph, start: int, goal) -> Optional[tuple[str, ...]]:
    """Shortest edge sequence from ``start`` to a node satisfying ``goal``;
    ties go to the earlier-declared edge."""
    if goal(start):
        return ()
    parent = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for e in g.out_edges(v):
            if e.target in parent:
                continue
            parent[e.target] = e
            if goal(e.target):
                path = []
                node = e.target
                while parent[node] is not None:
                    path.append(parent[node].id)
                    node = parent[node].source
                return tuple(reversed(path))
            queue.append(e.target)
    return None


def start_sequence(g: TransitionGraph, state: str) -> tuple[str, ...]:
    """Shortest legal sequence from the initial state to ``state``."""
    if g.initial is None:
        raise NotEmbeddable("graph has no initial state")
    target = g.index(state)
    path = _bfs(g, g.initial, lambda v: v == target)
    if path is None:
        raise NotEmbeddable(f"{state} is not reachable from the initial state")
    return path


def completion_sequence(g: TransitionGraph, state: str) -> tuple[str, ...]:
    """Shortest legal sequence from ``state`` to an accepting state."""
    path = _bfs(g, g.index(state), lambda v: v in g.accepting)
    if path is None:
        raise NotEmbeddable(f"no accepting state is reachable from {state}")
    return path


def embed_complete(seq: TestCase, g: TransitionGraph) -> TestCase:
    """Wrap ``seq`` in the shortest start and completion sequences."""
    head = start_sequence(g, seq.state_seq[0])
    tail = completion_sequence(g, seq.state_seq[-1])
    edges = head + seq.edge_seq + tail
    if not edges:
        # the initial state is itself accepting
        return TestCase(seq.id, seq.initial_state, (), seq.state_seq, True)
    return make_case(g, edges, seq.id)


# --- sneak paths ------------------------------------------------------------

@dataclass(frozen=True)
class FaultTransition:
    state: str
    event: str


@dataclass(frozen=True)
class FaultSequence:
    """A legal start sequence ending in ``fault.state`` followed by the faulty event.

    ``transient`` marks states with a completion transition; a running
    machine normally leaves such states before the next event arrives.
    """

    start_seq: tuple[str, ...]
    fault: FaultTransition
    transient: bool = False


def fault_transitions(sc: Statechart) -> list[FaultTransition]:
    """(state, event) pairs over simple states and declared events such that
    no transition leaving the state is triggered by the event."""
    flat = flatten(sc)
    handled = {(t.source, t.trigger) for t in flat.transitions if t.trigger is not None}
    return [FaultTransition(s.id, e.name)
            for s in flat.simple_states for e in flat.events
            if (s.id, e.name) not in handled]


def fault_suite(sc: Statechart) -> list[FaultSequence]:
    flat = flatten(sc)
    g = build_graph(flat)
    transient = {t.source for t in flat.transitions if t.trigger is None}
    return [FaultSequence(start_sequence(g, f.state), f, f.state in transient)
            for f in fault_transitions(flat)]
