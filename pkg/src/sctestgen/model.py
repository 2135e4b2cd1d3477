"""In-memory statechart model, structural validation and hierarchy flattening."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Union

from .expr import BOOL, INT, TYPES, Expr

INITIAL = "initial"
SIMPLE = "simple"
COMPOSITE = "composite"
STATE_KINDS = (INITIAL, SIMPLE, COMPOSITE)


class ModelError(ValueError):
    """A statechart whose cross references or hierarchy are broken."""


@dataclass(frozen=True)
class EventDecl:
    name: str
    params: tuple[tuple[str, str], ...] = ()

    @property
    def param_types(self) -> dict[str, str]:
        return dict(self.params)


@dataclass(frozen=True)
class StateNode:
    id: str
    kind: str = SIMPLE
    parent: Optional[str] = None
    initial_child: Optional[str] = None
    accepting: bool = False


@dataclass(frozen=True)
class Assign:
    var: str
    expr: Expr


@dataclass(frozen=True)
class Emit:
    signal: str


Action = Union[Assign, Emit]


@dataclass(frozen=True)
class TransitionDef:
    id: str
    source: str
    target: str
    trigger: Optional[str] = None
    guard: Optional[Expr] = None
    actions: tuple[Action, ...] = ()


@dataclass(frozen=True)
class VarDecl:
    name: str
    type: str
    initial: int | bool


@dataclass(frozen=True)
class Statechart:
    """Events, states (with hierarchy), variables and transitions.

    Transitions keep declaration order; every downstream tie-break uses it.
    Construction checks that all references resolve and raises
    :class:`ModelError` otherwise.
    """

    name: str
    events: tuple[EventDecl, ...] = ()
    states: tuple[StateNode, ...] = ()
    vars: tuple[VarDecl, ...] = ()
    transitions: tuple[TransitionDef, ...] = ()
    _state_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for attr in ("events", "states", "vars", "transitions"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        object.__setattr__(self, "_state_index", {s.id: s for s in self.states})
        self._check()

    def _check(self):
        _unique("event", (e.name for e in self.events))
        _unique("state", (s.id for s in self.states))
        _unique("variable", (v.name for v in self.vars))
        _unique("transition", (t.id for t in self.transitions))
        var_names = {v.name for v in self.vars}
        for v in self.vars:
            if v.type not in TYPES:
                raise ModelError(f"variable {v.name}: unknown type {v.type!r}")
            if v.type == BOOL and not isinstance(v.initial, bool):
                raise ModelError(f"variable {v.name}: bool needs a bool initial value")
            if v.type == INT and (isinstance(v.initial, bool) or not isinstance(v.initial, int)):
                raise ModelError(f"variable {v.name}: int needs an int initial value")
        for e in self.events:
            _unique(f"parameter of event {e.name}", (p for p, _ in e.params))
            for p, t in e.params:
                if t not in TYPES:
                    raise ModelError(f"event {e.name}: parameter {p} has unknown type {t!r}")
                if p in var_names:
                    raise ModelError(f"event {e.name}: parameter {p} shadows a variable")
        ids = self._state_index
        for s in self.states:
            if s.kind not in STATE_KINDS:
                raise ModelError(f"state {s.id}: unknown kind {s.kind!r}")
            if s.parent is not None:
                if s.parent not in ids:
                    raise ModelError(f"state {s.id}: unknown parent {s.parent}")
                if ids[s.parent].kind != COMPOSITE:
                    raise ModelError(f"state {s.id}: parent {s.parent} is not composite")
            if s.kind == COMPOSITE:
                if s.initial_child is None:
                    raise ModelError(f"composite state {s.id} needs an initial child")
                child = ids.get(s.initial_child)
                if child is None or child.parent != s.id:
                    raise ModelError(f"state {s.id}: initial child {s.initial_child} is not a child")
            elif s.initial_child is not None:
                raise ModelError(f"state {s.id}: only composite states have an initial child")
        for s in self.states:
            seen = {s.id}
            p = s.parent
            while p is not None:
                if p in seen:
                    raise ModelError(f"state hierarchy has a cycle through {p}")
                seen.add(p)
                p = ids[p].parent
        events = {e.name for e in self.events}
        triggerless = {}
        for t in self.transitions:
            for end in (t.source, t.target):
                if end not in ids:
                    raise ModelError(f"transition {t.id}: unknown state {end}")
            if t.trigger is not None and t.trigger not in events:
                raise ModelError(f"transition {t.id}: unknown event {t.trigger}")
            if t.trigger is None:
                triggerless.setdefault(t.source, []).append(t)
        for source, ts in triggerless.items():
            if len(ts) > 1:
                for t in ts:
                    if t.guard is None:
                        raise ModelError(
                            f"transition {t.id}: unguarded completion transition is not "
                            f"the only one leaving {source}")

    # lookups

    def state(self, sid: str) -> StateNode:
        return self._state_index[sid]

    def transition(self, tid: str) -> TransitionDef:
        for t in self.transitions:
            if t.id == tid:
                return t
        raise KeyError(tid)

    def event(self, name: str) -> EventDecl:
        for e in self.events:
            if e.name == name:
                return e
        raise KeyError(name)

    @property
    def initial_states(self) -> list[StateNode]:
        return [s for s in self.states if s.kind == INITIAL]

    @property
    def initial(self) -> Optional[str]:
        found = self.initial_states
        return found[0].id if len(found) == 1 else None

    @property
    def simple_states(self) -> list[StateNode]:
        return [s for s in self.states if s.kind != COMPOSITE]

    @property
    def is_flat(self) -> bool:
        return all(s.kind != COMPOSITE for s in self.states)

    def children(self, sid: str) -> list[StateNode]:
        return [s for s in self.states if s.parent == sid]

    def leaves(self, sid: str) -> list[str]:
        """Simple descendants of ``sid`` (``[sid]`` for a simple state), in declaration order."""
        if self.state(sid).kind != COMPOSITE:
            return [sid]
        out = []
        for c in self.children(sid):
            out.extend(self.leaves(c.id))
        return out

    def scope(self, event: Optional[str] = None) -> dict[str, str]:
        """Names visible to guards and actions of a transition triggered by ``event``."""
        names = {v.name: v.type for v in self.vars}
        if event is not None:
            names.update(self.event(event).param_types)
        return names

    @property
    def hierarchy(self) -> set[tuple[str, str]]:
        """The (parent, child) pairs of the state tree."""
        return {(s.parent, s.id) for s in self.states if s.parent is not None}


def _unique(what: str, names: Iterable[str]):
    seen = set()
    for n in names:
        if n in seen:
            raise ModelError(f"duplicate {what} {n!r}")
        seen.add(n)


# --- validation -------------------------------------------------------------

@dataclass(frozen=True)
class Issue:
    kind: str  # Unreachable, NotCoReachable, NoInitialState, MultipleInitialStates
    state: Optional[str] = None

    def __str__(self):
        return self.kind if self.state is None else f"{self.kind}({self.state})"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.issues

    def __bool__(self):
        # truthy when there is something to report
        return bool(self.issues)

    def __iter__(self):
        return iter(self.issues)

    def __len__(self):
        return len(self.issues)


def _search(start: Iterable[str], succ: dict[str, list[str]]) -> set[str]:
    seen = set(start)
    queue = deque(seen)
    while queue:
        s = queue.popleft()
        for n in succ.get(s, ()):
            if n not in seen:
                seen.add(n)
                queue.append(n)
    return seen


def validate_statechart(sc: Statechart) -> ValidationReport:
    """Check every simple state is reachable from the initial state and, when
    accepting states exist, can reach one.  An empty report means valid."""
    initials = sc.initial_states
    if not initials:
        return ValidationReport((Issue("NoInitialState"),))
    if len(initials) > 1:
        return ValidationReport((Issue("MultipleInitialStates"),))
    flat = flatten(sc)
    fwd, back = {}, {}
    for t in flat.transitions:
        fwd.setdefault(t.source, []).append(t.target)
        back.setdefault(t.target, []).append(t.source)
    reachable = _search([flat.initial], fwd)
    accepting = [s.id for s in flat.states if s.accepting]
    co_reachable = _search(accepting, back) if accepting else None
    issues = []
    for s in flat.simple_states:
        if s.id not in reachable:
            issues.append(Issue("Unreachable", s.id))
    if co_reachable is not None:
        for s in flat.simple_states:
            if s.id not in co_reachable:
                issues.append(Issue("NotCoReachable", s.id))
    return ValidationReport(tuple(issues))


# --- flattening -------------------------------------------------------------

def flatten(sc: Statechart) -> Statechart:
    """Remove composite states.

    Transitions into a composite are redirected to its (recursively resolved)
    initial child; transitions out of a composite are replicated from each
    simple descendant with id ``<id>@<descendant>``.  A flat chart comes back
    unchanged.
    """
    if sc.is_flat:
        return sc

    def entry(sid):
        while sc.state(sid).kind == COMPOSITE:
            sid = sc.state(sid).initial_child
        return sid

    def accepting(s):
        p = s.id
        while p is not None:
            if sc.state(p).accepting:
                return True
            p = sc.state(p).parent
        return False

    states = tuple(
        StateNode(s.id, s.kind, None, None, accepting(s))
        for s in sc.states if s.kind != COMPOSITE
    )
    transitions = []
    for t in sc.transitions:
        target = entry(t.target)
        if sc.state(t.source).kind == COMPOSITE:
            for leaf in sc.leaves(t.source):
                transitions.append(replace(t, id=f"{t.id}@{leaf}", source=leaf, target=target))
        else:
            transitions.append(replace(t, target=target))
    return Statechart(sc.name, sc.events, states, sc.vars, tuple(transitions))
