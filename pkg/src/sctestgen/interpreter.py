"""Run event scenarios against a statechart with integer and boolean variables.

An event fires the single enabled transition it triggers from the current
state; then completion transitions (those without a trigger) fire while
exactly one of them is enabled.  Two enabled candidates at once is an error
rather than a priority choice.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

from .expr import atoms, evaluate
from .model import Assign, Emit, Statechart, TransitionDef

Value = int | bool
Bindings = tuple[tuple[str, Value], ...]


class InterpreterError(Exception):
    pass


class EventRefused(InterpreterError):
    """No transition triggered by the event is enabled in the current state."""

    def __init__(self, state: str, event: str, outcomes=(), atom_outcomes=()):
        super().__init__(f"event {event} refused in state {state}")
        self.state = state
        self.event = event
        self.outcomes = tuple(outcomes)
        self.atom_outcomes = tuple(atom_outcomes)


class Nondeterminism(InterpreterError):
    def __init__(self, state: str, candidates: Sequence[str]):
        super().__init__(f"transitions {', '.join(candidates)} are all enabled in {state}")
        self.state = state
        self.candidates = tuple(candidates)


class LivelockSuspected(InterpreterError):
    def __init__(self, state: str, limit: int):
        super().__init__(f"completion transitions fired more than {limit} times, now in {state}")
        self.state = state


@dataclass(frozen=True)
class Scenario:
    name: str
    events: tuple[tuple[str, Bindings], ...] = ()


@dataclass(frozen=True)
class Step:
    stimulus: Optional[tuple[str, Bindings]]  # None for a completion transition
    fired: str
    guard_outcomes: tuple[tuple[str, bool], ...]
    atom_outcomes: tuple[tuple[str, int, bool], ...]
    env_after: tuple[tuple[str, Value], ...]
    state_after: str


@dataclass(frozen=True)
class Refusal:
    state: str
    event: str
    guard_outcomes: tuple[tuple[str, bool], ...] = ()
    atom_outcomes: tuple[tuple[str, int, bool], ...] = ()


@dataclass(frozen=True)
class Trace:
    initial_state: str
    initial_env: tuple[tuple[str, Value], ...]
    steps: tuple[Step, ...] = ()
    signals: tuple[str, ...] = ()
    refused: Optional[Refusal] = None
    error: Optional[str] = None
    scenario: str = ""

    @property
    def fired(self) -> tuple[str, ...]:
        return tuple(s.fired for s in self.steps)

    @property
    def final_state(self) -> str:
        return self.steps[-1].state_after if self.steps else self.initial_state

    @property
    def final_env(self) -> dict[str, Value]:
        return dict(self.steps[-1].env_after if self.steps else self.initial_env)

    @property
    def states(self) -> tuple[str, ...]:
        return (self.initial_state,) + tuple(s.state_after for s in self.steps)


def initial_env(sc: Statechart) -> dict[str, Value]:
    return {v.name: v.initial for v in sc.vars}


def _outgoing(sc: Statechart, state: str, trigger: Optional[str]) -> list[TransitionDef]:
    return [t for t in sc.transitions if t.source == state and t.trigger == trigger]


def _enabled(candidates, scope, outcomes, atom_outcomes) -> list[TransitionDef]:
    enabled = []
    for t in candidates:
        if t.guard is None:
            enabled.append(t)
            continue
        value = bool(evaluate(t.guard, scope))
        outcomes.append((t.id, value))
        for i, a in enumerate(atoms(t.guard)):
            atom_outcomes.append((t.id, i, bool(evaluate(a, scope))))
        if value:
            enabled.append(t)
    return enabled


def _fire(t: TransitionDef, env: dict, scope: dict, signals: list) -> dict:
    env = dict(env)
    for a in t.actions:
        if isinstance(a, Assign):
            value = evaluate(a.expr, scope)
            env[a.var] = value
            scope[a.var] = value
        elif isinstance(a, Emit):
            signals.append(a.signal)
    return env


def step(sc: Statechart, state: str, env: Mapping[str, Value], event: str,
         params: Mapping[str, Value] | Bindings = (), signals: Optional[list] = None):
    """Deliver ``event`` in ``state``.

    Returns ``(new_state, new_env, steps)`` where ``steps`` holds the
    triggered transition followed by any completion transitions.  Emitted
    signals are appended to ``signals`` when given.
    """
    params = dict(params)
    signals = [] if signals is None else signals
    outcomes, atom_outcomes = [], []
    scope = {**env, **params}
    enabled = _enabled(_outgoing(sc, state, event), scope, outcomes, atom_outcomes)
    if not enabled:
        raise EventRefused(state, event, outcomes, atom_outcomes)
    if len(enabled) > 1:
        raise Nondeterminism(state, [t.id for t in enabled])
    t = enabled[0]
    env = _fire(t, env, scope, signals)
    state = t.target
    stimulus = (event, tuple(sorted(params.items())))
    steps = [Step(stimulus, t.id, tuple(outcomes), tuple(atom_outcomes),
                  tuple(env.items()), state)]
    limit = len(sc.transitions)
    closure = 0
    while True:
        outcomes, atom_outcomes = [], []
        enabled = _enabled(_outgoing(sc, state, None), dict(env), outcomes, atom_outcomes)
        if not enabled:
            # guards that kept us here still count as evaluated
            last = steps[-1]
            steps[-1] = replace(last, guard_outcomes=last.guard_outcomes + tuple(outcomes),
                                atom_outcomes=last.atom_outcomes + tuple(atom_outcomes))
            return state, env, steps
        if len(enabled) > 1:
            raise Nondeterminism(state, [c.id for c in enabled])
        if closure == limit:
            raise LivelockSuspected(state, limit)
        closure += 1
        t = enabled[0]
        env = _fire(t, env, dict(env), signals)
        state = t.target
        steps.append(Step(None, t.id, tuple(outcomes), tuple(atom_outcomes),
                          tuple(env.items()), state))


def run_scenario(sc: Statechart, scn: Scenario) -> Trace:
    """Run every event of ``scn`` from the initial configuration.

    A refused event ends the run: the partial trace comes back with
    ``refused`` set.  Nondeterminism and suspected livelock end it the same
    way with ``error`` set.
    """
    state = sc.initial
    if state is None:
        raise InterpreterError("statechart needs exactly one initial state")
    env = initial_env(sc)
    start_env = tuple(env.items())
    steps, signals = [], []
    refused = error = None
    for event, bindings in scn.events:
        emitted = []
        try:
            state, env, fired = step(sc, state, env, event, bindings, emitted)
        except EventRefused as exc:
            refused = Refusal(exc.state, exc.event, exc.outcomes, exc.atom_outcomes)
            break
        except InterpreterError as exc:
            error = f"{type(exc).__name__}: {exc}"
            break
        steps.extend(fired)
        signals.extend(emitted)
    return Trace(sc.initial, start_env, tuple(steps), tuple(signals), refused, error, scn.name)


# candidate values tried when searching for event parameters
DEFAULT_DOMAIN = (0, 1, -1, 2, -2, 10, -10, 100, -100, 1000, -1000)


def _default(ptype: str) -> Value:
    return False if ptype == "bool" else 0


def concretize(sc: Statechart, edge_seq: Sequence[str], name: str = "",
               domain: Sequence[int] = DEFAULT_DOMAIN) -> Optional[Scenario]:
    """Find event parameters that make a run fire exactly ``edge_seq``.

    The events are the triggers along ``edge_seq``; integer parameters are
    drawn from ``domain`` and booleans from both values.  The first binding
    (in domain order) whose run fires ``edge_seq`` and nothing more is
    returned, or ``None`` if there is none.
    """
    triggers = [sc.transition(t).trigger for t in edge_seq]
    if edge_seq and triggers[0] is None:
        return None
    events = [sc.event(e) for e in triggers if e is not None]
    slots = [(i, p, ptype) for i, ev in enumerate(events) for p, ptype in ev.params]
    choices = [(False, True) if ptype == "bool" else tuple(domain) for _, _, ptype in slots]
    for values in itertools.product(*choices):
        bound = [[] for _ in events]
        for (i, p, _), v in zip(slots, values):
            bound[i].append((p, v))
        scn = Scenario(name, tuple((ev.name, tuple(b)) for ev, b in zip(events, bound)))
        trace = run_scenario(sc, scn)
        if trace.refused is None and trace.error is None and trace.fired == tuple(edge_seq):
            return scn
    return None


def fault_scenario(sc: Statechart, fs, domain: Sequence[int] = DEFAULT_DOMAIN) -> Optional[Scenario]:
    """Scenario driving the start sequence of the fault sequence ``fs`` and
    then sending its faulty event (parameters zero/false).  ``None`` when no
    parameters make the run rest in the fault state."""
    name = f"{fs.fault.state}_{fs.fault.event}"
    scn = concretize(sc, fs.start_seq, name, domain)
    if scn is None:
        return None
    ev = sc.event(fs.fault.event)
    bindings = tuple((p, _default(t)) for p, t in ev.params)
    return Scenario(name, scn.events + ((ev.name, bindings),))
