"""Textual formats: the statechart DSL, scenario scripts, test-case text and DOT.

A model file looks like::

    statechart RTVM
    var total : int = 0
    event selectTicket(n: int)
    state IN kind = initial
    state IDL
    accepting IDL
    transition a : IN -> IDL on powerOn do total := 0; emit ready

Events and variables must be declared before a transition uses them; states
may be referenced before their declaration.  Parsing stops at the first error.
"""
from __future__ import annotations

from typing import Optional

from .expr import (BOOL, EXPR_KEYWORDS, INT, SourceError, Token, TokenStream,
                   parse_expr_tokens, to_text, tokenize)
from .graph import TransitionGraph
from .interpreter import Scenario
from .model import (COMPOSITE, INITIAL, SIMPLE, Assign, Emit, EventDecl,
                    ModelError, StateNode, Statechart, TransitionDef, VarDecl)

RESERVED = EXPR_KEYWORDS | {"on", "when", "do", "emit"}


def _ident(s: TokenStream, what: str) -> Token:
    tok = s.peek
    if tok.kind != "ident" or tok.value in RESERVED:
        s.fail(f"expected {what}")
    return s.next()


def _type(s: TokenStream) -> str:
    tok = s.peek
    if tok.kind == "ident" and tok.value in (INT, BOOL):
        return s.next().value
    s.fail("expected 'int' or 'bool'")


def _literal(s: TokenStream) -> tuple[Token, int | bool]:
    tok = s.peek
    if tok.kind == "ident" and tok.value in ("true", "false"):
        s.next()
        return tok, tok.value == "true"
    negative = s.accept("-")
    num = s.peek
    if num.kind != "int":
        s.fail("expected a literal")
    s.next()
    return tok, -int(num.value) if negative else int(num.value)


def _end(s: TokenStream):
    if s.peek.kind != "eof":
        s.fail("unexpected trailing input")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = tokenize(raw, lineno)
        if tokens[0].kind != "eof":
            yield lineno, TokenStream(tokens)


class _ModelParser:
    def __init__(self):
        self.name = None
        self.vars: dict[str, VarDecl] = {}
        self.events: dict[str, EventDecl] = {}
        self.states: dict[str, dict] = {}
        self.state_lines: dict[str, Token] = {}
        self.accepting: list[Token] = []
        self.transitions: list[TransitionDef] = []
        self.trans_tokens: dict[str, dict[str, Token]] = {}
        self.params: set[str] = set()

    def parse(self, text: str) -> Statechart:
        lines = _lines(text)
        header = next(lines, None)
        if header is None:
            raise SourceError(1, 1, "empty document, expected 'statechart'", "parse")
        _, s = header
        s.expect("statechart")
        self.name = _ident(s, "a chart name").value
        self.header = s.tokens[0]
        _end(s)
        for _, s in lines:
            tok = s.peek
            handler = getattr(self, f"_decl_{tok.value}", None) if tok.kind == "ident" else None
            if handler is None:
                s.fail("expected a declaration")
            s.next()
            handler(s, tok)
            _end(s)
        return self._finish()

    def _decl_var(self, s, kw):
        name = _ident(s, "a variable name")
        if name.value in self.vars:
            raise SourceError(name.line, name.col, f"duplicate variable {name.value!r}", "resolve")
        if name.value in self.params:
            raise SourceError(name.line, name.col,
                              f"variable {name.value!r} clashes with an event parameter", "resolve")
        s.expect(":")
        vtype = _type(s)
        s.expect("=")
        lit_tok, value = _literal(s)
        if isinstance(value, bool) != (vtype == BOOL):
            raise SourceError(lit_tok.line, lit_tok.col,
                              f"initial value does not match type {vtype}", "type")
        self.vars[name.value] = VarDecl(name.value, vtype, value)

    def _decl_event(self, s, kw):
        name = _ident(s, "an event name")
        if name.value in self.events:
            raise SourceError(name.line, name.col, f"duplicate event {name.value!r}", "resolve")
        params = []
        if s.accept("("):
            while True:
                p = _ident(s, "a parameter name")
                if p.value in dict(params):
                    raise SourceError(p.line, p.col, f"duplicate parameter {p.value!r}", "resolve")
                if p.value in self.vars:
                    raise SourceError(p.line, p.col,
                                      f"parameter {p.value!r} clashes with a variable", "resolve")
                s.expect(":")
                params.append((p.value, _type(s)))
                if not s.accept(","):
                    break
            s.expect(")")
        self.params.update(p for p, _ in params)
        self.events[name.value] = EventDecl(name.value, tuple(params))

    def _decl_state(self, s, kw):
        name = _ident(s, "a state name")
        if name.value in self.states:
            raise SourceError(name.line, name.col, f"duplicate state {name.value!r}", "resolve")
        opts = {"kind": SIMPLE, "parent": None, "initialchild": None}
        seen = set()
        while s.peek.kind != "eof":
            key = s.peek
            if key.value not in opts or key.value in seen:
                s.fail("expected 'kind', 'parent' or 'initialchild'")
            s.next()
            seen.add(key.value)
            s.expect("=")
            val = _ident(s, f"a value for {key.value}")
            if key.value == "kind" and val.value not in (INITIAL, SIMPLE, COMPOSITE):
                s.fail("expected 'initial', 'simple' or 'composite'", val)
            opts[key.value] = val
        self.states[name.value] = opts
        self.state_lines[name.value] = name

    def _decl_accepting(self, s, kw):
        self.accepting.append(_ident(s, "a state name"))
        while s.accept(","):
            self.accepting.append(_ident(s, "a state name"))

    def _decl_transition(self, s, kw):
        tid = _ident(s, "a transition id")
        if tid.value in self.trans_tokens:
            raise SourceError(tid.line, tid.col, f"duplicate transition {tid.value!r}", "resolve")
        s.expect(":")
        src = _ident(s, "a source state")
        s.expect("->")
        dst = _ident(s, "a target state")
        trigger = guard = None
        actions = []
        if s.accept("on"):
            ev = _ident(s, "an event name")
            if ev.value not in self.events:
                raise SourceError(ev.line, ev.col, f"unknown event {ev.value!r}", "resolve")
            trigger = ev.value
        scope = {v.name: v.type for v in self.vars.values()}
        if trigger is not None:
            scope.update(self.events[trigger].param_types)
        if s.at("when"):
            w = s.next()
            guard, gtype = parse_expr_tokens(s, scope)
            if gtype != BOOL:
                raise SourceError(w.line, w.col, "guard must be a bool expression", "type")
        if s.accept("do"):
            actions.append(self._action(s, scope))
            while s.accept(";"):
                actions.append(self._action(s, scope))
        self.trans_tokens[tid.value] = {"id": tid, "source": src, "target": dst}
        self.transitions.append(
            TransitionDef(tid.value, src.value, dst.value, trigger, guard, tuple(actions)))

    def _action(self, s, scope):
        if s.accept("emit"):
            return Emit(_ident(s, "a signal name").value)
        target = _ident(s, "a variable")
        if target.value not in self.vars:
            raise SourceError(target.line, target.col,
                              f"{target.value!r} is not an assignable variable", "resolve")
        op = s.expect(":=")
        expr, etype = parse_expr_tokens(s, scope)
        if etype != self.vars[target.value].type:
            raise SourceError(op.line, op.col,
                              f"cannot assign {etype} to {self.vars[target.value].type} "
                              f"variable {target.value!r}", "type")
        return Assign(target.value, expr)

    def _finish(self) -> Statechart:
        def resolve(tok):
            if tok.value not in self.states:
                raise SourceError(tok.line, tok.col, f"unknown state {tok.value!r}", "resolve")
            return tok.value

        accepting = {resolve(t) for t in self.accepting}
        nodes = []
        for sid, opts in self.states.items():
            kind = opts["kind"].value if isinstance(opts["kind"], Token) else opts["kind"]
            parent = resolve(opts["parent"]) if opts["parent"] else None
            child = resolve(opts["initialchild"]) if opts["initialchild"] else None
            nodes.append(StateNode(sid, kind, parent, child, sid in accepting))
        for t in self.transitions:
            toks = self.trans_tokens[t.id]
            resolve(toks["source"])
            resolve(toks["target"])
        try:
            return Statechart(self.name, tuple(self.events.values()), tuple(nodes),
                              tuple(self.vars.values()), tuple(self.transitions))
        except ModelError as exc:
            # hierarchy and completion-transition problems; point at the offending name
            tok = self.header
            for name, where in list(self.state_lines.items()) + [
                    (tid, toks["id"]) for tid, toks in self.trans_tokens.items()]:
                if name in str(exc):
                    tok = where
                    break
            raise SourceError(tok.line, tok.col, str(exc), "resolve") from None


def parse_model(text: str) -> Statechart:
    """Parse a statechart document, raising :class:`SourceError` on the first problem."""
    return _ModelParser().parse(text)


def render_model(sc: Statechart) -> str:
    """Canonical text for ``sc``; ``parse_model(render_model(sc)) == sc``."""
    out = [f"statechart {sc.name}"]
    for v in sc.vars:
        lit = ("true" if v.initial else "false") if v.type == BOOL else str(v.initial)
        out.append(f"var {v.name} : {v.type} = {lit}")
    for e in sc.events:
        params = ", ".join(f"{p}: {t}" for p, t in e.params)
        out.append(f"event {e.name}({params})" if e.params else f"event {e.name}")
    for st in sc.states:
        line = f"state {st.id}"
        if st.kind != SIMPLE:
            line += f" kind = {st.kind}"
        if st.parent is not None:
            line += f" parent = {st.parent}"
        if st.initial_child is not None:
            line += f" initialchild = {st.initial_child}"
        out.append(line)
    accepting = [st.id for st in sc.states if st.accepting]
    if accepting:
        out.append("accepting " + ", ".join(accepting))
    for t in sc.transitions:
        line = f"transition {t.id} : {t.source} -> {t.target}"
        if t.trigger is not None:
            line += f" on {t.trigger}"
        if t.guard is not None:
            line += f" when {to_text(t.guard)}"
        if t.actions:
            line += " do " + "; ".join(action_text(a) for a in t.actions)
        out.append(line)
    return "\n".join(out) + "\n"


def action_text(a) -> str:
    if isinstance(a, Emit):
        return f"emit {a.signal}"
    return f"{a.var} := {to_text(a.expr)}"


# --- scenarios --------------------------------------------------------------

def parse_scenarios(text: str, sc: Optional[Statechart] = None) -> list[Scenario]:
    """Parse a scenario script.  With ``sc`` given, events and their
    parameters are checked against the model."""
    scenarios = []
    name, steps = None, []
    for _, s in _lines(text):
        head = s.peek
        if head.kind == "ident" and head.value == "scenario":
            s.next()
            if name is not None:
                scenarios.append(Scenario(name, tuple(steps)))
            name, steps = _ident(s, "a scenario name").value, []
            _end(s)
            continue
        if name is None:
            s.fail("expected a 'scenario' header")
        ev = _ident(s, "an event name")
        bindings = []
        while s.peek.kind != "eof":
            p = _ident(s, "a parameter name")
            s.expect("=")
            lit_tok, value = _literal(s)
            if p.value in dict(bindings):
                raise SourceError(p.line, p.col, f"parameter {p.value!r} bound twice", "resolve")
            bindings.append((p.value, value))
        if sc is not None:
            _check_stimulus(sc, ev, bindings)
        steps.append((ev.value, tuple(bindings)))
    if name is not None:
        scenarios.append(Scenario(name, tuple(steps)))
    return scenarios


def _check_stimulus(sc: Statechart, ev: Token, bindings):
    try:
        decl = sc.event(ev.value)
    except KeyError:
        raise SourceError(ev.line, ev.col, f"unknown event {ev.value!r}", "resolve") from None
    types = decl.param_types
    given = dict(bindings)
    if set(given) != set(types):
        raise SourceError(ev.line, ev.col,
                          f"event {ev.value} takes parameters {sorted(types)}, got {sorted(given)}",
                          "resolve")
    for p, v in given.items():
        if isinstance(v, bool) != (types[p] == BOOL):
            raise SourceError(ev.line, ev.col, f"parameter {p} must be {types[p]}", "type")


def render_scenarios(scenarios: list[Scenario]) -> str:
    out = []
    for scn in scenarios:
        out.append(f"scenario {scn.name}")
        for event, bindings in scn.events:
            args = " ".join(
                f"{p}={('true' if v else 'false') if isinstance(v, bool) else v}"
                for p, v in bindings)
            out.append(f"{event} {args}".rstrip())
    return "\n".join(out) + "\n"


# --- test cases -------------------------------------------------------------

def format_testcase(tc) -> str:
    """Render a walk as ``IN-(a)-IDL-(b)-TS``: states and bracketed edges alternate."""
    parts = [tc.state_seq[0]]
    for edge, state in zip(tc.edge_seq, tc.state_seq[1:]):
        parts.append(f"({edge})")
        parts.append(state)
    return "-".join(parts)


def parse_testcase_text(text: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Inverse of :func:`format_testcase`: returns (state ids, edge ids)."""
    parts = text.strip().split("-")
    states, edges = parts[0::2], parts[1::2]
    if len(states) != len(edges) + 1 or not all(states):
        raise ValueError(f"malformed test sequence {text!r}")
    for e in edges:
        if len(e) < 3 or e[0] != "(" or e[-1] != ")":
            raise ValueError(f"malformed edge {e!r} in {text!r}")
    return tuple(states), tuple(e[1:-1] for e in edges)


# --- DOT --------------------------------------------------------------------

def _quote(s: str) -> str:
    return '"{}"'.format(s.replace("\\", "\\\\").replace('"', '\\"'))


def edge_label(edge) -> str:
    label = edge.id
    extra = []
    if edge.trigger is not None:
        extra.append(edge.trigger)
    if edge.guard is not None:
        extra.append(f"[{edge.guard}]")
    if extra:
        label += ": " + " ".join(extra)
    return label


def emit_dot(g: TransitionGraph) -> str:
    """Graphviz rendering of a transition graph.  The initial state is a box,
    accepting states get a double border; output order follows declaration."""
    lines = [f"digraph {_quote(g.name)} {{", "  rankdir=LR;"]
    for i, node in enumerate(g.nodes):
        attrs = ["shape=box" if i == g.initial else "shape=ellipse"]
        if i in g.accepting:
            attrs.append("peripheries=2")
        lines.append(f"  {_quote(node)} [{', '.join(attrs)}];")
    for e in g.edges:
        lines.append(f"  {_quote(g.nodes[e.source])} -> {_quote(g.nodes[e.target])} "
                     f"[label={_quote(edge_label(e))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
