"""Hypothesis strategies for small random statecharts."""
from hypothesis import strategies as st

from sctestgen.model import INITIAL, SIMPLE, EventDecl, StateNode, Statechart, TransitionDef

EVENTS = ("ev0", "ev1", "ev2")


@st.composite
def charts(draw, max_nodes=10, max_edges=14, accepting=True):
    n = draw(st.integers(1, max_nodes))
    edges = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.sampled_from(EVENTS)),
        max_size=max_edges))
    acc = draw(st.sets(st.integers(0, n - 1), max_size=3)) if accepting else set()
    states = [StateNode(f"S{i}", INITIAL if i == 0 else SIMPLE, accepting=i in acc)
              for i in range(n)]
    transitions = [TransitionDef(f"t{j}", f"S{a}", f"S{b}", ev)
                   for j, (a, b, ev) in enumerate(edges)]
    return Statechart("R", tuple(EventDecl(e) for e in EVENTS), tuple(states), (),
                      tuple(transitions))


def chain(accepting_end=True):
    """A -e1-> B -e2-> C."""
    return Statechart(
        "Chain", (EventDecl("go"),),
        (StateNode("A", INITIAL), StateNode("B"), StateNode("C", accepting=accepting_end)),
        (),
        (TransitionDef("e1", "A", "B", "go"), TransitionDef("e2", "B", "C", "go")))
