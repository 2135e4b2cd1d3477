import itertools

from hypothesis import given, settings

from sctestgen.graph import ENTRY, EXIT, build_dual, build_graph, transition_pairs
from sctestgen.model import INITIAL, EventDecl, StateNode, Statechart, TransitionDef

from strategies import chain, charts

RTVM_PAIRS = [("a", "b"), ("b", "c"), ("b", "e"), ("b", "f"), ("c", "d"), ("d", "c"),
              ("d", "e"), ("d", "f"), ("e", "g"), ("f", "h"), ("g", "h"), ("h", "b")]


def brute_pairs(g):
    """All 8x8 (or n x n) ordered edge pairs sharing the middle state."""
    return [(t.id, u.id) for t, u in itertools.product(g.edges, g.edges) if t.target == u.source]


def test_rtvm_graph(rtvm_graph):
    g = rtvm_graph
    assert g.nodes == ("IN", "IDL", "TS", "CM", "OP", "EP")
    assert g.edge_ids == tuple("abcdefgh")
    assert g.nodes[g.initial] == "IN"
    assert {g.nodes[i] for i in g.accepting} == {"IDL"}


def test_single_state_graph():
    g = build_graph(Statechart("X", states=(StateNode("A", INITIAL),)))
    assert len(g.nodes) == 1 and g.edges == ()


def test_removing_an_edge(rtvm):
    sc = Statechart(rtvm.name, rtvm.events, rtvm.states, rtvm.vars, rtvm.transitions[:-1])
    g = build_graph(sc)
    assert (len(g.nodes), len(g.edges)) == (6, 7)


def test_graph_mirrors_chart(rtvm, rtvm_graph):
    read_back = [(e.id, rtvm_graph.nodes[e.source], rtvm_graph.nodes[e.target])
                 for e in rtvm_graph.edges]
    assert read_back == [(t.id, t.source, t.target) for t in rtvm.transitions]


def test_rtvm_pairs(rtvm_graph):
    assert transition_pairs(rtvm_graph) == RTVM_PAIRS
    assert brute_pairs(rtvm_graph) == RTVM_PAIRS


def test_small_pair_counts():
    one = Statechart("X", (EventDecl("go"),), (StateNode("A", INITIAL), StateNode("B")), (),
                     (TransitionDef("t", "A", "B", "go"),))
    assert transition_pairs(build_graph(one)) == []
    assert transition_pairs(build_graph(chain())) == [("e1", "e2")]


def test_rtvm_dual(rtvm_graph):
    d = build_dual(rtvm_graph)
    assert len(d.vertices) == 10
    assert d.vertices[0] == ENTRY and d.vertices[-1] == EXIT
    assert list(d.arcs) == RTVM_PAIRS + [(ENTRY, "a"), ("a", EXIT), ("h", EXIT)]
    assert len(d.arcs) == 15


def test_dual_without_accepting_or_initial_exits():
    sc = chain(accepting_end=False)
    d = build_dual(build_graph(sc))
    assert [a for a in d.arcs if a[1] == EXIT] == []
    stuck = Statechart("X", (EventDecl("go"),), (StateNode("A", INITIAL), StateNode("B")), (),
                       (TransitionDef("t", "B", "A", "go"),))
    assert [a for a in build_dual(build_graph(stuck)).arcs if a[0] == ENTRY] == []


def dual_walks(d, k):
    """Walks of k transition vertices in the dual graph that start on an entry arc."""
    succ = {}
    for a, b in d.arcs:
        succ.setdefault(a, []).append(b)
    out = []

    def go(path):
        if len(path) == k:
            out.append(tuple(path))
            return
        for n in succ.get(path[-1], ()):
            if n not in (ENTRY, EXIT):
                go(path + [n])

    for first in succ.get(ENTRY, ()):
        go([first])
    return out


def legal_sequences_from_initial(g, k):
    return [seq for seq in itertools.product(g.edges, repeat=k)
            if seq[0].source == g.initial
            and all(x.target == y.source for x, y in zip(seq, seq[1:]))]


def test_dual_walks_match_legal_sequences(rtvm_graph):
    d = build_dual(rtvm_graph)
    for k in (1, 2, 3):
        expected = sorted(tuple(e.id for e in s) for s in legal_sequences_from_initial(rtvm_graph, k))
        assert sorted(dual_walks(d, k)) == expected


@settings(max_examples=1000)
@given(charts())
def test_pair_count_is_sum_of_degree_products(sc):
    g = build_graph(sc)
    indeg = [0] * len(g.nodes)
    outdeg = [0] * len(g.nodes)
    for e in g.edges:
        outdeg[e.source] += 1
        indeg[e.target] += 1
    pairs = transition_pairs(g)
    assert len(pairs) == sum(i * o for i, o in zip(indeg, outdeg))
    assert pairs == brute_pairs(g)
