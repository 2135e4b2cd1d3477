# %% [markdown]
# # Ticket machine: from model to test suite
#
# Parse the ticket vending machine, check it, look at its transition graph
# and generate the prefix suite.

# %%
from pathlib import Path

from sctestgen import (build_dual, build_graph, format_testcase, k_transition_suite,
                       maximal_paths, parse_model, prefix_suite, transition_pairs,
                       validate_statechart)

ROOT = Path(__file__).resolve().parent.parent
sc = parse_model((ROOT / "fixtures" / "rtvm.scm").read_text())
print(sc.name, [s.id for s in sc.states])
print("issues:", list(validate_statechart(sc)))

# %% [markdown]
# The graph has one node per state and one edge per transition.

# %%
g = build_graph(sc)
for e in g.edges:
    print(e.id, g.nodes[e.source], "->", g.nodes[e.target], e.trigger or "", e.guard or "")

# %% [markdown]
# Depth first search from IN gives three maximal paths.  The prefix suite
# lists the single transitions and then every prefix of those paths.

# %%
for p in maximal_paths(g):
    print(p.id, format_testcase(p))

suite = prefix_suite(g)
for tc in suite:
    print(f"{tc.id:>5}  {format_testcase(tc)}")

# %% [markdown]
# Transition pairs are the arcs of the dual graph.  With k = 2 the
# k-transition suite is exactly those pairs.

# %%
print(transition_pairs(g))
print(len(build_dual(g).arcs), "dual arcs including entry and exit")
print([tc.edge_seq for tc in k_transition_suite(g, 2)])
