# %% [markdown]
# # Coverage and minimization
#
# Measure the prefix suite, shrink it by subsumption and by greedy set
# cover, and confirm nothing is lost.

# %%
from pathlib import Path

from sctestgen import (build_graph, compute_nc, effective_set, measure_suite, parse_model,
                       prefix_suite, setcover_reduce)
from sctestgen.minimizer import nc_table

ROOT = Path(__file__).resolve().parent.parent
g = build_graph(parse_model((ROOT / "fixtures" / "rtvm.scm").read_text()))
suite = prefix_suite(g)
print(measure_suite(suite, g).table())

# %% [markdown]
# NC(tc) lists the cases whose edge sequence contains tc's as a
# contiguous run.  Cases with an empty NC form the effective set.

# %%
print(nc_table(compute_nc(suite)))
eff = effective_set(suite)
print("effective:", eff.ids)
print(measure_suite(eff, g).table())

# %% [markdown]
# Set cover looks only at the chosen criteria.  For transitions two cases
# suffice; tc6 wins its round over tc18 and tc19 by index.

# %%
for criteria in (["transition"], ["state"], ["state", "transition", "path", "action"]):
    print(criteria, setcover_reduce(suite, g, criteria).ids)
