# %% [markdown]
# # Running scenarios and probing sneak paths
#
# The interpreter evaluates guards and actions, so it can report condition
# coverage and check that undeclared events are refused.

# %%
from pathlib import Path

from sctestgen import measure_trace, parse_model, parse_scenarios, run_scenario
from sctestgen.interpreter import fault_scenario
from sctestgen.testgen import fault_suite

ROOT = Path(__file__).resolve().parent.parent
sc = parse_model((ROOT / "fixtures" / "rtvm.scm").read_text())
scenarios = parse_scenarios((ROOT / "fixtures" / "rtvm_scenarios.txt").read_text(), sc)

traces = []
for scn in scenarios:
    tr = run_scenario(sc, scn)
    traces.append(tr)
    print(f"{scn.name:<12} fired {','.join(tr.fired):<14} end {tr.final_state}  {tr.final_env}")

print(measure_trace(traces, sc).table())

# %% [markdown]
# Less money leaves the machine waiting in CM: after the cash goes in,
# change is still negative and the completion transition c fires again.

# %% [markdown]
# Sneak paths: each (state, event) pair without a transition.  TS is only
# ever passed through, since its three guards cover every integer, so no
# run can deliver an event there.

# %%
for fs in fault_suite(sc):
    scn = fault_scenario(sc, fs)
    if scn is None:
        print(f"{fs.fault.state:>3} {fs.fault.event:<13} unreachable at rest")
        continue
    tr = run_scenario(sc, scn)
    print(f"{fs.fault.state:>3} {fs.fault.event:<13} refused in {tr.refused.state}")
