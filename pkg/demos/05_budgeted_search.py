"""
Searching under a time budget
=============================

Some instances are far too big for an exhaustive run on a desk machine.
The search stops cleanly when the budget runs out and reports how far it
got; it never claims a result it did not finish.
"""

from __future__ import annotations

from linetrans.catalog import get_entry
from linetrans.groups import build_group, pair_orbit_table
from linetrans.search import SearchConfig, find_line_regular_designs

entry = get_entry("table1-line4")
(spec,) = entry.groups
g = build_group(spec)
table = pair_orbit_table(g)
print(f"{entry.id}: |G|={g.order}, v={g.v}, k={entry.k}, pair orbits={table.n_orbits}, regular={table.regular}")

report = find_line_regular_designs(g, SearchConfig(entry.k, time_budget=5.0))
print(f"complete={report.complete}, stopped_by={report.stopped_by}, nodes={report.nodes_visited}")

# %%
# The same engine accepts the 729-point configuration; it too is only
# sampled here.
entry = get_entry("nnopp-729")
g = build_group(entry.groups[0])
report = find_line_regular_designs(g, SearchConfig(entry.k, time_budget=5.0))
print(f"{entry.id}: complete={report.complete}, designs so far={len(report.solutions)}")
