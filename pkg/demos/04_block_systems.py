"""
How the lines of PG(2,9) meet its block systems
===============================================

The cyclic group of order 91 preserves two partitions of the points:
7 classes of 13 and 13 classes of 7. For each, every line meets the
classes in the same pattern, and that pattern recovers x and y.
"""

from __future__ import annotations

from math import comb

from linetrans.designs import Design, intersection_type_of, verify_group_action
from linetrans.groups import GroupSpec, build_group, minimal_block_systems
from linetrans.search import SearchConfig, find_line_regular_designs

g = build_group(GroupSpec.cyclic(91))
report = find_line_regular_designs(g, SearchConfig(10))
plane = Design.from_orbit(g, report.solutions[0])
print("line-regular:", verify_group_action(plane, g).line_regular)

for part in minimal_block_systems(g):
    rep = intersection_type_of(plane, part)
    k = plane.k
    print(f"{part.d} classes of {part.c}: type {rep.type}, x={rep.x}, y={rep.y}")
    # c = (C(k,2) - x) / y must come out exactly
    assert (comb(k, 2) - rep.x) % rep.y == 0 and (comb(k, 2) - rep.x) // rep.y == part.c
