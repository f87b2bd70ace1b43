"""
Two linear spaces on 91 points with lines of size 6
===================================================

The group Z91:Z3 acts by ``x -> t^j x + m`` for a unit ``t`` of order 3.
There are four such subgroups of units. Two of them fix points other than 0,
which creates short pair orbits, so only two are searched in earnest.
Together they give exactly two isomorphism classes.
"""

from __future__ import annotations

from linetrans.catalog import classify_designs, multiplier_stabilizer
from linetrans.designs import Design, verify_linear_space
from linetrans.groups import GroupSpec, build_group, multiplier_subgroups
from linetrans.search import SearchConfig, find_line_regular_designs

designs = []
for t in multiplier_subgroups(91, 3, fixed_point_free=False):
    spec = GroupSpec.affine([91], 3, [t])
    g = build_group(spec)
    report = find_line_regular_designs(g, SearchConfig(6))
    status = report.infeasible or f"{len(report.solutions)} designs"
    print(f"multiplier {t:2d}: {status} ({report.elapsed:.2f}s)")
    designs += [Design.from_orbit(g, s, spec) for s in report.solutions]

assert all(verify_linear_space(d).valid for d in designs)

# %%
# Canonical labelling sorts the designs into classes. The multipliers of
# Z91 preserving a design tell the two apart without any labelling at all.
for cls in classify_designs(designs):
    stab = multiplier_stabilizer(cls.designs[0])
    print(f"{cls.label}: {len(cls.designs)} designs, multiplier stabiliser of order {len(stab)}")
