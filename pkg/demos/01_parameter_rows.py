"""
Feasible parameters for point-imprimitive linear spaces
=======================================================

A line-transitive group that preserves a partition of the points into
``d`` classes of size ``c`` forces two small integers ``x`` and ``y`` with
``c = (C(k,2) - x) / y`` and ``d = (C(k,2) - y) / x``. This script lists the
rows for line sizes 9 to 12 and shows how a line can meet the classes.
"""

from __future__ import annotations

from math import comb

from linetrans.arith import EXTRA, dd_parameter_rows, intersection_types

# Every row with gcd(k, v) = 1, tagged by whether the published table lists it.
for k in range(9, 13):
    rows = dd_parameter_rows(k, require_gcd_one=True)
    print(f"k = {k}: {len(rows)} rows")
    for r in rows:
        types = "  ".join(str(t) for t in r.types)
        flag = "  <- extra" if r.tag == EXTRA else ""
        print(f"  v={r.v:5d} = {r.c}*{r.d}  x={r.x} y={r.y} b/v={r.b_over_v}  {types}{flag}")

# %%
# The counting identity b*x = d*c(c-1)/2 holds for every row: both sides
# count the pairs of points in a common class.
for k in range(3, 21):
    for r in dd_parameter_rows(k):
        assert r.b * r.x == r.d * comb(r.c, 2)
print("identity b*x = d*C(c,2) holds for all k <= 20")

# %%
# An intersection type (1^d1, 2^d2, ...) says a line meets d_i classes in
# exactly i points. For PG(2,9) split into 7 classes of 13 points there are
# three candidates; the demo on block systems shows which one occurs.
for t in intersection_types(10, 6, 13, 7):
    print("candidate type:", t)
