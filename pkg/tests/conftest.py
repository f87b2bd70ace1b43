from __future__ import annotations

import os

import pytest

from linetrans.designs import Design
from linetrans.groups import GroupSpec, build_group
from linetrans.search import SearchConfig, find_line_regular_designs

EXTENDED = os.environ.get("LINETRANS_EXTENDED") == "1"


def pytest_collection_modifyitems(config, items):
    if EXTENDED:
        return
    skip = pytest.mark.skip(reason="extended search; set LINETRANS_EXTENDED=1 to run")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def z91_mult_designs():
    """Designs from Z91:Z3 for the two fixed-point-free multiplier subgroups, keyed by multiplier."""
    out = {}
    for t in (9, 16):
        spec = GroupSpec.affine([91], 3, [t])
        g = build_group(spec)
        report = find_line_regular_designs(g, SearchConfig(6))
        assert report.complete
        out[t] = (g, report, [Design.from_orbit(g, s, spec) for s in report.solutions])
    return out


@pytest.fixture(scope="session")
def cyclic_plane_reports():
    """Complete canonical searches on the cyclic groups carrying PG(2, q)."""
    out = {}
    for q, k in [(4, 5), (7, 8), (9, 10), (11, 12)]:
        n = q * q + q + 1
        g = build_group(GroupSpec.cyclic(n))
        out[q] = (g, find_line_regular_designs(g, SearchConfig(k)))
    return out
