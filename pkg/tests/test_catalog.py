from __future__ import annotations

import json

import pytest

from linetrans.arith import IntersectionType
from linetrans.catalog import (
    INCONCLUSIVE,
    INFO,
    PASS,
    TABLE1_ORDERS,
    CatalogEntry,
    CatalogError,
    ManifestReport,
    catalog_from_json,
    catalog_to_json,
    classify_designs,
    expand_ids,
    get_entry,
    load_catalog,
    multiplier_stabilizer,
    run_entry,
    run_manifest,
    table3_rows,
)
from linetrans.designs import Design, singer_plane
from linetrans.groups import GroupSpec, build_group, multiplier_subgroups


def test_line2_entry():
    e = get_entry("table1-line2")
    assert e.kind == "search" and e.k == 10 and e.scale == "fast"
    assert e.groups == (GroupSpec.cyclic(91),)
    assert e.expected["classes"] == 1


def test_line4_entry():
    e = get_entry("table1-line4")
    assert e.k == 11 and e.scale == "out-of-scope" and e.budget_hint is None
    assert e.expected["classes"] == 0
    (spec,) = e.groups
    assert spec.cyclic_moduli == (53,) and spec.vector == (3, 3) and spec.top_order == 13


def test_table3_line24_entry():
    row = get_entry("table3-line24").expected["row"]
    assert (row["v"], row["x"], row["y"], row["k"], row["b_over_v"]) == (1431, 2, 1, 11, 13)
    assert IntersectionType.parse(row["type"], 11) == IntersectionType.parse("1^7,2^2", 11)


def test_catalog_contents():
    ids = [e.id for e in load_catalog()]
    assert [i for i in ids if i.startswith("table1-")] == [f"table1-line{n}" for n in range(1, 6)]
    assert sum(i.startswith("table3-line") for i in ids) == 38 == len(table3_rows())
    assert {"plane-q2", "plane-q3", "plane-q4", "plane-q7", "mills-cm-91", "nnopp-729"} <= set(ids)
    assert load_catalog() is load_catalog()


def test_catalog_json_round_trip():
    entries = load_catalog()
    text = catalog_to_json(entries)
    back = catalog_from_json(text)
    assert back == entries
    assert catalog_to_json(back) == text


@pytest.mark.parametrize("entry_id, order", sorted(TABLE1_ORDERS.items()))
def test_table1_fixtures_build(entry_id, order):
    for spec in get_entry(entry_id).groups:
        assert build_group(spec).order == order


def test_every_group_fixture_builds():
    for e in load_catalog():
        for spec in e.groups:
            g = build_group(spec)
            assert g.is_transitive()


def test_multiplier_variants_cover_all_subgroups():
    # each entry lists every multiplier subgroup of the right order, not just one of them;
    # on 91 points that includes the subgroups with fixed points
    for entry_id, (n, order, fpf) in {"table1-line1": (217, 3, True), "table1-line3": (451, 5, True),
                                      "mills-cm-91": (91, 3, False)}.items():
        mults = sorted(s.multipliers[0] for s in get_entry(entry_id).groups)
        assert mults == multiplier_subgroups(n, order, fixed_point_free=fpf)


def test_entry_validation():
    base = {"id": "x", "kind": "search", "claim": "c", "scale": "fast", "k": 3,
            "groups": [GroupSpec.cyclic(7).to_dict()]}
    assert CatalogEntry.from_dict(base).k == 3
    for bad in ({"kind": "nope"}, {"scale": "huge"}, {"groups": []},
                {"scale": "out-of-scope", "budget_hint": 5}):
        with pytest.raises(CatalogError):
            CatalogEntry.from_dict({**base, **bad})


def test_expand_ids():
    fast = expand_ids(["all-fast"])
    assert "table1-line2" in fast and "table3-all" in fast and "table1-line1" not in fast
    assert expand_ids(["all-extended"]) == ["table1-line1", "table1-line3"]
    assert expand_ids(["table3-all", "table3-all"]) == ["table3-all"]
    with pytest.raises(KeyError):
        expand_ids(["no-such-entry"])
    with pytest.raises(KeyError):
        get_entry("no-such-entry")


def test_empty_manifest():
    rep = run_manifest([])
    assert rep.results == [] and rep.passed and rep.counts() == {}
    assert rep.to_dict() == {"results": [], "counts": {}}


def test_table3_all():
    res = run_entry("table3-all")
    assert res.status == PASS and res.detail == "38/38 rows matched"


def test_params_and_metadata_entries():
    rep = run_manifest([f"table3-line{i}" for i in range(1, 39)] + ["table2-row1"])
    assert rep.counts() == {PASS: 38, INFO: 1}
    assert rep.passed
    md = rep.to_markdown()
    assert md.startswith("| entry | status |") and "table3-line24" in md


@pytest.mark.parametrize("q", [2, 3, 4, 7])
def test_small_plane_entries(q):
    res = run_entry(f"plane-q{q}")
    assert res.status == PASS and res.data["matches_singer_plane"]


def test_budget_exhaustion_is_inconclusive():
    res = run_entry("table1-line4", budget=2.0)
    assert res.status == INCONCLUSIVE
    assert not res.data["variants"][0]["complete"]
    assert ManifestReport([res]).passed


def test_classify_and_multiplier_stabilizer():
    d = singer_plane(3)
    assert multiplier_stabilizer(d) == [1, 3, 9]
    perm = [(5 * p) % 13 for p in range(13)]
    classes = classify_designs([d, d.relabel(perm), singer_plane(2)])
    assert [c.label for c in classes] == ["class A", "class B"]
    assert sorted(len(c.designs) for c in classes) == [1, 2]


def test_report_json_is_serialisable():
    rep = run_manifest(["plane-q2", "table3-line1"])
    data = json.loads(json.dumps(rep.to_dict()))
    assert [r["id"] for r in data["results"]] == ["plane-q2", "table3-line1"]
    assert data["counts"] == {PASS: 2}


def test_orbit_design_provenance_round_trip():
    spec = get_entry("plane-q3").groups[0]
    d = Design.from_orbit(build_group(spec), (0, 1, 3, 9), spec)
    assert Design.from_json(d.to_json()).group == spec
