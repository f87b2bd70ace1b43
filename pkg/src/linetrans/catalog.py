"""Bundled fixtures and reproduction runs.

``data/catalog.json`` lists search configurations (group variants, line size,
expected class count), parameter rows and display-only group metadata.
``data/table3.json`` holds the tabulated parameter rows with their
intersection types.  Expected values live only here, so the CLI and the test
suite check against the same source.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import gcd
from typing import Any, Iterable

from linetrans.arith import IntersectionType, dd_parameter_rows
from linetrans.designs import Design, canonical_form, singer_plane
from linetrans.groups import GroupSpec, build_group
from linetrans.search import SearchConfig, find_line_regular_designs

SCALES = ("fast", "extended", "out-of-scope")
KINDS = ("search", "params", "metadata")
TABLE1_ORDERS = {"table1-line1": 651, "table1-line2": 91, "table1-line3": 2255,
                 "table1-line4": 18603, "table1-line5": 133}

PASS, FAIL, INCONCLUSIVE, INFO = "pass", "fail", "inconclusive", "metadata"


class CatalogError(RuntimeError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str
    claim: str
    scale: str
    k: int | None = None
    groups: tuple[GroupSpec, ...] = ()
    expected: dict[str, Any] = field(default_factory=dict)
    info: dict[str, Any] = field(default_factory=dict)
    budget_hint: float | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"id": self.id, "kind": self.kind}
        if self.k is not None:
            out["k"] = self.k
        out["scale"] = self.scale
        out["claim"] = self.claim
        if self.groups:
            out["groups"] = [g.to_dict() for g in self.groups]
        if self.expected:
            out["expected"] = self.expected
        if self.budget_hint is not None:
            out["budget_hint"] = self.budget_hint
        if self.info:
            out["info"] = self.info
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> CatalogEntry:
        kind, scale = data["kind"], data["scale"]
        if kind not in KINDS:
            raise CatalogError(f"entry {data.get('id')}: unknown kind {kind!r}")
        if scale not in SCALES:
            raise CatalogError(f"entry {data.get('id')}: unknown scale {scale!r}")
        if kind == "search" and (not data.get("groups") or not data.get("k")):
            raise CatalogError(f"search entry {data['id']} needs groups and k")
        if scale == "out-of-scope" and data.get("budget_hint") is not None:
            raise CatalogError(f"out-of-scope entry {data['id']} must not carry a runtime")
        return cls(
            id=data["id"],
            kind=kind,
            claim=data["claim"],
            scale=scale,
            k=data.get("k"),
            groups=tuple(GroupSpec.from_dict(g) for g in data.get("groups", ())),
            expected=dict(data.get("expected", {})),
            info=dict(data.get("info", {})),
            budget_hint=data.get("budget_hint"),
        )


def _read(name: str) -> dict[str, Any]:
    text = resources.files("linetrans").joinpath("data").joinpath(name).read_text()
    return json.loads(text)


@lru_cache(maxsize=1)
def table3_rows() -> tuple[dict[str, Any], ...]:
    rows = _read("table3.json")["rows"]
    for r in rows:
        if r["v"] != r["c"] * r["d"] or gcd(r["k"], r["v"]) != 1:
            raise CatalogError(f"corrupt parameter row {r}")
        t = IntersectionType.parse(r["type"], r["k"])
        if t.x != r["x"]:
            raise CatalogError(f"row {r['line']}: type {r['type']} has x={t.x}")
    return tuple(rows)


@lru_cache(maxsize=1)
def table3_keys() -> frozenset:
    return frozenset((r["k"], r["x"], r["y"], r["c"], r["d"]) for r in table3_rows())


@lru_cache(maxsize=1)
def load_catalog() -> tuple[CatalogEntry, ...]:
    data = _read("catalog.json")
    if data.get("version") != 1:
        raise CatalogError(f"unsupported catalog version {data.get('version')}")
    entries = tuple(CatalogEntry.from_dict(e) for e in data["entries"])
    ids = [e.id for e in entries]
    if len(set(ids)) != len(ids):
        raise CatalogError("duplicate catalog ids")
    table3_rows()
    return entries


def catalog_to_json(entries: Iterable[CatalogEntry]) -> str:
    return json.dumps({"version": 1, "entries": [e.to_dict() for e in entries]}, indent=1)


def catalog_from_json(text: str) -> tuple[CatalogEntry, ...]:
    return tuple(CatalogEntry.from_dict(e) for e in json.loads(text)["entries"])


def get_entry(entry_id: str) -> CatalogEntry:
    for e in load_catalog():
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


def expand_ids(ids: Iterable[str]) -> list[str]:
    """Resolve the aliases ``all-fast``, ``all-extended`` and ``table3-all``."""
    out: list[str] = []
    catalog = load_catalog()
    for i in ids:
        if i == "all-fast":
            out += [e.id for e in catalog if e.scale == "fast" and e.kind == "search"] + ["table3-all"]
        elif i == "all-extended":
            out += [e.id for e in catalog if e.scale == "extended"]
        elif i == "table3-all" or any(e.id == i for e in catalog):
            out.append(i)
        else:
            raise KeyError(i)
    return list(dict.fromkeys(out))


# ---------------------------------------------------------------------------
# reproduction


@dataclass
class EntryResult:
    id: str
    status: str
    detail: str
    elapsed: float
    data: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"id": self.id, "status": self.status, "detail": self.detail,
                "elapsed": round(self.elapsed, 3), **self.data}


@dataclass
class ManifestReport:
    results: list[EntryResult]

    @property
    def passed(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.results:
            out[r.status] = out.get(r.status, 0) + 1
        return out

    def to_dict(self) -> dict[str, Any]:
        return {"results": [r.to_dict() for r in self.results], "counts": self.counts()}

    def to_markdown(self) -> str:
        lines = ["| entry | status | detail | seconds |", "|---|---|---|---|"]
        for r in self.results:
            lines.append(f"| {r.id} | {r.status} | {r.detail} | {r.elapsed:.1f} |")
        return "\n".join(lines) + "\n"


def multiplier_stabilizer(design: Design) -> list[int]:
    """Units ``u`` mod ``v`` with ``x -> u x`` an automorphism of a design on ``Z_v``."""
    v = design.v
    blocks = set(design.blocks)
    return [
        u for u in range(1, v)
        if gcd(u, v) == 1 and all(tuple(sorted(u * p % v for p in b)) in blocks for b in design.blocks)
    ]


@dataclass(frozen=True)
class DesignClass:
    label: str
    certificate: Any
    designs: tuple[Design, ...]


def classify_designs(designs: Iterable[Design]) -> list[DesignClass]:
    """Group designs by canonical certificate; classes labelled A, B, ... by certificate order."""
    by_cert: dict[Any, list[Design]] = {}
    for d in designs:
        by_cert.setdefault(canonical_form(d), []).append(d)
    certs = sorted(by_cert, key=lambda c: c.blocks)
    out = []
    for i, cert in enumerate(certs):
        members = sorted(by_cert[cert], key=lambda d: d.blocks)
        out.append(DesignClass(f"class {chr(ord('A') + i)}", cert, tuple(members)))
    return out


def search_entry_designs(entry: CatalogEntry, budget: float | None = None, threads: int = 1):
    """Search every group variant of ``entry``; returns (designs, complete, per-variant reports)."""
    start = time.perf_counter()
    designs: dict[tuple, Design] = {}
    complete = True
    reports = []
    for spec in entry.groups:
        remaining = None if budget is None else max(0.0, budget - (time.perf_counter() - start))
        g = build_group(spec)
        rep = find_line_regular_designs(g, SearchConfig(entry.k, time_budget=remaining, threads=threads))
        reports.append(rep)
        complete = complete and rep.complete
        for sol in rep.solutions:
            d = Design.from_orbit(g, sol, spec)
            designs.setdefault(d.blocks, d)
    return list(designs.values()), complete, reports


def _plural(n: int, one: str, many: str) -> str:
    return f"{n} {one if n == 1 else many}"


def _run_search(entry: CatalogEntry, budget: float | None, threads: int) -> EntryResult:
    start = time.perf_counter()
    designs, complete, reports = search_entry_designs(entry, budget, threads)
    data: dict[str, Any] = {
        "variants": [
            {"group": spec.to_dict(), "complete": r.complete, "infeasible": r.infeasible,
             "solutions": len(r.solutions), "nodes": r.nodes_visited}
            for spec, r in zip(entry.groups, reports)
        ],
        "designs": len(designs),
    }
    if not complete:
        return EntryResult(entry.id, INCONCLUSIVE, f"budget exhausted after {len(designs)} designs",
                           time.perf_counter() - start, data)
    classes = classify_designs(designs)
    data["classes"] = [
        {"label": c.label, "designs": len(c.designs),
         "multiplier_stabilizer_order": len(multiplier_stabilizer(c.designs[0]))}
        for c in classes
    ]
    expected = entry.expected
    ok = True
    detail = f"{_plural(len(classes), 'class', 'classes')} from {_plural(len(designs), 'design', 'designs')}"
    if "classes" in expected and len(classes) != expected["classes"]:
        ok = False
        detail += f", expected {expected['classes']}"
    if "designs" in expected and len(designs) != expected["designs"]:
        ok = False
        detail += f", expected {expected['designs']} designs"
    if "singer" in expected and classes:
        same = canonical_form(singer_plane(expected["singer"])) == classes[0].certificate
        data["matches_singer_plane"] = same
        ok = ok and same and len(classes) == 1
        detail += f", {'matches' if same else 'differs from'} PG(2,{expected['singer']})"
    return EntryResult(entry.id, PASS if ok else FAIL, detail, time.perf_counter() - start, data)


def _row_matches(row: dict[str, Any]) -> tuple[bool, str]:
    emitted = dd_parameter_rows(row["k"], require_gcd_one=True)
    want = IntersectionType.parse(row["type"], row["k"])
    for r in emitted:
        if (r.v, r.c, r.d, r.x, r.y, r.b_over_v) == (
            row["v"], row["c"], row["d"], row["x"], row["y"], row["b_over_v"]
        ):
            return (want in r.types, "matched" if want in r.types else "type missing")
    return False, "row missing"


def _run_table3_all() -> EntryResult:
    start = time.perf_counter()
    rows = table3_rows()
    matched = sum(_row_matches(r)[0] for r in rows)
    # type lists must agree exactly per parameter row
    exact = True
    for k in sorted({r["k"] for r in rows}):
        for emitted in dd_parameter_rows(k, require_gcd_one=True):
            listed = {IntersectionType.parse(r["type"], k) for r in rows
                      if (r["k"], r["x"], r["y"], r["c"], r["d"]) == emitted.key}
            if listed and listed != set(emitted.types):
                exact = False
    ok = matched == len(rows) and exact
    detail = f"{matched}/{len(rows)} rows matched" + ("" if exact else ", type lists differ")
    return EntryResult("table3-all", PASS if ok else FAIL, detail, time.perf_counter() - start)


def run_entry(entry_id: str, budget: float | None = None, threads: int = 1) -> EntryResult:
    if entry_id == "table3-all":
        return _run_table3_all()
    entry = get_entry(entry_id)
    if entry.kind == "metadata":
        return EntryResult(entry.id, INFO, f"{entry.info['space']}: {entry.info['group']}", 0.0)
    if entry.kind == "params":
        start = time.perf_counter()
        ok, detail = _row_matches(entry.expected["row"])
        return EntryResult(entry.id, PASS if ok else FAIL, detail, time.perf_counter() - start)
    return _run_search(entry, budget, threads)


def run_manifest(entry_ids: Iterable[str], budget: float | None = None, threads: int = 1) -> ManifestReport:
    """Run entries in order; ``budget`` (seconds) is shared across all of them."""
    start = time.perf_counter()
    results = []
    for i in expand_ids(entry_ids):
        remaining = None if budget is None else max(0.0, budget - (time.perf_counter() - start))
        results.append(run_entry(i, remaining, threads))
    return ManifestReport(results)
