"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 budget exhausted, 3 infeasible
instance, 4 verification failure.  Every command builds one JSON-able model;
``--format text`` is a flat rendering of the same model.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from linetrans import arith, catalog
from linetrans.designs import (
    Design,
    intersection_type_of,
    singer_plane,
    verify_group_action,
    verify_linear_space,
)
from linetrans.groups import GroupSpec, build_group, minimal_block_systems, Partition
from linetrans.search import SearchConfig, find_line_regular_designs

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_INFEASIBLE, EXIT_VERIFY = 0, 1, 2, 3, 4
THREADS_ENV = "LINETRANS_THREADS"


class InvalidInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# rendering


def _flatten(obj: Any, prefix: str = "") -> list[str]:
    if isinstance(obj, dict):
        out = []
        for key, val in obj.items():
            out += _flatten(val, f"{prefix}{key}.")
        return out
    if isinstance(obj, list) and obj and isinstance(obj[0], dict):
        out = []
        for i, val in enumerate(obj):
            out += _flatten(val, f"{prefix}{i}.")
        return out
    return [f"{prefix[:-1]}: {json.dumps(obj) if isinstance(obj, list) else obj}"]


def emit(model: Any, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(model, indent=2) + "\n")
    else:
        out.write("\n".join(_flatten(model)) + "\n")


# ---------------------------------------------------------------------------
# inputs


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from exc


def resolve_groups(text: str) -> tuple[list[GroupSpec], catalog.CatalogEntry | None]:
    """``builtin:<catalog id>`` or a path to a GroupSpec JSON file."""
    if text.startswith("builtin:"):
        name = text.split(":", 1)[1]
        try:
            entry = catalog.get_entry(name)
        except KeyError:
            raise InvalidInput(f"unknown builtin group {name!r}") from None
        if not entry.groups:
            raise InvalidInput(f"catalog entry {name!r} has no group")
        return list(entry.groups), entry
    return [GroupSpec.from_dict(_load_json(text))], None


def _threads(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(THREADS_ENV)
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise InvalidInput(f"{THREADS_ENV} must be an integer, got {env!r}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_params(args, out) -> int:
    rows = []
    for k in args.k:
        rows += arith.dd_parameter_rows(k, require_gcd_one=args.gcd_one, k_range_check=args.range_check)
    if args.format == "csv":
        out.write(arith.rows_to_csv(rows, with_tag=True))
    else:
        emit([r.to_dict() for r in rows], args.format, out)
    return EXIT_OK


def cmd_types(args, out) -> int:
    types = arith.intersection_types(args.k, args.x, args.c, args.d)
    if args.format == "csv":
        out.write("type\n" + "".join(f"{t}\n" for t in types))
    else:
        emit({"k": args.k, "x": args.x, "c": args.c, "d": args.d,
              "types": [str(t) for t in types]}, args.format, out)
    return EXIT_OK


def cmd_search(args, out) -> int:
    specs, entry = resolve_groups(args.group)
    if args.variant is not None:
        if not 0 <= args.variant < len(specs):
            raise InvalidInput(f"variant must be in 0..{len(specs) - 1}")
        specs = [specs[args.variant]]
    k = args.k if args.k is not None else (entry.k if entry else None)
    if k is None:
        raise InvalidInput("--k is required for non-builtin groups")
    cfg = SearchConfig(
        k=k,
        max_solutions=args.max_solutions,
        time_budget=args.time_budget,
        canonicity=not args.no_canonicity,
        threads=_threads(args.threads),
    )
    variants = []
    designs: dict[tuple, Design] = {}
    for spec in specs:
        g = build_group(spec)
        report = find_line_regular_designs(g, cfg)
        model = report.to_dict()
        model["group"] = spec.to_dict()
        variants.append((report, model))
        for sol in report.solutions:
            d = Design.from_orbit(g, sol, spec)
            designs.setdefault(d.blocks, d)
    complete = all(r.complete for r, _ in variants)
    infeasible = all(r.infeasible for r, _ in variants)
    result: dict[str, Any] = {"k": k, "complete": complete}
    if len(variants) == 1:
        result.update(variants[0][1])
    else:
        result["variants"] = [m for _, m in variants]
    result["designs"] = len(designs)
    if complete and not args.no_classify and cfg.max_solutions is None:
        classes = catalog.classify_designs(designs.values())
        result["classes"] = [
            {"label": c.label, "designs": len(c.designs), "representative": list(c.designs[0].base_block)}
            for c in classes
        ]
    emit(result, args.format, out)
    if infeasible:
        return EXIT_INFEASIBLE
    return EXIT_OK if complete else EXIT_BUDGET


def _partition_from(args, design: Design, g) -> list[Partition]:
    parts = []
    if args.partition:
        text = args.partition.strip()
        if text.startswith(("[", "{")):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as exc:
                raise InvalidInput(f"--partition is not valid JSON: {exc}") from exc
        else:
            data = _load_json(text)
        try:
            parts.append(Partition.from_classes(data["classes"] if isinstance(data, dict) else data))
        except (ValueError, KeyError, TypeError) as exc:
            raise InvalidInput(f"bad partition: {exc}") from exc
    if args.block_systems:
        if g is None:
            raise InvalidInput("--block-systems needs --group")
        parts += minimal_block_systems(g)
    return parts


def cmd_verify(args, out) -> int:
    try:
        design = Design.from_dict(_load_json(args.design))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"bad design file: {exc}") from exc
    ls = verify_linear_space(design)
    model: dict[str, Any] = {"v": design.v, "k": design.k, **ls.to_dict()}
    ok = ls.valid
    g = None
    if args.group:
        specs, _ = resolve_groups(args.group)
        if len(specs) != 1 and args.variant is None:
            raise InvalidInput("builtin has several group variants; pick one with --variant")
        g = build_group(specs[args.variant or 0])
        if g.v != design.v:
            raise InvalidInput(f"group degree {g.v} differs from design point count {design.v}")
        ga = verify_group_action(design, g)
        model["group_action"] = ga.to_dict()
        ok = ok and ga.invariant
    parts = _partition_from(args, design, g)
    if parts:
        model["partitions"] = []
        for p in parts:
            rep = intersection_type_of(design, p)
            model["partitions"].append({"c": p.c, "d": p.d, **rep.to_dict()})
            ok = ok and rep.constant
    emit(model, args.format, out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_reproduce(args, out) -> int:
    try:
        report = catalog.run_manifest(args.entries, budget=args.budget, threads=_threads(args.threads))
    except KeyError as exc:
        raise InvalidInput(f"unknown catalog entry {exc}") from None
    if args.format == "markdown":
        out.write(report.to_markdown())
    else:
        emit(report.to_dict(), args.format, out)
    statuses = {r.status for r in report.results}
    if catalog.FAIL in statuses:
        return EXIT_VERIFY
    return EXIT_BUDGET if catalog.INCONCLUSIVE in statuses else EXIT_OK


def cmd_catalog(args, out) -> int:
    entries = catalog.load_catalog()
    if args.id:
        try:
            entries = (catalog.get_entry(args.id),)
        except KeyError:
            raise InvalidInput(f"unknown catalog entry {args.id!r}") from None
    if args.scale:
        entries = tuple(e for e in entries if e.scale == args.scale)
    if args.format == "text":
        for e in entries:
            out.write(f"{e.id:16} {e.kind:8} {e.scale:12} {e.claim}\n")
    else:
        emit([e.to_dict() for e in entries], "json", out)
    return EXIT_OK


def cmd_plane(args, out) -> int:
    emit(singer_plane(args.q).to_dict(), "json", out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="linetrans", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("params", help="feasible parameter rows for line size k")
    p.add_argument("--k", type=int, nargs="+", required=True)
    p.add_argument("--gcd-one", action="store_true", help="keep rows with gcd(k, v) = 1")
    p.add_argument("--range-check", action="store_true", help="reject k outside 9..12")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("types", help="intersection types for (k, x, c, d)")
    for name in ("k", "x", "c", "d"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.set_defaults(func=cmd_types)

    p = sub.add_parser("search", help="base-block search under a line-regular group")
    p.add_argument("--group", required=True, help="GroupSpec JSON file or builtin:<catalog id>")
    p.add_argument("--variant", type=int, help="index of one group variant of a builtin")
    p.add_argument("--k", type=int)
    p.add_argument("--max-solutions", type=int)
    p.add_argument("--time-budget", type=float, help="seconds")
    p.add_argument("--threads", type=int, help=f"default from ${THREADS_ENV} or 1")
    p.add_argument("--no-canonicity", action="store_true")
    p.add_argument("--no-classify", action="store_true", help="skip isomorphism classification")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="check a design file")
    p.add_argument("--design", required=True)
    p.add_argument("--group", help="GroupSpec JSON file or builtin:<catalog id>")
    p.add_argument("--variant", type=int)
    p.add_argument("--partition", help="JSON list of classes, inline or as a file path")
    p.add_argument("--block-systems", action="store_true",
                   help="also test every minimal block system of --group")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="run catalog entries and compare with expectations")
    p.add_argument("--entries", nargs="+", default=["all-fast"])
    p.add_argument("--budget", type=float, help="total seconds")
    p.add_argument("--threads", type=int)
    p.add_argument("--format", choices=("json", "markdown", "text"), default="markdown")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("catalog", help="list bundled entries")
    p.add_argument("--id")
    p.add_argument("--scale", choices=catalog.SCALES)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("plane", help="print PG(2, q) as a design file")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_plane)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (InvalidInput, ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"linetrans: error: {msg}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
