"""Delandtsheer-Doyen parameter enumeration and class-intersection types.

Everything here is exact integer arithmetic.  A line of size ``k`` in a
linear space whose points are split into ``d`` classes of size ``c`` contains
``x`` pairs of points from a common class; the pair ``(x, y)`` determines the
partition through

    c = (C(k,2) - x) / y,    d = (C(k,2) - y) / x.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from math import comb, gcd

IN_TABLE = "in-paper-table"
EXTRA = "extra"


class DesignCountError(ValueError):
    """Raised when r = (v-1)/(k-1) or b = v r / k is not an integer."""

    def __init__(self, v: int, k: int, which: str):
        self.v, self.k, self.which = v, k, which
        super().__init__(f"{which} is not integral for v={v}, k={k}")


@dataclass(frozen=True, order=True)
class IntersectionType:
    """Counts ``(d_1, ..., d_k)``: a line meets ``d_i`` classes in exactly ``i`` points."""

    counts: tuple[int, ...]

    @property
    def k(self) -> int:
        return sum(i * d for i, d in enumerate(self.counts, start=1))

    @property
    def x(self) -> int:
        return sum(comb(i, 2) * d for i, d in enumerate(self.counts, start=1))

    @property
    def classes_met(self) -> int:
        return sum(self.counts)

    def __str__(self) -> str:
        parts = []
        for i, d in enumerate(self.counts, start=1):
            if d == 1:
                parts.append(f"{i}")
            elif d > 1:
                parts.append(f"{i}^{d}")
        return ",".join(parts)

    @classmethod
    def parse(cls, text: str, k: int | None = None) -> IntersectionType:
        """Inverse of ``str``: ``"1^2,2^4"`` -> counts (2, 4, 0, ...)."""
        found: dict[int, int] = {}
        for part in re.split(r"[,\s]+", text.strip().strip("()")):
            if not part:
                continue
            base, _, exp = part.partition("^")
            found[int(base)] = found.get(int(base), 0) + (int(exp) if exp else 1)
        size = sum(i * d for i, d in found.items())
        k = size if k is None else k
        if size != k:
            raise ValueError(f"type {text!r} covers {size} points, expected {k}")
        return cls(tuple(found.get(i, 0) for i in range(1, k + 1)))


@dataclass(frozen=True)
class ParameterRow:
    k: int
    x: int
    y: int
    c: int
    d: int
    v: int
    r: int
    b: int
    types: tuple[IntersectionType, ...] = field(default=(), compare=False)
    tag: str = field(default=EXTRA, compare=False)

    @property
    def b_over_v(self) -> int:
        return self.b // self.v

    @property
    def key(self) -> tuple[int, int, int, int, int]:
        return (self.k, self.x, self.y, self.c, self.d)

    def to_dict(self) -> dict:
        return {
            "k": self.k, "x": self.x, "y": self.y, "c": self.c, "d": self.d,
            "v": self.v, "r": self.r, "b": self.b,
            "types": [str(t) for t in self.types],
            "tag": self.tag,
        }

    @classmethod
    def from_dict(cls, data: dict) -> ParameterRow:
        k = data["k"]
        return cls(
            k=k, x=data["x"], y=data["y"], c=data["c"], d=data["d"],
            v=data["v"], r=data["r"], b=data["b"],
            types=tuple(IntersectionType.parse(t, k) for t in data.get("types", ())),
            tag=data.get("tag", EXTRA),
        )


def design_counts(v: int, k: int) -> tuple[int, int]:
    """Return ``(r, b)`` for a 2-(v, k, 1) design, raising if either is fractional."""
    if not 2 < k < v:
        raise ValueError(f"need 2 < k < v, got k={k}, v={v}")
    if (v - 1) % (k - 1):
        raise DesignCountError(v, k, "r")
    r = (v - 1) // (k - 1)
    if (v * r) % k:
        raise DesignCountError(v, k, "b")
    return r, v * r // k


def intersection_types(k: int, x: int, c: int, d: int) -> list[IntersectionType]:
    """All count vectors with sum i*d_i = k, sum C(i,2)*d_i = x, at most d classes, parts <= c."""
    if k < 2 or x < 1 or c < 2 or d < 2:
        raise ValueError(f"invalid arguments k={k}, x={x}, c={c}, d={d}")
    out: list[tuple[int, ...]] = []
    counts = [0] * (k + 1)

    def place(i: int, points: int, pairs: int, classes: int) -> None:
        if i == 1:
            # singletons absorb the remaining points and contribute no pairs
            if pairs == 0 and classes + points <= d:
                counts[1] = points
                out.append(tuple(counts[1:]))
                counts[1] = 0
            return
        per = comb(i, 2)
        top = min(points // i, pairs // per)
        if i > c:
            top = 0
        for n in range(top + 1):
            counts[i] = n
            place(i - 1, points - n * i, pairs - n * per, classes + n)
        counts[i] = 0

    place(k, k, x, 0)
    return [IntersectionType(t) for t in sorted(out)]


def _published_table_keys() -> frozenset:
    from linetrans.catalog import table3_keys

    return table3_keys()


def dd_parameter_rows(
    k: int, require_gcd_one: bool = False, k_range_check: bool = False
) -> list[ParameterRow]:
    """Every arithmetically feasible Delandtsheer-Doyen row for line size ``k``.

    ``require_gcd_one`` keeps only rows with gcd(k, v) = 1.  ``k_range_check``
    rejects ``k`` outside 9..12, the range covered by the bundled parameter
    table.  Rows not present in that table are tagged ``"extra"``.
    """
    if k < 3:
        raise ValueError(f"line size must be at least 3, got {k}")
    if k_range_check and not 9 <= k <= 12:
        raise ValueError(f"line size {k} outside the tabulated range 9..12")
    pairs = comb(k, 2)
    known = _published_table_keys()
    rows = []
    for x in range(1, pairs):
        for y in range(1, pairs):
            if (pairs - x) % y or (pairs - y) % x:
                continue
            c, d = (pairs - x) // y, (pairs - y) // x
            if c < 2 or d < 2:
                continue
            v = c * d
            if k >= v or (v - 1) % (k - 1):
                continue
            r = (v - 1) // (k - 1)
            if (v * r) % k:
                continue
            b = v * r // k
            if require_gcd_one and gcd(k, v) != 1:
                continue
            types = intersection_types(k, x, c, d)
            if not types:
                continue
            assert b * x == d * c * (c - 1) // 2, (k, x, y)
            tag = IN_TABLE if (k, x, y, c, d) in known else EXTRA
            rows.append(ParameterRow(k, x, y, c, d, v, r, b, tuple(types), tag))
    rows.sort(key=lambda row: (row.v, row.x))
    return rows


CSV_HEADER = ["k", "x", "y", "c", "d", "v", "r", "b", "type"]


def rows_to_csv(rows: list[ParameterRow], with_tag: bool = False) -> str:
    """One CSV line per (row, intersection type) pair."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER + (["tag"] if with_tag else []))
    for row in rows:
        for t in row.types:
            line = [row.k, row.x, row.y, row.c, row.d, row.v, row.r, row.b, str(t)]
            writer.writerow(line + ([row.tag] if with_tag else []))
    return buf.getvalue()


def rows_to_json(rows: list[ParameterRow]) -> str:
    return json.dumps([row.to_dict() for row in rows], indent=2)
