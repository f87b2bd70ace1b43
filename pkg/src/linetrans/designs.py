"""Linear-space verification, intersection types, canonical forms and plane fixtures."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Any, Sequence

import numpy as np

from linetrans.arith import IntersectionType
from linetrans.canonical import Certificate, canonical_labelling
from linetrans.fields import singer_difference_set
from linetrans.groups import GroupAction, GroupSpec, Partition

SINGER_ORDERS = (2, 3, 4, 7, 9, 11)


@dataclass(frozen=True)
class Design:
    """``v`` points and a sorted tuple of sorted blocks."""

    v: int
    k: int
    blocks: tuple[tuple[int, ...], ...]
    group: GroupSpec | None = field(default=None, compare=False)
    base_block: tuple[int, ...] | None = field(default=None, compare=False)

    @classmethod
    def from_blocks(cls, v: int, blocks, **provenance) -> Design:
        blocks = tuple(sorted(tuple(sorted(int(p) for p in b)) for b in blocks))
        sizes = {len(b) for b in blocks}
        if len(sizes) > 1:
            raise ValueError(f"blocks have differing sizes {sorted(sizes)}")
        for b in blocks:
            if len(set(b)) != len(b) or (b and not 0 <= b[0] <= b[-1] < v):
                raise ValueError(f"block {b} is not a subset of 0..{v - 1}")
        k = sizes.pop() if sizes else 0
        return cls(v, k, blocks, **provenance)

    @classmethod
    def from_orbit(cls, g: GroupAction, base_block: Sequence[int], spec: GroupSpec | None = None) -> Design:
        base = np.array(sorted(int(p) for p in base_block), dtype=np.int64)
        images = g.transversal[:, g.stabilizer_perms[:, base]]  # (v, |G_0|, k)
        images = np.sort(images.reshape(-1, len(base)), axis=1)
        uniq = np.unique(images, axis=0)
        blocks = tuple(tuple(int(p) for p in row) for row in uniq)
        return cls(g.v, len(base), blocks, group=spec, base_block=tuple(int(p) for p in base))

    @property
    def b(self) -> int:
        return len(self.blocks)

    def relabel(self, perm: Sequence[int]) -> Design:
        return Design.from_blocks(self.v, [[perm[p] for p in blk] for blk in self.blocks])

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"v": self.v, "k": self.k, "blocks": [list(b) for b in self.blocks]}
        if self.group is not None or self.base_block is not None:
            out["provenance"] = {
                "group": None if self.group is None else self.group.to_dict(),
                "base_block": None if self.base_block is None else list(self.base_block),
            }
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Design:
        prov = data.get("provenance") or {}
        group = prov.get("group")
        base = prov.get("base_block")
        design = cls.from_blocks(
            int(data["v"]),
            data["blocks"],
            group=None if group is None else GroupSpec.from_dict(group),
            base_block=None if base is None else tuple(base),
        )
        if "k" in data and design.blocks and design.k != data["k"]:
            raise ValueError(f"declared k={data['k']} but blocks have size {design.k}")
        return design

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> Design:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class LinearSpaceReport:
    valid: bool
    r: int | None
    b: int
    uncovered: int
    multiply_covered: int
    failures: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "valid": self.valid,
            "r": self.r,
            "b": self.b,
            "uncovered": self.uncovered,
            "multiply_covered": self.multiply_covered,
            "failures": list(self.failures),
        }


def pair_coverage(v: int, blocks) -> np.ndarray:
    """``v x v`` matrix counting the blocks through each ordered pair of distinct points."""
    cover = np.zeros(v * v, dtype=np.int64)
    if blocks:
        arr = np.asarray(blocks, dtype=np.int64)
        a, b = np.triu_indices(arr.shape[1], 1)
        lo = np.minimum(arr[:, a], arr[:, b]).ravel()
        hi = np.maximum(arr[:, a], arr[:, b]).ravel()
        cover += np.bincount(lo * v + hi, minlength=v * v)
    cover = cover.reshape(v, v)
    return cover + cover.T


def verify_linear_space(design: Design, max_failures: int = 20) -> LinearSpaceReport:
    """Check that every pair of points lies on exactly one block."""
    v = design.v
    cover = pair_coverage(v, design.blocks)
    iu = np.triu_indices(v, 1)
    counts = cover[iu]
    failures: list[str] = []
    for idx in np.flatnonzero(counts != 1)[:max_failures]:
        a, b = int(iu[0][idx]), int(iu[1][idx])
        n = int(counts[idx])
        failures.append(f"pair ({a}, {b}) " + ("uncovered" if n == 0 else f"covered {n} times"))
    degrees = np.zeros(v, dtype=np.int64)
    for blk in design.blocks:
        degrees[list(blk)] += 1
    r = int(degrees[0]) if v else None
    if v and not np.all(degrees == degrees[0]):
        failures.append(f"point degrees vary between {degrees.min()} and {degrees.max()}")
        r = None
    uncovered = int(np.count_nonzero(counts == 0))
    multi = int(np.count_nonzero(counts > 1))
    return LinearSpaceReport(
        valid=uncovered == 0 and multi == 0 and r is not None,
        r=r,
        b=design.b,
        uncovered=uncovered,
        multiply_covered=multi,
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class GroupActionReport:
    invariant: bool
    line_transitive: bool
    line_regular: bool
    orbit_lengths: tuple[int, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "invariant": self.invariant,
            "line_transitive": self.line_transitive,
            "line_regular": self.line_regular,
            "orbit_lengths": list(self.orbit_lengths),
        }


def verify_group_action(design: Design, g: GroupAction) -> GroupActionReport:
    if g.v != design.v:
        raise ValueError(f"group degree {g.v} differs from design point count {design.v}")
    index = {blk: i for i, blk in enumerate(design.blocks)}
    images = []
    invariant = True
    for perm in g.generator_perms:
        img = []
        for blk in design.blocks:
            j = index.get(tuple(sorted(int(perm[p]) for p in blk)))
            if j is None:
                invariant = False
                break
            img.append(j)
        if not invariant:
            break
        images.append(img)
    if not invariant:
        return GroupActionReport(False, False, False, ())
    seen = [False] * design.b
    lengths = []
    for start in range(design.b):
        if seen[start]:
            continue
        seen[start] = True
        stack, size = [start], 0
        while stack:
            i = stack.pop()
            size += 1
            for img in images:
                j = img[i]
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
        lengths.append(size)
    transitive = len(lengths) == 1
    return GroupActionReport(
        invariant=True,
        line_transitive=transitive,
        line_regular=transitive and g.order == design.b,
        orbit_lengths=tuple(sorted(lengths, reverse=True)),
    )


@dataclass(frozen=True)
class TypeReport:
    """Outcome of intersecting every block with a partition."""

    constant: bool
    type: IntersectionType | None
    x: int | None
    y: int | None
    consistent: bool
    witnesses: tuple[tuple[int, ...], ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "constant": self.constant,
            "type": None if self.type is None else str(self.type),
            "x": self.x,
            "y": self.y,
            "consistent": self.consistent,
            "witnesses": [list(w) for w in self.witnesses],
        }


def intersection_type_of(design: Design, partition: Partition | Sequence[Sequence[int]]) -> TypeReport:
    """Per-line intersection type against ``partition``, with the (x, y) consistency check."""
    if not isinstance(partition, Partition):
        partition = Partition.from_classes(partition)
    if partition.v != design.v:
        raise ValueError(f"partition covers {partition.v} points, design has {design.v}")
    cls = partition.class_of()
    k = design.k
    first_type = None
    first_block = None
    for blk in design.blocks:
        hits = np.bincount(cls[list(blk)], minlength=partition.d)
        counts = np.bincount(hits, minlength=k + 1)[1 : k + 1]
        t = IntersectionType(tuple(int(c) for c in counts))
        if first_type is None:
            first_type, first_block = t, blk
        elif t != first_type:
            return TypeReport(False, None, None, None, False, (first_block, blk))
    if first_type is None:
        return TypeReport(True, None, None, None, False)
    x = first_type.x
    pairs = comb(k, 2)
    c, d = partition.c, partition.d
    y = None
    consistent = False
    if x >= 1 and (pairs - x) % c == 0:
        y = (pairs - x) // c
        consistent = y >= 1 and (pairs - y) == d * x
    return TypeReport(True, first_type, x, y, consistent)


def canonical_form(design: Design) -> Certificate:
    """Isomorphism certificate: equal iff the designs are isomorphic."""
    return canonical_labelling(design.v, design.blocks)


def singer_plane(q: int) -> Design:
    """PG(2, q) as the orbit of a Singer difference set under Z_{q^2+q+1}."""
    if q not in SINGER_ORDERS:
        raise ValueError(f"unsupported plane order {q}; choose from {SINGER_ORDERS}")
    ds = singer_difference_set(q)
    n = q * q + q + 1
    blocks = [[(p + t) % n for p in ds] for t in range(n)]
    design = Design.from_blocks(n, blocks, group=GroupSpec.cyclic(n), base_block=tuple(ds))
    return design


def fano_plane() -> Design:
    return singer_plane(2)
