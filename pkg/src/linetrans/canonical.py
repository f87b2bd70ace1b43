"""Canonical labelling of incidence structures by partition refinement.

Points are coloured, blocks inherit the multiset of their point colours, and
points are recoloured by the multiset of their block colours until the colouring
is stable.  Non-discrete colourings are resolved by individualising a point of
the first largest non-singleton cell and recursing; the canonical form is the
lexicographically least relabelled block list over the whole search tree.
Automorphisms discovered along the way (two leaves with equal block lists) prune
equivalent branches.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_POINTS = 2000
MAX_BLOCKS = 25000


@dataclass(frozen=True)
class Certificate:
    """Canonical block list plus the relabelling that produced it.

    ``labelling[p]`` is the canonical label of original point ``p``.  Two
    incidence structures are isomorphic iff their ``blocks`` are equal.
    """

    v: int
    blocks: tuple[tuple[int, ...], ...]
    labelling: tuple[int, ...]

    def key(self) -> tuple:
        return (self.v, self.blocks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Certificate):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def to_bytes(self) -> bytes:
        rows = [f"v={self.v}"] + [",".join(map(str, b)) for b in self.blocks]
        return "\n".join(rows).encode()


class _Refiner:
    def __init__(self, v: int, blocks: list[tuple[int, ...]]):
        self.v = v
        self.blocks = blocks
        sizes = {len(b) for b in blocks}
        width = max(sizes) if sizes else 0
        # pad ragged block lists with a sentinel point whose colour sorts last
        self.incidence = np.full((len(blocks), width), v, dtype=np.int64)
        through: list[list[int]] = [[] for _ in range(v)]
        for i, blk in enumerate(blocks):
            self.incidence[i, : len(blk)] = blk
            for p in blk:
                through[p].append(i)
        deg = max((len(t) for t in through), default=0)
        self.through = np.full((v, deg), len(blocks), dtype=np.int64)
        for p, t in enumerate(through):
            self.through[p, : len(t)] = t

    @staticmethod
    def _rank_rows(rows: np.ndarray) -> tuple[np.ndarray, int]:
        if rows.shape[1] == 0:
            return np.zeros(rows.shape[0], dtype=np.int64), 1
        order = np.lexsort(rows.T[::-1])
        srt = rows[order]
        step = np.any(srt[1:] != srt[:-1], axis=1)
        ranks_sorted = np.concatenate(([0], np.cumsum(step)))
        ranks = np.empty(rows.shape[0], dtype=np.int64)
        ranks[order] = ranks_sorted
        return ranks, int(ranks_sorted[-1]) + 1 if len(ranks_sorted) else 0

    def refine(self, colours: list[int]) -> list[int]:
        """Coarsest equitable refinement of ``colours``, colours ranked canonically."""
        col = np.asarray(colours, dtype=np.int64)
        ncol = len(np.unique(col))
        big = np.int64(1) << 40
        while True:
            padded = np.append(col, big)
            bsig = np.sort(padded[self.incidence], axis=1)
            bcol, _ = self._rank_rows(bsig)
            bpad = np.append(bcol, big)
            psig = np.sort(bpad[self.through], axis=1)
            new, n = self._rank_rows(np.column_stack((col, psig)))
            if n == ncol:
                return new.tolist()
            col, ncol = new, n

    def relabel(self, colours: list[int]) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(tuple(sorted(colours[p] for p in blk)) for blk in self.blocks))


def _individualise(colours: list[int], p: int) -> list[int]:
    out = [2 * c + 1 for c in colours]
    out[p] -= 1
    return out


def _target_cell(colours: list[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for p, c in enumerate(colours):
        cells.setdefault(c, []).append(p)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) > len(best)):
            best = cell
    return best


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


class _Search:
    def __init__(self, v: int, blocks: list[tuple[int, ...]]):
        self.v = v
        self.refiner = _Refiner(v, blocks)
        self.first: tuple | None = None  # (path, blocks, colours)
        self.best: tuple | None = None
        self.automorphisms: list[list[int]] = []
        self.leaves = 0

    def _orbits(self, prefix: list[int]) -> _UnionFind:
        uf = _UnionFind(self.v)
        for gamma in self.automorphisms:
            if all(gamma[p] == p for p in prefix):
                for a, b in enumerate(gamma):
                    uf.union(a, b)
        return uf

    def _leaf(self, path: list[int], colours: list[int]) -> int | None:
        self.leaves += 1
        cert = self.refiner.relabel(colours)
        if self.first is None:
            self.first = self.best = (list(path), cert, colours)
            return None
        for ref in (self.first, self.best):
            if cert == ref[1]:
                # map ref's labelling onto this one: point with label l in ref -> same label here
                inv = [0] * self.v
                for p, c in enumerate(colours):
                    inv[c] = p
                gamma = [inv[ref[2][p]] for p in range(self.v)]
                self.automorphisms.append(gamma)
                level = 0
                while level < len(path) and level < len(ref[0]) and path[level] == ref[0][level]:
                    level += 1
                return level
        if cert < self.best[1]:
            self.best = (list(path), cert, colours)
        return None

    def run(self, colours: list[int], path: list[int]) -> int | None:
        """Explore the subtree below ``path``; returns a level to jump back to."""
        colours = self.refiner.refine(colours)
        cell = _target_cell(colours)
        if cell is None:
            return self._leaf(path, colours)
        level = len(path)
        explored: list[int] = []
        for p in cell:
            if explored:
                uf = self._orbits(path)
                root = uf.find(p)
                if any(uf.find(q) == root for q in explored):
                    continue
            explored.append(p)
            jump = self.run(_individualise(colours, p), path + [p])
            if jump is not None and jump < level:
                return jump
        return None


def canonical_labelling(v: int, blocks) -> Certificate:
    """Compute the canonical certificate of the incidence structure ``(v, blocks)``."""
    blocks = [tuple(int(p) for p in b) for b in blocks]
    if v > MAX_POINTS or len(blocks) > MAX_BLOCKS:
        raise ValueError(
            f"structure too large for canonical labelling (v={v}, b={len(blocks)}; "
            f"limits {MAX_POINTS}, {MAX_BLOCKS})"
        )
    if v == 0:
        return Certificate(0, tuple(), tuple())
    search = _Search(v, blocks)
    search.run([0] * v, [])
    _, cert, colours = search.best
    return Certificate(v, cert, tuple(colours))


def automorphism_generators(v: int, blocks) -> list[np.ndarray]:
    """Automorphisms found as a by-product of canonical labelling (not a full generating set)."""
    blocks = [tuple(int(p) for p in b) for b in blocks]
    search = _Search(v, blocks)
    search.run([0] * v, [])
    return [np.asarray(g) for g in search.automorphisms]
