"""Exhaustive base-block search for linear spaces with a line-regular group.

A base block ``B = {0 = b_1 < ... < b_k}`` generates a linear space under a
group ``G`` whose pair orbits are all regular exactly when the ``C(k,2)``
pairs of ``B`` meet every pair orbit once.  The compiled kernel in
``_kernel`` grows ``B`` point by point, keeping for each depth only the points
whose pairs with the partial block fall in fresh, mutually distinct orbits.

With canonicity on, ``B`` is kept only if it is the lexicographically least
block through 0 in its orbit, so each design (block set) is reported once.
The kernel prunes with a necessary form of this test (no image through 0 has a
second point below ``b_2``); survivors are checked in full here.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Any, Sequence

import numpy as np

from linetrans import _kernel
from linetrans.designs import Design, canonical_form, verify_linear_space
from linetrans.groups import GroupAction, PairOrbitTable, pair_orbit_table

BRUTE_FORCE_LIMIT = 10**7

SHORT_PAIR_ORBIT = "short-pair-orbit"
ORBIT_COUNT_MISMATCH = "orbit-count-mismatch"


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    k: int
    max_solutions: int | None = None
    time_budget: float | None = None
    parallel_split_depth: int = 1
    canonicity: bool = True
    threads: int = 1
    node_chunk: int = 1 << 20

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"block size must be at least 2, got {self.k}")
        if self.parallel_split_depth < 0:
            raise ValueError("split depth must be nonnegative")
        if self.threads < 1:
            raise ValueError("need at least one thread")
        if self.max_solutions is not None and self.max_solutions < 1:
            raise ValueError("max_solutions must be positive")


@dataclass
class SearchReport:
    solutions: list[tuple[int, ...]]
    complete: bool
    nodes_visited: int
    prunes_by_reason: dict[str, int]
    elapsed: float
    infeasible: str | None = None
    pair_orbits: int | None = None
    stopped_by: str | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out = {
            "complete": self.complete,
            "infeasible": self.infeasible,
            "stopped_by": self.stopped_by,
            "pair_orbits": self.pair_orbits,
            "nodes_visited": self.nodes_visited,
            "prunes_by_reason": dict(self.prunes_by_reason),
            "elapsed": round(self.elapsed, 3),
            "solutions": [list(s) for s in self.solutions],
        }
        out.update(self.extra)
        return out


def is_lex_min(g: GroupAction, block: Sequence[int]) -> bool:
    """True iff ``block`` is the least sorted image through 0 of itself under ``g``."""
    base = np.asarray(sorted(block), dtype=np.int64)
    stab, ti = g.stabilizer_perms, g.transversal_inverse
    for p in base:
        images = np.sort(stab[:, ti[p][base]], axis=1)
        for img in images:
            for a, b in zip(img, base):
                if a != b:
                    if a < b:
                        return False
                    break
    return True


def _check_linear_space(g: GroupAction, sol: tuple[int, ...]) -> None:
    report = verify_linear_space(Design.from_orbit(g, sol))
    if not report.valid:
        raise AssertionError(f"search emitted {sol} whose orbit is not a linear space")


@dataclass
class _Task:
    b2s: list[int]
    state: _kernel.SearchState | None = None
    done: bool = False
    solutions: list[tuple[int, ...]] = field(default_factory=list)


def _infeasible(reason: str, norb: int, start: float) -> SearchReport:
    return SearchReport(
        solutions=[],
        complete=True,
        nodes_visited=0,
        prunes_by_reason={reason: 1},
        elapsed=time.perf_counter() - start,
        infeasible=reason,
        pair_orbits=norb,
    )


def find_line_regular_designs(
    g: GroupAction, cfg: SearchConfig, table: PairOrbitTable | None = None
) -> SearchReport:
    """Every base block through 0 whose ``g``-orbit is a 2-(v, k, 1) design."""
    start = time.perf_counter()
    deadline = None if cfg.time_budget is None else start + cfg.time_budget
    if not g.is_transitive():
        raise ValueError("search requires a transitive group")
    k, v = cfg.k, g.v
    table = table if table is not None else pair_orbit_table(g)
    if not table.regular:
        return _infeasible(SHORT_PAIR_ORBIT, table.n_orbits, start)
    if table.n_orbits != comb(k, 2) or k > v:
        return _infeasible(ORBIT_COUNT_MISMATCH, table.n_orbits, start)

    lab = np.ascontiguousarray(np.where(table.labels < 0, 0, table.labels), dtype=np.int64)
    tinv = np.ascontiguousarray(g.transversal_inverse, dtype=np.int64)
    stab = np.ascontiguousarray(g.stabilizer_perms, dtype=np.int64)
    canon = bool(cfg.canonicity)
    b2s = [y for y in range(1, v) if not canon or _kernel.canonical_second_point(stab, tinv, y)]
    if cfg.parallel_split_depth == 0:
        tasks = [_Task(b2s)] if b2s else []
    else:
        tasks = [_Task([y]) for y in b2s]

    counters = np.zeros(len(_kernel.PRUNE_REASONS) + 1, np.int64)
    lexmin_rejects = 0
    found = 0
    stopped_by = None

    def run_chunk(task: _Task) -> int:
        if task.state is None:
            st = _kernel.SearchState(v, k, table.n_orbits, task.b2s[0])
            st.cand[1, : len(task.b2s)] = task.b2s
            st.ncand[1] = len(task.b2s)
            task.state = st
        st = task.state
        out = np.zeros((256, k), np.int64)
        st.meta[1] = 0
        status = _kernel.advance(
            lab, k, tinv, stab, canon, st.block, st.cand, st.ncand, st.pos, st.used,
            st.meta, st.counters, out, cfg.node_chunk,
        )
        task.solutions.extend(tuple(int(p) for p in row) for row in out[: st.meta[1]])
        if status == _kernel.DONE:
            task.done = True
        return status

    pending = list(tasks)
    accepted: list[tuple[int, ...]] = []
    pool = ThreadPoolExecutor(cfg.threads) if cfg.threads > 1 else None
    try:
        while pending:
            if deadline is not None and time.perf_counter() >= deadline:
                stopped_by = "time-budget"
                break
            batch = pending[: cfg.threads]
            if pool is None:
                for t in batch:
                    run_chunk(t)
            else:
                list(pool.map(run_chunk, batch))
            for t in batch:
                new, t.solutions = t.solutions, []
                for i, sol in enumerate(new):
                    # post-processing counts against the budget too
                    if deadline is not None and time.perf_counter() >= deadline:
                        t.solutions = new[i:]
                        stopped_by = "time-budget"
                        break
                    if canon and not is_lex_min(g, sol):
                        lexmin_rejects += 1
                        continue
                    _check_linear_space(g, sol)
                    accepted.append(sol)
                    found += 1
                if stopped_by:
                    break
            if stopped_by:
                break
            for t in batch:
                if t.done:
                    counters += t.state.counters
                    t.state = None  # release the candidate arrays
            pending = [t for t in pending if not t.done]
            if cfg.max_solutions is not None and found >= cfg.max_solutions:
                stopped_by = "max-solutions"
                break
    finally:
        if pool is not None:
            pool.shutdown()

    for t in pending:
        if t.state is not None:
            counters += t.state.counters
    accepted.sort()
    complete = stopped_by is None
    if cfg.max_solutions is not None and len(accepted) > cfg.max_solutions:
        accepted = accepted[: cfg.max_solutions]
    prunes = {name: int(counters[i]) for i, name in enumerate(_kernel.PRUNE_REASONS)}
    prunes["lexmin-final"] = lexmin_rejects
    if canon:
        prunes["canonicity-b2"] = (v - 1) - len(b2s)
    return SearchReport(
        solutions=accepted,
        complete=complete,
        nodes_visited=int(counters[-1]),
        prunes_by_reason=prunes,
        elapsed=time.perf_counter() - start,
        pair_orbits=table.n_orbits,
        stopped_by=stopped_by,
    )


def brute_force_designs(g: GroupAction, k: int) -> list[tuple[int, ...]]:
    """Every ``k``-subset through 0 whose full orbit is a linear space, checked pair by pair."""
    v = g.v
    if comb(v, k) > BRUTE_FORCE_LIMIT:
        raise InstanceTooLarge(f"C({v}, {k}) exceeds {BRUTE_FORCE_LIMIT}")
    out = []
    for rest in itertools.combinations(range(1, v), k - 1):
        block = (0,) + rest
        if verify_linear_space(Design.from_orbit(g, block)).valid:
            out.append(block)
    return out


@dataclass(frozen=True)
class EquivalenceClass:
    representative: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    certificate: Any


def equivalence_classes(solutions, g: GroupAction) -> list[EquivalenceClass]:
    """Group base blocks by isomorphism of the designs they generate."""
    groups: dict[Any, list[tuple[int, ...]]] = {}
    certs: dict[Any, Any] = {}
    seen_designs: dict[tuple, Any] = {}
    for sol in solutions:
        sol = tuple(sorted(int(p) for p in sol))
        design = Design.from_orbit(g, sol)
        cert = seen_designs.get(design.blocks)
        if cert is None:
            cert = canonical_form(design)
            seen_designs[design.blocks] = cert
        groups.setdefault(cert, []).append(sol)
        certs[cert] = cert
    classes = [
        EquivalenceClass(min(members), tuple(sorted(members)), certs[cert])
        for cert, members in groups.items()
    ]
    classes.sort(key=lambda c: c.representative)
    return classes


def reduce_to_equivalence_classes(solutions, g: GroupAction) -> list[tuple[int, ...]]:
    """Least base block of each isomorphism class of generated designs."""
    return [c.representative for c in equivalence_classes(solutions, g)]
