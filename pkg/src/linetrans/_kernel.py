"""Compiled depth-first search over base blocks through point 0.

The search state lives in plain arrays so a call can stop after a node budget
and be resumed later; this is how wall-clock budgets are enforced
cooperatively.  Depth ``i`` holds ``block[i]``; ``cand[i]`` lists the points
still admissible at that depth and ``pos[i]`` the one being tried.
"""

from __future__ import annotations

import numpy as np
from numba import njit

DONE = 0
PAUSED = 1
BUFFER_FULL = 2

PRUNE_REASONS = ("used-orbit", "orbit-clash", "canonicity", "too-few-candidates")


@njit(cache=True)
def canonical_second_point(stab, tinv, y):
    """True iff no block through 0 and ``y`` can map ``y``'s pair below ``y``."""
    for s in range(stab.shape[0]):
        if stab[s, y] < y or stab[s, tinv[y, 0]] < y:
            return False
    return True


class SearchState:
    """Resumable state for the subtree with second point ``b2``."""

    def __init__(self, v: int, k: int, norb: int, b2: int):
        self.block = np.zeros(k, np.int64)
        self.cand = np.zeros((k + 1, v), np.int64)
        self.ncand = np.zeros(k + 1, np.int64)
        self.pos = np.zeros(k + 1, np.int64)
        self.used = np.zeros(norb, np.bool_)
        self.meta = np.zeros(2, np.int64)  # depth, solutions in buffer
        self.counters = np.zeros(len(PRUNE_REASONS) + 1, np.int64)  # prunes..., nodes
        self.cand[1, 0] = b2
        self.ncand[1] = 1
        self.meta[0] = 1


@njit(cache=True, nogil=True)
def advance(lab, k, tinv, stab, canon, block, cand, ncand, pos, used, meta, counters, out, budget):
    """Run until the subtree is exhausted, ``budget`` nodes are visited, or ``out`` fills."""
    v = lab.shape[0]
    nstab = stab.shape[0]
    depth = meta[0]
    nsol = meta[1]
    spent = 0
    status = 0
    while depth >= 1:
        if spent >= budget:
            status = 1
            break
        if nsol >= out.shape[0]:
            status = 2
            break
        if pos[depth] >= ncand[depth]:
            depth -= 1
            if depth >= 1:
                x = block[depth]
                for i in range(depth):
                    used[lab[block[i], x]] = False
                pos[depth] += 1
            continue
        x = cand[depth, pos[depth]]
        spent += 1
        for i in range(depth):
            used[lab[block[i], x]] = True
        block[depth] = x
        if depth == k - 1:
            out[nsol, :] = block
            nsol += 1
            for i in range(depth):
                used[lab[block[i], x]] = False
            pos[depth] += 1
            continue
        b2 = block[1]
        need = k - 1 - depth
        m = 0
        if depth == 1:
            c0 = x + 1
            cn = v
        else:
            c0 = pos[depth] + 1
            cn = ncand[depth]
        remaining = cn - c0
        for ci in range(c0, cn):
            if remaining < need - m:
                counters[3] += 1
                break
            remaining -= 1
            z = cand[depth, ci] if depth > 1 else ci
            o = lab[x, z]
            if used[o]:
                counters[0] += 1
                continue
            ok = True
            for i in range(depth):
                o2 = lab[block[i], z]
                if used[o2] or o2 == o:
                    ok = False
                    break
            if not ok:
                counters[1] += 1
                continue
            if canon:
                if depth == 1:
                    for s in range(nstab):
                        if stab[s, z] < b2 or stab[s, tinv[z, 0]] < b2:
                            ok = False
                            break
                if ok:
                    for s in range(nstab):
                        if stab[s, tinv[x, z]] < b2 or stab[s, tinv[z, x]] < b2:
                            ok = False
                            break
                if not ok:
                    counters[2] += 1
                    continue
            cand[depth + 1, m] = z
            m += 1
        if m < need:
            for i in range(depth):
                used[lab[block[i], x]] = False
            pos[depth] += 1
            continue
        ncand[depth + 1] = m
        pos[depth + 1] = 0
        depth += 1
    if depth < 1:
        status = 0
    meta[0] = depth
    meta[1] = nsol
    counters[4] += spent
    return status
