"""Finite groups acting on points ``0..v-1``.

Two kinds of groups are supported:

* affine semidirect products ``M : <phi>`` where ``M`` is a product of cyclic
  groups and at most one elementary abelian vector group ``GF(p)^e``, and
  ``phi`` acts by a unit multiplier on each cyclic factor and by a matrix on
  the vector factor;
* explicit permutation groups given by generator image lists.

Elements act on the right: ``apply(multiply(g, h), x) == apply(h, apply(g, x))``.
For affine groups the element ``(j, m)`` sends ``x`` to ``phi^j(x) + m`` and
products follow ``(j1, m1)(j2, m2) = (j1 + j2, phi^j2(m1) + m2)``.

Points of an affine group are elements of ``M`` written in mixed radix: the
cyclic factors in the order given, then the ``e`` coordinates of the vector
factor, the first digit being the most significant.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import comb, gcd, prod
from typing import Any, Hashable, Iterator, Sequence

import numpy as np

MAX_EXPLICIT_ORDER = 10**6


class GroupSpecError(ValueError):
    pass


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class GroupSpec:
    """Declarative description of a group; see module docstring for conventions."""

    kind: str
    cyclic_moduli: tuple[int, ...] = ()
    vector: tuple[int, int] | None = None  # (p, e)
    top_order: int = 1
    multipliers: tuple[int, ...] = ()
    matrix: tuple[tuple[int, ...], ...] | None = None
    degree: int = 0
    generators: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def cyclic(cls, n: int) -> GroupSpec:
        return cls.affine([n])

    @classmethod
    def affine(
        cls,
        cyclic_moduli: Sequence[int] = (),
        top_order: int = 1,
        multipliers: Sequence[int] | None = None,
        vector: tuple[int, int] | None = None,
        matrix: Sequence[Sequence[int]] | None = None,
    ) -> GroupSpec:
        if multipliers is None:
            multipliers = [1] * len(cyclic_moduli)
        if vector is not None and matrix is None:
            p, e = vector
            matrix = [[int(i == j) for j in range(e)] for i in range(e)]
        return cls(
            kind="affine_semidirect",
            cyclic_moduli=tuple(int(n) for n in cyclic_moduli),
            vector=None if vector is None else (int(vector[0]), int(vector[1])),
            top_order=int(top_order),
            multipliers=tuple(int(u) for u in multipliers),
            matrix=None if matrix is None else tuple(tuple(int(a) for a in row) for row in matrix),
        )

    @classmethod
    def explicit(cls, degree: int, generators: Sequence[Sequence[int]]) -> GroupSpec:
        return cls(
            kind="explicit",
            degree=int(degree),
            generators=tuple(tuple(int(a) for a in g) for g in generators),
        )

    def to_dict(self) -> dict[str, Any]:
        if self.kind == "explicit":
            return {
                "kind": "explicit",
                "degree": self.degree,
                "generators": [list(g) for g in self.generators],
            }
        out: dict[str, Any] = {
            "kind": "affine_semidirect",
            "cyclic_moduli": list(self.cyclic_moduli),
        }
        if self.vector is not None:
            out["vector"] = {"p": self.vector[0], "e": self.vector[1]}
        out["top_order"] = self.top_order
        out["multipliers"] = list(self.multipliers)
        if self.matrix is not None:
            out["matrix"] = [list(r) for r in self.matrix]
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> GroupSpec:
        kind = data.get("kind")
        if kind == "explicit":
            return cls.explicit(data["degree"], data["generators"])
        if kind != "affine_semidirect":
            raise GroupSpecError(f"unknown group kind {kind!r}")
        vec = data.get("vector")
        return cls.affine(
            cyclic_moduli=data.get("cyclic_moduli", []),
            top_order=data.get("top_order", 1),
            multipliers=data.get("multipliers"),
            vector=None if vec is None else (vec["p"], vec["e"]),
            matrix=data.get("matrix"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> GroupSpec:
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# small modular linear algebra


def _mat_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def _mat_pow(a: np.ndarray, n: int, p: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=np.int64)
    base = a.copy()
    while n:
        if n & 1:
            result = _mat_mul(result, base, p)
        base = _mat_mul(base, base, p)
        n >>= 1
    return result


def _rank_mod_p(a: np.ndarray, p: int) -> int:
    m = a.copy() % p
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r, col]), None)
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        m[rank] = (m[rank] * pow(int(m[rank, col]), -1, p)) % p
        for r in range(rows):
            if r != rank and m[r, col]:
                m[r] = (m[r] - m[r, col] * m[rank]) % p
        rank += 1
    return rank


def multiplicative_order(t: int, n: int) -> int:
    if gcd(t, n) != 1:
        raise GroupSpecError(f"{t} is not a unit modulo {n}")
    k, x = 1, t % n
    while x != 1 % n:
        x = x * t % n
        k += 1
    return k


def matrix_order(a: np.ndarray, p: int, limit: int = 10**6) -> int:
    ident = np.eye(a.shape[0], dtype=np.int64)
    cur = a % p
    for k in range(1, limit + 1):
        if np.array_equal(cur, ident):
            return k
        cur = _mat_mul(cur, a, p)
    raise GroupSpecError("matrix order exceeds search limit")


# ---------------------------------------------------------------------------
# actions


class GroupAction:
    """A finite group acting faithfully on ``0..v-1``.

    Subclasses supply element arithmetic; this base class derives the
    permutation tables used by the orbit and search machinery.
    """

    v: int
    order: int

    # element arithmetic -------------------------------------------------
    def apply(self, g: Hashable, point: int) -> int:
        raise NotImplementedError

    def multiply(self, g: Hashable, h: Hashable) -> Hashable:
        raise NotImplementedError

    def inverse(self, g: Hashable) -> Hashable:
        raise NotImplementedError

    @property
    def identity(self) -> Hashable:
        raise NotImplementedError

    @property
    def generators(self) -> list:
        raise NotImplementedError

    def elements(self) -> Iterator[Hashable]:
        yield from closure(self, self.generators)

    def permutation(self, g: Hashable) -> np.ndarray:
        return np.array([self.apply(g, x) for x in range(self.v)], dtype=np.int64)

    def power(self, g: Hashable, n: int) -> Hashable:
        result = self.identity
        for _ in range(n):
            result = self.multiply(result, g)
        return result

    def element_order(self, g: Hashable) -> int:
        k, cur = 1, g
        while cur != self.identity:
            cur = self.multiply(cur, g)
            k += 1
        return k

    # derived tables -------------------------------------------------------
    @property
    def stabilizer_order(self) -> int:
        return self.order // self.v

    @cached_property
    def generator_perms(self) -> np.ndarray:
        return np.array([self.permutation(g) for g in self.generators], dtype=np.int64).reshape(
            -1, self.v
        )

    def is_transitive(self) -> bool:
        return len(orbit_of(self.generator_perms, 0, self.v)) == self.v

    @cached_property
    def stabilizer_perms(self) -> np.ndarray:
        """Permutations of the elements fixing point 0, identity first."""
        raise NotImplementedError

    @cached_property
    def transversal(self) -> np.ndarray:
        """Row ``p`` is the permutation of an element mapping 0 to ``p``."""
        raise NotImplementedError

    @cached_property
    def transversal_inverse(self) -> np.ndarray:
        """Row ``p`` is the permutation of an element mapping ``p`` to 0."""
        t = self.transversal
        inv = np.empty_like(t)
        rows = np.arange(self.v)[:, None]
        inv[rows, t] = np.arange(self.v)[None, :]
        return inv

    def stabilizer_perms_of(self, p: int) -> np.ndarray:
        t, ti = self.transversal, self.transversal_inverse
        return t[p][self.stabilizer_perms[:, ti[p]]]

    def all_permutations(self) -> Iterator[np.ndarray]:
        """Every element as a permutation: stabilizer of 0 composed with the transversal."""
        for s in self.stabilizer_perms:
            for row in self.transversal:
                yield row[s]

    def mapping_to_zero(self, p: int) -> np.ndarray:
        """Permutations of all elements sending ``p`` to 0."""
        return self.stabilizer_perms[:, self.transversal_inverse[p]]


class AffineGroupAction(GroupAction):
    """``M : <phi>`` acting on ``M`` by ``x -> phi^j(x) + m``."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        mods: list[int] = list(spec.cyclic_moduli)
        self.n_cyclic = len(mods)
        if spec.vector is not None:
            p, e = spec.vector
            mods += [p] * e
        if not mods:
            raise GroupSpecError("affine group needs at least one component")
        self.mods = np.array(mods, dtype=np.int64)
        self.v = int(prod(mods))
        self.s = spec.top_order
        self.order = self.s * self.v
        weights = np.ones(len(mods), dtype=np.int64)
        for i in range(len(mods) - 2, -1, -1):
            weights[i] = weights[i + 1] * mods[i + 1]
        self.weights = weights
        pts = np.arange(self.v, dtype=np.int64)
        self.digits = (pts[:, None] // weights[None, :]) % self.mods[None, :]
        self._phi_digits = self._build_phi()
        phi = self.encode(self._phi_digits(self.digits))
        self.phi_powers = np.empty((self.s, self.v), dtype=np.int64)
        cur = np.arange(self.v, dtype=np.int64)
        for j in range(self.s):
            self.phi_powers[j] = cur
            cur = phi[cur]
        if not np.array_equal(cur, np.arange(self.v)):
            raise GroupSpecError(f"phi^{self.s} is not the identity")
        for j in range(1, self.s):
            if np.array_equal(self.phi_powers[j], np.arange(self.v)):
                raise GroupSpecError(
                    f"phi has order {j}, smaller than top order {self.s}; action not faithful"
                )

    def _build_phi(self):
        spec = self.spec
        if len(spec.multipliers) != len(spec.cyclic_moduli):
            raise GroupSpecError("need one multiplier per cyclic modulus")
        units = np.array(spec.multipliers, dtype=np.int64)
        for u, n in zip(spec.multipliers, spec.cyclic_moduli):
            if n < 1:
                raise GroupSpecError(f"bad modulus {n}")
            if gcd(u, n) != 1:
                raise GroupSpecError(f"multiplier {u} is not a unit modulo {n}")
        nc = self.n_cyclic
        mat = None
        if spec.vector is not None:
            p, e = spec.vector
            if spec.matrix is None:
                raise GroupSpecError("vector component needs a matrix")
            mat = np.array(spec.matrix, dtype=np.int64) % p
            if mat.shape != (e, e):
                raise GroupSpecError(f"matrix must be {e}x{e}")
            if _rank_mod_p(mat, p) != e:
                raise GroupSpecError("matrix is singular over GF(p)")

        def phi_digits(dig: np.ndarray) -> np.ndarray:
            out = dig.copy()
            if nc:
                out[:, :nc] = (dig[:, :nc] * units[None, :]) % self.mods[None, :nc]
            if mat is not None:
                p = spec.vector[0]
                out[:, nc:] = (dig[:, nc:] @ mat.T) % p
            return out

        return phi_digits

    def encode(self, digits: np.ndarray) -> np.ndarray:
        return (digits * self.weights).sum(axis=-1)

    def add(self, a, b):
        return self.encode((self.digits[a] + self.digits[b]) % self.mods)

    def neg(self, a):
        return self.encode((-self.digits[a]) % self.mods)

    # arithmetic
    @property
    def identity(self) -> tuple[int, int]:
        return (0, 0)

    @property
    def generators(self) -> list[tuple[int, int]]:
        gens = [(0, int(self.weights[i])) for i in range(len(self.mods))]
        if self.s > 1:
            gens.append((1, 0))
        return gens

    def translation_generators(self) -> list[tuple[int, int]]:
        """Generators of the point-regular normal subgroup ``M``."""
        return [(0, int(self.weights[i])) for i in range(len(self.mods))]

    def apply(self, g, point):
        j, m = g
        return int(self.add(self.phi_powers[j % self.s][point], m))

    def multiply(self, g, h):
        j1, m1 = g
        j2, m2 = h
        return ((j1 + j2) % self.s, int(self.add(self.phi_powers[j2][m1], m2)))

    def inverse(self, g):
        j, m = g
        jj = (-j) % self.s
        return (jj, int(self.neg(self.phi_powers[jj][m])))

    def elements(self):
        for j in range(self.s):
            for m in range(self.v):
                yield (j, m)

    def permutation(self, g):
        j, m = g
        return self.add(self.phi_powers[j], m)

    @cached_property
    def add_table(self) -> np.ndarray:
        return self.encode((self.digits[:, None, :] + self.digits[None, :, :]) % self.mods)

    @cached_property
    def stabilizer_perms(self):
        return self.phi_powers.copy()

    @cached_property
    def transversal(self):
        # row p: x -> x + p (symmetric in x and p)
        return self.add_table

    @cached_property
    def transversal_inverse(self):
        negs = self.neg(np.arange(self.v))
        return self.add_table[negs]

    def is_transitive(self) -> bool:
        return True

    def fixed_points_of_phi(self) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.phi_powers[1 % self.s] == np.arange(self.v))]


class PermutationGroupAction(GroupAction):
    """A group given by generator permutations, enumerated completely by closure."""

    def __init__(self, degree: int, generators: Sequence[Sequence[int]]):
        self.v = int(degree)
        gens = []
        for g in generators:
            g = tuple(int(a) for a in g)
            if sorted(g) != list(range(self.v)):
                raise GroupSpecError(f"{list(g)} is not a permutation of 0..{self.v - 1}")
            gens.append(g)
        self._gens = gens
        self._elements = list(closure(self, gens, limit=MAX_EXPLICIT_ORDER))
        self.order = len(self._elements)

    @property
    def identity(self):
        return tuple(range(self.v))

    @property
    def generators(self):
        return list(self._gens)

    def apply(self, g, point):
        return g[point]

    def multiply(self, g, h):
        return tuple(h[x] for x in g)

    def inverse(self, g):
        inv = [0] * self.v
        for x, y in enumerate(g):
            inv[y] = x
        return tuple(inv)

    def elements(self):
        return iter(self._elements)

    def permutation(self, g):
        return np.array(g, dtype=np.int64)

    @cached_property
    def element_array(self) -> np.ndarray:
        return np.array(self._elements, dtype=np.int64).reshape(-1, self.v)

    @cached_property
    def stabilizer_perms(self):
        arr = self.element_array
        stab = arr[arr[:, 0] == 0]
        ident = np.arange(self.v)
        order = np.argsort([0 if np.array_equal(s, ident) else 1 for s in stab], kind="stable")
        return stab[order]

    @cached_property
    def transversal(self):
        if not self.is_transitive():
            raise ValueError("transversal requires a transitive group")
        arr = self.element_array
        t = np.empty((self.v, self.v), dtype=np.int64)
        seen = np.zeros(self.v, dtype=bool)
        for row in arr:
            p = row[0]
            if not seen[p]:
                seen[p] = True
                t[p] = row
        return t

    @property
    def stabilizer_order(self):
        return int(np.count_nonzero(self.element_array[:, 0] == 0))


def closure(group: GroupAction, gens, limit: int | None = None) -> Iterator:
    """Breadth-first enumeration of the subgroup generated by ``gens``."""
    ident = group.identity
    seen = {ident}
    queue = deque([ident])
    yield ident
    while queue:
        g = queue.popleft()
        for s in gens:
            h = group.multiply(g, s)
            if h not in seen:
                seen.add(h)
                if limit is not None and len(seen) > limit:
                    raise GroupSpecError(f"group order exceeds {limit}")
                queue.append(h)
                yield h


def orbit_of(gen_perms: np.ndarray, start: int, v: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for g in gen_perms:
            y = int(g[x])
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def build_group(spec: GroupSpec) -> GroupAction:
    """Realise ``spec`` as a group action, validating its invariants."""
    if spec.kind == "explicit":
        if spec.degree < 1:
            raise GroupSpecError("explicit group needs a positive degree")
        return PermutationGroupAction(spec.degree, spec.generators)
    if spec.kind != "affine_semidirect":
        raise GroupSpecError(f"unknown group kind {spec.kind!r}")
    if spec.top_order < 1:
        raise GroupSpecError("top order must be positive")
    return AffineGroupAction(spec)


# ---------------------------------------------------------------------------
# pair orbits


@dataclass(frozen=True)
class PairOrbitTable:
    """Orbit id of every unordered pair; ``labels[a, b]`` (``-1`` on the diagonal)."""

    labels: np.ndarray = field(repr=False)
    orbit_sizes: tuple[int, ...]
    regular: bool

    @property
    def n_orbits(self) -> int:
        return len(self.orbit_sizes)

    def label(self, a: int, b: int) -> int:
        return int(self.labels[a, b])


class _UnionFind:
    def __init__(self, n: int):
        self.parent = np.arange(n)

    def find(self, a: int) -> int:
        parent = self.parent
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return int(root)

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True


def pair_orbit_table(g: GroupAction) -> PairOrbitTable:
    """Label the unordered pairs of points by their orbit under ``g``.

    Pairs through 0 are classified by their second point: ``c ~ c^s`` for
    ``s`` fixing 0, and ``c ~ 0^h`` for ``h`` mapping ``c`` to 0.  Any pair
    ``{a, b}`` is moved onto ``{0, b^h}`` by an element ``h`` sending ``a`` to 0.
    """
    v = g.v
    if v < 2:
        raise ValueError("need at least two points")
    if not g.is_transitive():
        raise ValueError("pair orbit table requires a transitive group")
    uf = _UnionFind(v)
    ti = g.transversal_inverse
    for s in g.stabilizer_perms:
        for c in range(1, v):
            uf.union(c, int(s[c]))
    for c in range(1, v):
        uf.union(c, int(ti[c, 0]))
    roots = np.array([uf.find(c) for c in range(v)])
    roots[0] = -1
    uniq = sorted(set(roots[1:].tolist()))
    ids = {r: i for i, r in enumerate(uniq)}
    cls = np.full(v, -1, dtype=np.int64)
    for c in range(1, v):
        cls[c] = ids[int(roots[c])]
    labels = cls[ti]
    counts = np.bincount(cls[1:], minlength=len(uniq))
    sizes = tuple(int(v * n // 2) for n in counts)
    assert sum(sizes) == comb(v, 2)
    regular = all(sz == g.order for sz in sizes)
    return PairOrbitTable(labels=labels.astype(np.int64), orbit_sizes=sizes, regular=regular)


# ---------------------------------------------------------------------------
# stabilizers, block systems, filters


def point_stabilizer_fixed_points(g: GroupAction, p: int) -> set[int]:
    """Points fixed by every element of the stabilizer of ``p``."""
    if isinstance(g, PermutationGroupAction):
        arr = g.element_array
        stab = arr[arr[:, p] == p]
    else:
        stab = g.stabilizer_perms_of(p)
    fixed = np.all(stab == np.arange(g.v)[None, :], axis=0)
    return {int(x) for x in np.flatnonzero(fixed)}


@dataclass(frozen=True)
class Partition:
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        sizes = {len(c) for c in self.classes}
        if len(sizes) != 1:
            raise ValueError("partition classes must have equal size")
        if self.c < 2 or self.d < 2:
            raise ValueError(f"partition must be nontrivial (c={self.c}, d={self.d})")
        pts = sorted(itertools.chain.from_iterable(self.classes))
        if pts != list(range(len(pts))):
            raise ValueError("classes must partition 0..v-1")

    @classmethod
    def from_classes(cls, classes) -> Partition:
        return cls(tuple(sorted(tuple(sorted(int(p) for p in c)) for c in classes)))

    @property
    def c(self) -> int:
        return len(self.classes[0])

    @property
    def d(self) -> int:
        return len(self.classes)

    @property
    def v(self) -> int:
        return self.c * self.d

    def class_of(self) -> np.ndarray:
        out = np.empty(self.v, dtype=np.int64)
        for i, cl in enumerate(self.classes):
            out[list(cl)] = i
        return out


def _join_closure(gen_perms: np.ndarray, v: int, a: int, b: int) -> np.ndarray:
    """Finest block system with ``a`` and ``b`` in the same block (Atkinson)."""
    uf = _UnionFind(v)
    uf.union(a, b)
    queue = deque([(a, b)])
    while queue:
        x, y = queue.popleft()
        for g in gen_perms:
            gx, gy = int(g[x]), int(g[y])
            if uf.union(gx, gy):
                queue.append((gx, gy))
    return np.array([uf.find(x) for x in range(v)])


def minimal_block_systems(g: GroupAction) -> list[Partition]:
    """All minimal nontrivial block systems of a transitive group."""
    v = g.v
    gens = g.generator_perms
    # the system generated by {0, beta} only depends on the orbit of beta under G_0
    uf = _UnionFind(v)
    for s in g.stabilizer_perms:
        for c in range(v):
            uf.union(c, int(s[c]))
    reps = sorted({uf.find(c) for c in range(1, v)})
    blocks_of_zero: dict[frozenset, np.ndarray] = {}
    for beta in reps:
        roots = _join_closure(gens, v, 0, beta)
        block = frozenset(np.flatnonzero(roots == roots[0]).tolist())
        if len(block) < v:
            blocks_of_zero.setdefault(block, roots)
    minimal = [b for b in blocks_of_zero if not any(o < b for o in blocks_of_zero)]
    out = []
    for b in minimal:
        roots = blocks_of_zero[b]
        classes: dict[int, list[int]] = {}
        for x, r in enumerate(roots):
            classes.setdefault(int(r), []).append(x)
        out.append(Partition.from_classes(classes.values()))
    out.sort(key=lambda p: (p.c, p.classes))
    return out


@dataclass(frozen=True)
class FilterResult:
    passed: bool
    witness: Any = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.passed


def involution_fixed_point_filter(g: GroupAction) -> FilterResult:
    """Fail when some involution moves every point."""
    if g.order % 2:
        return FilterResult(True, reason="odd order")
    ident = g.identity
    pts = np.arange(g.v)
    for h in g.elements():
        if h == ident:
            continue
        perm = g.permutation(h)
        if np.array_equal(perm[perm], pts) and not np.any(perm == pts):
            return FilterResult(False, witness=h, reason="fixed-point-free involution")
    return FilterResult(True)


def _subgroup_elements(g: GroupAction, gens) -> list:
    return list(closure(g, list(gens), limit=MAX_EXPLICIT_ORDER))


def inversion_filter(g: GroupAction, m_gens=None) -> FilterResult:
    """Fail when some element of ``g`` conjugates every element of ``m`` to its inverse.

    ``m_gens`` generate a normal point-regular subgroup; for affine groups it
    defaults to the translation subgroup.
    """
    if m_gens is None:
        if not isinstance(g, AffineGroupAction):
            raise ValueError("m must be given for explicit groups")
        m_gens = g.translation_generators()
    m_gens = list(m_gens)
    m_elems = _subgroup_elements(g, m_gens)
    m_set = set(m_elems)
    for h in g.generators:
        hi = g.inverse(h)
        for x in m_gens:
            if g.multiply(g.multiply(hi, x), h) not in m_set:
                raise ValueError("m is not normal in g")
    if len(m_elems) != g.v or len(orbit_of(np.array([g.permutation(x) for x in m_gens]), 0, g.v)) != g.v:
        raise ValueError("m is not regular on points")
    abelian = all(g.multiply(a, b) == g.multiply(b, a) for a in m_gens for b in m_gens)
    if not abelian:
        return FilterResult(True, reason="m is non-abelian; inversion is not an automorphism")
    targets = [g.inverse(x) for x in m_gens]
    for h in g.elements():
        hi = g.inverse(h)
        if all(g.multiply(g.multiply(hi, x), h) == t for x, t in zip(m_gens, targets)):
            return FilterResult(False, witness=h, reason="element induces inversion on m")
    return FilterResult(True)


def faithful_on_orbit(g: GroupAction, n_gens, orbit) -> FilterResult:
    """True iff the subgroup generated by ``n_gens`` acts faithfully on ``orbit``."""
    orbit = sorted(int(p) for p in orbit)
    orbit_set = set(orbit)
    for x in n_gens:
        if {g.apply(x, p) for p in orbit} != orbit_set:
            raise ValueError("orbit is not invariant under n")
    ident = g.identity
    for h in _subgroup_elements(g, n_gens):
        if h != ident and all(g.apply(h, p) == p for p in orbit):
            return FilterResult(False, witness=h, reason="kernel on orbit is nontrivial")
    return FilterResult(True)


# ---------------------------------------------------------------------------
# deterministic parameter choices


def multiplier_subgroups(modulus: int, order: int, fixed_point_free: bool = True) -> list[int]:
    """Smallest generator of every cyclic subgroup of order ``order`` in the units mod ``modulus``.

    With ``fixed_point_free`` only multipliers ``t`` with ``t - 1`` a unit are
    kept, i.e. ``x -> t x`` fixes only 0.  Results are sorted increasingly.
    """
    seen: set[frozenset] = set()
    out = []
    for t in range(2, modulus):
        if gcd(t, modulus) != 1 or pow(t, order, modulus) != 1:
            continue
        if multiplicative_order(t, modulus) != order:
            continue
        if fixed_point_free and gcd(t - 1, modulus) != 1:
            continue
        sub = frozenset(pow(t, j, modulus) for j in range(order))
        if sub not in seen:
            seen.add(sub)
            out.append(t)
    return out


def smallest_multiplier(modulus: int, order: int, fixed_point_free: bool = True) -> int:
    found = multiplier_subgroups(modulus, order, fixed_point_free)
    if not found:
        raise GroupSpecError(f"no multiplier of order {order} modulo {modulus}")
    return found[0]


def smallest_matrix_of_order(p: int, e: int, order: int, fixed_point_free: bool = True):
    """First ``e x e`` matrix over GF(p), in lexicographic order of its entries, of exact order ``order``."""
    ident = np.eye(e, dtype=np.int64)
    for entries in itertools.product(range(p), repeat=e * e):
        a = np.array(entries, dtype=np.int64).reshape(e, e)
        if _rank_mod_p(a, p) != e:
            continue
        if not np.array_equal(_mat_pow(a, order, p), ident):
            continue
        if any(np.array_equal(_mat_pow(a, dd, p), ident) for dd in range(1, order) if order % dd == 0):
            continue
        if fixed_point_free and _rank_mod_p((a - ident) % p, p) != e:
            continue
        return tuple(tuple(int(x) for x in row) for row in a)
    raise GroupSpecError(f"no {e}x{e} matrix of order {order} over GF({p})")
