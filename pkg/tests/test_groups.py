from __future__ import annotations

from math import comb, gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linetrans.groups import (
    AffineGroupAction,
    GroupSpec,
    GroupSpecError,
    Partition,
    build_group,
    faithful_on_orbit,
    involution_fixed_point_filter,
    inversion_filter,
    matrix_order,
    minimal_block_systems,
    multiplier_subgroups,
    pair_orbit_table,
    point_stabilizer_fixed_points,
    smallest_matrix_of_order,
    smallest_multiplier,
)

LINE4_MATRIX = ((0, 0, 1), (0, 1, 1), (2, 1, 1))

SPECS = {
    "z7": GroupSpec.cyclic(7),
    "z91": GroupSpec.cyclic(91),
    "z91:z3": GroupSpec.affine([91], 3, [9]),
    "z19:z3": GroupSpec.affine([19], 3, [7]),
    "line1": GroupSpec.affine([217], 3, [25]),
    "z7xz13": GroupSpec.affine([7, 13], 1, [1, 1]),
    "gf9:z4": GroupSpec.affine([], 4, [], vector=(3, 2), matrix=[[0, 2], [1, 0]]),
    "z5xgf9:z4": GroupSpec.affine([5], 4, [2], vector=(3, 2), matrix=[[0, 2], [1, 0]]),
    "s3": GroupSpec.explicit(3, [[1, 2, 0], [1, 0, 2]]),
}


def brute_pair_orbits(g):
    """Orbits of unordered pairs by closure under generator permutations."""
    gens = [np.asarray(p) for p in g.generator_perms]
    label = {}
    sizes = []
    for a in range(g.v):
        for b in range(a + 1, g.v):
            if (a, b) in label:
                continue
            oid = len(sizes)
            label[(a, b)] = oid
            stack = [(a, b)]
            size = 0
            while stack:
                x, y = stack.pop()
                size += 1
                for p in gens:
                    u, w = sorted((int(p[x]), int(p[y])))
                    if (u, w) not in label:
                        label[(u, w)] = oid
                        stack.append((u, w))
            sizes.append(size)
    return label, sizes


@pytest.mark.parametrize("name", sorted(SPECS))
def test_pair_orbits_match_brute_force(name):
    g = build_group(SPECS[name])
    table = pair_orbit_table(g)
    label, sizes = brute_pair_orbits(g)
    assert sorted(table.orbit_sizes) == sorted(sizes)
    assert sum(table.orbit_sizes) == comb(g.v, 2)
    # same partition of pairs, possibly different ids
    mapping = {}
    for (a, b), oid in label.items():
        assert mapping.setdefault(oid, table.label(a, b)) == table.label(a, b)
        assert table.label(b, a) == table.label(a, b)
    for size in table.orbit_sizes:
        assert g.order % size == 0


@pytest.mark.parametrize(
    "spec, n_orbits, size",
    [
        (GroupSpec.cyclic(7), 3, 7),
        (GroupSpec.affine([91], 3, [9]), 15, 273),
        (GroupSpec.affine([217], 3, [25]), 36, 651),
    ],
)
def test_pair_orbit_counts(spec, n_orbits, size):
    table = pair_orbit_table(build_group(spec))
    assert table.n_orbits == n_orbits
    assert set(table.orbit_sizes) == {size}
    assert table.regular


def test_short_pair_orbits_not_regular():
    table = pair_orbit_table(build_group(GroupSpec.affine([91], 3, [22])))
    assert not table.regular


@pytest.mark.parametrize("name", sorted(SPECS))
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_action_is_homomorphism(name, data):
    g = build_group(SPECS[name])
    elements = list(g.elements())
    assert len(elements) == g.order
    pick = st.sampled_from(elements)
    a, b = data.draw(pick), data.draw(pick)
    x = data.draw(st.integers(0, g.v - 1))
    assert g.apply(g.multiply(a, b), x) == g.apply(b, g.apply(a, x))
    assert g.apply(g.identity, x) == x
    assert g.multiply(a, g.inverse(a)) == g.identity
    assert g.multiply(g.inverse(a), a) == g.identity


@pytest.mark.parametrize("name", sorted(SPECS))
def test_faithful_transitive(name):
    g = build_group(SPECS[name])
    perms = {tuple(g.permutation(h)) for h in g.elements()}
    assert len(perms) == g.order
    assert g.is_transitive()
    assert g.stabilizer_order * g.v == g.order
    assert len(g.stabilizer_perms) == g.stabilizer_order
    assert np.all(g.stabilizer_perms[:, 0] == 0)
    assert np.all(g.transversal[:, 0] == np.arange(g.v))
    assert np.all(g.transversal_inverse[np.arange(g.v), np.arange(g.v)] == 0)


def test_affine_points_are_mixed_radix():
    g = build_group(GroupSpec.affine([5], 4, [2], vector=(3, 2), matrix=[[0, 2], [1, 0]]))
    # point = 9 * (Z5 digit) + 3 * first coordinate + second coordinate
    assert g.v == 45
    assert g.apply((0, 9), 0) == 9
    assert g.apply((0, 9 * 4), 9) == 0
    assert g.apply((0, 1), 2) == 0  # 2 + 1 = 0 in GF(3)
    # phi multiplies the Z5 digit by 2 and maps (a, b) to (2b, a)
    assert g.apply((1, 0), 9 * 1 + 3 * 1 + 0) == 9 * 2 + 3 * 0 + 1


def test_table1_groups():
    g = build_group(GroupSpec.cyclic(91))
    assert (g.order, g.v, g.stabilizer_order) == (91, 91, 1)
    g = build_group(GroupSpec.affine([217], 3, [25]))
    assert (g.order, g.v) == (651, 217)
    assert point_stabilizer_fixed_points(g, 0) == {0}
    g = build_group(GroupSpec.affine([53], 13, [10], vector=(3, 3), matrix=LINE4_MATRIX))
    assert (g.order, g.v) == (18603, 1431)
    assert g.fixed_points_of_phi() == [0]
    table = pair_orbit_table(g)
    assert table.n_orbits == 55 and table.regular


def test_cube_root_choice_is_smallest_by_brute_force():
    n = 217
    admissible = [
        t for t in range(2, n)
        if pow(t, 3, n) == 1 and gcd(t - 1, n) == 1
    ]
    assert admissible[0] == 25 == smallest_multiplier(217, 3)
    g = build_group(GroupSpec.affine([217], 3, [25]))
    for p in range(217):
        fixed = [x for x in range(217) if g.apply((1, (p - 25 * p) % 217), x) == x]
        assert fixed == [p]


def test_multiplier_subgroups():
    assert multiplier_subgroups(91, 3) == [9, 16]
    assert multiplier_subgroups(91, 3, fixed_point_free=False) == [9, 16, 22, 53]
    assert multiplier_subgroups(217, 3) == [25, 67]
    assert multiplier_subgroups(451, 5) == [16, 59, 92, 119]
    assert multiplier_subgroups(53, 13) == [10]


def test_smallest_matrix_of_order_13():
    a = smallest_matrix_of_order(3, 3, 13)
    assert a == LINE4_MATRIX
    arr = np.array(a)
    assert matrix_order(arr, 3) == 13
    # no nonzero fixed vector
    import itertools
    for vec in itertools.product(range(3), repeat=3):
        if any(vec):
            assert tuple(arr @ np.array(vec) % 3) != vec


@pytest.mark.parametrize(
    "spec, message",
    [
        (GroupSpec.affine([91], 3, [13]), "unit"),
        (GroupSpec.affine([], 2, [], vector=(3, 2), matrix=[[1, 1], [1, 1]]), "singular"),
        (GroupSpec.affine([91], 3, [2]), "identity"),
        (GroupSpec.affine([91], 6, [9]), "order"),
        (GroupSpec.affine([91], 3, [9, 2]), "multiplier"),
        (GroupSpec.explicit(3, [[0, 0, 1]]), "permutation"),
    ],
)
def test_build_group_errors(spec, message):
    with pytest.raises(GroupSpecError, match=message):
        build_group(spec)


def test_group_spec_json_round_trip():
    for spec in SPECS.values():
        assert GroupSpec.from_json(spec.to_json()) == spec
    with pytest.raises(GroupSpecError):
        GroupSpec.from_dict({"kind": "mystery"})


def test_point_stabilizer_fixed_points():
    assert point_stabilizer_fixed_points(build_group(GroupSpec.cyclic(91)), 5) == set(range(91))
    g = build_group(GroupSpec.explicit(3, [[1, 0, 2]]))
    assert point_stabilizer_fixed_points(g, 2) == {2}


def test_minimal_block_systems_examples():
    systems = minimal_block_systems(build_group(GroupSpec.cyclic(91)))
    assert [(p.c, p.d) for p in systems] == [(7, 13), (13, 7)]
    assert systems[0].classes[0] == tuple(range(0, 91, 13))
    assert minimal_block_systems(build_group(GroupSpec.cyclic(7))) == []
    systems = minimal_block_systems(build_group(GroupSpec.affine([217], 3, [25])))
    assert sorted(p.c for p in systems) == [7, 31]


@pytest.mark.parametrize("p, q", [(2, 3), (3, 5), (7, 13), (5, 11), (7, 19)])
def test_block_systems_of_order_pq(p, q):
    systems = minimal_block_systems(build_group(GroupSpec.cyclic(p * q)))
    assert sorted(s.c for s in systems) == [p, q]
    systems = minimal_block_systems(build_group(GroupSpec.affine([p, q], 1, [1, 1])))
    assert len(systems) == 2


def test_block_systems_are_invariant():
    g = build_group(GroupSpec.affine([217], 3, [25]))
    for part in minimal_block_systems(g):
        classes = {frozenset(c) for c in part.classes}
        for perm in g.generator_perms:
            assert {frozenset(int(perm[x]) for x in c) for c in classes} == classes


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition.from_classes([[0], [1], [2]])
    with pytest.raises(ValueError):
        Partition.from_classes([[0, 1], [2]])


def test_involution_filter():
    res = involution_fixed_point_filter(build_group(GroupSpec.explicit(2, [[1, 0]])))
    assert not res and res.witness == (1, 0)
    assert involution_fixed_point_filter(build_group(GroupSpec.explicit(3, [[1, 0, 2]])))
    assert involution_fixed_point_filter(build_group(GroupSpec.affine([91], 3, [9])))
    # Z_10 contains the fixed-point-free translation by 5
    res = involution_fixed_point_filter(build_group(GroupSpec.cyclic(10)))
    assert not res and res.witness == (0, 5)


def test_inversion_filter():
    res = inversion_filter(build_group(GroupSpec.affine([91], 2, [90])))
    assert not res
    assert inversion_filter(build_group(GroupSpec.affine([91], 3, [9])))
    g = build_group(GroupSpec.affine([7, 13], 1, [1, 1]))
    assert inversion_filter(g, g.generators)


def test_inversion_filter_checks_m():
    g = build_group(GroupSpec.affine([91], 3, [9]))
    with pytest.raises(ValueError, match="regular"):
        inversion_filter(g, [(0, 13)])
    with pytest.raises(ValueError, match="normal"):
        inversion_filter(g, [(1, 0)])


def test_faithful_on_orbit():
    g = build_group(GroupSpec.affine([7, 13], 1, [1, 1]))
    z7 = [(0, 13)]
    assert faithful_on_orbit(g, z7, range(0, 91, 13))
    line1 = build_group(GroupSpec.affine([217], 3, [25]))
    z31 = [(0, 7)]
    assert faithful_on_orbit(line1, z31, range(0, 217, 7))
    g = build_group(GroupSpec.explicit(4, [[1, 0, 2, 3], [0, 1, 3, 2]]))
    assert faithful_on_orbit(g, [(1, 0, 2, 3)], [0, 1])
    res = faithful_on_orbit(g, [(1, 0, 2, 3), (0, 1, 3, 2)], [0, 1])
    assert not res and res.witness == (0, 1, 3, 2)
    with pytest.raises(ValueError):
        faithful_on_orbit(g, [(1, 0, 2, 3)], [0, 2])


def test_affine_action_type():
    assert isinstance(build_group(GroupSpec.cyclic(5)), AffineGroupAction)
