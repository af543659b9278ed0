import random

import numpy as np
import pytest

from ybelab.groups import (
    CapExceeded,
    CompatibilityViolated,
    FiniteGroup,
    GroupAction,
    GroupMap,
    MatchedPair,
    NoIdentity,
    NotAssociative,
    NotLatinSquare,
    NotPrime,
    Subgroup,
    automorphism_group,
    bicrossed_product,
    cyclic_group,
    direct_product,
    elementary_abelian,
    exact_factorization,
    find_complements,
    group_from_table,
    holomorph,
    is_transitive,
    matched_pair_from_factorization,
    semidirect_product,
    stabilizer,
    subgroup_generated,
)

# Oracle: the order-6 nonabelian group built longhand, (i,j)*(k,l) with the
# sign twist applied by hand.  Index (i,j) -> 2i + j.
def _s3_by_hand():
    table = np.zeros((6, 6), dtype=np.int32)
    for i in range(3):
        for j in range(2):
            for k in range(3):
                for l in range(2):
                    ii = (i + (k if j == 0 else -k)) % 3
                    table[2 * i + j, 2 * k + l] = 2 * ii + (j + l) % 2
    return table


def s3():
    return semidirect_product(cyclic_group(3), cyclic_group(2),
                              np.array([[0, 1, 2], [0, 2, 1]], dtype=np.int32))


def test_two_element_table_is_a_group():
    G = FiniteGroup(np.array([[0, 1], [1, 0]]))
    assert G.order == 2
    assert G.inverse(1) == 1


def test_mod3_table_is_cyclic():
    table = [[(i + j) % 3 for j in range(3)] for i in range(3)]
    G = FiniteGroup(np.array(table))
    assert G.order == 3
    assert list(G.table[1]) == [1, 2, 0]


def test_constant_row_rejected():
    with pytest.raises(NotLatinSquare):
        FiniteGroup(np.array([[0, 1], [1, 1]]))


def test_no_identity_rejected():
    # Latin, but only a one-sided identity: subtraction mod 3.
    table = [[(i - j) % 3 for j in range(3)] for i in range(3)]
    with pytest.raises(NoIdentity):
        group_from_table(3, table)


def test_nonassociative_loop_rejected():
    # Smallest nonassociative loop: (1*1)*2 = 2 but 1*(1*2) = 4.
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 3, 4, 0, 1],
        [3, 4, 1, 2, 0],
        [4, 2, 0, 1, 3],
    ]
    with pytest.raises(NotAssociative):
        group_from_table(5, table)


def test_cyclic_group_small():
    assert cyclic_group(1).order == 1
    assert list(cyclic_group(3).table[1]) == [1, 2, 0]
    G = cyclic_group(10)
    assert G.order == 10 and G.is_abelian


def test_cyclic_element_orders_against_naive_powers():
    G = cyclic_group(12)
    for x in range(12):
        acc, k = x, 1
        while acc != 0:
            acc = G.mul(acc, x)
            k += 1
        assert G.element_orders[x] == k


def test_elementary_abelian():
    assert elementary_abelian(2, 1).order == 2
    G = elementary_abelian(2, 3)
    assert G.order == 8
    assert all(G.element_orders[x] == 2 for x in range(1, 8))
    with pytest.raises(NotPrime):
        elementary_abelian(4, 1)


def test_semidirect_trivial_alpha_is_direct_product():
    H, S = cyclic_group(3), cyclic_group(4)
    alpha = np.tile(np.arange(3, dtype=np.int32), (4, 1))
    assert np.array_equal(semidirect_product(H, S, alpha).table,
                          direct_product(H, S).table)


def test_semidirect_matches_hand_table():
    assert np.array_equal(s3().table, _s3_by_hand())
    # (1,0).(1,1) = (2,1): indices 2 . 3 = 5
    assert s3().table[2, 3] == 5


def test_order60_presentation():
    # x of order 15; y, z of order 2, both inverting x.
    m = 15
    flip = (-np.arange(m, dtype=np.int32)) % m
    alpha = np.stack([np.arange(m, dtype=np.int32), flip, flip,
                      np.arange(m, dtype=np.int32)])
    G = semidirect_product(cyclic_group(m), elementary_abelian(2, 2), alpha)
    assert G.order == 60
    x, y, z = 4, 1, 2
    assert G.element_orders[x] == 15
    assert G.element_orders[y] == 2 and G.element_orders[z] == 2
    assert G.conjugate(x, y) == G.inverse(x)
    assert G.conjugate(x, z) == G.inverse(x)
    assert G.mul(y, z) == G.mul(z, y)


def test_opposite_and_power():
    G = s3()
    op = G.opposite()
    assert np.array_equal(op.table, G.table.T)
    rng = random.Random(0)
    for _ in range(50):
        x = rng.randrange(6)
        k = rng.randrange(-6, 7)
        acc = 0
        step = x if k >= 0 else G.inverse(x)
        for _ in range(abs(k)):
            acc = G.mul(acc, step)
        assert G.power(x, k) == acc


def test_automorphism_counts():
    for G, expected in [(cyclic_group(4), 2), (cyclic_group(10), 4),
                        (s3(), 6)]:
        aut, maps = automorphism_group(G)
        assert aut.order == expected == len(maps)
    aut, maps = automorphism_group(elementary_abelian(2, 3), cap=168)
    assert aut.order == 168


def test_automorphism_order_and_identity_slot():
    _, maps = automorphism_group(cyclic_group(10))
    images = [m.images for m in maps]
    assert images[0] == tuple(range(10))
    assert images == sorted(images)


def test_automorphism_cap():
    with pytest.raises(CapExceeded):
        automorphism_group(elementary_abelian(2, 3), cap=4)


def test_holomorph_orders():
    hol2, _ = holomorph(cyclic_group(2))
    assert hol2.order == 2
    hol3, act3 = holomorph(cyclic_group(3))
    assert hol3.order == 6 and is_transitive(act3)
    hol8, act8 = holomorph(elementary_abelian(2, 3), cap=168)
    assert hol8.order == 1344
    assert is_transitive(act8)
    assert len(hol8.aut_maps) == 168


def test_subgroup_generated():
    G = cyclic_group(10)
    assert subgroup_generated(G, []).elements == (0,)
    assert subgroup_generated(G, [2]).elements == (0, 2, 4, 6, 8)


def test_subgroup_validation():
    G = s3()
    with pytest.raises(ValueError):
        Subgroup(G, (0, 1, 2))  # not closed
    sub = Subgroup(G, (0, 2, 4))
    assert sub.as_group().order == 3


def test_stabilizer_of_regular_action_is_trivial():
    G = s3()
    act = GroupAction(G, G.table)
    assert stabilizer(act, 0).elements == (0,)
    assert is_transitive(act)


def test_trivial_action_not_transitive():
    G = cyclic_group(2)
    act = GroupAction(G, np.array([[0, 1], [0, 1]], dtype=np.int32))
    assert not is_transitive(act)


def test_find_complements_of_trivial_subgroup():
    G = s3()
    comps = find_complements(G, Subgroup(G, (0,)))
    assert [c.elements for c in comps] == [tuple(range(6))]


def test_find_complements_in_s3():
    G = s3()
    refl = Subgroup(G, (0, 1))
    comps = find_complements(G, refl)
    assert [c.elements for c in comps] == [(0, 2, 4)]


def test_exact_factorization():
    G = s3()
    whole = Subgroup(G, tuple(range(6)))
    trivial = Subgroup(G, (0,))
    rot = Subgroup(G, (0, 2, 4))
    assert exact_factorization(G, whole, trivial)
    assert not exact_factorization(G, rot, rot)
    assert exact_factorization(G, rot, Subgroup(G, (0, 1)))


def test_matched_pair_of_order6_group():
    G = s3()
    H = Subgroup(G, (0, 2, 4))
    S = Subgroup(G, (0, 1))
    mp = matched_pair_from_factorization(G, H, S)
    # s.h is inversion for the reflection, s^h is always s.
    assert np.array_equal(mp.left, np.array([[0, 1, 2], [0, 2, 1]]))
    assert np.array_equal(mp.right, np.array([[0, 0, 0], [1, 1, 1]]))


def test_matched_pair_rejects_broken_compat():
    G = s3()
    mp = matched_pair_from_factorization(G, Subgroup(G, (0, 2, 4)),
                                         Subgroup(G, (0, 1)))
    bad = mp.right.copy()
    bad[1] = [1, 0, 0]  # s^(h*k) = (s^h)^k now fails at h=1, k=2
    with pytest.raises(CompatibilityViolated):
        MatchedPair(mp.H, mp.S, mp.left, bad)


def test_bicrossed_product_rebuilds_the_group():
    G = s3()
    H = Subgroup(G, (0, 2, 4))
    S = Subgroup(G, (0, 1))
    mp = matched_pair_from_factorization(G, H, S)
    prod = bicrossed_product(mp)
    assert prod.order == 6
    # (h, s) -> h * s is an isomorphism back onto G.
    images = tuple(int(G.table[H.elements[i // 2], S.elements[i % 2]])
                   for i in range(6))
    iso = GroupMap(prod, G, images)
    assert iso.is_bijective


def test_bicrossed_product_trivial_actions():
    H, S = cyclic_group(3), cyclic_group(2)
    left = np.tile(np.arange(3, dtype=np.int32), (2, 1))
    right = np.tile(np.arange(2, dtype=np.int32), (3, 1)).T
    mp = MatchedPair(H, S, left, right)
    assert np.array_equal(bicrossed_product(mp).table, direct_product(H, S).table)


def test_group_map_rejects_non_homomorphism():
    G = cyclic_group(4)
    with pytest.raises(ValueError):
        GroupMap(G, G, (0, 2, 1, 3))


def test_random_relabelled_tables_stay_groups():
    rng = random.Random(7)
    for _ in range(20):
        base = [cyclic_group(6), s3(), elementary_abelian(2, 3)][rng.randrange(3)]
        n = base.order
        tail = list(range(1, n))
        rng.shuffle(tail)
        perm = np.array([0] + tail, dtype=np.int32)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(n, dtype=np.int32)
        table = perm[base.table[np.ix_(inv, inv)]]
        G = FiniteGroup(table)
        assert sorted(G.element_orders) == sorted(base.element_orders)
