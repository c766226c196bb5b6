import numpy as np
import pytest

from twodesc.catalog import dihedral8, group_automorphisms, quaternion8, small_groups
from twodesc.groups import (FiniteGroup, GroupAction, action_from_generator_images, center, centralizer,
                            conjugacy_classes, cyclic, direct_product, find_isomorphism,
                            generators, homomorphisms, is_homomorphism, klein_four, subgroup,
                            symmetric, trivial_action, validate_action, validate_group)


def test_small_groups_are_pairwise_non_isomorphic():
    gs = small_groups(8)
    assert len(gs) == 14
    assert all(validate_group(g) for g in gs)
    for i, a in enumerate(gs):
        for b in gs[i + 1:]:
            if a.order == b.order:
                assert find_isomorphism(a, b) is None, (a.name, b.name)


def test_d8_and_q8_differ_in_involutions():
    def involutions(g):
        return int(np.sum((g.table[np.arange(g.order), np.arange(g.order)] == g.identity))) - 1
    assert involutions(dihedral8()) == 5
    assert involutions(quaternion8()) == 1


@pytest.mark.parametrize("src,dst,count", [
    (cyclic(2), symmetric(3), 4),
    (cyclic(3), cyclic(3), 3),
    (klein_four(), cyclic(2), 4),
    (symmetric(3), cyclic(2), 2),
    (cyclic(4), klein_four(), 4),
])
def test_homomorphism_counts(src, dst, count):
    homs = homomorphisms(src, dst)
    assert len(homs) == count
    assert all(is_homomorphism(src, dst, h) for h in homs)


def test_conjugacy_and_centralizers_in_s3():
    s3 = symmetric(3)
    assert sorted(c.size for c in conjugacy_classes(s3)) == [1, 2, 3]
    assert center(s3).tolist() == [s3.identity]
    sizes = sorted(centralizer(s3, a).size for a in range(6))
    assert sizes == [2, 2, 2, 3, 3, 6]


@pytest.mark.parametrize("g,n_aut,n_gens", [(cyclic(6), 2, 1), (klein_four(), 6, 2),
                                             (symmetric(3), 6, 2), (quaternion8(), 24, 2),
                                             (dihedral8(), 8, 2)])
def test_automorphism_group_orders(g, n_aut, n_gens):
    assert len(group_automorphisms(g)) == n_aut
    assert len(generators(g)) <= n_gens


def test_subgroup_and_products():
    g = direct_product(cyclic(2), cyclic(4))
    assert g.order == 8 and validate_group(g)
    h, elems = subgroup(g, [g.identity])
    assert h.order == 1 and elems.tolist() == [g.identity]


def test_corrupted_table_fails():
    g = cyclic(3)
    t = g.table.copy()
    t[1, 1], t[1, 2] = t[1, 2], t[1, 1]
    assert not validate_group(FiniteGroup(t, g.identity, g.inverse))


def test_actions_validate():
    z2, z3 = cyclic(2), cyclic(3)
    inv = action_from_generator_images(z2, z3, {1: np.array([0, 2, 1])})
    assert validate_action(inv)
    assert validate_action(trivial_action(z2, symmetric(3)))
    # swapping two elements of Z/4 is not an automorphism
    z4 = cyclic(4)
    bogus = GroupAction(z2, z4, np.array([[0, 1, 2, 3], [0, 2, 1, 3]]))
    assert not validate_action(bogus)
