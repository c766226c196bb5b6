import numpy as np
import pytest
from hypothesis import given, strategies as st

from twodesc.catalog import actions_on_group, h1_fixtures, small_groups
from twodesc.groups import (GroupAction, centralizer, conjugacy_classes, cyclic, homomorphisms,
                            symmetric, trivial_action)
from twodesc.oracles import compare_with_descent, h1
from twodesc.report import OverBudget


def test_fixture_table():
    fx = h1_fixtures()
    expected = {
        "(Z2, Z3 inversion)": (1, [1]),
        "(Z2, Z2 trivial)": (2, [2, 2]),
        "(Z3, Z3 trivial)": (3, [3, 3, 3]),
        "(Z2, S3 trivial)": (2, [2, 6]),
    }
    assert set(fx) == set(expected)
    for name, action in fx.items():
        cs = h1(action.gamma, action.group, action)
        n, stabs = expected[name]
        assert cs.n_classes == n
        assert sorted(s.size for s in cs.stabilizers) == stabs
        rep = compare_with_descent(action.gamma, action.group, action)
        assert rep.ok and sorted(rep.aut_orders) == stabs, rep.message


def test_s3_classes_are_involution_classes_plus_identity():
    s3 = symmetric(3)
    cs = h1(cyclic(2), s3, trivial_action(cyclic(2), s3))
    involutions = [c for c in conjugacy_classes(s3)
                   if c.size and s3.table[c[0], c[0]] == s3.identity and c[0] != s3.identity]
    assert cs.n_classes == len(involutions) + 1
    for z, st_ in zip(cs.representatives, cs.stabilizers):
        assert sorted(st_.tolist()) == sorted(centralizer(s3, int(z[1])).tolist())


@pytest.mark.parametrize("gamma", [cyclic(2), cyclic(3), cyclic(4)])
def test_trivial_action_counts_homs_up_to_conjugacy(gamma):
    for a in small_groups(6):
        homs = homomorphisms(gamma, a)
        seen = set()
        for phi in homs:
            orbit = min(tuple(a.table[a.table[a.inverse[b], phi], b].tolist()) for b in range(a.order))
            seen.add(orbit)
        cs = h1(gamma, a, trivial_action(gamma, a))
        assert cs.n_classes == len(seen), a.name
        assert cs.cocycles.shape[0] == len(homs)


def test_cocycle_condition_holds():
    z2, z3 = cyclic(2), cyclic(3)
    action = GroupAction(z2, z3, np.array([[0, 1, 2], [0, 2, 1]]))
    cs = h1(z2, z3, action)
    r = np.asarray(action.auts)[z2.inverse]
    for z in cs.cocycles:
        for t in range(2):
            for s in range(2):
                assert z[z2.table[t, s]] == z3.table[z[s], r[s][z[t]]]


def test_size_cap():
    with pytest.raises(OverBudget):
        h1(cyclic(8), small_groups(8)[-1], trivial_action(cyclic(8), small_groups(8)[-1]))


@given(st.data())
def test_descent_matches_h1_on_random_actions(data):
    gamma = data.draw(st.sampled_from([cyclic(2), cyclic(3)]))
    a = data.draw(st.sampled_from(small_groups(8)))
    actions = actions_on_group(gamma, a)
    action = data.draw(st.sampled_from(actions))
    rep = compare_with_descent(gamma, a, action)
    assert rep.ok, rep.message
