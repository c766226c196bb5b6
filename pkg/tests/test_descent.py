import itertools

import numpy as np
import pytest

from twodesc.catalog import B, roundtrip_catalog, small_groupoids
from twodesc.descent import (_aut_table, _local_batch, _local_eta_families, base_change_torsor,
                             base_changed_morphism, coherent_families, descend, descend_morphism,
                             functor_classes, hom_descent_check, local_functor, roundtrip_check)
from twodesc.descent_data import (action_to_descent, descent_morphism_from_tables,
                                  descent_morphism_mask, galois_from_tables,
                                  identity_descent_morphism, unit_descent_morphism,
                                  validate_descent_morphism, validate_galois_datum)
from twodesc.equivalence import are_equivalent, functor_is_equivalence, skeleton
from twodesc.groupoid import (codiscrete, discrete, natural_transformations, validate_functor,
                              validate_groupoid)
from twodesc.groups import GroupAction, cyclic, klein_four, symmetric
from twodesc.oracles import involution_pairs
from twodesc.report import InvalidInput
from twodesc.weak_action import action_on_one_object


def _on_group(gamma, a, auts):
    return action_to_descent(action_on_one_object(GroupAction(gamma, a, np.asarray(auts))))


def test_trivial_gamma_returns_the_groupoid():
    c1, z3 = cyclic(1), cyclic(3)
    D = descend(_on_group(c1, z3, [[0, 1, 2]]))
    assert are_equivalent(D.groupoid, B(z3)) is not None
    assert skeleton(D.groupoid).class_sizes == [3]


@pytest.mark.parametrize("auts,a,sizes", [
    ([[0, 1, 2], [0, 2, 1]], cyclic(3), [1]),
    ([[0, 1], [0, 1]], cyclic(2), [2, 2]),
])
def test_z2_class_counts(auts, a, sizes):
    D = descend(_on_group(cyclic(2), a, auts))
    assert sorted(skeleton(D.groupoid).class_sizes) == sizes


def test_descended_groupoid_and_forgetful_functor(corpus):
    for w in corpus[:15]:
        D = descend(action_to_descent(w))
        assert validate_groupoid(D.groupoid)
        F = D.forgetful
        assert validate_functor(F)
        # faithful: distinct morphisms between the same pairs stay distinct
        g = D.groupoid
        key = np.stack([g.src, g.tgt, D.under], axis=1)
        assert np.unique(key, axis=0).shape[0] == g.n_morphisms


def test_output_is_deterministic(corpus):
    d = action_to_descent(corpus[5])
    a, b = descend(d), descend(d)
    assert a.groupoid == b.groupoid and np.array_equal(a.phi, b.phi)
    xs, fams = coherent_families(d)
    keys = [(int(x),) + tuple(r) for x, r in zip(xs, fams.tolist())]
    assert keys == sorted(keys)


def test_z2_objects_match_involution_pairs(z2_fixtures):
    for name, w in z2_fixtures.items():
        d = action_to_descent(w)
        D = descend(d)
        mu_obj, mu_mor, alpha, _ = w.tables()
        # f_1 = mu(1) and the composite through f_1 f_1 lands back on x via alpha[1][1]
        pairs = involution_pairs(w.groupoid, mu_obj[1], mu_mor[1], alpha[1][1])
        got = sorted(zip(D.base.tolist(), D.phi[:, 1].tolist()))
        assert got == sorted(pairs), name


def test_invalid_datum_raises():
    d = _on_group(cyclic(2), cyclic(3), [[0, 1, 2], [0, 2, 1]])
    f_obj, f_mor, psi = d.tables()
    psi = psi.copy()
    psi[1, 1, 0] = 1
    bad = galois_from_tables(d.gamma, d.groupoid, f_obj, f_mor, psi)
    assert not validate_galois_datum(bad)
    with pytest.raises(InvalidInput):
        descend(bad)


def test_unit_morphism_descends_to_an_equivalence(corpus):
    for w in corpus[:10]:
        d = action_to_descent(w)
        F = descend_morphism(unit_descent_morphism(w, d))
        assert validate_functor(F) and functor_is_equivalence(F)


def test_swap_eta_exchanges_the_two_classes():
    z2 = cyclic(2)
    d = _on_group(z2, z2, [[0, 1], [0, 1]])
    m = identity_descent_morphism(d)
    swap = descent_morphism_from_tables(d, d, m.functor.obj, m.functor.mor, np.array([[0], [1]]))
    D = descend(d)
    F = descend_morphism(swap, D, D)
    assert F.obj.tolist() == [1, 0]
    assert descend_morphism(m, D, D).obj.tolist() == [0, 1]


@pytest.mark.parametrize("gname", ["Z2", "Z3"])
def test_roundtrip_small(groups, gname):
    for name, h in list(roundtrip_catalog().items())[:6]:
        w = roundtrip_check(h, groups[gname])
        assert w is not None and w.verify(), name


def test_base_change_validates(groups):
    for g in ("Z2", "Z3", "Z2xZ2"):
        assert validate_galois_datum(base_change_torsor(B(cyclic(2)), groups[g]))


def test_functor_classes_count():
    # Hom(Z2, S3) / conjugation = {trivial, one involution class}
    assert len(functor_classes(B(cyclic(2)), B(symmetric(3)))) == 2
    # into a disjoint union, each component picks a target component
    assert len(functor_classes(discrete(2), discrete(3))) == 9
    assert len(functor_classes(codiscrete(2), B(cyclic(3)))) == 1


def _brute_eta_families(gamma, h1, h2, u):
    """All local η families on u^Γ that pass the full validator, by exhaustive listing."""
    d1, d2 = base_change_torsor(h1, gamma), base_change_torsor(h2, gamma)
    F = local_functor(d1, d2, [u] * gamma.order)
    auts = natural_transformations(u, u)
    comps = np.stack([a.components for a in auts])
    k, na = gamma.order, len(auts)
    fams = np.array(list(itertools.product(range(na), repeat=k * k))).reshape(-1, k, k)
    etas = np.stack([_local_batch(fams[:, s, :], comps, h1, h2, shift=gamma.table[s])
                     for s in range(k)], axis=1)
    ok = descent_morphism_mask(d1, d2, F, etas)
    return {tuple(f.ravel()) for f in fams[ok]}, comps


@pytest.mark.parametrize("gamma,h1,h2", [
    (cyclic(2), B(cyclic(2)), B(cyclic(2))),
    (cyclic(2), B(cyclic(2)), B(klein_four())),
    (cyclic(3), B(cyclic(3)), B(cyclic(3))),
    (cyclic(2), discrete(2), B(cyclic(3))),
])
def test_eta_family_search_matches_brute_force(gamma, h1, h2):
    for u in functor_classes(h1, h2):
        brute, comps = _brute_eta_families(gamma, h1, h2, u)
        mult, _ = _aut_table(comps, h2)
        found = {tuple(f.ravel()) for f in _local_eta_families(gamma, mult)}
        assert found == brute


def test_base_changed_morphism_validates():
    z2 = cyclic(2)
    h1, h2 = B(cyclic(2)), B(klein_four())
    d1, d2 = base_change_torsor(h1, z2), base_change_torsor(h2, z2)
    for u in functor_classes(h1, h2):
        assert validate_descent_morphism(base_changed_morphism(d1, d2, u))


@pytest.mark.parametrize("a,b", [("B(C2)", "B(S3)"), ("B(V4)", "B(C4)"), ("codiscrete2xB(C2)", "B(C2)"),
                                 ("B(C1)+B(C2)", "B(C2)+B(C3)"), ("empty", "B(C3)"), ("B(C3)", "empty")])
def test_hom_descent_pairs(a, b):
    gs = small_groupoids()
    r = hom_descent_check(gs[a], gs[b])
    assert r.decided and r.ok, str(r)


def test_hom_descent_over_z3():
    r = hom_descent_check(B(cyclic(2)), B(symmetric(3)), gamma=cyclic(3))
    assert r.ok, str(r)


def test_hom_descent_refuses_large_inputs():
    r = hom_descent_check(codiscrete(3), B(cyclic(2)))
    assert not r.decided and "exceeds" in r.reason
