import numpy as np
import pytest
from hypothesis import given, strategies as st

from twodesc.catalog import random_weak_action
from twodesc.groupoid import NatIso, codiscrete, identity_functor
from twodesc.groups import GroupAction, cyclic, symmetric, trivial_action
from twodesc.oracles import naive_weak_action_ok
from twodesc.report import StructuralError
from twodesc.weak_action import (action_from_tables, action_on_one_object, coboundary_cochain,
                                 permutation_action, random_conjugator, regular_permutations,
                                 strict_action, transport_action, twist_by_cochain,
                                 validate_weak_action)


def test_inversion_on_bz3():
    z2, z3 = cyclic(2), cyclic(3)
    w = action_on_one_object(GroupAction(z2, z3, np.array([[0, 1, 2], [0, 2, 1]])))
    assert validate_weak_action(w)


def test_regular_permutation_action_on_codiscrete(groups):
    s3 = groups["S3"]
    w = permutation_action(s3, regular_permutations(s3), "codiscrete")
    assert validate_weak_action(w)
    assert w.groupoid.n_objects == 6


def test_identity_functors_form_strict_action():
    g = codiscrete(2)
    w = strict_action(cyclic(3), [identity_functor(g)] * 3)
    assert validate_weak_action(w)


def _perturb_component(table, pos, g):
    flat = table.reshape(-1).copy()
    m = flat[pos]
    auts = g.automorphisms(int(g.tgt[m]))
    flat[pos] = g.comp[auts[auts != g.ident[g.tgt[m]]][0], m]
    return flat.reshape(table.shape)


def test_alpha_fault_names_an_axiom():
    z2, z3 = cyclic(2), cyclic(3)
    w = action_on_one_object(trivial_action(z2, z3))
    mu_obj, mu_mor, alpha, beta = w.tables()
    # alpha[1][0] is pinned by the unit laws; alpha[1][1] may carry any central value
    bad = action_from_tables(z2, w.groupoid, mu_obj, mu_mor, _perturb_component(alpha, 2, w.groupoid),
                             beta)
    r = validate_weak_action(bad)
    assert not r and r.axiom in ("associativity", "unit-left")
    ok = action_from_tables(z2, w.groupoid, mu_obj, mu_mor, _perturb_component(alpha, 3, w.groupoid),
                            beta)
    assert validate_weak_action(ok)


def test_beta_fault_breaks_units():
    z2, z3 = cyclic(2), cyclic(3)
    w = action_on_one_object(trivial_action(z2, z3))
    mu_obj, mu_mor, alpha, beta = w.tables()
    bad = action_from_tables(z2, w.groupoid, mu_obj, mu_mor, alpha, np.array([1]))
    r = validate_weak_action(bad)
    assert not r and r.axiom.startswith("unit")


def test_alpha_shape_mismatch_is_structural():
    w = action_on_one_object(trivial_action(cyclic(2), cyclic(3)))
    mu_obj, mu_mor, alpha, beta = w.tables()
    with pytest.raises(StructuralError):
        action_from_tables(w.gamma, w.groupoid, mu_obj, mu_mor, alpha[:1], beta)


def test_central_twist_is_genuinely_weak():
    z2, z4 = cyclic(2), cyclic(4)
    w = action_on_one_object(trivial_action(z2, z4))
    cochain = np.zeros((2, 2, 1), dtype=np.int64)
    cochain[1, 1, 0] = 2
    tw = twist_by_cochain(w, cochain)
    assert tw is not None and validate_weak_action(tw)
    assert tw.alpha[1][1].components.tolist() == [2]
    # a non-central twist of a nonabelian group breaks naturality
    s3 = symmetric(3)
    w = action_on_one_object(trivial_action(z2, s3))
    cochain = np.zeros((2, 2, 1), dtype=np.int64)
    cochain[1, 1, 0] = 3
    assert twist_by_cochain(w, cochain) is None


def test_coboundary_twist_equals_transport(rng):
    z3 = cyclic(3)
    w = action_on_one_object(trivial_action(z3, cyclic(6)))
    u = [NatIso(f, f, np.array([int(rng.integers(6))])) for f in w.mu]
    tw = twist_by_cochain(w, coboundary_cochain(w, u))
    assert tw is not None and validate_weak_action(tw)


@given(st.integers(0, 2 ** 32 - 1))
def test_transport_preserves_validity(seed):
    rng = np.random.default_rng(seed)
    w = action_on_one_object(trivial_action(cyclic(2), symmetric(3)))
    theta = [random_conjugator(f, rng) for f in w.mu]
    assert validate_weak_action(transport_action(w, theta))


@given(st.integers(0, 2 ** 32 - 1), st.sampled_from(["Z2", "Z3", "Z2xZ2", "S3"]),
       st.sampled_from(["strict", "transport", "twist", "both"]))
def test_validator_agrees_with_naive_oracle(groups, seed, gname, mode):
    rng = np.random.default_rng(seed)
    w = random_weak_action(groups[gname], rng, mode)
    mu_obj, mu_mor, alpha, beta = w.tables()
    assert bool(validate_weak_action(w)) == naive_weak_action_ok(w.gamma, w.groupoid, mu_obj, mu_mor,
                                                                alpha, beta)
    # and after perturbing one alpha component
    pos = int(rng.integers(alpha.size))
    bad = _perturb_component(alpha, pos, w.groupoid) if w.groupoid.automorphisms(
        int(w.groupoid.tgt[alpha.reshape(-1)[pos]])).size > 1 else alpha
    w2 = action_from_tables(w.gamma, w.groupoid, mu_obj, mu_mor, bad, beta)
    assert bool(validate_weak_action(w2)) == naive_weak_action_ok(w.gamma, w.groupoid, mu_obj,
                                                                 mu_mor, bad, beta)
