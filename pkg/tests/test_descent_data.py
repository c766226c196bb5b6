import numpy as np
import pytest
from hypothesis import given, strategies as st

from twodesc.catalog import random_weak_action, weak_action_corpus
from twodesc.descent_data import (action_to_descent, compose_descent_morphisms, cover_to_galois,
                                  descent_2morphism_mask, descent_morphism_from_tables,
                                  descent_morphism_mask, galois_from_tables, galois_to_cover,
                                  identity_descent_morphism, overlap_tables, unit_descent_morphism,
                                  validate_cover_datum, validate_descent_2morphism,
                                  validate_descent_morphism, validate_galois_datum)
from twodesc.groupoid import NatIso, discrete, identity_functor, natural_transformations
from twodesc.groups import GroupAction, cyclic, trivial_action
from twodesc.oracles import naive_galois_ok, naive_morphism_ok
from twodesc.report import InvalidInput, StructuralError
from twodesc.weak_action import action_from_tables, action_on_one_object


def _bump(g, table, pos):
    """Compose the entry at ``pos`` with a non-identity automorphism of its source, if any."""
    flat = table.reshape(-1).copy()
    m = flat[pos]
    x = int(g.src[m])
    auts = g.automorphisms(x)
    auts = auts[auts != g.ident[x]]
    if auts.size == 0:
        return None
    flat[pos] = g.comp[m, auts[0]]
    return flat.reshape(table.shape)


@pytest.fixture(scope="module")
def data():
    return [action_to_descent(w) for w in weak_action_corpus(24, seed=11)]


def test_corpus_data_validate(data):
    for d in data:
        assert validate_galois_datum(d)
        assert naive_galois_ok(d.gamma, d.groupoid, *d.tables())


def test_invalid_action_is_rejected():
    z2, z3 = cyclic(2), cyclic(3)
    w = action_on_one_object(trivial_action(z2, z3))
    mu_obj, mu_mor, alpha, beta = w.tables()
    bad = action_from_tables(z2, w.groupoid, mu_obj, mu_mor, alpha, np.array([1]))
    with pytest.raises(InvalidInput):
        action_to_descent(bad)


def test_psi_fault_detected_in_both_encodings():
    z2, z3 = cyclic(2), cyclic(3)
    d = action_to_descent(action_on_one_object(GroupAction(z2, z3, np.array([[0, 1, 2], [0, 2, 1]]))))
    f_obj, f_mor, psi = d.tables()
    bad = galois_from_tables(d.gamma, d.groupoid, f_obj, f_mor, _bump(d.groupoid, psi, 3))
    r = validate_galois_datum(bad)
    assert not r and r.axiom == "cocycle"
    rc = validate_cover_datum(galois_to_cover(bad))
    assert not rc and rc.axiom == "tetrahedron"


def test_cover_round_trip_is_exact(data):
    for d in data:
        c = galois_to_cover(d)
        assert validate_cover_datum(c)
        assert cover_to_galois(c) == d
        assert galois_to_cover(cover_to_galois(c)) == c


@given(st.integers(0, 2 ** 32 - 1))
def test_validity_agrees_across_encodings(groups, seed):
    rng = np.random.default_rng(seed)
    gname = ["Z2", "Z3", "Z2xZ2", "S3"][seed % 4]
    d = action_to_descent(random_weak_action(groups[gname], rng, "both"))
    f_obj, f_mor, psi = d.tables()
    new = _bump(d.groupoid, psi, int(rng.integers(psi.size)))
    if new is None:
        return
    bad = galois_from_tables(d.gamma, d.groupoid, f_obj, f_mor, new)
    g_ok = bool(validate_galois_datum(bad))
    assert g_ok == bool(validate_cover_datum(galois_to_cover(bad)))
    assert g_ok == naive_galois_ok(d.gamma, d.groupoid, f_obj, f_mor, new)


def test_non_equivalence_is_rejected():
    # every f[s] collapses discrete(2) onto object 0; all cells are identities
    g = discrete(2)
    z2 = cyclic(2)
    f_obj = np.zeros((2, 2), dtype=np.int64)
    f_mor = np.zeros((2, 2), dtype=np.int64)
    psi = np.zeros((2, 2, 2), dtype=np.int64)
    r = validate_galois_datum(galois_from_tables(z2, g, f_obj, f_mor, psi))
    assert not r and r.axiom == "equivalence"


def test_shape_errors_are_structural():
    d = action_to_descent(action_on_one_object(trivial_action(cyclic(2), cyclic(3))))
    f_obj, f_mor, psi = d.tables()
    with pytest.raises(StructuralError):
        validate_galois_datum(galois_from_tables(d.gamma, d.groupoid, f_obj, f_mor, psi[:1]))


@pytest.mark.parametrize("gname", ["Z2", "Z3", "Z2xZ2", "S3"])
def test_overlap_labels_are_consistent(groups, gname):
    # raises internally if a label depended on the chosen base point
    overlap_tables(groups[gname])


def test_identity_unit_and_composite_morphisms(corpus):
    for w in corpus[:12]:
        d = action_to_descent(w)
        idm = identity_descent_morphism(d)
        unit = unit_descent_morphism(w, d)
        for m in (idm, unit, compose_descent_morphisms(unit, unit),
                  compose_descent_morphisms(idm, unit)):
            assert validate_descent_morphism(m)
            assert naive_morphism_ok(d.gamma, d.groupoid, d.groupoid, d.tables(), d.tables(),
                                     m.functor.obj, m.functor.mor, m.eta_table())


def test_batched_morphism_mask_matches_validator(corpus, rng):
    for w in corpus[:10]:
        d = action_to_descent(w)
        m = identity_descent_morphism(d)
        g = d.groupoid
        base = m.eta_table()
        batch = [base]
        for _ in range(12):
            pos = int(rng.integers(base.size))
            new = _bump(g, base, pos)
            if new is not None:
                batch.append(new)
        batch = np.stack(batch)
        mask = descent_morphism_mask(d, d, m.functor, batch)
        for row, ok in zip(batch, mask):
            mm = descent_morphism_from_tables(d, d, m.functor.obj, m.functor.mor, row)
            assert bool(validate_descent_morphism(mm)) == bool(ok)
        assert mask[0]


def test_eta_fault_names_compatibility():
    z2 = cyclic(2)
    w = action_on_one_object(trivial_action(z2, cyclic(4)))
    d = action_to_descent(w)
    m = identity_descent_morphism(d)
    eta = m.eta_table().copy()
    eta[1, 0] = 1  # η_e must stay the identity
    eta[0, 0] = 1
    r = validate_descent_morphism(descent_morphism_from_tables(d, d, m.functor.obj, m.functor.mor, eta))
    assert not r and r.axiom == "compatibility"


def test_swap_eta_is_a_descent_morphism():
    # on B(Z2) with trivial Z2 action, eta_1 = the generator is a valid cocycle
    z2 = cyclic(2)
    d = action_to_descent(action_on_one_object(trivial_action(z2, z2)))
    m = identity_descent_morphism(d)
    eta = np.array([[0], [1]])
    swap = descent_morphism_from_tables(d, d, m.functor.obj, m.functor.mor, eta)
    assert validate_descent_morphism(swap)


def test_two_morphisms(corpus):
    w = corpus[0]
    d = action_to_descent(w)
    m = identity_descent_morphism(d)
    g = d.groupoid
    ident = NatIso(m.functor, m.functor, g.ident)
    assert validate_descent_2morphism(ident, m, m)
    # every automorphism of the identity functor is tested by the batched mask the same way
    F = identity_functor(g)
    for a in natural_transformations(F, F):
        theta = NatIso(m.functor, m.functor, a.components)
        assert bool(validate_descent_2morphism(theta, m, m)) == bool(
            descent_2morphism_mask(a.components[None], m, m)[0])
