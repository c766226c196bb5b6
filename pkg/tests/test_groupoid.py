import numpy as np
import pytest
from hypothesis import given, strategies as st

from twodesc.catalog import B, small_groupoids
from twodesc.groupoid import (FiniteGroupoid, GroupoidFunctor, NatIso, codiscrete, compose_functors,
                              discrete, disjoint_union, empty_groupoid, groupoid_from_table,
                              hcompose, identity_functor, identity_natiso, inverse, left_whisker,
                              natural_transformations, naturality_mask, naturality_violation,
                              power, product, relabel, right_whisker, terminal, validate_functor,
                              validate_groupoid, validate_natiso, vcompose)
from twodesc.groups import cyclic, klein_four, symmetric
from twodesc.report import StructuralError


def _with(g, **tables):
    fields = dict(n_objects=g.n_objects, src=g.src, tgt=g.tgt, comp=g.comp, ident=g.ident, inv=g.inv)
    fields.update(tables)
    return FiniteGroupoid(**fields)


@pytest.mark.parametrize("g", [terminal(), empty_groupoid(), discrete(3), codiscrete(3),
                               B(symmetric(3)), product([codiscrete(2), B(cyclic(3))]),
                               power(B(cyclic(2)), 3),
                               disjoint_union([B(cyclic(2)), codiscrete(2)])[0]])
def test_constructions_validate(g):
    assert validate_groupoid(g)


def test_sizes():
    assert codiscrete(3).n_morphisms == 9
    assert power(codiscrete(2), 2).n_objects == 4
    g, incs = disjoint_union([B(cyclic(3)), discrete(2)])
    assert (g.n_objects, g.n_morphisms) == (3, 5)
    assert all(validate_functor(f) for f in incs)
    assert g.n_components == 3


def test_corrupted_composition_names_axiom():
    g = B(cyclic(3))
    comp = g.comp.copy()
    comp[1, 1] = 0
    r = validate_groupoid(_with(g, comp=comp))
    assert not r and r.axiom == "associativity"


def test_bad_identity_and_inverse():
    g = B(cyclic(3))
    r = validate_groupoid(_with(g, ident=np.array([1])))
    assert not r and "ident" in r.axiom
    r = validate_groupoid(_with(g, inv=np.array([0, 1, 2])))
    assert not r and "inverse" in r.axiom


def test_out_of_range_is_structural():
    g = B(cyclic(2))
    comp = g.comp.copy()
    comp[0, 0] = 7
    with pytest.raises(StructuralError):
        validate_groupoid(_with(g, comp=comp))
    with pytest.raises(StructuralError):
        validate_groupoid(FiniteGroupoid(1, [0, 0], [0, 0], [[0, 1]], [0], [0, 1]))


def test_groupoid_from_table_infers_structure():
    g = B(symmetric(3))
    h = groupoid_from_table(g.n_objects, g.src, g.tgt, g.comp)
    assert h == g


def test_relabel_gives_isomorphic_copy(rng):
    g = product([codiscrete(2), B(cyclic(2))])
    op = rng.permutation(g.n_objects)
    mp = rng.permutation(g.n_morphisms)
    h, f = relabel(g, op, mp)
    assert validate_groupoid(h) and validate_functor(f)


def test_functor_validation_detects_broken_composition():
    g = B(cyclic(3))
    f = GroupoidFunctor(g, g, [0], [0, 2, 2])
    r = validate_functor(f)
    assert not r and r.axiom == "functor-composition"


def test_whiskering_and_interchange():
    g = B(symmetric(3))
    # inner automorphisms give functors; components are conjugating elements
    conj = [GroupoidFunctor(g, g, [0], g.comp[g.comp[c, np.arange(6)], g.inv[c]]) for c in range(6)]
    F, G = conj[1], conj[3]
    a = natural_transformations(identity_functor(g), F)[0]
    b = natural_transformations(F, compose_functors(G, F))[0]
    assert validate_natiso(vcompose(b, a))
    assert validate_natiso(left_whisker(G, a)) and validate_natiso(right_whisker(a, G))
    c = natural_transformations(identity_functor(g), G)[0]
    # (c * a) both ways round
    h1 = hcompose(c, a)
    h2 = vcompose(right_whisker(c, F), left_whisker(identity_functor(g), a))
    assert np.array_equal(h1.components, h2.components)
    assert np.array_equal(vcompose(inverse(a), a).components, identity_natiso(identity_functor(g)).components)


@pytest.mark.parametrize("a,expected", [(cyclic(3), 3), (symmetric(3), 1), (klein_four(), 4)])
def test_automorphisms_of_identity_are_the_center(a, expected):
    f = identity_functor(B(a))
    assert len(natural_transformations(f, f)) == expected


def test_naturality_violation_located():
    g = B(cyclic(3))
    f = identity_functor(g)
    flip = GroupoidFunctor(g, g, [0], [0, 2, 1])
    a = NatIso(f, flip, np.array([0]))
    assert naturality_violation(a) == 1
    assert not validate_natiso(a)


def _closure(g, gens):
    reach = np.zeros(g.n_morphisms, dtype=bool)
    reach[g.ident] = True
    reach[gens] = True
    reach[g.inv[gens]] = True
    while True:
        a, b = g.composable_pairs
        sel = reach[a] & reach[b]
        grown = reach.copy()
        grown[g.comp[a[sel], b[sel]]] = True
        if grown.sum() == reach.sum():
            return reach
        reach = grown


@pytest.mark.parametrize("name", ["B(Q8)", "B(V4)+B(V4)", "codiscrete2xB(C2)", "B(C2xC4)"])
def test_generating_morphisms_generate(name):
    g = small_groupoids()[name]
    for h in (g, power(g, 2)):
        assert _closure(h, h.generating_morphisms).all()


@given(st.integers(0, 2 ** 32 - 1))
def test_naturality_mask_matches_full_check(seed):
    rng = np.random.default_rng(seed)
    g = product([codiscrete(2), B(cyclic(2))])
    f = identity_functor(g)
    rows = np.stack([np.array([rng.choice(g.hom(x, x)) for x in range(g.n_objects)])
                     for _ in range(16)])
    mask = naturality_mask(rows, f, f)
    full = [naturality_violation(NatIso(f, f, r)) < 0 for r in rows]
    assert mask.tolist() == full


@given(st.lists(st.sampled_from(["C2", "C3", "S3", "V4"]), min_size=1, max_size=3),
       st.integers(1, 3))
def test_random_products_validate(names, n):
    from twodesc.catalog import fixture_groups
    fg = {"C2": cyclic(2), "C3": cyclic(3), "S3": symmetric(3), "V4": fixture_groups()["Z2xZ2"]}
    parts = [B(fg[x]) for x in names[:2]] + [codiscrete(n)]
    g = product(parts)
    assert validate_groupoid(g)
    assert g.n_components == 1
