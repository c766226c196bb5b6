"""Named fixtures and random generators of valid weak actions."""

from __future__ import annotations

import itertools

import numpy as np

from .groupoid import (FiniteGroupoid, GroupoidFunctor, codiscrete, discrete, disjoint_union,
                       empty_groupoid, product, terminal)
from .groups import (FiniteGroup, GroupAction, _from_table, as_one_object_groupoid, cyclic,
                     direct_product, homomorphisms, klein_four, permutation_group, symmetric,
                     trivial_action)
from .weak_action import (WeakAction, action_from_tables, action_on_one_object, coboundary_cochain,
                          permutation_action, random_conjugator, random_functor_automorphism,
                          strict_action, transport_action, twist_by_cochain, union_action)

# ---------------------------------------------------------------------------
# groups


def dihedral8() -> FiniteGroup:
    g, _ = permutation_group([(1, 2, 3, 0), (0, 3, 2, 1)], 4, "D8")
    return g


def quaternion8() -> FiniteGroup:
    # regular representation on (1, -1, i, -i, j, -j, k, -k)
    g, _ = permutation_group([(2, 3, 1, 0, 6, 7, 5, 4), (4, 5, 7, 6, 1, 0, 2, 3)], 8, "Q8")
    return g


def small_groups(max_order: int = 8) -> list[FiniteGroup]:
    """One group per isomorphism type of order at most ``max_order`` (≤ 8)."""
    if max_order > 8:
        raise ValueError("only orders up to 8 are tabulated")
    out = [cyclic(n) for n in range(1, max_order + 1)]
    if max_order >= 4:
        out.append(klein_four())
    if max_order >= 6:
        out.append(symmetric(3))
    if max_order >= 8:
        out += [direct_product(cyclic(2), cyclic(4)), direct_product(klein_four(), cyclic(2)),
                dihedral8(), quaternion8()]
    out.sort(key=lambda g: g.order)
    return out


def fixture_groups() -> dict[str, FiniteGroup]:
    """The acting groups used by the acceptance catalog."""
    return {"Z2": cyclic(2), "Z3": cyclic(3), "Z2xZ2": klein_four(), "S3": symmetric(3)}


def group_automorphisms(a: FiniteGroup) -> list[np.ndarray]:
    return homomorphisms(a, a, injective=True)


def actions_on_group(gamma: FiniteGroup, a: FiniteGroup) -> list[GroupAction]:
    """Every action of ``gamma`` on ``a`` by automorphisms."""
    auts = group_automorphisms(a)
    index = {tuple(p.tolist()): i for i, p in enumerate(auts)}
    table = np.array([[index[tuple(p[q].tolist())] for q in auts] for p in auts], dtype=np.int64)
    aut_group = _from_table(table, "Aut")
    out = []
    for hom in homomorphisms(gamma, aut_group):
        out.append(GroupAction(gamma, a, np.stack([auts[i] for i in hom])))
    return out


# ---------------------------------------------------------------------------
# groupoids


def B(a: FiniteGroup) -> FiniteGroupoid:
    return as_one_object_groupoid(a)


def named_groupoids() -> dict[str, FiniteGroupoid]:
    z2, z3 = cyclic(2), cyclic(3)
    return {
        "terminal": terminal(),
        "discrete2": discrete(2),
        "discrete3": discrete(3),
        "discrete4": discrete(4),
        "B(Z2)": B(z2),
        "B(Z3)": B(z3),
        "B(Z4)": B(cyclic(4)),
        "codiscrete2": codiscrete(2),
        "codiscrete3": codiscrete(3),
        "B(Z2)+pt": disjoint_union([B(z2), terminal()])[0],
        "B(Z2)+B(Z2)": disjoint_union([B(z2), B(z2)])[0],
        "codiscrete2+pt": disjoint_union([codiscrete(2), terminal()])[0],
        "codiscrete2xB(Z2)": product([codiscrete(2), B(z2)]),
        "B(S3)": B(symmetric(3)),
    }


ROUNDTRIP_CATALOG = ("terminal", "discrete2", "discrete3", "discrete4", "B(Z2)", "B(Z3)",
                     "codiscrete2", "B(Z2)+pt", "B(Z2)+B(Z2)", "codiscrete2+pt")


def roundtrip_catalog() -> dict[str, FiniteGroupoid]:
    named = named_groupoids()
    return {k: named[k] for k in ROUNDTRIP_CATALOG}


def small_groupoids(max_objects: int = 2, max_morphisms: int = 8) -> dict[str, FiniteGroupoid]:
    """Every groupoid with at most 2 objects and the given morphism cap, up to isomorphism."""
    if max_objects > 2:
        raise ValueError("only groupoids with at most two objects are tabulated")
    groups = small_groups(min(max_morphisms, 8))
    out: dict[str, FiniteGroupoid] = {"empty": empty_groupoid()}
    for a in groups:
        out[f"B({a.name})"] = B(a)
    if max_objects >= 2:
        for i, a in enumerate(groups):
            for b in groups[i:]:
                if a.order + b.order <= max_morphisms:
                    out[f"B({a.name})+B({b.name})"] = disjoint_union([B(a), B(b)])[0]
        for a in groups:
            if 4 * a.order <= max_morphisms:
                out[f"codiscrete2xB({a.name})"] = product([codiscrete(2), B(a)])
    return out


# ---------------------------------------------------------------------------
# weak actions


def induced_action(gamma: FiniteGroup, perms, a: FiniteGroup) -> WeakAction:
    """Strict action permuting copies of B(a) along a Γ-set."""
    perms = np.asarray(perms, dtype=np.int64)
    n = perms.shape[1]
    u, _ = disjoint_union([B(a)] * n)
    m = a.order
    fs = []
    for p in perms:
        obj = p
        mor = (p[:, None] * m + np.arange(m)[None, :]).ravel()
        fs.append(GroupoidFunctor(u, u, obj, mor))
    return strict_action(gamma, fs)


def permutation_images(gamma: FiniteGroup, n: int) -> list[np.ndarray]:
    """Every action of ``gamma`` on ``{0..n-1}``, as (k, n) arrays of permutations."""
    sym = symmetric(n)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    return [perms[hom] for hom in homomorphisms(gamma, sym)]


def involution_fixtures() -> dict[str, WeakAction]:
    """Z/2 actions with mu(e) = id, beta = id and alpha trivial except alpha[s][s]."""
    z2 = cyclic(2)
    z3, z4, z5 = cyclic(3), cyclic(4), cyclic(5)

    def on_group(a, images):
        auts = np.stack([np.arange(a.order), np.asarray(images)])
        return action_on_one_object(GroupAction(z2, a, auts))

    swap = np.array([[0, 1], [1, 0]])
    out = {
        "B(Z3) inversion": on_group(z3, [0, 2, 1]),
        "B(Z2) trivial": on_group(z2, [0, 1]),
        "B(Z4) inversion": on_group(z4, [0, 3, 2, 1]),
        "B(Z4) trivial": on_group(z4, [0, 1, 2, 3]),
        "B(Z5) inversion": on_group(z5, [0, 4, 3, 2, 1]),
        "B(S3) trivial": action_on_one_object(trivial_action(z2, symmetric(3))),
        "discrete2 swap": permutation_action(z2, swap, "discrete"),
        "discrete3 swap+fixed": permutation_action(z2, np.array([[0, 1, 2], [1, 0, 2]]), "discrete"),
        "codiscrete2 swap": permutation_action(z2, swap, "codiscrete"),
        "B(Z2)+B(Z2) swap": induced_action(z2, swap, z2),
    }
    # genuinely weak: alpha[s][s] the nontrivial central element
    for name, a, c in (("B(Z2) twisted", z2, 1), ("B(Z4) twisted", z4, 2)):
        w = action_on_one_object(trivial_action(z2, a))
        mu_obj, mu_mor, alpha, beta = w.tables()
        alpha = alpha.copy()
        alpha[1, 1, 0] = c
        out[name] = action_from_tables(z2, w.groupoid, mu_obj, mu_mor, alpha, beta)
    return out


def _random_strict(gamma: FiniteGroup, rng: np.random.Generator) -> WeakAction:
    kind = int(rng.integers(4))
    if kind == 0:
        small = [a for a in small_groups(6) if a.order >= 2]
        a = small[int(rng.integers(len(small)))]
        acts = actions_on_group(gamma, a)
        return action_on_one_object(acts[int(rng.integers(len(acts)))])
    if kind == 1:
        n = int(rng.integers(2, 5))
        opts = permutation_images(gamma, n)
        style = "discrete" if rng.random() < 0.5 else "codiscrete"
        return permutation_action(gamma, opts[int(rng.integers(len(opts)))], style)
    if kind == 2:
        n = int(rng.integers(1, 4))
        opts = permutation_images(gamma, n)
        a = [cyclic(2), cyclic(3), klein_four()][int(rng.integers(3))]
        if n * a.order > 24:
            a = cyclic(2)
        return induced_action(gamma, opts[int(rng.integers(len(opts)))], a)
    parts = []
    for _ in range(2):
        a = [cyclic(2), cyclic(3)][int(rng.integers(2))]
        acts = actions_on_group(gamma, a)
        parts.append(action_on_one_object(acts[int(rng.integers(len(acts)))]))
    opts = permutation_images(gamma, 2)
    parts.append(permutation_action(gamma, opts[int(rng.integers(len(opts)))], "codiscrete"))
    return union_action(parts)


def random_weak_action(gamma: FiniteGroup, rng: np.random.Generator, mode: str = "mixed") -> WeakAction:
    """A valid action: strict, transported along random conjugators, or twisted by a cochain.

    Underlying groupoids stay within 6 objects and 24 morphisms.
    """
    while True:
        w = _random_strict(gamma, rng)
        if w.groupoid.n_objects <= 6 and w.groupoid.n_morphisms <= 24:
            break
    if mode == "mixed":
        mode = ("strict", "transport", "twist", "both")[int(rng.integers(4))]
    if mode in ("twist", "both"):
        u = [random_functor_automorphism(f, rng) for f in w.mu]
        w = twist_by_cochain(w, coboundary_cochain(w, u)) or w
        z = central_twist(w, rng)
        if z is not None:
            w = z
    if mode in ("transport", "both"):
        w = transport_action(w, [random_conjugator(f, rng) for f in w.mu])
    return w


def central_twist(w: WeakAction, rng: np.random.Generator, tries: int = 8) -> WeakAction | None:
    """Try random automorphism cochains until one twists ``w`` into a valid action."""
    k = w.k
    for _ in range(tries):
        cochain = [[random_functor_automorphism(w.mu[w.gamma.table[t, s]], rng) for s in range(k)]
                   for t in range(k)]
        out = twist_by_cochain(w, cochain)
        if out is not None:
            return out
    return None


def weak_action_corpus(n: int, seed: int = 0) -> list[WeakAction]:
    """``n`` valid actions cycling through Z/2, Z/3, Z/2×Z/2 and S3."""
    rng = np.random.default_rng(seed)
    groups = list(fixture_groups().values())
    return [random_weak_action(groups[i % len(groups)], rng) for i in range(n)]


def h1_fixtures() -> dict[str, GroupAction]:
    z2, z3 = cyclic(2), cyclic(3)
    inversion = GroupAction(z2, z3, np.array([[0, 1, 2], [0, 2, 1]]))
    return {
        "(Z2, Z3 inversion)": inversion,
        "(Z2, Z2 trivial)": trivial_action(z2, z2),
        "(Z3, Z3 trivial)": trivial_action(z3, z3),
        "(Z2, S3 trivial)": trivial_action(z2, symmetric(3)),
    }
