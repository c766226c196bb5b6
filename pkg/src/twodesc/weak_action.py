"""Weak (pseudo-)actions of a finite group on a finite groupoid.

An action is a functor ``mu[s]`` per group element, coherence isomorphisms
``alpha[t][s] : mu[t] o mu[s] => mu[ts]`` and ``beta : mu[e] => id``.
The group acts on the left.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groupoid import (FiniteGroupoid, GroupoidFunctor, NatIso, _check_functor_shape,
                       _check_natiso_shape, compose_functors, disjoint_union, hcompose,
                       identity_functor, identity_natiso, inverse, left_whisker,
                       natural_transformations, naturality_violation, right_whisker,
                       validate_functor, vcompose, codiscrete, discrete)
from .groups import FiniteGroup, GroupAction, as_one_object_groupoid
from .report import PASS, InvalidInput, Report, StructuralError, fail


@dataclass(frozen=True, eq=False)
class WeakAction:
    gamma: FiniteGroup
    groupoid: FiniteGroupoid
    mu: tuple[GroupoidFunctor, ...]
    alpha: tuple[tuple[NatIso, ...], ...]
    beta: NatIso

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeakAction):
            return NotImplemented
        return (self.gamma == other.gamma and self.groupoid == other.groupoid
                and self.mu == other.mu and self.alpha == other.alpha
                and self.beta == other.beta)

    __hash__ = object.__hash__

    @property
    def k(self) -> int:
        return self.gamma.order

    def is_strict(self) -> bool:
        g = self.groupoid
        if not all(np.array_equal(a.components, g.ident[a.source.obj])
                   for row in self.alpha for a in row):
            return False
        return bool(np.array_equal(self.beta.components, g.ident))

    def tables(self):
        """(mu_obj, mu_mor, alpha, beta) as dense arrays of shape (k,n), (k,M), (k,k,n), (n,)."""
        mu_obj = np.stack([f.obj for f in self.mu])
        mu_mor = np.stack([f.mor for f in self.mu])
        alpha = np.stack([np.stack([a.components for a in row]) for row in self.alpha])
        return mu_obj, mu_mor, alpha, self.beta.components


def action_from_tables(gamma: FiniteGroup, g: FiniteGroupoid, mu_obj, mu_mor, alpha, beta) -> WeakAction:
    k = gamma.order
    mu_obj = np.asarray(mu_obj, dtype=np.int64)
    mu_mor = np.asarray(mu_mor, dtype=np.int64)
    alpha = np.asarray(alpha, dtype=np.int64)
    if mu_obj.shape[:1] != (k,) or mu_mor.shape[:1] != (k,) or alpha.shape[:2] != (k, k):
        raise StructuralError("action tables are not indexed by the acting group")
    mu = tuple(GroupoidFunctor(g, g, mu_obj[s], mu_mor[s]) for s in range(k))
    for f in mu:
        _check_functor_shape(f)
    alpha_t = tuple(
        tuple(NatIso(compose_functors(mu[t], mu[s]), mu[gamma.table[t, s]], alpha[t, s])
              for s in range(k))
        for t in range(k))
    beta_n = NatIso(mu[gamma.identity], identity_functor(g), beta)
    return WeakAction(gamma, g, mu, alpha_t, beta_n)


def _structure(w: WeakAction) -> None:
    k, g = w.k, w.groupoid
    if len(w.mu) != k or len(w.alpha) != k or any(len(row) != k for row in w.alpha):
        raise StructuralError("action data is not indexed by the acting group")
    for f in w.mu:
        if f.source != g or f.target != g:
            raise StructuralError("mu(s) must be an endofunctor of the groupoid")
        _check_functor_shape(f)
    for t in range(k):
        for s in range(k):
            a = w.alpha[t][s]
            if a.source != compose_functors(w.mu[t], w.mu[s]) or \
               a.target != w.mu[w.gamma.table[t, s]]:
                raise StructuralError(f"alpha[{t}][{s}] is not mu(t) o mu(s) => mu(ts)")
            _check_natiso_shape(a)
    if w.beta.source != w.mu[w.gamma.identity] or w.beta.target != identity_functor(g):
        raise StructuralError("beta is not mu(e) => id")
    _check_natiso_shape(w.beta)


def validate_weak_action(w: WeakAction) -> Report:
    """Check functoriality, naturality, the associativity cells and both unit laws."""
    _structure(w)
    k, G = w.k, w.gamma
    mu, alpha = w.mu, w.alpha
    for s in range(k):
        r = validate_functor(mu[s])
        if not r:
            return fail("functor", (s,) + r.where, r.message)
    for t in range(k):
        for s in range(k):
            m = naturality_violation(alpha[t][s])
            if m >= 0:
                return fail("naturality", (t, s, m), "alpha component is not natural")
    m = naturality_violation(w.beta)
    if m >= 0:
        return fail("naturality", (m,), "beta is not natural")

    for c in range(k):
        for t in range(k):
            for s in range(k):
                ct = G.table[c, t]
                ts = G.table[t, s]
                # mu(c)mu(t)mu(s) => mu(ct)mu(s) => mu(cts)
                via_left = vcompose(alpha[ct][s], right_whisker(alpha[c][t], mu[s], False), False)
                # mu(c)mu(t)mu(s) => mu(c)mu(ts) => mu(cts)
                via_right = vcompose(alpha[c][ts], left_whisker(mu[c], alpha[t][s], False), False)
                bad = np.flatnonzero(via_left.components != via_right.components)
                if bad.size:
                    return fail("associativity", (c, t, s, bad[0]),
                                "the two composites mu(c)mu(t)mu(s) => mu(cts) differ")
    e = G.identity
    for s in range(k):
        lhs = left_whisker(mu[s], w.beta, False).components
        bad = np.flatnonzero(lhs != alpha[s][e].components)
        if bad.size:
            return fail("unit-left", (s, bad[0]), "mu(s)_*(beta) != alpha[s][e]")
        rhs = right_whisker(w.beta, mu[s], False).components
        bad = np.flatnonzero(rhs != alpha[e][s].components)
        if bad.size:
            return fail("unit-right", (s, bad[0]), "mu(s)^*(beta) != alpha[e][s]")
    return PASS


# ---------------------------------------------------------------------------
# constructors


def strict_action(gamma: FiniteGroup, functors) -> WeakAction:
    """Action with identity coherence cells from an on-the-nose homomorphism."""
    functors = tuple(functors)
    k = gamma.order
    if len(functors) != k:
        raise InvalidInput("one functor per group element is required")
    g = functors[0].source
    if functors[gamma.identity] != identity_functor(g):
        raise InvalidInput("the identity element must act by the identity functor")
    for t in range(k):
        for s in range(k):
            if compose_functors(functors[t], functors[s]) != functors[gamma.table[t, s]]:
                raise InvalidInput(f"h({t}) o h({s}) != h({t}{s}) on the nose")
    alpha = tuple(
        tuple(NatIso(compose_functors(functors[t], functors[s]), functors[gamma.table[t, s]],
                     g.ident[functors[gamma.table[t, s]].obj])
              for s in range(k))
        for t in range(k))
    beta = NatIso(functors[gamma.identity], identity_functor(g), g.ident)
    return WeakAction(gamma, g, functors, alpha, beta)


def action_on_one_object(action: GroupAction) -> WeakAction:
    """Strict action on B(A) induced by an action of the group on A."""
    ba = as_one_object_groupoid(action.group)
    fs = [GroupoidFunctor(ba, ba, [0], action.auts[s]) for s in range(action.gamma.order)]
    return strict_action(action.gamma, fs)


def permutation_functor(g: FiniteGroupoid, perm, kind: str) -> GroupoidFunctor:
    perm = np.asarray(perm, dtype=np.int64)
    n = g.n_objects
    if kind == "discrete":
        return GroupoidFunctor(g, g, perm, perm)
    if kind == "codiscrete":
        src, tgt = np.divmod(np.arange(n * n), n)
        return GroupoidFunctor(g, g, perm, perm[src] * n + perm[tgt])
    raise ValueError(kind)


def permutation_action(gamma: FiniteGroup, perms, kind: str = "discrete") -> WeakAction:
    """Strict action on a discrete or codiscrete groupoid by permuting objects."""
    perms = np.asarray(perms, dtype=np.int64)
    n = perms.shape[1]
    g = discrete(n) if kind == "discrete" else codiscrete(n)
    return strict_action(gamma, [permutation_functor(g, p, kind) for p in perms])


def regular_permutations(gamma: FiniteGroup) -> np.ndarray:
    """``s`` sends ``r`` to ``s*r``."""
    return np.array(gamma.table)


def union_action(actions) -> WeakAction:
    """Componentwise action on the disjoint union of the groupoids."""
    actions = list(actions)
    gamma = actions[0].gamma
    k = gamma.order
    u, inj = disjoint_union([a.groupoid for a in actions])
    tabs = [a.tables() for a in actions]
    mu_obj = np.concatenate([j.obj[t[0]] for j, t in zip(inj, tabs)], axis=1)
    mu_mor = np.concatenate([j.mor[t[1]] for j, t in zip(inj, tabs)], axis=1)
    alpha = np.concatenate([j.mor[t[2]] for j, t in zip(inj, tabs)], axis=2)
    beta = np.concatenate([j.mor[t[3]] for j, t in zip(inj, tabs)])
    return action_from_tables(gamma, u, mu_obj, mu_mor, alpha, beta)


def transport_action(w: WeakAction, theta) -> WeakAction:
    """Conjugate ``w`` along natural isomorphisms ``theta[s] : mu[s] => mu'[s]``.

    The result acts by ``mu'`` with
    ``alpha'[t][s] = theta[ts] . alpha[t][s] . (theta[t] * theta[s])^-1`` and
    ``beta' = beta . theta[e]^-1``; it is a valid action whenever ``w`` is.
    """
    theta = tuple(theta)
    G = w.gamma
    k = w.k
    mu2 = tuple(t.target for t in theta)
    alpha = []
    for t in range(k):
        row = []
        for s in range(k):
            ts = G.table[t, s]
            star = hcompose(theta[t], theta[s])
            a = vcompose(theta[ts], vcompose(w.alpha[t][s], inverse(star)))
            row.append(a)
        alpha.append(tuple(row))
    beta = vcompose(w.beta, inverse(theta[G.identity]))
    return WeakAction(G, w.groupoid, mu2, tuple(alpha), beta)


def random_conjugator(f: GroupoidFunctor, rng: np.random.Generator) -> NatIso:
    """A random ``theta : f => f'`` with ``f'`` a functor isomorphic to ``f``."""
    g = f.source
    h = f.target
    comps = np.array([rng.choice(h.out_of(int(f.obj[x]))) for x in range(g.n_objects)],
                     dtype=np.int64)
    new_obj = h.tgt[comps]
    # f'(m) = theta[y] o f(m) o theta[x]^-1
    inner = h.comp[f.mor, h.inv[comps[g.src]]]
    new_mor = h.comp[comps[g.tgt], inner]
    return NatIso(f, GroupoidFunctor(g, h, new_obj, new_mor), comps)


def twist_by_cochain(w: WeakAction, cochain) -> WeakAction | None:
    """Multiply each ``alpha[t][s]`` by an automorphism ``cochain[t][s]`` of ``mu[ts]``.

    ``beta`` is re-derived from the right unit law at ``e``. Returns ``None``
    when the twisted data is not a coherent action.
    """
    k = w.k
    G = w.gamma
    g = w.groupoid
    c = np.asarray([[np.asarray(getattr(x, "components", x)) for x in row] for row in cochain],
                   dtype=np.int64)
    if c.shape != (k, k, g.n_objects):
        raise StructuralError("cochain must have one component per (t, s, object)")
    alpha = []
    for t in range(k):
        row = []
        for s in range(k):
            f = w.mu[G.table[t, s]]
            cts = NatIso(f, f, c[t, s])
            _check_natiso_shape(cts)
            if naturality_violation(cts) >= 0:
                return None
            row.append(vcompose(cts, w.alpha[t][s], False))
        alpha.append(tuple(row))
    e = G.identity
    beta = np.array(w.beta.components)
    mu_e = w.mu[e].obj
    aee = alpha[e][e].components
    for x in range(g.n_objects - 1, -1, -1):
        beta[mu_e[x]] = aee[x]
    try:
        out = WeakAction(G, g, w.mu, tuple(alpha), NatIso(w.beta.source, w.beta.target, beta))
        return out if validate_weak_action(out) else None
    except StructuralError:
        return None


def coboundary_cochain(w: WeakAction, u) -> list[list[NatIso]]:
    """The cochain whose twist equals transporting ``w`` along automorphisms ``u[s]`` of ``mu[s]``."""
    G = w.gamma
    k = w.k
    out = []
    for t in range(k):
        row = []
        for s in range(k):
            ts = G.table[t, s]
            a = w.alpha[t][s]
            new = vcompose(u[ts], vcompose(a, inverse(hcompose(u[t], u[s]))))
            row.append(vcompose(new, inverse(a)))
        out.append(row)
    return out


def random_functor_automorphism(f: GroupoidFunctor, rng: np.random.Generator) -> NatIso:
    auts = natural_transformations(f, f)
    return auts[int(rng.integers(len(auts)))]


def functor_automorphisms(f: GroupoidFunctor) -> list[NatIso]:
    return natural_transformations(f, f)
