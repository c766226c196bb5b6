"""Brute-force oracles that share no code with the engine's validators.

* nonabelian H⁰/H¹ of a finite group with coefficients in a finite group;
* the involution pair set for Γ = Z/2;
* loop-level re-implementations of the coherence conditions, written
  directly against the composition tables.

Cocycle convention: ``s`` acts on coefficients on the right through
``r_s = auts[s^-1]``, cocycles satisfy ``z[ts] = z[s] * r_s(z[t])`` and
``z ~ b^-1 * z[s] * r_s(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .descent import descend
from .descent_data import action_to_descent
from .equivalence import skeleton
from .groups import FiniteGroup, GroupAction, automorphism_group, find_isomorphism, subgroup
from .report import OverBudget
from .weak_action import action_on_one_object

H1_MAX_ORDER = 24
H1_MAX_MAPS = 1 << 21


@dataclass(frozen=True)
class CocycleSet:
    gamma: FiniteGroup
    group: FiniteGroup
    action: GroupAction
    cocycles: np.ndarray               # (N, |Γ|), lexicographic
    class_of: np.ndarray               # (N,) class label, numbered by first cocycle
    representatives: np.ndarray        # (C, |Γ|)
    stabilizers: tuple[np.ndarray, ...]

    @property
    def n_classes(self) -> int:
        return int(self.representatives.shape[0])

    def table(self) -> str:
        lines = ["class  representative        |stabilizer|"]
        for c, (z, st) in enumerate(zip(self.representatives, self.stabilizers)):
            lines.append(f"{c:>5}  {str(z.tolist()):<22} {st.size}")
        return "\n".join(lines)


def right_action(action: GroupAction) -> np.ndarray:
    """``r[s] = auts[s^-1]``."""
    return np.asarray(action.auts)[action.gamma.inverse]


def h1(gamma: FiniteGroup, group: FiniteGroup, action: GroupAction) -> CocycleSet:
    k, n = gamma.order, group.order
    if k > H1_MAX_ORDER or n > H1_MAX_ORDER:
        raise OverBudget(f"h1 is capped at order {H1_MAX_ORDER}")
    if n ** k > H1_MAX_MAPS:
        raise OverBudget(f"{n}^{k} candidate maps exceed the cap {H1_MAX_MAPS}")
    A = group.table
    r = right_action(action)
    maps = np.stack(np.unravel_index(np.arange(n ** k), (n,) * k), axis=1).astype(np.int64)
    ok = np.ones(maps.shape[0], dtype=bool)
    for t in range(k):
        for s in range(k):
            ts = gamma.table[t, s]
            ok &= maps[:, ts] == A[maps[:, s], r[s][maps[:, t]]]
    cocycles = maps[ok]
    index = {tuple(z.tolist()): i for i, z in enumerate(cocycles)}
    inv = group.inverse
    class_of = np.full(cocycles.shape[0], -1, dtype=np.int64)
    reps, stabs = [], []
    for i, z in enumerate(cocycles):
        if class_of[i] >= 0:
            continue
        c = len(reps)
        reps.append(z)
        stab = []
        for b in range(n):
            moved = A[A[inv[b], z], r[np.arange(k), b]]
            j = index[tuple(moved.tolist())]
            class_of[j] = c
            if j == i:
                stab.append(b)
        stabs.append(np.array(stab, dtype=np.int64))
    rep_arr = np.array(reps, dtype=np.int64).reshape(len(reps), k)
    return CocycleSet(gamma, group, action, cocycles, class_of, rep_arr, tuple(stabs))


@dataclass(frozen=True)
class ComparisonReport:
    ok: bool
    n_classes: int
    aut_orders: tuple[int, ...]
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def compare_with_descent(gamma: FiniteGroup, group: FiniteGroup, action: GroupAction) -> ComparisonReport:
    """Match descended isomorphism classes on B(A) against H¹ classes.

    A descended object ``(0, phi)`` corresponds to the cocycle ``z[s] = phi[s]^-1``.
    """
    oracle = h1(gamma, group, action)
    w = action_on_one_object(action)
    D = descend(action_to_descent(w))
    dg = D.groupoid
    inv = group.inverse
    zs = inv[D.phi]
    index = {tuple(z.tolist()): i for i, z in enumerate(oracle.cocycles)}
    hits = [index.get(tuple(z.tolist()), -1) for z in zs]
    if -1 in hits or sorted(hits) != list(range(oracle.cocycles.shape[0])):
        return ComparisonReport(False, dg.n_components, (),
                                f"descended objects {zs.tolist()} are not the cocycles "
                                f"{oracle.cocycles.tolist()}")
    oracle_class = oracle.class_of[np.array(hits, dtype=np.int64)]
    labels = dg.component_labels
    pairs = set(zip(labels.tolist(), oracle_class.tolist()))
    if len(pairs) != dg.n_components or dg.n_components != oracle.n_classes:
        return ComparisonReport(False, dg.n_components, (),
                                f"class partition differs: descended {labels.tolist()}, "
                                f"oracle {oracle_class.tolist()}")
    orders = []
    for c, rep in enumerate(dg.representatives):
        aut, mors = automorphism_group(dg, int(rep))
        cls = int(oracle_class[int(rep)])
        stab, _ = subgroup(group, oracle.stabilizers[cls])
        if aut.order != stab.order or find_isomorphism(aut, stab) is None:
            return ComparisonReport(False, dg.n_components, (),
                                    f"class {c}: |Aut| = {aut.order}, stabilizer order "
                                    f"{stab.order} or types differ")
        orders.append(aut.order)
    sk = skeleton(dg)
    if sorted(sk.class_sizes) != sorted(orders):
        return ComparisonReport(False, dg.n_components, tuple(orders), "skeleton disagrees")
    return ComparisonReport(True, dg.n_components, tuple(orders))


# ---------------------------------------------------------------------------
# Γ = Z/2: pairs (x, phi) whose composite with the twist of phi is the identity


def involution_pairs(g, sigma_obj, sigma_mor, alpha) -> list[tuple[int, int]]:
    """Pairs ``(x, phi)`` with ``phi : x -> sigma(x)`` and ``alpha[x] o sigma(phi) o phi == id_x``.

    ``alpha[x] : sigma(sigma(x)) -> x``.  Pure loops over the tables.
    """
    out = []
    for x in range(g.n_objects):
        for phi in range(g.n_morphisms):
            if g.src[phi] != x or g.tgt[phi] != sigma_obj[x]:
                continue
            step = g.comp[sigma_mor[phi], phi]
            total = g.comp[alpha[x], step]
            if total == g.ident[x]:
                out.append((x, phi))
    return out


# ---------------------------------------------------------------------------
# loop-level coherence checks


def _c(g, *ms):
    out = ms[-1]
    for m in reversed(ms[:-1]):
        out = g.comp[m, out]
        if out < 0:
            return -1
    return int(out)


def naive_weak_action_ok(gamma, g, mu_obj, mu_mor, alpha, beta) -> bool:
    k, n = gamma.order, g.n_objects
    T = gamma.table
    e = gamma.identity
    for s in range(k):
        for m in range(g.n_morphisms):
            if g.src[mu_mor[s][m]] != mu_obj[s][g.src[m]] or g.tgt[mu_mor[s][m]] != mu_obj[s][g.tgt[m]]:
                return False
        for a in range(g.n_morphisms):
            for b in range(g.n_morphisms):
                ba = g.comp[b, a]
                if ba >= 0 and mu_mor[s][ba] != g.comp[mu_mor[s][b], mu_mor[s][a]]:
                    return False
        for x in range(n):
            if mu_mor[s][g.ident[x]] != g.ident[mu_obj[s][x]]:
                return False
    for t in range(k):
        for s in range(k):
            ts = T[t, s]
            for x in range(n):
                a = alpha[t][s][x]
                if g.src[a] != mu_obj[t][mu_obj[s][x]] or g.tgt[a] != mu_obj[ts][x]:
                    return False
            for m in range(g.n_morphisms):
                x, y = g.src[m], g.tgt[m]
                lhs = _c(g, alpha[t][s][y], mu_mor[t][mu_mor[s][m]])
                rhs = _c(g, mu_mor[ts][m], alpha[t][s][x])
                if lhs != rhs:
                    return False
    for x in range(n):
        if g.src[beta[x]] != mu_obj[e][x] or g.tgt[beta[x]] != x:
            return False
    for m in range(g.n_morphisms):
        if _c(g, beta[g.tgt[m]], mu_mor[e][m]) != _c(g, m, beta[g.src[m]]):
            return False
    for c in range(k):
        for t in range(k):
            for s in range(k):
                for x in range(n):
                    lhs = _c(g, alpha[T[c, t]][s][x], alpha[c][t][mu_obj[s][x]])
                    rhs = _c(g, alpha[c][T[t, s]][x], mu_mor[c][alpha[t][s][x]])
                    if lhs != rhs:
                        return False
    for s in range(k):
        for x in range(n):
            if mu_mor[s][beta[x]] != alpha[s][e][x]:
                return False
            if beta[mu_obj[s][x]] != alpha[e][s][x]:
                return False
    return True


def naive_galois_ok(gamma, g, f_obj, f_mor, psi) -> bool:
    k, n = gamma.order, g.n_objects
    T = gamma.table
    for s in range(k):
        for m in range(g.n_morphisms):
            if g.src[f_mor[s][m]] != f_obj[s][g.src[m]] or g.tgt[f_mor[s][m]] != f_obj[s][g.tgt[m]]:
                return False
        for a in range(g.n_morphisms):
            for b in range(g.n_morphisms):
                ba = g.comp[b, a]
                if ba >= 0 and f_mor[s][ba] != g.comp[f_mor[s][b], f_mor[s][a]]:
                    return False
        for x in range(n):
            if f_mor[s][g.ident[x]] != g.ident[f_obj[s][x]]:
                return False
    for t in range(k):
        for s in range(k):
            for x in range(n):
                p = psi[t][s][x]
                if g.src[p] != f_obj[s][f_obj[t][x]] or g.tgt[p] != f_obj[T[t, s]][x]:
                    return False
            for m in range(g.n_morphisms):
                x, y = g.src[m], g.tgt[m]
                if _c(g, psi[t][s][y], f_mor[s][f_mor[t][m]]) != _c(g, f_mor[T[t, s]][m], psi[t][s][x]):
                    return False
    for c in range(k):
        for t in range(k):
            for s in range(k):
                for x in range(n):
                    lhs = _c(g, psi[T[c, t]][s][x], f_mor[s][psi[c][t][x]])
                    rhs = _c(g, psi[c][T[t, s]][x], psi[t][s][f_obj[c][x]])
                    if lhs != rhs:
                        return False
    return True


def naive_morphism_ok(gamma, g1, g2, d1_tables, d2_tables, F_obj, F_mor, eta) -> bool:
    """Loop-level prism check for ``(F, eta)`` between two Galois data."""
    f1o, f1m, psi1 = d1_tables
    f2o, f2m, psi2 = d2_tables
    k = gamma.order
    T = gamma.table
    for m in range(g1.n_morphisms):
        if g2.src[F_mor[m]] != F_obj[g1.src[m]] or g2.tgt[F_mor[m]] != F_obj[g1.tgt[m]]:
            return False
    for a in range(g1.n_morphisms):
        for b in range(g1.n_morphisms):
            ba = g1.comp[b, a]
            if ba >= 0 and F_mor[ba] != g2.comp[F_mor[b], F_mor[a]]:
                return False
    for s in range(k):
        for x in range(g1.n_objects):
            e = eta[s][x]
            if g2.src[e] != F_obj[f1o[s][x]] or g2.tgt[e] != f2o[s][F_obj[x]]:
                return False
        for m in range(g1.n_morphisms):
            x, y = g1.src[m], g1.tgt[m]
            if _c(g2, eta[s][y], F_mor[f1m[s][m]]) != _c(g2, f2m[s][F_mor[m]], eta[s][x]):
                return False
    for t in range(k):
        for s in range(k):
            ts = T[t, s]
            for x in range(g1.n_objects):
                lhs = _c(g2, eta[ts][x], F_mor[psi1[t][s][x]])
                rhs = _c(g2, psi2[t][s][F_obj[x]], f2m[s][eta[t][x]], eta[s][f1o[t][x]])
                if lhs != rhs:
                    return False
    return True
