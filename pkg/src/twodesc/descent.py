"""Homotopy fixed points of a Galois descent datum, and the machinery built on them.

``descend`` enumerates the pairs ``(x, {phi_s})`` with ``phi_s : x -> f_s(x)``
and ``phi_ts == psi[t][s][x] o f_s(phi_t) o phi_s``.  The base-change side
models the cover as the regular Γ-set, so a groupoid ``h`` downstairs becomes
its groupoid of sections ``h^Γ`` upstairs, with ``(f_s x)_r = x_{s r}``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .descent_data import (DescentMorphism, GaloisDescentDatum, descent_2morphism_mask,
                           descent_morphism_mask, two_cell_mask,
                           galois_from_tables, validate_descent_morphism, validate_galois_datum)
from .equivalence import DEFAULT_BUDGET, EquivalenceWitness, are_equivalent
from .groupoid import (FiniteGroupoid, GroupoidFunctor, NatIso, compose_functors,
                       natural_transformations, naturality_mask, power, validate_functor)
from .groups import FiniteGroup, automorphism_group, cyclic, homomorphisms
from .report import InvalidInput, OverBudget


@dataclass(frozen=True, eq=False)
class DescendedGroupoid:
    """The descended groupoid with its bookkeeping.

    Object ``i`` is ``(base[i], phi[i])``; morphism ``j`` is the morphism
    ``under[j]`` of the underlying groupoid, read between two such pairs.
    """

    groupoid: FiniteGroupoid
    datum: GaloisDescentDatum
    base: np.ndarray
    phi: np.ndarray
    under: np.ndarray

    @property
    def forgetful(self) -> GroupoidFunctor:
        return GroupoidFunctor(self.groupoid, self.datum.groupoid, self.base, self.under)

    def index_of(self, x: int, family) -> int:
        """Object index of ``(x, family)``, or -1."""
        hit = np.flatnonzero((self.base == x) & np.all(self.phi == np.asarray(family), axis=1))
        return int(hit[0]) if hit.size else -1


def coherent_families(d: GaloisDescentDatum) -> tuple[np.ndarray, np.ndarray]:
    """All ``(x, phi)`` solving the fixed-point equations, sorted lexicographically."""
    g, G = d.groupoid, d.gamma
    f_obj, f_mor, psi = d.tables()
    ptr, idx = g._hom_csr
    plan = kernels.search_plan(G.table, G.identity)
    xs, fams = kernels.fixed_point_families(g.n_objects, g.comp, ptr, idx, f_obj, f_mor,
                                            psi, G.table, plan)
    order = np.lexsort(tuple(fams[:, j] for j in range(d.k - 1, -1, -1)) + (xs,))
    return np.asarray(xs[order], dtype=np.int64), np.asarray(fams[order], dtype=np.int64)


def descend(d: GaloisDescentDatum, check: bool = True) -> DescendedGroupoid:
    if check:
        r = validate_galois_datum(d)
        if not r:
            raise InvalidInput(f"descent datum does not validate: {r}")
    g, k = d.groupoid, d.k
    f_obj, f_mor, _ = d.tables()
    xs, fams = coherent_families(d)
    n2 = xs.size
    lookup = {(int(x),) + tuple(row.tolist()): i for i, (x, row) in enumerate(zip(xs, fams))}

    out_ptr, out_idx = g._out_csr
    rank = np.empty(g.n_morphisms, dtype=np.int64)
    for x in range(g.n_objects):
        block = out_idx[out_ptr[x]:out_ptr[x + 1]]
        rank[block] = np.arange(block.size)
    deg = np.diff(out_ptr)[xs] if n2 else np.empty(0, np.int64)
    start = np.concatenate([[0], np.cumsum(deg)]).astype(np.int64)
    m2 = int(start[-1])

    src = np.repeat(np.arange(n2), deg)
    under = np.concatenate([out_idx[out_ptr[x]:out_ptr[x + 1]] for x in xs]) if n2 \
        else np.empty(0, np.int64)
    # target family: f_s(m) o phi_s o m^-1
    moved = g.comp[f_mor[:, under].T, g.comp[fams[src], g.inv[under][:, None]]] if m2 \
        else np.empty((0, k), np.int64)
    ys = g.tgt[under]
    tgt = np.empty(m2, dtype=np.int64)
    for j in range(m2):
        key = (int(ys[j]),) + tuple(moved[j].tolist())
        hit = lookup.get(key)
        if hit is None:
            raise InvalidInput("transported family is not coherent; the datum is not natural")
        tgt[j] = hit

    def index(i, m):
        return start[i] + rank[m]

    ident = index(np.arange(n2), g.ident[xs]) if n2 else np.empty(0, np.int64)
    inv = index(tgt, g.inv[under]) if m2 else np.empty(0, np.int64)
    comp = np.full((m2, m2), -1, dtype=np.int64)
    if m2:
        a = np.repeat(np.arange(m2), deg[tgt])
        b = np.concatenate([np.arange(start[j], start[j + 1]) for j in tgt])
        comp[b, a] = index(src[a], g.comp[under[b], under[a]])
    dg = FiniteGroupoid(n2, src, tgt, comp, ident, inv)
    return DescendedGroupoid(dg, d, xs, fams, under)


def descend_morphism(m: DescentMorphism, source: DescendedGroupoid | None = None,
                     target: DescendedGroupoid | None = None, check: bool = True) -> GroupoidFunctor:
    """``(x, phi) -> (F x, eta_s[x] o F(phi_s))`` on objects, ``F`` on morphisms."""
    if check:
        r = validate_descent_morphism(m)
        if not r:
            raise InvalidInput(f"descent morphism does not validate: {r}")
    D1 = source if source is not None else descend(m.source, check)
    D2 = target if target is not None else descend(m.target, check)
    F = m.functor
    h = m.target.groupoid
    eta = m.eta_table()
    k = m.source.k
    lookup = {(int(x),) + tuple(row.tolist()): i for i, (x, row) in enumerate(zip(D2.base, D2.phi))}
    fx = F.obj[D1.base]
    new_phi = h.comp[eta[np.arange(k)[None, :], D1.base[:, None]], F.mor[D1.phi]]
    obj = np.empty(D1.groupoid.n_objects, dtype=np.int64)
    for i in range(obj.size):
        key = (int(fx[i]),) + tuple(new_phi[i].tolist())
        if key not in lookup:
            raise InvalidInput("image pair is not a descended object")
        obj[i] = lookup[key]
    g2 = D2.groupoid
    mor = np.empty(D1.groupoid.n_morphisms, dtype=np.int64)
    images = F.mor[D1.under]
    for j in range(mor.size):
        i_src, i_tgt = obj[D1.groupoid.src[j]], obj[D1.groupoid.tgt[j]]
        cands = g2.hom(int(i_src), int(i_tgt))
        hit = cands[D2.under[cands] == images[j]]
        mor[j] = hit[0]
    out = GroupoidFunctor(D1.groupoid, D2.groupoid, obj, mor)
    if check and not validate_functor(out):
        raise InvalidInput("descended morphism is not a functor")
    return out


# ---------------------------------------------------------------------------
# base change along the regular Γ-set


def _coords(n: int, k: int) -> np.ndarray:
    """Row ``i`` lists the ``k`` factor indices of element ``i`` of a k-fold power."""
    if n == 0:
        return np.empty((0, k), dtype=np.int64)
    return np.stack(np.unravel_index(np.arange(n ** k), (n,) * k), axis=1).astype(np.int64)


def _ravel(coords: np.ndarray, n: int) -> np.ndarray:
    k = coords.shape[1]
    if coords.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    return np.ravel_multi_index(tuple(coords.T), (n,) * k).astype(np.int64)


def base_change_torsor(h: FiniteGroupoid, gamma: FiniteGroup) -> GaloisDescentDatum:
    """Sections ``h^Γ`` with ``(f_s x)_r = x_{s r}`` and identity ``psi``."""
    k = gamma.order
    g = power(h, k)
    oc = _coords(h.n_objects, k)
    mc = _coords(h.n_morphisms, k)
    f_obj = np.stack([_ravel(oc[:, gamma.table[s]], h.n_objects) for s in range(k)])
    f_mor = np.stack([_ravel(mc[:, gamma.table[s]], h.n_morphisms) for s in range(k)])
    psi = np.stack([np.stack([g.ident[f_obj[gamma.table[t, s]]] for s in range(k)])
                    for t in range(k)])
    return galois_from_tables(gamma, g, f_obj.reshape(k, -1), f_mor.reshape(k, -1),
                              psi.reshape(k, k, -1))


def roundtrip_check(h: FiniteGroupoid, gamma: FiniteGroup,
                    budget: int = DEFAULT_BUDGET) -> EquivalenceWitness | None:
    """Descend the base change of ``h`` and compare with ``h``.

    Raises ``OverBudget`` when the equivalence search would exceed ``budget``.
    """
    D = descend(base_change_torsor(h, gamma))
    return are_equivalent(D.groupoid, h, budget)


# ---------------------------------------------------------------------------
# functors downstairs versus descent morphisms upstairs


def functor_classes(h1: FiniteGroupoid, h2: FiniteGroupoid) -> list[GroupoidFunctor]:
    """One functor per isomorphism class of functors ``h1 -> h2``.

    Each chosen functor sends every component to a representative object and
    the connecting morphisms to identities.
    """
    reps2 = [int(s) for s in h2.representatives]
    targets = [automorphism_group(h2, s) for s in reps2]
    per_component = []
    for r in h1.representatives:
        A, amors = automorphism_group(h1, int(r))
        options = []
        for s, (B, bmors) in zip(reps2, targets):
            seen = set()
            for phi in homomorphisms(A, B):
                key = min(tuple(B.table[B.table[B.inverse[b], phi], b].tolist())
                          for b in range(B.order))
                if key not in seen:
                    seen.add(key)
                    options.append((s, bmors[np.array(key, dtype=np.int64)], amors))
        per_component.append(options)
    labels = h1.component_labels
    conn = h1.connectors
    out = []
    pos = np.full(h1.n_morphisms, -1, dtype=np.int64)
    for pick in itertools.product(*per_component):
        obj = np.empty(h1.n_objects, dtype=np.int64)
        mor = np.empty(h1.n_morphisms, dtype=np.int64)
        for c, (s, img, amors) in enumerate(pick):
            obj[labels == c] = s
            pos[amors] = np.arange(amors.size)
        if h1.n_morphisms:
            inner = h1.comp[h1.inv[conn[h1.tgt]], h1.comp[np.arange(h1.n_morphisms), conn[h1.src]]]
            comp_of = labels[h1.src]
            for c, (s, img, amors) in enumerate(pick):
                sel = comp_of == c
                mor[sel] = img[pos[inner[sel]]]
        out.append(GroupoidFunctor(h1, h2, obj, mor))
    return out


def local_functor(d1: GaloisDescentDatum, d2: GaloisDescentDatum, functors) -> GroupoidFunctor:
    """The functor ``h1^Γ -> h2^Γ`` acting by ``functors[r]`` on coordinate ``r``."""
    functors = list(functors)
    k = d1.k
    h1, h2 = functors[0].source, functors[0].target
    oc = _coords(h1.n_objects, k)
    mc = _coords(h1.n_morphisms, k)
    obj = np.stack([functors[r].obj[oc[:, r]] for r in range(k)], axis=1) if oc.size else oc
    mor = np.stack([functors[r].mor[mc[:, r]] for r in range(k)], axis=1) if mc.size else mc
    return GroupoidFunctor(d1.groupoid, d2.groupoid, _ravel(obj, h2.n_objects),
                           _ravel(mor, h2.n_morphisms))


def local_transformation(F: GroupoidFunctor, G: GroupoidFunctor, comps, h1: FiniteGroupoid,
                         h2: FiniteGroupoid, shift=None) -> NatIso:
    """Component at ``x`` has coordinate ``r`` equal to ``comps[r][x_{shift[r]}]``."""
    comps = np.stack([np.asarray(c, dtype=np.int64) for c in comps])
    picks = np.arange(comps.shape[0])[None, :]
    return NatIso(F, G, _local_batch(picks, comps, h1, h2, shift)[0])


def _local_batch(picks: np.ndarray, comps: np.ndarray, h1: FiniteGroupoid, h2: FiniteGroupoid,
                 shift=None) -> np.ndarray:
    """Components of many local transformations at once.

    ``picks[i, r]`` selects the row of ``comps`` used on coordinate ``r``.
    """
    picks = np.atleast_2d(picks)
    k = picks.shape[1]
    shift = np.arange(k) if shift is None else np.asarray(shift)
    oc = _coords(h1.n_objects, k)
    out = np.zeros((picks.shape[0], oc.shape[0]), dtype=np.int64)
    for r in range(k):
        out = out * h2.n_morphisms + comps[picks[:, r]][:, oc[:, shift[r]]]
    return out


def base_changed_morphism(d1, d2, u: GroupoidFunctor) -> DescentMorphism:
    """``u^Γ`` with identity η."""
    F = local_functor(d1, d2, [u] * d1.k)
    eta = tuple(NatIso(compose_functors(F, d1.f[s]), compose_functors(d2.f[s], F),
                       d2.groupoid.ident[F.obj[d1.f[s].obj]]) for s in range(d1.k))
    return DescentMorphism(d1, d2, F, eta)


def _aut_table(comps: np.ndarray, h2: FiniteGroupoid) -> tuple[np.ndarray, np.ndarray]:
    """Multiplication and inverse tables of a list of automorphisms of one functor."""
    na, n = comps.shape
    prod = h2.comp[comps[:, None, :], comps[None, :, :]]
    if h2.n_morphisms ** max(n, 1) < 2 ** 62:
        # rows as integers, then a sorted lookup
        weights = h2.n_morphisms ** np.arange(n, dtype=np.int64)
        keys = comps @ weights
        order = np.argsort(keys)
        mult = order[np.searchsorted(keys[order], prod @ weights)]
    else:
        lut = {c.tobytes(): i for i, c in enumerate(comps)}
        mult = np.array([[lut[prod[i, j].tobytes()] for j in range(na)] for i in range(na)],
                        dtype=np.int64)
    ident = int(np.flatnonzero((mult == np.arange(na)[None, :]).all(axis=1))[0])
    inv = np.argmax(mult == ident, axis=1)
    return mult, inv


def _local_eta_families(G: FiniteGroup, mult: np.ndarray) -> list[np.ndarray]:
    """Families ``e[s][r]`` of automorphism indices with ``e[ts][r] = e[t][s r] o e[s][r]``."""
    return [f.copy() for f in _eta_families_cached(G.table.tobytes(), G.order, mult.tobytes(),
                                                   mult.shape[0])]


@functools.lru_cache(maxsize=256)
def _eta_families_cached(gt: bytes, k: int, mt: bytes, na: int) -> tuple[np.ndarray, ...]:
    table = np.frombuffer(gt, dtype=np.int64).reshape(k, k)
    mult = np.frombuffer(mt, dtype=np.int64).reshape(na, na)
    slots = [(s, r) for s in range(k) for r in range(k)]
    index = {sr: i for i, sr in enumerate(slots)}
    # each constraint is checked once, at the last of its three slots
    checks = [[] for _ in slots]
    for t in range(k):
        for s in range(k):
            for r in range(k):
                a, b, c = index[(table[t, s], r)], index[(t, table[s, r])], index[(s, r)]
                checks[max(a, b, c)].append((a, b, c))
    val = np.zeros(len(slots), dtype=np.int64)
    found = []

    def dfs(i):
        if i == len(slots):
            found.append(val.reshape(k, k).copy())
            return
        for x in range(na):
            val[i] = x
            if all(val[a] == mult[val[b], val[c]] for a, b, c in checks[i]):
                dfs(i + 1)

    dfs(0)
    return tuple(found)


@dataclass(frozen=True)
class HomDescentReport:
    decided: bool
    essentially_surjective: bool | None = None
    fully_faithful: bool | None = None
    functor_classes: int = 0
    descent_classes: int = 0
    failures: tuple[str, ...] = field(default_factory=tuple)
    reason: str = ""

    @property
    def ok(self) -> bool:
        return bool(self.decided and self.essentially_surjective and self.fully_faithful)

    def __str__(self) -> str:
        if not self.decided:
            return f"undecided: {self.reason}"
        return (f"essentially surjective={self.essentially_surjective}, "
                f"fully faithful={self.fully_faithful}, functor classes={self.functor_classes}, "
                f"normalized descent morphisms={self.descent_classes}")


def hom_descent_check(h1: FiniteGroupoid, h2: FiniteGroupoid, gamma: FiniteGroup | None = None,
                      max_objects: int = 2, max_morphisms: int = 8,
                      work_cap: int = 100_000_000) -> HomDescentReport:
    """Compare functors ``h1 -> h2`` with descent morphisms between the base changes.

    Descent morphisms are taken over the cover: their functor and every
    2-cell act one Γ-coordinate at a time.  Each one is isomorphic to a
    normalized one whose coordinates all equal a chosen class representative
    ``u``; the search runs over those and their η families, validating every
    candidate with the general validators.
    """
    gamma = gamma if gamma is not None else cyclic(2)
    for h in (h1, h2):
        if h.n_objects > max_objects or h.n_morphisms > max_morphisms:
            return HomDescentReport(False, reason=f"input exceeds {max_objects} objects / "
                                                  f"{max_morphisms} morphisms")
    k = gamma.order
    d1, d2 = base_change_torsor(h1, gamma), base_change_torsor(h2, gamma)
    try:
        classes = functor_classes(h1, h2)
    except OverBudget as exc:
        return HomDescentReport(False, reason=str(exc))
    auts = [natural_transformations(u, u) for u in classes]
    work = sum(len(a) ** k for a in auts) * max(d1.groupoid.n_objects, 1)
    if work > work_cap:
        return HomDescentReport(False, functor_classes=len(classes),
                                reason=f"search work {work} exceeds cap {work_cap}")
    failures = []
    es = ff = True
    n_desc = 0
    for u, au in zip(classes, auts):
        bc = base_changed_morphism(d1, d2, u)
        if not validate_descent_morphism(bc):
            failures.append(f"base change of functor {u.obj.tolist()} is not a descent morphism")
            es = ff = False
            continue
        F = bc.functor
        comps = np.stack([a.components for a in au])
        na = len(au)
        mult, inv = _aut_table(comps, h2)
        # fully faithful: Hom(bc u, bc u) against the image of Aut(u)
        diagonal = _local_batch(np.repeat(np.arange(na)[:, None], k, axis=1), comps, h1, h2)
        image = {tuple(row.tolist()) for row in diagonal}
        picks = np.stack(np.unravel_index(np.arange(na ** k), (na,) * k), axis=1)
        cands = _local_batch(picks, comps, h1, h2)
        natural = naturality_mask(cands, F, F)
        eta_b = bc.eta_table()[None]
        homs = {tuple(row.tolist())
                for row in cands[two_cell_mask(cands, d1, d2, F, F, eta_b, eta_b, natural)]}
        if homs != image or len(image) != na:
            ff = False
            failures.append(f"Aut(u) -> Aut(bc u) not bijective for u={u.obj.tolist()}")
        # essentially surjective: every normalized (u^Γ, eta) is isomorphic to bc u
        fams = _local_eta_families(gamma, mult)
        if not fams:
            continue
        fams = np.stack(fams)
        etas = np.stack([_local_batch(fams[:, s, :], comps, h1, h2, shift=gamma.table[s])
                         for s in range(k)], axis=1)
        valid = descent_morphism_mask(d1, d2, F, etas)
        if not valid.all():
            es = False
            failures.append(f"{int((~valid).sum())} local cocycle solutions fail the prism")
        fams, etas = fams[valid], etas[valid]
        n_desc += len(fams)
        found = _isos_to_base_change(etas, fams, bc, gamma, mult, inv, cands, natural)
        for fam in fams[~found]:
            es = False
            failures.append(f"descent morphism over u={u.obj.tolist()} with "
                            f"η={fam.tolist()} is not isomorphic to bc(u)")
    return HomDescentReport(True, es, ff, len(classes), n_desc, tuple(failures))


def _isos_to_base_change(etas, fams, bc, gamma, mult, inv, cands, natural) -> np.ndarray:
    """For each η table in ``etas``, whether a local 2-isomorphism ``(F, η) => bc`` exists.

    ``cands`` holds every local transformation, row ``sum_r a_r na^(k-1-r)`` built
    from automorphisms ``a_0..a_{k-1}``; ``natural`` is its naturality mask.
    """
    d1, d2, F = bc.source, bc.target, bc.functor
    nf, na, k = len(fams), mult.shape[0], gamma.order
    eta_b = bc.eta_table()[None]
    # guided guess first: theta_s = theta_e o eta[s][e]^-1, for every theta_e
    e = gamma.identity
    guesses = mult[np.arange(na)[None, :, None], inv[fams[:, None, :, e]]]
    rows = (guesses * na ** np.arange(k - 1, -1, -1)).sum(axis=2).ravel()
    ok = two_cell_mask(cands[rows], d1, d2, F, F, np.repeat(etas, na, axis=0), eta_b,
                       natural[rows])
    found = ok.reshape(nf, na).any(axis=1)
    # exhaustive fallback over every local transformation
    for i in np.flatnonzero(~found):
        found[i] = two_cell_mask(cands, d1, d2, F, F, etas[i][None], eta_b, natural).any()
    return found
