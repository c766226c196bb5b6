"""2-descent data along a finite Galois cover, in Galois form and in cover form.

Galois form: functors ``f[s] : ^s g -> g`` and isomorphisms
``psi[t][s] : f[s] o ^s f[t] => f[ts]`` subject to one commuting square per
``(c, t, s)``.  The twisted copy ``^s g`` has the same tables as ``g``, so
``^s f[t]`` is ``f[t]`` on underlying data and ``can_s`` is the identity.

Cover form: the same data laid out over the coproducts indexed by the points
of the double, triple and quadruple overlaps.  At desk scale the cover
``S' -> S`` is the regular Γ-set, so the overlaps are Γ, Γ², Γ³ times ``S'``
and every projection is a relabeling of group indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .equivalence import functor_is_equivalence
from .groupoid import (FiniteGroupoid, GroupoidFunctor, NatIso, _check_functor_shape,
                       _check_natiso_shape, _frozen, compose_functors, disjoint_union,
                       identity_functor, identity_natiso, inverse, left_whisker,
                       naturality_mask, naturality_violation, right_whisker, validate_functor,
                       vcompose)
from .groups import FiniteGroup
from .report import PASS, InvalidInput, Report, StructuralError, fail
from .weak_action import WeakAction, validate_weak_action


@dataclass(frozen=True, eq=False)
class TwistedGroupoid(FiniteGroupoid):
    """``^s g``: the tables of ``g`` carrying the twist label ``s``."""

    twist: int = 0


def twisted(g: FiniteGroupoid, s: int) -> TwistedGroupoid:
    return TwistedGroupoid(g.n_objects, g.src, g.tgt, g.comp, g.ident, g.inv, int(s))


def can(tw: TwistedGroupoid) -> GroupoidFunctor:
    """The base-change map ``^s g -> g``; the identity on underlying tables."""
    base = FiniteGroupoid(tw.n_objects, tw.src, tw.tgt, tw.comp, tw.ident, tw.inv)
    return GroupoidFunctor(tw, base, np.arange(tw.n_objects), np.arange(tw.n_morphisms))


# ---------------------------------------------------------------------------
# Galois form


@dataclass(frozen=True, eq=False)
class GaloisDescentDatum:
    gamma: FiniteGroup
    groupoid: FiniteGroupoid
    f: tuple[GroupoidFunctor, ...]
    psi: tuple[tuple[NatIso, ...], ...]

    @property
    def k(self) -> int:
        return self.gamma.order

    def tables(self):
        """(f_obj, f_mor, psi) with shapes (k,n), (k,M), (k,k,n); read-only."""
        return self._tables

    @cached_property
    def _tables(self):
        f_obj = np.stack([x.obj for x in self.f]) if self.f else np.empty((0, 0), np.int64)
        f_mor = np.stack([x.mor for x in self.f]) if self.f else np.empty((0, 0), np.int64)
        psi = np.stack([np.stack([a.components for a in row]) for row in self.psi])
        for a in (f_obj, f_mor, psi):
            a.setflags(write=False)
        return f_obj, f_mor, psi

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaloisDescentDatum):
            return NotImplemented
        if self.gamma != other.gamma or self.groupoid != other.groupoid:
            return False
        return all(np.array_equal(a, b) for a, b in zip(self.tables(), other.tables()))

    __hash__ = object.__hash__


def galois_from_tables(gamma: FiniteGroup, g: FiniteGroupoid, f_obj, f_mor, psi) -> GaloisDescentDatum:
    k = gamma.order
    f_obj = _frozen(f_obj, 2)
    f_mor = _frozen(f_mor, 2)
    psi = _frozen(psi, 3)
    if f_obj.shape != (k, g.n_objects) or f_mor.shape != (k, g.n_morphisms) \
            or psi.shape != (k, k, g.n_objects):
        raise StructuralError("descent tables must be indexed by the group and the groupoid")
    f = tuple(GroupoidFunctor(twisted(g, s), g, f_obj[s], f_mor[s]) for s in range(k))
    for x in f:
        _check_functor_shape(x)
    rows = tuple(
        tuple(NatIso(compose_functors(f[s], f[t]), f[gamma.table[t, s]], psi[t, s])
              for s in range(k))
        for t in range(k))
    return GaloisDescentDatum(gamma, g, f, rows)


def _galois_structure(d: GaloisDescentDatum) -> None:
    k, g = d.k, d.groupoid
    if len(d.f) != k or len(d.psi) != k or any(len(r) != k for r in d.psi):
        raise StructuralError("descent data is not indexed by the group")
    for x in d.f:
        if x.source != g or x.target != g:
            raise StructuralError("f[s] must map ^s g to g")
        _check_functor_shape(x)
    for t in range(k):
        for s in range(k):
            a = d.psi[t][s]
            if a.source != compose_functors(d.f[s], d.f[t]) or a.target != d.f[d.gamma.table[t, s]]:
                raise StructuralError(f"psi[{t}][{s}] is not f[s] o f[t] => f[ts]")
            _check_natiso_shape(a)


def validate_galois_datum(d: GaloisDescentDatum) -> Report:
    """Check the 1- and 2-cell data and every cocycle square."""
    _galois_structure(d)
    k, G = d.k, d.gamma
    f, psi = d.f, d.psi
    for s in range(k):
        r = validate_functor(f[s])
        if not r:
            return fail("functor", (s,) + r.where, r.message)
        if not functor_is_equivalence(f[s]):
            return fail("equivalence", (s,), "f[s] is not an equivalence")
    for t in range(k):
        for s in range(k):
            m = naturality_violation(psi[t][s])
            if m >= 0:
                return fail("naturality", (t, s, m), "psi component is not natural")
    for c in range(k):
        for t in range(k):
            for s in range(k):
                ts = G.table[t, s]
                ct = G.table[c, t]
                # f_s ^s f_t ^ts f_c  =>  f_ts ^ts f_c  =>  f_cts
                top = vcompose(psi[c][ts], right_whisker(psi[t][s], f[c], False), False)
                # f_s ^s f_t ^ts f_c  =>  f_s ^s f_ct  =>  f_cts
                left = vcompose(psi[ct][s], left_whisker(f[s], psi[c][t], False), False)
                bad = np.flatnonzero(top.components != left.components)
                if bad.size:
                    return fail("cocycle", (c, t, s, bad[0]),
                                "square of 2-morphisms does not commute")
    return PASS


def action_to_descent(w: WeakAction) -> GaloisDescentDatum:
    """Galois datum of a weak action: ``f[s] = mu(s^-1) o can_s``.

    ``psi[t][s]`` is the four-step composite through ``mu(s^-1) mu(t^-1)``;
    the first three steps are base-change identifications (identities here),
    the last is ``alpha[s^-1][t^-1]`` whiskered by ``can_ts``.
    """
    r = validate_weak_action(w)
    if not r:
        raise InvalidInput(f"action does not validate: {r}")
    G, g, k = w.gamma, w.groupoid, w.k
    inv = G.inverse
    tw = [twisted(g, s) for s in range(k)]
    cans = [can(x) for x in tw]
    f = tuple(compose_functors(w.mu[inv[s]], cans[s]) for s in range(k))
    rows = []
    for t in range(k):
        row = []
        for s in range(k):
            ts = G.table[t, s]
            start = compose_functors(f[s], f[t])
            step1 = identity_natiso(start)
            mid = compose_functors(compose_functors(w.mu[inv[s]], w.mu[inv[t]]), cans[ts])
            step2 = NatIso(start, mid, g.ident[start.obj])
            step3 = identity_natiso(mid)
            step4 = right_whisker(w.alpha[inv[s]][inv[t]], cans[ts])
            step4 = NatIso(mid, f[ts], step4.components)
            row.append(vcompose(step4, vcompose(step3, vcompose(step2, step1))))
        rows.append(tuple(row))
    return GaloisDescentDatum(G, g, f, tuple(rows))


# ---------------------------------------------------------------------------
# cover form and its index bookkeeping


def _iso2(G, s, p):
    return (G.table[s, p], p)


def _iso3(G, t, s, p):
    return (G.mul(t, s, p), G.table[s, p], p)


def _iso4(G, c, t, s, p):
    return (G.mul(c, t, s, p), G.mul(t, s, p), G.table[s, p], p)


def _decode2(G, a, b):
    """Inverse of (s, p) -> (s p, p)."""
    return (int(G.table[a, G.inverse[b]]), int(b))


def _decode3(G, a, b, c):
    """Inverse of (t, s, p) -> (t s p, s p, p)."""
    return (int(G.table[a, G.inverse[b]]), int(G.table[b, G.inverse[c]]), int(c))


@lru_cache(maxsize=None)
def _overlap_tables(table_bytes: bytes, k: int):
    """Projection bookkeeping on the triple and quadruple overlaps.

    Returns (triple, quad): ``triple[(t, s)]`` gives the φ-blocks hit by
    p12, p23, p13; ``quad[(c, t, s)]`` gives the φ-blocks under
    π12, π23, π34, π13, π24, π14 and the ψ-blocks under p123, p234, p134, p124.
    Labels are checked to be independent of the base point.
    """
    table = np.frombuffer(table_bytes, dtype=np.int64).reshape(k, k)
    e = int(np.flatnonzero(np.all(table == np.arange(k)[None, :], axis=1))[0])
    inv = np.argmax(table == e, axis=1)
    G = FiniteGroup(table, e, inv)

    def block2(pt):
        return _decode2(G, *pt)[0]

    def block3(pt):
        t, s, _ = _decode3(G, *pt)
        return t * k + s

    triple = {}
    quad = {}
    for t in range(k):
        for s in range(k):
            labels = set()
            for p in range(k):
                a, b, c = _iso3(G, t, s, p)
                labels.add((block2((a, b)), block2((b, c)), block2((a, c))))
            if len(labels) != 1:
                raise AssertionError("triple-overlap projection depends on the base point")
            triple[(t, s)] = labels.pop()
    for c in range(k):
        for t in range(k):
            for s in range(k):
                labels = set()
                for p in range(k):
                    q = _iso4(G, c, t, s, p)
                    phis = tuple(block2((q[i], q[j])) for i, j in
                                 ((0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)))
                    psis = tuple(block3((q[i], q[j], q[l])) for i, j, l in
                                 ((0, 1, 2), (1, 2, 3), (0, 2, 3), (0, 1, 3)))
                    labels.add(phis + psis)
                if len(labels) != 1:
                    raise AssertionError("quadruple-overlap projection depends on the base point")
                quad[(c, t, s)] = labels.pop()
    return triple, quad


def overlap_tables(gamma: FiniteGroup):
    return _overlap_tables(np.ascontiguousarray(gamma.table, dtype=np.int64).tobytes(), gamma.order)


@dataclass(frozen=True, eq=False)
class CoverDescentDatum:
    """φ as σ-tagged blocks over the double overlap, ψ as (τ,σ)-tagged blocks.

    ``phi_obj[s]``, ``phi_mor[s]``: block ``s`` of φ : p1*X' -> p2*X'.
    ``psi[t * k + s]``: block ``(t, s)`` of ψ : p23*φ o p12*φ => p13*φ.
    """

    gamma: FiniteGroup
    groupoid: FiniteGroupoid
    phi_obj: np.ndarray
    phi_mor: np.ndarray
    psi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "phi_obj", _frozen(self.phi_obj, 2))
        object.__setattr__(self, "phi_mor", _frozen(self.phi_mor, 2))
        object.__setattr__(self, "psi", _frozen(self.psi, 2))

    @property
    def k(self) -> int:
        return self.gamma.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoverDescentDatum):
            return NotImplemented
        return (self.gamma == other.gamma and self.groupoid == other.groupoid
                and np.array_equal(self.phi_obj, other.phi_obj)
                and np.array_equal(self.phi_mor, other.phi_mor)
                and np.array_equal(self.psi, other.psi))

    __hash__ = object.__hash__

    def phi_functor(self) -> GroupoidFunctor:
        """φ as one block-diagonal functor between the |Γ|-fold coproducts."""
        g, k = self.groupoid, self.k
        p1, _ = disjoint_union([g] * k)
        n, m = g.n_objects, g.n_morphisms
        obj = (self.phi_obj + (np.arange(k) * n)[:, None]).ravel()
        mor = (self.phi_mor + (np.arange(k) * m)[:, None]).ravel()
        return GroupoidFunctor(p1, p1, obj, mor)


def galois_to_cover(d: GaloisDescentDatum) -> CoverDescentDatum:
    f_obj, f_mor, psi = d.tables()
    k, n = d.k, d.groupoid.n_objects
    return CoverDescentDatum(d.gamma, d.groupoid, f_obj, f_mor, psi.reshape(k * k, n))


def cover_to_galois(c: CoverDescentDatum) -> GaloisDescentDatum:
    k, n = c.k, c.groupoid.n_objects
    if c.psi.shape != (k * k, n):
        raise StructuralError("ψ must have one block per (t, s)")
    return galois_from_tables(c.gamma, c.groupoid, c.phi_obj, c.phi_mor, c.psi.reshape(k, k, n))


def validate_cover_datum(c: CoverDescentDatum) -> Report:
    """Check φ, ψ and the tetrahedron of 2-morphisms on every quadruple-overlap block."""
    g, k = c.groupoid, c.k
    n, m = g.n_objects, g.n_morphisms
    if c.phi_obj.shape != (k, n) or c.phi_mor.shape != (k, m) or c.psi.shape != (k * k, n):
        raise StructuralError("cover datum blocks do not match the group and groupoid")
    triple, quad = overlap_tables(c.gamma)
    phis = [GroupoidFunctor(g, g, c.phi_obj[s], c.phi_mor[s]) for s in range(k)]
    for x in phis:
        _check_functor_shape(x)
    psis = {}
    for (t, s), (b12, b23, b13) in triple.items():
        src = compose_functors(phis[b23], phis[b12])
        a = NatIso(src, phis[b13], c.psi[t * k + s])
        _check_natiso_shape(a)
        psis[t * k + s] = a
    for s, x in enumerate(phis):
        r = validate_functor(x)
        if not r:
            return fail("functor", (s,) + r.where, r.message)
        if not functor_is_equivalence(x):
            return fail("equivalence", (s,), "φ block is not an equivalence")
    for b, a in psis.items():
        mm = naturality_violation(a)
        if mm >= 0:
            return fail("naturality", divmod(b, k) + (mm,), "ψ block is not natural")
    for (cc, t, s), labels in quad.items():
        pi12, pi23, pi34, pi13, pi24, pi14 = labels[:6]
        p123, p234, p134, p124 = labels[6:]
        # (π34*φ)_*(ψ123) then ψ134
        upper = g.comp[c.psi[p134], c.phi_mor[pi34][c.psi[p123]]]
        # (π12*φ)^*(ψ234) then ψ124
        lower = g.comp[c.psi[p124], c.psi[p234][c.phi_obj[pi12]]]
        bad = np.flatnonzero(upper != lower)
        if bad.size:
            return fail("tetrahedron", (cc, t, s, bad[0]),
                        "the two composites over the quadruple overlap differ")
    return PASS


# ---------------------------------------------------------------------------
# morphisms of descent data


@dataclass(frozen=True, eq=False)
class DescentMorphism:
    """``functor : g1 -> g2`` with ``eta[s] : functor o f1[s] => f2[s] o ^s functor``."""

    source: GaloisDescentDatum
    target: GaloisDescentDatum
    functor: GroupoidFunctor
    eta: tuple[NatIso, ...]

    def eta_table(self) -> np.ndarray:
        return np.stack([a.components for a in self.eta])


def descent_morphism_from_tables(d1, d2, f_obj, f_mor, eta) -> DescentMorphism:
    F = GroupoidFunctor(d1.groupoid, d2.groupoid, f_obj, f_mor)
    _check_functor_shape(F)
    eta = np.asarray(eta, dtype=np.int64)
    if eta.shape != (d1.k, d1.groupoid.n_objects):
        raise StructuralError("η must have one component per (s, object)")
    etas = tuple(NatIso(compose_functors(F, d1.f[s]), compose_functors(d2.f[s], F), eta[s])
                 for s in range(d1.k))
    return DescentMorphism(d1, d2, F, etas)


def _morphism_structure(mph: DescentMorphism) -> None:
    d1, d2, F = mph.source, mph.target, mph.functor
    if d1.gamma != d2.gamma:
        raise StructuralError("descent data over different groups")
    if F.source != d1.groupoid or F.target != d2.groupoid:
        raise StructuralError("functor does not connect the underlying groupoids")
    _check_functor_shape(F)
    if len(mph.eta) != d1.k:
        raise StructuralError("one η per group element is required")
    f1_obj, f1_mor, _ = d1.tables()
    f2_obj, f2_mor, _ = d2.tables()
    for s, a in enumerate(mph.eta):
        # endpoints compared on tables: F o f1[s] and f2[s] o F
        ends = ((a.source, F.obj[f1_obj[s]], F.mor[f1_mor[s]]),
                (a.target, f2_obj[s][F.obj], f2_mor[s][F.mor]))
        for fun, obj, mor in ends:
            if not (np.array_equal(fun.obj, obj) and np.array_equal(fun.mor, mor)
                    and fun.source == d1.groupoid and fun.target == d2.groupoid):
                raise StructuralError(f"η[{s}] is not F o f1[s] => f2[s] o F")
        _check_natiso_shape(a)


def validate_descent_morphism(mph: DescentMorphism) -> Report:
    _morphism_structure(mph)
    d1, d2, F, eta = mph.source, mph.target, mph.functor, mph.eta
    k = d1.k
    r = validate_functor(F)
    if not r:
        return fail("functor", r.where, r.message)
    for s in range(k):
        m = naturality_violation(eta[s])
        if m >= 0:
            return fail("naturality", (s, m), "η component is not natural")
    lhs, rhs = _prism_sides(mph.eta_table()[None], F, d1, d2)
    lhs, rhs = lhs[0], rhs[0]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        t, s, x = (int(v) for v in bad[0])
        return fail("compatibility", (t, s, x), "the two composites F f1_s f1_t => f2_ts F differ")
    return PASS


def _prism_sides(E: np.ndarray, F: GroupoidFunctor, d1: GaloisDescentDatum,
                 d2: GaloisDescentDatum) -> tuple[np.ndarray, np.ndarray]:
    """Both composites ``F f1_s f1_t => f2_ts F`` for a batch ``E`` of η tables (B, k, n).

    Returns arrays of shape (B, k, k, n) indexed by (batch, t, s, x).
    """
    comp = d2.groupoid.comp
    k = d1.k
    ar = np.arange(k)
    f1_obj, _, psi1 = d1.tables()
    _, f2_mor, psi2 = d2.tables()
    # F f1_s f1_t => F f1_ts => f2_ts F
    lhs = comp[E[:, d1.gamma.table], F.mor[psi1][None]]
    # F f1_s f1_t => f2_s F f1_t => f2_s f2_t F => f2_ts F, one whisker per step
    step1 = E[:, ar[None, :, None], f1_obj[:, None, :]]
    step2 = f2_mor[ar[None, None, :, None], E[:, :, None, :]]
    step3 = psi2[:, :, F.obj][None]
    rhs = comp[step3, comp[step2, step1]]
    return lhs, rhs


def descent_morphism_mask(d1: GaloisDescentDatum, d2: GaloisDescentDatum, F: GroupoidFunctor,
                          etas: np.ndarray) -> np.ndarray:
    """Which η tables in the batch ``etas`` (B, k, n) make ``(F, η)`` a descent morphism.

    ``F`` must already be a valid functor; checks naturality and compatibility.
    """
    E = np.asarray(etas, dtype=np.int64)
    g, h = d1.groupoid, d2.groupoid
    f1_obj, f1_mor, _ = d1.tables()
    _, f2_mor, _ = d2.tables()
    ok = np.ones(E.shape[0], dtype=bool)
    m = g.generating_morphisms
    for s in range(d1.k):
        # eta_s[y] o F f1_s(m) == f2_s F(m) o eta_s[x]
        lhs = h.comp[E[:, s][:, g.tgt[m]], F.mor[f1_mor[s][m]][None]]
        rhs = h.comp[f2_mor[s][F.mor[m]][None], E[:, s][:, g.src[m]]]
        ok &= np.all(lhs == rhs, axis=1)
    lhs, rhs = _prism_sides(E, F, d1, d2)
    return ok & np.all((lhs == rhs).reshape(E.shape[0], -1), axis=1)


def identity_descent_morphism(d: GaloisDescentDatum) -> DescentMorphism:
    F = identity_functor(d.groupoid)
    eta = tuple(identity_natiso(compose_functors(F, d.f[s])) for s in range(d.k))
    eta = tuple(NatIso(a.source, compose_functors(d.f[s], F), a.components)
                for s, a in enumerate(eta))
    return DescentMorphism(d, d, F, eta)


def compose_descent_morphisms(b: DescentMorphism, a: DescentMorphism) -> DescentMorphism:
    """``b o a``: functor ``G o F``, η pasted as ``theta_s F . G eta_s``."""
    if a.target.groupoid != b.source.groupoid:
        raise StructuralError("descent morphisms are not composable")
    F, G = a.functor, b.functor
    eta = []
    for s in range(a.source.k):
        first = left_whisker(G, a.eta[s])
        second = right_whisker(b.eta[s], F)
        eta.append(NatIso(compose_functors(compose_functors(G, F), a.source.f[s]),
                          compose_functors(b.target.f[s], compose_functors(G, F)),
                          vcompose(second, first).components))
    return DescentMorphism(a.source, b.target, compose_functors(G, F), tuple(eta))


def unit_descent_morphism(w: WeakAction, d: GaloisDescentDatum | None = None) -> DescentMorphism:
    """``(mu(e), eta)`` on the datum of ``w``; ``eta[s]`` passes through ``f[s]`` via beta."""
    d = d if d is not None else action_to_descent(w)
    g = w.groupoid
    F = GroupoidFunctor(g, g, w.mu[w.gamma.identity].obj, w.mu[w.gamma.identity].mor)
    beta = NatIso(F, identity_functor(g), w.beta.components)
    eta = []
    for s in range(d.k):
        fs = GroupoidFunctor(g, g, d.f[s].obj, d.f[s].mor)
        # mu(e) f_s => f_s => f_s mu(e)
        down = right_whisker(beta, fs)
        up = inverse(left_whisker(fs, beta))
        eta.append(NatIso(compose_functors(F, d.f[s]), compose_functors(d.f[s], F),
                          vcompose(up, down).components))
    return DescentMorphism(d, d, F, tuple(eta))


def descent_2morphism_mask(thetas, a: DescentMorphism, b: DescentMorphism) -> np.ndarray:
    """Vectorized 2-morphism test: row ``i`` of ``thetas`` holds the components of a
    candidate ``a.functor => b.functor``; returns which rows are 2-morphisms.

    Condition per ``s`` and object ``x``:
    ``b.eta[s][x] o theta[f1_s x] == f2_s(theta[x]) o a.eta[s][x]``, plus naturality.
    Rows must already have the right endpoints.
    """
    return two_cell_mask(thetas, a.source, a.target, a.functor, b.functor,
                         a.eta_table()[None], b.eta_table()[None])


def two_cell_mask(thetas, d1: GaloisDescentDatum, d2: GaloisDescentDatum, F: GroupoidFunctor,
                  G: GroupoidFunctor, eta_a: np.ndarray, eta_b: np.ndarray,
                  natural: np.ndarray | None = None) -> np.ndarray:
    """Row-wise form of :func:`descent_2morphism_mask`; ``eta_a``/``eta_b`` are (B or 1, k, n).

    ``natural`` may carry an already computed naturality mask for the rows.
    """
    t = np.asarray(thetas, dtype=np.int64)
    h = F.target
    f1_obj, _, _ = d1.tables()
    _, f2_mor, _ = d2.tables()
    ok = naturality_mask(t, F, G) if natural is None else natural.copy()
    for s in range(d1.k):
        lhs = h.comp[eta_b[:, s], t[:, f1_obj[s]]]
        rhs = h.comp[f2_mor[s][t], eta_a[:, s]]
        ok &= np.all(lhs == rhs, axis=1)
    return ok


def validate_descent_2morphism(theta: NatIso, a: DescentMorphism, b: DescentMorphism) -> Report:
    """Check ``theta : a.functor => b.functor`` is a 2-morphism of descent morphisms."""
    if a.source != b.source or a.target != b.target:
        raise StructuralError("2-morphism between descent morphisms with different endpoints")
    if theta.source != a.functor or theta.target != b.functor:
        raise StructuralError("theta does not connect the two functors")
    _check_natiso_shape(theta)
    m = naturality_violation(theta)
    if m >= 0:
        return fail("naturality", (m,), "theta is not natural")
    if not descent_2morphism_mask(theta.components[None, :], a, b)[0]:
        return fail("2-compatibility", (), "theta does not intertwine the η families")
    return PASS
