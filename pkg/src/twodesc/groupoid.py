"""Finite groupoids as explicit tables, functors between them, natural isomorphisms.

Conventions used everywhere:

* objects are ``0..n-1``; morphism ``m`` goes ``src[m] -> tgt[m]``;
* ``comp[g, f]`` is ``g o f`` (``f`` first) and ``-1`` unless ``tgt[f] == src[g]``;
* a natural isomorphism ``a : F => G`` stores ``components[x] : F(x) -> G(x)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import kernels
from .report import PASS, Report, StructuralError, fail


def _frozen(a, ndim: int | None = None) -> np.ndarray:
    if isinstance(a, np.ndarray) and a.dtype == np.int64 and not a.flags.writeable \
            and (ndim is None or a.ndim == ndim):
        return a
    arr = np.array(a, dtype=np.int64, copy=True)
    if ndim is not None and arr.ndim != ndim:
        if arr.size == 0:
            arr = arr.reshape((0,) * ndim)
        else:
            raise StructuralError(f"expected a {ndim}-d table, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _same(a: np.ndarray, b: np.ndarray) -> bool:
    return a is b or (a.shape == b.shape and a.tobytes() == b.tobytes())


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    n_objects: int
    src: np.ndarray
    tgt: np.ndarray
    comp: np.ndarray
    ident: np.ndarray
    inv: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "n_objects", int(self.n_objects))
        for name, ndim in (("src", 1), ("tgt", 1), ("comp", 2), ("ident", 1), ("inv", 1)):
            object.__setattr__(self, name, _frozen(getattr(self, name), ndim))
        if self.comp.size == 0 and self.src.size:
            raise StructuralError("composition table is empty")

    @property
    def n_morphisms(self) -> int:
        return int(self.src.shape[0])

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return (self.n_objects == other.n_objects and self.comp.shape == other.comp.shape
                and all(_same(getattr(self, k), getattr(other, k))
                        for k in ("src", "tgt", "ident", "inv", "comp")))

    def __hash__(self) -> int:
        return hash((self.n_objects, self.src.tobytes(), self.tgt.tobytes(), self.comp.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteGroupoid(objects={self.n_objects}, morphisms={self.n_morphisms})"

    # -- indexing helpers (valid groupoids only) ----------------------------

    @cached_property
    def _hom_csr(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.n_objects
        key = self.src * n + self.tgt
        order = np.argsort(key, kind="stable")
        ptr = np.zeros(n * n + 1, dtype=np.int64)
        np.add.at(ptr, key + 1, 1)
        return np.cumsum(ptr), order.astype(np.int64)

    @cached_property
    def _out_csr(self) -> tuple[np.ndarray, np.ndarray]:
        order = np.argsort(self.src, kind="stable")
        ptr = np.zeros(self.n_objects + 1, dtype=np.int64)
        np.add.at(ptr, self.src + 1, 1)
        return np.cumsum(ptr), order.astype(np.int64)

    def hom(self, x: int, y: int) -> np.ndarray:
        ptr, idx = self._hom_csr
        k = x * self.n_objects + y
        return idx[ptr[k]:ptr[k + 1]]

    def out_of(self, x: int) -> np.ndarray:
        ptr, idx = self._out_csr
        return idx[ptr[x]:ptr[x + 1]]

    def automorphisms(self, x: int) -> np.ndarray:
        return self.hom(x, x)

    def compose(self, *ms: int) -> int:
        """``compose(g, f)`` is ``g o f``; longer chains read right to left."""
        out = int(ms[-1])
        for m in reversed(ms[:-1]):
            nxt = int(self.comp[m, out])
            if nxt < 0:
                raise StructuralError(f"morphisms {m} and {out} are not composable")
            out = nxt
        return out

    @cached_property
    def composable_pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """Arrays (g, f) over every pair with ``tgt[f] == src[g]``."""
        g, f = np.nonzero(self.tgt[None, :] == self.src[:, None])
        return g.astype(np.int64), f.astype(np.int64)

    @cached_property
    def component_labels(self) -> np.ndarray:
        """Connected-component label per object, numbered by smallest member."""
        n = self.n_objects
        if n == 0:
            return np.empty(0, dtype=np.int64)
        adj = coo_matrix((np.ones(self.n_morphisms), (self.src, self.tgt)), shape=(n, n))
        _, raw = connected_components(adj, directed=False)
        _, first = np.unique(raw, return_index=True)
        relabel = np.empty(first.size, dtype=np.int64)
        relabel[np.argsort(first)] = np.arange(first.size)
        return relabel[raw]

    @property
    def n_components(self) -> int:
        labels = self.component_labels
        return int(labels.max()) + 1 if labels.size else 0

    @cached_property
    def representatives(self) -> np.ndarray:
        """Smallest object of each component."""
        labels = self.component_labels
        reps = np.full(self.n_components, -1, dtype=np.int64)
        for x in range(self.n_objects - 1, -1, -1):
            reps[labels[x]] = x
        return reps

    @cached_property
    def connectors(self) -> np.ndarray:
        """For each object x, the smallest morphism ``rep(x) -> x``."""
        reps = self.representatives[self.component_labels]
        out = np.empty(self.n_objects, dtype=np.int64)
        for x in range(self.n_objects):
            out[x] = self.hom(int(reps[x]), x)[0]
        return out

    @cached_property
    def generating_morphisms(self) -> np.ndarray:
        """Connectors plus generators of each representative's automorphism group.

        Every morphism is a composite of these and their inverses, so a
        transformation natural on them is natural everywhere.
        """
        gens = [m for x, m in enumerate(self.connectors) if m != self.ident[x]]
        for r in self.representatives:
            auts = self.automorphisms(int(r))
            span = np.zeros(self.n_morphisms, dtype=bool)
            span[self.ident[r]] = True
            for a in auts:
                if span[a]:
                    continue
                gens.append(int(a))
                # close under composition with the new generator
                while True:
                    grown = span.copy()
                    inside = np.flatnonzero(span)
                    grown[self.comp[inside, a]] = True
                    grown[self.comp[a, inside]] = True
                    inside = np.flatnonzero(grown)
                    grown[self.comp[inside[:, None], inside[None, :]].ravel()] = True
                    if grown.sum() == span.sum():
                        break
                    span = grown
        return np.array(sorted(gens), dtype=np.int64)


def validate_groupoid(g: FiniteGroupoid) -> Report:
    """Check every groupoid axiom on the full tables.

    Raises ``StructuralError`` for malformed indices; returns a failing
    ``Report`` naming the first violated axiom otherwise.
    """
    n, m = g.n_objects, g.n_morphisms
    if n < 0:
        raise StructuralError("negative object count")
    if g.tgt.shape != (m,) or g.inv.shape != (m,) or g.ident.shape != (n,):
        raise StructuralError("table lengths disagree with the morphism/object counts")
    if g.comp.shape != (m, m):
        raise StructuralError(f"composition table must be {m}x{m}, got {g.comp.shape}")
    for name, arr, hi in (("src", g.src, n), ("tgt", g.tgt, n), ("ident", g.ident, m),
                          ("inv", g.inv, m)):
        if arr.size and (arr.min() < 0 or arr.max() >= hi):
            raise StructuralError(f"{name} refers outside 0..{hi - 1}")
    if g.comp.size and (g.comp.min() < -1 or g.comp.max() >= m):
        raise StructuralError("composition table refers to unknown morphisms")
    if m == 0:
        return PASS if n == 0 else fail("identity", (0,), "object without identity")

    composable = g.tgt[None, :] == g.src[:, None]
    defined = g.comp >= 0
    bad = np.argwhere(composable != defined)
    if bad.size:
        gi, fi = bad[0]
        return fail("typing", (gi, fi), "composition defined off the composable pairs"
                    if defined[gi, fi] else "composable pair without a composite")
    gg, ff = np.nonzero(defined)
    h = g.comp[gg, ff]
    bad = np.flatnonzero((g.src[h] != g.src[ff]) | (g.tgt[h] != g.tgt[gg]))
    if bad.size:
        i = bad[0]
        return fail("typing", (gg[i], ff[i]), "composite has the wrong endpoints")

    e = g.ident
    bad = np.flatnonzero((g.src[e] != np.arange(n)) | (g.tgt[e] != np.arange(n)))
    if bad.size:
        return fail("identity", (bad[0],), "identity is not an endomorphism of its object")
    mor = np.arange(m)
    left = g.comp[e[g.tgt], mor]
    right = g.comp[mor, e[g.src]]
    bad = np.flatnonzero((left != mor) | (right != mor))
    if bad.size:
        return fail("identity", (bad[0],), "identity is not neutral")

    if np.any(g.src[g.inv] != g.tgt) or np.any(g.tgt[g.inv] != g.src):
        i = np.flatnonzero((g.src[g.inv] != g.tgt) | (g.tgt[g.inv] != g.src))[0]
        return fail("inverse", (i,), "inverse has the wrong endpoints")
    bad = np.flatnonzero((g.comp[g.inv, mor] != e[g.src]) | (g.comp[mor, g.inv] != e[g.tgt]))
    if bad.size:
        return fail("inverse", (bad[0],), "not a two-sided inverse")

    out_ptr, out_idx = g._out_csr
    a, b, c = kernels.assoc_violation(g.comp, g.tgt, out_ptr, out_idx)
    if a >= 0:
        return fail("associativity", (a, b, c), "(c o b) o a != c o (b o a)")
    return PASS


# ---------------------------------------------------------------------------
# constructors


def groupoid_from_table(n: int, src, tgt, comp) -> FiniteGroupoid:
    """Build a groupoid, deriving identities and inverses from ``comp``."""
    src = np.asarray(src, dtype=np.int64)
    tgt = np.asarray(tgt, dtype=np.int64)
    comp = np.asarray(comp, dtype=np.int64)
    m = src.shape[0]
    ident = np.full(n, -1, dtype=np.int64)
    loops = np.flatnonzero(src == tgt)
    for i in loops:
        if comp[i, i] == i:
            ident[src[i]] = i
    inv = np.full(m, -1, dtype=np.int64)
    for i in range(m):
        hits = np.flatnonzero(comp[:, i] == ident[src[i]]) if ident[src[i]] >= 0 else []
        if len(hits):
            inv[i] = hits[0]
    if (ident < 0).any() or (inv < 0).any():
        raise StructuralError("table has no identity or inverse for some entry")
    return FiniteGroupoid(n, src, tgt, comp, ident, inv)


def terminal() -> FiniteGroupoid:
    return FiniteGroupoid(1, [0], [0], [[0]], [0], [0])


def empty_groupoid() -> FiniteGroupoid:
    return FiniteGroupoid(0, [], [], np.empty((0, 0)), [], [])


def discrete(n: int) -> FiniteGroupoid:
    comp = np.full((n, n), -1, dtype=np.int64)
    comp[np.arange(n), np.arange(n)] = np.arange(n)
    return FiniteGroupoid(n, np.arange(n), np.arange(n), comp, np.arange(n), np.arange(n))


def codiscrete(n: int) -> FiniteGroupoid:
    """Exactly one morphism between any two objects; morphism ``i*n + j`` is ``i -> j``."""
    src, tgt = np.divmod(np.arange(n * n), n)
    g_i, f_i = np.meshgrid(np.arange(n * n), np.arange(n * n), indexing="ij")
    comp = np.where(tgt[f_i] == src[g_i], src[f_i] * n + tgt[g_i], -1)
    return FiniteGroupoid(n, src, tgt, comp, np.arange(n) * (n + 1), tgt * n + src)


def disjoint_union(gs) -> tuple[FiniteGroupoid, list["GroupoidFunctor"]]:
    """Coproduct with its injections; component ``i`` keeps its order, offset."""
    gs = list(gs)
    n_off = np.cumsum([0] + [g.n_objects for g in gs])
    m_off = np.cumsum([0] + [g.n_morphisms for g in gs])
    n, m = int(n_off[-1]), int(m_off[-1])
    comp = np.full((m, m), -1, dtype=np.int64)
    src, tgt, ident, inv = [], [], [], []
    for g, no, mo in zip(gs, n_off, m_off):
        src.append(g.src + no)
        tgt.append(g.tgt + no)
        ident.append(g.ident + mo)
        inv.append(g.inv + mo)
        block = g.comp
        comp[mo:mo + g.n_morphisms, mo:mo + g.n_morphisms] = np.where(block >= 0, block + mo, -1)
    cat = (lambda parts: np.concatenate(parts) if parts else np.empty(0, dtype=np.int64))
    u = FiniteGroupoid(n, cat(src), cat(tgt), comp, cat(ident), cat(inv))
    injections = [GroupoidFunctor(g, u, np.arange(g.n_objects) + no, np.arange(g.n_morphisms) + mo)
                  for g, no, mo in zip(gs, n_off, m_off)]
    return u, injections


def product(gs) -> FiniteGroupoid:
    """Cartesian product; tuples are raveled in C order (first factor slowest)."""
    gs = list(gs)
    if not gs:
        return terminal()
    nshape = tuple(g.n_objects for g in gs)
    mshape = tuple(g.n_morphisms for g in gs)
    m = int(np.prod(mshape))
    n = int(np.prod(nshape))
    parts = np.unravel_index(np.arange(m), mshape)
    src = np.ravel_multi_index(tuple(g.src[p] for g, p in zip(gs, parts)), nshape) if m else np.empty(0, np.int64)
    tgt = np.ravel_multi_index(tuple(g.tgt[p] for g, p in zip(gs, parts)), nshape) if m else np.empty(0, np.int64)
    inv = np.ravel_multi_index(tuple(g.inv[p] for g, p in zip(gs, parts)), mshape) if m else np.empty(0, np.int64)
    oparts = np.unravel_index(np.arange(n), nshape)
    ident = np.ravel_multi_index(tuple(g.ident[p] for g, p in zip(gs, oparts)), mshape) if n else np.empty(0, np.int64)
    comp = np.full((m, m), -1, dtype=np.int64)
    gg, ff = np.nonzero(tgt[None, :] == src[:, None])
    if gg.size:
        pieces = tuple(g.comp[pg[gg], pf[ff]] for g, pg, pf in zip(gs, parts, parts))
        comp[gg, ff] = np.ravel_multi_index(pieces, mshape)
    return FiniteGroupoid(n, src, tgt, comp, ident, inv)


def power(g: FiniteGroupoid, k: int) -> FiniteGroupoid:
    return product([g] * k)


def relabel(g: FiniteGroupoid, obj_perm, mor_perm) -> tuple[FiniteGroupoid, "GroupoidFunctor"]:
    """Rename object ``x`` to ``obj_perm[x]`` and morphism ``m`` to ``mor_perm[m]``.

    Returns the relabeled groupoid and the isomorphism ``g -> relabeled``.
    """
    op = np.asarray(obj_perm, dtype=np.int64)
    mp = np.asarray(mor_perm, dtype=np.int64)
    m = g.n_morphisms
    src = np.empty(m, np.int64)
    tgt = np.empty(m, np.int64)
    inv = np.empty(m, np.int64)
    src[mp] = op[g.src]
    tgt[mp] = op[g.tgt]
    inv[mp] = mp[g.inv]
    ident = np.empty(g.n_objects, np.int64)
    ident[op] = mp[g.ident]
    comp = np.full((m, m), -1, dtype=np.int64)
    gg, ff = np.nonzero(g.comp >= 0)
    comp[mp[gg], mp[ff]] = mp[g.comp[gg, ff]]
    h = FiniteGroupoid(g.n_objects, src, tgt, comp, ident, inv)
    return h, GroupoidFunctor(g, h, op, mp)


# ---------------------------------------------------------------------------
# functors


@dataclass(frozen=True, eq=False)
class GroupoidFunctor:
    source: FiniteGroupoid
    target: FiniteGroupoid
    obj: np.ndarray
    mor: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "obj", _frozen(self.obj, 1))
        object.__setattr__(self, "mor", _frozen(self.mor, 1))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, GroupoidFunctor):
            return NotImplemented
        return (_same(self.obj, other.obj) and _same(self.mor, other.mor)
                and self.source == other.source and self.target == other.target)

    def __hash__(self) -> int:
        return hash((self.obj.tobytes(), self.mor.tobytes()))

    def __repr__(self) -> str:
        return f"GroupoidFunctor(obj={self.obj.tolist()}, mor={self.mor.tolist()})"


def _check_functor_shape(f: GroupoidFunctor) -> None:
    s, t = f.source, f.target
    if f.obj.shape != (s.n_objects,) or f.mor.shape != (s.n_morphisms,):
        raise StructuralError("functor tables do not match the source groupoid")
    if (f.obj.size and (f.obj.min() < 0 or f.obj.max() >= t.n_objects)) or \
       (f.mor.size and (f.mor.min() < 0 or f.mor.max() >= t.n_morphisms)):
        raise StructuralError("functor refers outside the target groupoid")


def validate_functor(f: GroupoidFunctor) -> Report:
    _check_functor_shape(f)
    s, t = f.source, f.target
    bad = np.flatnonzero((t.src[f.mor] != f.obj[s.src]) | (t.tgt[f.mor] != f.obj[s.tgt]))
    if bad.size:
        return fail("functor-typing", (bad[0],), "image morphism has the wrong endpoints")
    bad = np.flatnonzero(f.mor[s.ident] != t.ident[f.obj])
    if bad.size:
        return fail("functor-identity", (bad[0],), "identity not preserved")
    gg, ff = s.composable_pairs
    lhs = f.mor[s.comp[gg, ff]]
    rhs = t.comp[f.mor[gg], f.mor[ff]]
    bad = np.flatnonzero(lhs != rhs)
    if bad.size:
        i = bad[0]
        return fail("functor-composition", (gg[i], ff[i]), "F(g o f) != F(g) o F(f)")
    return PASS


def identity_functor(g: FiniteGroupoid) -> GroupoidFunctor:
    return GroupoidFunctor(g, g, np.arange(g.n_objects), np.arange(g.n_morphisms))


def compose_functors(f: GroupoidFunctor, g: GroupoidFunctor) -> GroupoidFunctor:
    """``f o g``: apply ``g`` first."""
    if g.target != f.source:
        raise StructuralError("compose_functors: target of g is not the source of f")
    return GroupoidFunctor(g.source, f.target, f.obj[g.obj], f.mor[g.mor])


def constant_functor(source: FiniteGroupoid, target: FiniteGroupoid, y: int) -> GroupoidFunctor:
    return GroupoidFunctor(source, target, np.full(source.n_objects, y),
                           np.full(source.n_morphisms, target.ident[y]))


# ---------------------------------------------------------------------------
# natural isomorphisms


@dataclass(frozen=True, eq=False)
class NatIso:
    source: GroupoidFunctor
    target: GroupoidFunctor
    components: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "components", _frozen(self.components, 1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, NatIso):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and np.array_equal(self.components, other.components))

    def __hash__(self) -> int:
        return hash(self.components.tobytes())

    def __repr__(self) -> str:
        return f"NatIso(components={self.components.tolist()})"

    @property
    def domain(self) -> FiniteGroupoid:
        return self.source.source

    @property
    def codomain(self) -> FiniteGroupoid:
        return self.source.target


def _check_natiso_shape(a: NatIso) -> None:
    F, G = a.source, a.target
    if F.source != G.source or F.target != G.target:
        raise StructuralError("natural isomorphism between non-parallel functors")
    h = F.target
    c = a.components
    if c.shape != (F.source.n_objects,):
        raise StructuralError("one component per object of the source groupoid is required")
    if c.size and (c.min() < 0 or c.max() >= h.n_morphisms):
        raise StructuralError("component refers outside the target groupoid")
    bad = np.flatnonzero((h.src[c] != F.obj) | (h.tgt[c] != G.obj))
    if bad.size:
        raise StructuralError(f"component at object {bad[0]} has the wrong endpoints")


def naturality_violation(a: NatIso) -> int:
    """First morphism ``m : x -> y`` with ``a[y] o F(m) != G(m) o a[x]``, or -1."""
    F, G = a.source, a.target
    g, h = F.source, F.target
    c = a.components
    lhs = h.comp[c[g.tgt], F.mor]
    rhs = h.comp[G.mor, c[g.src]]
    bad = np.flatnonzero(lhs != rhs)
    return int(bad[0]) if bad.size else -1


def naturality_mask(thetas: np.ndarray, f: GroupoidFunctor, g: GroupoidFunctor) -> np.ndarray:
    """Row-wise naturality of candidate components ``thetas`` (B, n) for ``f => g``.

    Only the generating morphisms of the source are tested.
    """
    src = f.source
    m = src.generating_morphisms
    t = np.asarray(thetas, dtype=np.int64)
    comp = f.target.comp
    lhs = comp[t[:, src.tgt[m]], f.mor[m][None, :]]
    rhs = comp[g.mor[m][None, :], t[:, src.src[m]]]
    return np.all(lhs == rhs, axis=1)


def validate_natiso(a: NatIso) -> Report:
    _check_natiso_shape(a)
    m = naturality_violation(a)
    if m >= 0:
        return fail("naturality", (m,), "naturality square does not commute")
    return PASS


def _checked(a: NatIso, check: bool) -> NatIso:
    if check:
        r = validate_natiso(a)
        if not r:
            raise StructuralError(f"constructed transformation is not natural: {r}")
    return a


def identity_natiso(f: GroupoidFunctor) -> NatIso:
    return NatIso(f, f, f.target.ident[f.obj])


def inverse(a: NatIso) -> NatIso:
    return NatIso(a.target, a.source, a.codomain.inv[a.components])


def vcompose(b: NatIso, a: NatIso, check: bool = True) -> NatIso:
    """``b . a`` for ``a : F => G`` and ``b : G => H``."""
    if a.target != b.source:
        raise StructuralError("vcompose: a and b do not share the middle functor")
    h = a.codomain
    return _checked(NatIso(a.source, b.target, h.comp[b.components, a.components]), check)


def left_whisker(f: GroupoidFunctor, a: NatIso, check: bool = True) -> NatIso:
    """``f_*(a) : f o G => f o H`` for ``a : G => H``; component ``f(a[x])``."""
    if a.codomain != f.source:
        raise StructuralError("left_whisker: functor does not start where a ends")
    return _checked(NatIso(compose_functors(f, a.source), compose_functors(f, a.target),
                           f.mor[a.components]), check)


def right_whisker(a: NatIso, f: GroupoidFunctor, check: bool = True) -> NatIso:
    """``f^*(a) : G o f => H o f`` for ``a : G => H``; component ``a[f(x)]``."""
    if f.target != a.domain:
        raise StructuralError("right_whisker: functor does not land where a starts")
    return _checked(NatIso(compose_functors(a.source, f), compose_functors(a.target, f),
                           a.components[f.obj]), check)


def hcompose(b: NatIso, a: NatIso, check: bool = True) -> NatIso:
    """Horizontal composite ``b * a : G o F => G' o F'`` for ``a : F => F'``, ``b : G => G'``."""
    return vcompose(left_whisker(b.target, a, check), right_whisker(b, a.source, check), check)


def natural_transformations(f: GroupoidFunctor, g: GroupoidFunctor) -> list[NatIso]:
    """Every natural isomorphism ``f => g``, in lexicographic component order.

    A component at the representative of each connected component fixes the
    rest by transport along the connectors.
    """
    if f.source != g.source or f.target != g.target:
        raise StructuralError("natural_transformations: functors are not parallel")
    s, t = f.source, f.target
    if s.n_objects == 0:
        return [NatIso(f, g, np.empty(0, np.int64))]
    labels = s.component_labels
    conn = s.connectors
    choices = []
    for c, r in enumerate(s.representatives):
        r = int(r)
        members = np.flatnonzero(labels == c)
        auts = s.automorphisms(r)
        options = []
        for cand in t.hom(int(f.obj[r]), int(g.obj[r])):
            if np.all(t.comp[cand, f.mor[auts]] == t.comp[g.mor[auts], cand]):
                k = conn[members]
                # theta[x] = g(k_x) o cand o f(k_x)^-1
                inner = t.comp[cand, t.inv[f.mor[k]]]
                options.append((members, t.comp[g.mor[k], inner]))
        choices.append(options)
    out = []
    for pick in itertools.product(*choices):
        comps = np.empty(s.n_objects, dtype=np.int64)
        for members, vals in pick:
            comps[members] = vals
        out.append(NatIso(f, g, comps))
    out.sort(key=lambda a: tuple(a.components))
    return out
