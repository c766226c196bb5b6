"""Finite groups by multiplication table, actions by automorphisms, and B(A)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .groupoid import FiniteGroupoid, _frozen
from .report import PASS, OverBudget, Report, StructuralError, fail

MAX_FIXTURE_ORDER = 24


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """``table[a, b]`` is the product ``a * b``."""

    table: np.ndarray
    identity: int
    inverse: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "table", _frozen(self.table, 2))
        object.__setattr__(self, "inverse", _frozen(self.inverse, 1))
        object.__setattr__(self, "identity", int(self.identity))

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def mul(self, *xs: int) -> int:
        out = self.identity
        for x in xs:
            out = int(self.table[out, x])
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return (self.identity == other.identity and np.array_equal(self.table, other.table)
                and np.array_equal(self.inverse, other.inverse))

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        label = self.name or "FiniteGroup"
        return f"{label}(order={self.order})"

    @property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        for a in range(self.order):
            x, k = a, 1
            while x != self.identity:
                x = int(self.table[x, a])
                k += 1
            orders[a] = k
        return orders

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))


def validate_group(g: FiniteGroup) -> Report:
    n = g.order
    t = g.table
    if t.shape != (n, n) or g.inverse.shape != (n,):
        raise StructuralError("group tables have inconsistent sizes")
    if n == 0:
        raise StructuralError("a group has at least one element")
    if t.min() < 0 or t.max() >= n or g.inverse.min() < 0 or g.inverse.max() >= n \
            or not 0 <= g.identity < n:
        raise StructuralError("group table refers outside the element range")
    e = g.identity
    bad = np.flatnonzero((t[e] != np.arange(n)) | (t[:, e] != np.arange(n)))
    if bad.size:
        return fail("identity", (bad[0],))
    bad = np.flatnonzero((t[np.arange(n), g.inverse] != e) | (t[g.inverse, np.arange(n)] != e))
    if bad.size:
        return fail("inverse", (bad[0],))
    lhs = t[t[:, :, None], np.arange(n)[None, None, :]]  # (ab)c
    rhs = t[np.arange(n)[:, None, None], t[None, :, :]]  # a(bc)
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        return fail("associativity", tuple(bad[0]))
    return PASS


def _from_table(table, name: str = "") -> FiniteGroup:
    table = np.asarray(table, dtype=np.int64)
    n = table.shape[0]
    e = int(np.flatnonzero(np.all(table == np.arange(n)[None, :], axis=1))[0])
    inv = np.argmax(table == e, axis=1)
    return FiniteGroup(table, e, inv, name)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], 0, [0], "C1")


def cyclic(n: int) -> FiniteGroup:
    if not 1 <= n <= MAX_FIXTURE_ORDER:
        raise ValueError(f"cyclic({n}): order must be in 1..{MAX_FIXTURE_ORDER}")
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, 0, (-a) % n, f"C{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Element ``i * |b| + j`` is the pair ``(i, j)``."""
    na, nb = a.order, b.order
    i, j = np.divmod(np.arange(na * nb), nb)
    table = a.table[i[:, None], i[None, :]] * nb + b.table[j[:, None], j[None, :]]
    name = f"{a.name}x{b.name}" if a.name and b.name else ""
    return FiniteGroup(table, a.identity * nb + b.identity, a.inverse[i] * nb + b.inverse[j], name)


def symmetric(n: int) -> FiniteGroup:
    """Permutations of ``range(n)`` in lexicographic order; ``p*q`` applies ``q`` first."""
    if not 1 <= n <= 4:
        raise ValueError(f"symmetric({n}): only n in 1..4 is supported")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = np.array([[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms])
    return _from_table(table, f"S{n}")


def permutation_group(gens, degree: int, name: str = "") -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    """Closure of permutation generators; returns the group and its elements."""
    ident = tuple(range(degree))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in seen:
                    seen.add(q)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    elems.sort()
    index = {p: i for i, p in enumerate(elems)}
    table = np.array([[index[tuple(p[q[i]] for i in range(degree))] for q in elems] for p in elems])
    return _from_table(table, name), elems


def klein_four() -> FiniteGroup:
    g = direct_product(cyclic(2), cyclic(2))
    return FiniteGroup(g.table, g.identity, g.inverse, "V4")


# ---------------------------------------------------------------------------
# brute-force structure


def closure(g: FiniteGroup, gens) -> np.ndarray:
    seen = {g.identity}
    frontier = [g.identity]
    gens = [int(x) for x in gens]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = int(g.table[a, s])
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return np.array(sorted(seen), dtype=np.int64)


def generators(g: FiniteGroup) -> list[int]:
    """A small generating set, picked greedily by decreasing element order."""
    orders = g.element_orders
    candidates = sorted(range(g.order), key=lambda a: (-orders[a], a))
    gens: list[int] = []
    span = {g.identity}
    for a in candidates:
        if len(span) == g.order:
            break
        if a not in span:
            gens.append(a)
            span = set(closure(g, gens).tolist())
    return gens


def center(g: FiniteGroup) -> np.ndarray:
    return np.flatnonzero(np.all(g.table == g.table.T, axis=1))


def centralizer(g: FiniteGroup, a: int) -> np.ndarray:
    return np.flatnonzero(g.table[a, :] == g.table[:, a])


def conjugacy_classes(g: FiniteGroup) -> list[np.ndarray]:
    seen = np.zeros(g.order, dtype=bool)
    out = []
    for a in range(g.order):
        if seen[a]:
            continue
        cls = np.unique(g.table[g.table[np.arange(g.order), a], g.inverse])
        seen[cls] = True
        out.append(cls)
    return out


def subgroup(g: FiniteGroup, elements) -> tuple[FiniteGroup, np.ndarray]:
    """The subgroup on ``elements`` (sorted), re-indexed 0..k-1, and its embedding."""
    elems = np.unique(np.asarray(elements, dtype=np.int64))
    pos = np.full(g.order, -1, dtype=np.int64)
    pos[elems] = np.arange(elems.size)
    table = pos[g.table[elems[:, None], elems[None, :]]]
    if (table < 0).any() or pos[g.identity] < 0:
        raise StructuralError("elements are not closed under multiplication")
    return FiniteGroup(table, pos[g.identity], pos[g.inverse[elems]]), elems


def _extend(g: FiniteGroup, h: FiniteGroup, gens, images) -> np.ndarray | None:
    """Extend generator images to a homomorphism on their span, or None on conflict."""
    phi = np.full(g.order, -1, dtype=np.int64)
    phi[g.identity] = h.identity
    frontier = [g.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for s, t in zip(gens, images):
                b = int(g.table[a, s])
                val = int(h.table[phi[a], t])
                if phi[b] < 0:
                    phi[b] = val
                    nxt.append(b)
                elif phi[b] != val:
                    return None
        frontier = nxt
    return phi


def homomorphisms(g: FiniteGroup, h: FiniteGroup, limit: int | None = None,
                  injective: bool = False) -> list[np.ndarray]:
    """Every homomorphism ``g -> h`` as an element map, in lexicographic order.

    Raises ``OverBudget`` when more than ``limit``
    partial assignments would be explored.
    """
    gens = generators(g)
    og, oh = g.element_orders, h.element_orders
    cand = []
    for s in gens:
        ok = (oh == og[s]) if injective else (og[s] % oh == 0)
        cand.append(np.flatnonzero(ok))
    found: list[np.ndarray] = []
    work = 0

    def dfs(i: int, images: list[int]):
        nonlocal work
        if i == len(gens):
            phi = _extend(g, h, gens, images)
            if phi is not None and (not injective or np.unique(phi).size == g.order):
                found.append(phi)
            return
        for t in cand[i]:
            work += 1
            if limit is not None and work > limit:
                raise OverBudget(f"homomorphism search exceeded {limit} steps")
            imgs = images + [int(t)]
            if _extend(g, h, gens[:i + 1], imgs) is None:
                continue
            dfs(i + 1, imgs)

    if not gens:
        return [np.full(g.order, h.identity, dtype=np.int64)]
    dfs(0, [])
    found.sort(key=lambda phi: tuple(phi))
    return found


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> np.ndarray | None:
    if g.order != h.order:
        return None
    if sorted(g.element_orders.tolist()) != sorted(h.element_orders.tolist()):
        return None
    gens = generators(g)
    og, oh = g.element_orders, h.element_orders
    cand = [np.flatnonzero(oh == og[s]) for s in gens]

    def dfs(i: int, images: list[int]):
        if i == len(gens):
            phi = _extend(g, h, gens, images)
            if phi is not None and np.unique(phi).size == g.order:
                return phi
            return None
        for t in cand[i]:
            imgs = images + [int(t)]
            if _extend(g, h, gens[:i + 1], imgs) is None:
                continue
            res = dfs(i + 1, imgs)
            if res is not None:
                return res
        return None

    if not gens:
        return np.array([h.identity], dtype=np.int64)
    return dfs(0, [])


def is_homomorphism(g: FiniteGroup, h: FiniteGroup, phi) -> bool:
    phi = np.asarray(phi)
    return bool(np.array_equal(phi[g.table], h.table[phi[:, None], phi[None, :]]))


# ---------------------------------------------------------------------------
# actions and one-object groupoids


@dataclass(frozen=True, eq=False)
class GroupAction:
    """``auts[s]`` is the automorphism of ``group`` by which ``s`` acts (on the left)."""

    gamma: FiniteGroup
    group: FiniteGroup
    auts: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "auts", _frozen(self.auts, 2))

    def act(self, s: int, a: int) -> int:
        return int(self.auts[s, a])


def validate_action(w: GroupAction) -> Report:
    k, n = w.gamma.order, w.group.order
    if w.auts.shape != (k, n):
        raise StructuralError(f"action table must be {k}x{n}")
    if w.auts.min() < 0 or w.auts.max() >= n:
        raise StructuralError("action refers outside the acted-on group")
    for s in range(k):
        if not is_homomorphism(w.group, w.group, w.auts[s]) or np.unique(w.auts[s]).size != n:
            return fail("automorphism", (s,), "element does not act by an automorphism")
    if not np.array_equal(w.auts[w.gamma.identity], np.arange(n)):
        return fail("unit", (w.gamma.identity,), "identity does not act trivially")
    for s in range(k):
        for t in range(k):
            if not np.array_equal(w.auts[s][w.auts[t]], w.auts[w.gamma.table[s, t]]):
                return fail("multiplicativity", (s, t), "a_s o a_t != a_st")
    return PASS


def trivial_action(gamma: FiniteGroup, group: FiniteGroup) -> GroupAction:
    return GroupAction(gamma, group, np.tile(np.arange(group.order), (gamma.order, 1)))


def action_from_generator_images(gamma: FiniteGroup, group: FiniteGroup, images: dict) -> GroupAction:
    """Extend ``{gen: automorphism}`` to the whole of ``gamma``."""
    auts = np.full((gamma.order, group.order), -1, dtype=np.int64)
    auts[gamma.identity] = np.arange(group.order)
    frontier = [gamma.identity]
    while frontier:
        nxt = []
        for s in frontier:
            for gen, img in images.items():
                t = int(gamma.table[s, gen])
                val = auts[s][np.asarray(img)]
                if auts[t, 0] < 0:
                    auts[t] = val
                    nxt.append(t)
                elif not np.array_equal(auts[t], val):
                    raise StructuralError("generator images do not define an action")
        frontier = nxt
    return GroupAction(gamma, group, auts)


def as_one_object_groupoid(a: FiniteGroup) -> FiniteGroupoid:
    """B(A): one object, morphism ``i`` is element ``i``, ``g o f = g * f``."""
    n = a.order
    return FiniteGroupoid(1, np.zeros(n), np.zeros(n), a.table, [a.identity], a.inverse)


def automorphism_group(g: FiniteGroupoid, x: int) -> tuple[FiniteGroup, np.ndarray]:
    """Aut(x) as a group, and the morphism index of each of its elements."""
    mors = np.sort(g.automorphisms(x))
    pos = np.full(g.n_morphisms, -1, dtype=np.int64)
    pos[mors] = np.arange(mors.size)
    table = pos[g.comp[mors[:, None], mors[None, :]]]
    return FiniteGroup(table, pos[g.ident[x]], pos[g.inv[mors]]), mors


def group_signature(g: FiniteGroup) -> tuple:
    """Cheap isomorphism invariant used to bucket candidates."""
    orders = g.element_orders
    return (g.order, tuple(sorted(orders.tolist())), int(center(g).size),
            len(conjugacy_classes(g)))

