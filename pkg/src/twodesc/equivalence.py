"""Skeletons and a budgeted decision procedure for equivalence of finite groupoids."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groupoid import (FiniteGroupoid, GroupoidFunctor, NatIso, compose_functors,
                       disjoint_union, validate_functor)
from .groups import as_one_object_groupoid, automorphism_group, find_isomorphism, group_signature
from .report import OverBudget

DEFAULT_BUDGET = 64


@dataclass(frozen=True)
class Skeleton:
    groupoid: FiniteGroupoid
    inclusion: GroupoidFunctor   # skeleton -> g
    retraction: GroupoidFunctor  # g -> skeleton
    unit: NatIso                 # inclusion o retraction => id_g, components rep(x) -> x
    automorphisms: tuple[np.ndarray, ...]  # per class: morphism ids of Aut(rep) in g

    @property
    def class_sizes(self) -> list[int]:
        return [int(a.size) for a in self.automorphisms]


def skeleton(g: FiniteGroupoid) -> Skeleton:
    """One object per isomorphism class; class ``c`` is represented by its smallest object."""
    reps = g.representatives
    labels = g.component_labels
    conn = g.connectors
    auts = []
    blocks = []
    for r in reps:
        grp, mors = automorphism_group(g, int(r))
        auts.append(mors)
        blocks.append(as_one_object_groupoid(grp))
    sk, _ = disjoint_union(blocks)
    offsets = np.cumsum([0] + [a.size for a in auts])
    incl_mor = np.concatenate(auts) if auts else np.empty(0, np.int64)
    inclusion = GroupoidFunctor(sk, g, reps, incl_mor)

    pos = np.full(g.n_morphisms, -1, dtype=np.int64)
    for c, mors in enumerate(auts):
        pos[mors] = np.arange(mors.size) + offsets[c]
    mor = np.arange(g.n_morphisms)
    # k_y^-1 o m o k_x lands in Aut(rep)
    inner = g.comp[mor, conn[g.src]]
    conj = g.comp[g.inv[conn[g.tgt]], inner]
    retraction = GroupoidFunctor(g, sk, labels, pos[conj])
    unit = NatIso(compose_functors(inclusion, retraction),
                  GroupoidFunctor(g, g, np.arange(g.n_objects), mor), conn)
    return Skeleton(sk, inclusion, retraction, unit, tuple(auts))


@dataclass(frozen=True)
class EquivalenceWitness:
    """A functor plus the data showing it is an equivalence.

    ``ess_source[z]`` is a source object and ``ess_iso[z]`` an isomorphism
    ``functor(ess_source[z]) -> z`` in the target.
    """

    functor: GroupoidFunctor
    ess_source: np.ndarray
    ess_iso: np.ndarray
    full: bool
    faithful: bool

    def verify(self) -> bool:
        f = self.functor
        h = f.target
        if not validate_functor(f):
            return False
        if self.ess_source.shape != (h.n_objects,):
            return False
        z = np.arange(h.n_objects)
        ok_ess = (np.all(h.src[self.ess_iso] == f.obj[self.ess_source])
                  and np.all(h.tgt[self.ess_iso] == z))
        full, faithful = full_and_faithful(f)
        return bool(ok_ess and full and faithful and self.full and self.faithful)


def full_and_faithful(f: GroupoidFunctor) -> tuple[bool, bool]:
    g, h = f.source, f.target
    n, nh = g.n_objects, h.n_objects
    if g.n_morphisms:
        key = (g.src * n + g.tgt) * max(h.n_morphisms, 1) + f.mor
        faithful = np.unique(key).size == g.n_morphisms
    else:
        faithful = True
    cg = np.diff(g._hom_csr[0]).reshape(n, n) if n else np.zeros((0, 0))
    ch = np.diff(h._hom_csr[0]).reshape(nh, nh) if nh else np.zeros((0, 0))
    full = bool(np.array_equal(cg, ch[f.obj[:, None], f.obj[None, :]])) if n else True
    return bool(full and faithful), bool(faithful)


def functor_is_equivalence(f: GroupoidFunctor) -> bool:
    full, faithful = full_and_faithful(f)
    hit = np.zeros(f.target.n_components, dtype=bool)
    hit[f.target.component_labels[f.obj]] = True
    return bool(full and faithful and hit.all())


def are_equivalent(g: FiniteGroupoid, h: FiniteGroupoid,
                   budget: int = DEFAULT_BUDGET) -> EquivalenceWitness | None:
    """Witness of ``g ~ h``, or ``None`` if they are not equivalent.

    Raises ``OverBudget`` when either skeleton has more than ``budget``
    morphisms; the search is exhaustive below that cap.
    """
    sg, sh = skeleton(g), skeleton(h)
    for s, name in ((sg, "first"), (sh, "second")):
        if s.groupoid.n_morphisms > budget:
            raise OverBudget(f"{name} skeleton has {s.groupoid.n_morphisms} morphisms "
                             f"(budget {budget})")
    if len(sg.automorphisms) != len(sh.automorphisms):
        return None
    groups_g = [automorphism_group(g, int(r))[0] for r in g.representatives]
    groups_h = [automorphism_group(h, int(r))[0] for r in h.representatives]
    sig_h = [group_signature(x) for x in groups_h]
    used = [False] * len(groups_h)
    match: list[tuple[int, np.ndarray]] = []
    for c, gc in enumerate(groups_g):
        sig = group_signature(gc)
        for d, hd in enumerate(groups_h):
            if used[d] or sig_h[d] != sig:
                continue
            iso = find_isomorphism(gc, hd)
            if iso is not None:
                used[d] = True
                match.append((d, iso))
                break
        else:
            return None

    off_g = np.cumsum([0] + sg.class_sizes)
    off_h = np.cumsum([0] + sh.class_sizes)
    theta_obj = np.array([d for d, _ in match], dtype=np.int64)
    theta_mor = np.empty(sg.groupoid.n_morphisms, dtype=np.int64)
    for c, (d, iso) in enumerate(match):
        theta_mor[off_g[c]:off_g[c + 1]] = iso + off_h[d]
    theta = GroupoidFunctor(sg.groupoid, sh.groupoid, theta_obj, theta_mor)
    functor = compose_functors(sh.inclusion, compose_functors(theta, sg.retraction))

    back = np.empty(len(match), dtype=np.int64)
    back[theta_obj] = np.arange(len(match))
    ess_source = g.representatives[back[h.component_labels]]
    ess_iso = h.connectors.copy()
    full, faithful = full_and_faithful(functor)
    return EquivalenceWitness(functor, ess_source, ess_iso, full, faithful)
