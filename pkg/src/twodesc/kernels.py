"""Hot inner loops, each with a numba kernel and a numpy fallback.

The wrappers at the bottom pick the implementation from ``_accel.backend()``.
Both paths must return identical results; ``tests/test_kernels.py`` checks that.
"""

from __future__ import annotations

import numpy as np

from . import _accel
from ._accel import njit

# ---------------------------------------------------------------------------
# associativity scan over composable triples (a, then b, then c)


@njit(cache=True)
def _assoc_nb(comp, tgt, out_ptr, out_idx):
    m = tgt.shape[0]
    for a in range(m):
        y = tgt[a]
        for i in range(out_ptr[y], out_ptr[y + 1]):
            b = out_idx[i]
            ba = comp[b, a]
            z = tgt[b]
            for j in range(out_ptr[z], out_ptr[z + 1]):
                c = out_idx[j]
                if comp[c, ba] != comp[comp[c, b], a]:
                    return a, b, c
    return -1, -1, -1


def _assoc_np(comp, tgt, out_ptr, out_idx):
    n = out_ptr.shape[0] - 1
    # composable (b, c) pairs grouped by the source object of b, in (b, c) order
    pairs = []
    for y in range(n):
        bs = out_idx[out_ptr[y]:out_ptr[y + 1]]
        if bs.size == 0:
            pairs.append((bs, bs))
            continue
        lens = out_ptr[tgt[bs] + 1] - out_ptr[tgt[bs]]
        pb = np.repeat(bs, lens)
        pc = np.concatenate([out_idx[out_ptr[z]:out_ptr[z + 1]] for z in tgt[bs]])
        pairs.append((pb, pc))
    for a in range(tgt.shape[0]):
        pb, pc = pairs[tgt[a]]
        if pb.size == 0:
            continue
        lhs = comp[pc, comp[pb, a]]
        rhs = comp[comp[pc, pb], a]
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            i = bad[0]
            return a, int(pb[i]), int(pc[i])
    return -1, -1, -1


# ---------------------------------------------------------------------------
# homotopy fixed points: all families phi with
#   phi[t*u] == psi[t, u, x] o f_u(phi[t]) o phi[u]      for all t, u
# where phi[s] : x -> f_s(x).  Search runs in ``order``; a level with
# forced_t >= 0 takes its value from the pair (forced_t, forced_s).


@njit(cache=True)
def _fixed_points_nb(n, comp, hom_ptr, hom_idx, f_obj, f_mor, psi, mult,
                     order, forced_t, forced_s, chk_ptr, chk_t, chk_s):
    k = order.shape[0]
    cap = 64
    out_x = np.empty(cap, np.int64)
    out_phi = np.empty((cap, k), np.int64)
    cnt = 0
    phi = np.full(k, -1, np.int64)
    cur = np.zeros(k, np.int64)
    hi = np.zeros(k, np.int64)
    for x in range(n):
        level = 0
        if forced_t[0] >= 0:
            cur[0] = 0
            hi[0] = 1
        else:
            y = f_obj[order[0], x]
            cur[0] = hom_ptr[x * n + y]
            hi[0] = hom_ptr[x * n + y + 1]
        while level >= 0:
            if cur[level] >= hi[level]:
                level -= 1
                continue
            s = order[level]
            if forced_t[level] >= 0:
                t = forced_t[level]
                u = forced_s[level]
                val = comp[psi[t, u, x], comp[f_mor[u, phi[t]], phi[u]]]
                cur[level] = hi[level]
            else:
                val = hom_idx[cur[level]]
                cur[level] += 1
            phi[s] = val
            ok = True
            for c in range(chk_ptr[level], chk_ptr[level + 1]):
                t = chk_t[c]
                u = chk_s[c]
                if phi[mult[t, u]] != comp[psi[t, u, x], comp[f_mor[u, phi[t]], phi[u]]]:
                    ok = False
                    break
            if not ok:
                continue
            if level == k - 1:
                if cnt == out_x.shape[0]:
                    grown_x = np.empty(2 * cnt, np.int64)
                    grown_phi = np.empty((2 * cnt, k), np.int64)
                    grown_x[:cnt] = out_x
                    grown_phi[:cnt] = out_phi
                    out_x = grown_x
                    out_phi = grown_phi
                out_x[cnt] = x
                out_phi[cnt] = phi
                cnt += 1
                continue
            level += 1
            if forced_t[level] >= 0:
                cur[level] = 0
                hi[level] = 1
            else:
                y = f_obj[order[level], x]
                cur[level] = hom_ptr[x * n + y]
                hi[level] = hom_ptr[x * n + y + 1]
    return out_x[:cnt].copy(), out_phi[:cnt].copy()


def _fixed_points_np(n, comp, hom_ptr, hom_idx, f_obj, f_mor, psi, mult,
                     order, forced_t, forced_s, chk_ptr, chk_t, chk_s):
    k = order.shape[0]
    xs, fams = [], []
    for x in range(n):
        # frontier rows hold phi indexed by group element; -1 = unassigned
        rows = np.full((1, k), -1, dtype=np.int64)
        for level in range(k):
            s = order[level]
            if forced_t[level] >= 0:
                t, u = forced_t[level], forced_s[level]
                rows[:, s] = comp[psi[t, u, x], comp[f_mor[u, rows[:, t]], rows[:, u]]]
            else:
                y = f_obj[s, x]
                cands = hom_idx[hom_ptr[x * n + y]:hom_ptr[x * n + y + 1]]
                rows = np.repeat(rows, cands.size, axis=0)
                rows[:, s] = np.tile(cands, rows.shape[0] // max(cands.size, 1))
            for c in range(chk_ptr[level], chk_ptr[level + 1]):
                if rows.shape[0] == 0:
                    break
                t, u = chk_t[c], chk_s[c]
                rhs = comp[psi[t, u, x], comp[f_mor[u, rows[:, t]], rows[:, u]]]
                rows = rows[rows[:, mult[t, u]] == rhs]
            if rows.shape[0] == 0:
                break
        if rows.shape[0]:
            xs.append(np.full(rows.shape[0], x, dtype=np.int64))
            fams.append(rows)
    if not xs:
        return np.empty(0, np.int64), np.empty((0, k), np.int64)
    return np.concatenate(xs), np.concatenate(fams)


def search_plan(mult: np.ndarray, identity: int):
    """Order group elements so that as many levels as possible are forced.

    Returns (order, forced_t, forced_s, chk_ptr, chk_t, chk_s).
    """
    k = mult.shape[0]
    pos = np.full(k, -1, dtype=np.int64)
    order, ft, fs = [], [], []
    while len(order) < k:
        forced = None
        for t in order:
            for u in order:
                s = int(mult[t, u])
                if pos[s] < 0 and (forced is None or s < forced[0]):
                    forced = (s, t, u)
        if forced is not None:
            s, t, u = forced
            ft.append(t)
            fs.append(u)
        else:
            free = [s for s in range(k) if pos[s] < 0 and s != identity]
            s = free[0] if free else identity
            ft.append(-1)
            fs.append(-1)
        pos[s] = len(order)
        order.append(s)
    checks = [[] for _ in range(k)]
    for t in range(k):
        for u in range(k):
            level = max(pos[t], pos[u], pos[mult[t, u]])
            checks[level].append((t, u))
    chk_ptr = np.zeros(k + 1, dtype=np.int64)
    chk_ptr[1:] = np.cumsum([len(c) for c in checks])
    flat = [p for c in checks for p in c]
    chk_t = np.array([p[0] for p in flat], dtype=np.int64)
    chk_s = np.array([p[1] for p in flat], dtype=np.int64)
    return (np.array(order, dtype=np.int64), np.array(ft, dtype=np.int64),
            np.array(fs, dtype=np.int64), chk_ptr, chk_t, chk_s)


# ---------------------------------------------------------------------------
# dispatch


def assoc_violation(comp, tgt, out_ptr, out_idx) -> tuple[int, int, int]:
    if tgt.shape[0] == 0:
        return -1, -1, -1
    if _accel.backend() == "numba":
        a, b, c = _assoc_nb(comp, tgt, out_ptr, out_idx)
        return int(a), int(b), int(c)
    return _assoc_np(comp, tgt, out_ptr, out_idx)


def fixed_point_families(n, comp, hom_ptr, hom_idx, f_obj, f_mor, psi, mult, plan):
    """Unsorted (xs, families) of every coherent family over every object."""
    k = mult.shape[0]
    if n == 0:
        return np.empty(0, np.int64), np.empty((0, k), np.int64)
    fn = _fixed_points_nb if _accel.backend() == "numba" else _fixed_points_np
    return fn(n, comp, hom_ptr, hom_idx, f_obj, f_mor, psi, mult, *plan)
