"""Compare the numba and numpy backends on the two hot kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel is called directly on inputs large enough to dominate Python
overhead. Both backends must return identical results before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from twodesc import _accel, kernels
from twodesc.catalog import B, dihedral8
from twodesc.descent_data import action_to_descent
from twodesc.groupoid import codiscrete, power, product
from twodesc.groups import GroupAction, cyclic, direct_product, klein_four, symmetric, trivial_action
from twodesc.weak_action import action_on_one_object, permutation_action


def assoc_cases():
    yield "B(S3)^3", power(B(symmetric(3)), 3)
    yield "B(D8) x codiscrete(6)", product([B(dihedral8()), codiscrete(6)])


def fixed_point_cases():
    v4, s3 = klein_four(), symmetric(3)
    g = direct_product(s3, cyclic(4))
    yield "V4 on B(S3xC4), trivial", action_to_descent(action_on_one_object(trivial_action(v4, g)))
    z2 = cyclic(2)
    c2c4 = direct_product(z2, cyclic(4))
    auts = np.stack([np.arange(8), c2c4.inverse])
    yield "Z2 on B(C2xC4), inversion", action_to_descent(
        action_on_one_object(GroupAction(z2, c2c4, auts)))
    perms = np.stack([np.arange(24), np.roll(np.arange(24), 12)])
    yield "Z2 on codiscrete(24), shift", action_to_descent(
        permutation_action(z2, perms, "codiscrete"))


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _same(a, b) -> bool:
    if isinstance(a, tuple) and a and isinstance(a[0], np.ndarray):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return a == b


def _calls():
    for name, g in assoc_cases():
        ptr, idx = g._out_csr
        yield "assoc scan", name, lambda g=g, ptr=ptr, idx=idx: kernels.assoc_violation(
            g.comp, g.tgt, ptr, idx)
    for name, d in fixed_point_cases():
        g, G = d.groupoid, d.gamma
        f_obj, f_mor, psi = d.tables()
        ptr, idx = g._hom_csr
        plan = kernels.search_plan(G.table, G.identity)
        yield "fixed points", name, lambda g=g, G=G, f=(f_obj, f_mor, psi), p=(ptr, idx), plan=plan: \
            kernels.fixed_point_families(g.n_objects, g.comp, *p, *f, G.table, plan)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    print(f"{'kernel':<13} {'case':<30} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for label, name, fn in _calls():
        res, t = {}, {}
        for be in ("numba", "numpy"):
            _accel.set_backend(be)
            res[be] = fn()  # also compiles on first numba call
            t[be] = _time(fn, args.repeat) * 1e3
        assert _same(res["numba"], res["numpy"]), f"backends disagree on {label} / {name}"
        print(f"{label:<13} {name:<30} {t['numba']:>10.2f} {t['numpy']:>10.2f} "
              f"{t['numpy'] / t['numba']:>7.1f}x")
    _accel.set_backend("numba")


if __name__ == "__main__":
    main()
