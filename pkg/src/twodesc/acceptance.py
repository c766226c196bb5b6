"""The acceptance catalog as plain functions, shared by the test suite and ``selftest``."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .catalog import (h1_fixtures, roundtrip_catalog, involution_fixtures, small_groupoids,
                      weak_action_corpus)
from .descent import base_change_torsor, descend, hom_descent_check, roundtrip_check
from .descent_data import (CoverDescentDatum, action_to_descent, cover_to_galois,
                           descent_morphism_from_tables, galois_from_tables, galois_to_cover,
                           identity_descent_morphism, unit_descent_morphism,
                           validate_cover_datum, validate_descent_morphism,
                           validate_galois_datum)
from .groups import centralizer, conjugacy_classes, cyclic, klein_four
from .oracles import (compare_with_descent, involution_pairs, naive_galois_ok,
                      naive_morphism_ok, naive_weak_action_ok)
from .report import OverBudget
from .weak_action import action_from_tables, validate_weak_action

SELFTEST_LIMIT_SECONDS = 300.0


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number}. {self.title} ({self.seconds:.1f}s): {self.detail}"


def _timed(number: int, title: str, fn) -> CriterionResult:
    t0 = time.perf_counter()
    passed, detail = fn()
    return CriterionResult(number, title, bool(passed), detail, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# single-component perturbation


def perturb(g, value: int, rng: np.random.Generator) -> int | None:
    """``value o a`` for a random non-identity automorphism ``a`` of its source, if one exists."""
    x = int(g.src[value])
    auts = [int(a) for a in g.automorphisms(x) if a != g.ident[x]]
    if not auts:
        return None
    return int(g.comp[value, auts[int(rng.integers(len(auts)))]])


def _perturbable(g, table: np.ndarray) -> np.ndarray:
    """Flat positions whose entry has a source object with a non-trivial automorphism group."""
    counts = np.diff(g._hom_csr[0]).reshape(g.n_objects, g.n_objects)[np.arange(g.n_objects),
                                                                      np.arange(g.n_objects)]
    return np.flatnonzero(counts[g.src[table.ravel()]] > 1)


def _inject(g, table: np.ndarray, rng: np.random.Generator) -> np.ndarray | None:
    where = _perturbable(g, table)
    if where.size == 0:
        return None
    pos = int(where[int(rng.integers(where.size))])
    out = table.copy()
    flat = out.reshape(-1)
    flat[pos] = perturb(g, int(flat[pos]), rng)
    return out


# ---------------------------------------------------------------------------
# criteria


def criterion_1(n: int = 120, seed: int = 1) -> CriterionResult:
    def run():
        t0 = time.perf_counter()
        corpus = weak_action_corpus(n, seed)
        strict = sum(w.is_strict() for w in corpus)
        bad = [i for i, w in enumerate(corpus) if not validate_weak_action(w)]
        if bad:
            return False, f"generator produced invalid actions at {bad[:5]}"
        fails = [i for i, w in enumerate(corpus) if not validate_galois_datum(action_to_descent(w))]
        elapsed = time.perf_counter() - t0
        ok = not fails and n >= 100 and 0 < strict < n and elapsed < 60
        return ok, (f"{n - len(fails)}/{n} data validate ({strict} strict, {n - strict} weak), "
                    f"{elapsed:.1f}s")
    return _timed(1, "action_to_descent always yields a valid Galois datum", run)


def _bijection_pair(d) -> tuple[bool, bool]:
    c = galois_to_cover(d)
    exact = cover_to_galois(c) == d and galois_to_cover(cover_to_galois(c)) == c
    agree = bool(validate_galois_datum(d)) == bool(validate_cover_datum(c))
    return exact, agree


def criterion_2(n_valid: int = 100, n_fault: int = 30, seed: int = 2) -> CriterionResult:
    def run():
        rng = np.random.default_rng(seed)
        data = [action_to_descent(w) for w in weak_action_corpus(n_valid - 6, seed)]
        for h in list(roundtrip_catalog().values())[:3]:
            for G in (cyclic(2), cyclic(3)):
                data.append(base_change_torsor(h, G))
        mismatches = [i for i, d in enumerate(data) if _bijection_pair(d) != (True, True)]
        invalid_valid = [i for i, d in enumerate(data) if not validate_galois_datum(d)]
        faults = 0
        benign = 0
        fault_mismatch = 0
        tries = 0
        while faults < n_fault and tries < 50 * n_fault:
            tries += 1
            d = data[int(rng.integers(len(data)))]
            f_obj, f_mor, psi = d.tables()
            if tries % 2:
                new = _inject(d.groupoid, psi, rng)
                if new is None:
                    continue
                bad = galois_from_tables(d.gamma, d.groupoid, f_obj, f_mor, new)
                if naive_galois_ok(d.gamma, d.groupoid, f_obj, f_mor, new):
                    benign += 1
                    continue
                exact, agree = _bijection_pair(bad)
                ok = exact and agree and not validate_galois_datum(bad)
            else:
                c = galois_to_cover(d)
                new = _inject(d.groupoid, c.psi, rng)
                if new is None:
                    continue
                bad_c = CoverDescentDatum(c.gamma, c.groupoid, c.phi_obj, c.phi_mor, new)
                k = c.k
                if naive_galois_ok(d.gamma, d.groupoid, f_obj, f_mor, new.reshape(k, k, -1)):
                    benign += 1
                    continue
                back = cover_to_galois(bad_c)
                ok = (galois_to_cover(back) == bad_c and not validate_cover_datum(bad_c)
                      and not validate_galois_datum(back))
            faults += 1
            fault_mismatch += not ok
        passed = (len(data) >= n_valid and not mismatches and not invalid_valid
                  and faults >= 20 and fault_mismatch == 0)
        return passed, (f"{len(data) - len(mismatches)}/{len(data)} valid round trips exact with "
                        f"validity agreeing; {faults - fault_mismatch}/{faults} injected faults "
                        f"agree across encodings ({benign} benign perturbations skipped)")
    return _timed(2, "Galois and cover encodings are in exact bijection", run)


def criterion_3(budget: int = 64) -> CriterionResult:
    def run():
        groups = {"Z2": cyclic(2), "Z3": cyclic(3), "Z2xZ2": klein_four()}
        fails, undecided, total = [], [], 0
        for name, h in roundtrip_catalog().items():
            for gname, G in groups.items():
                total += 1
                try:
                    w = roundtrip_check(h, G, budget)
                except OverBudget:
                    undecided.append(f"{name}/{gname}")
                    continue
                if w is None or not w.verify():
                    fails.append(f"{name}/{gname}")
        n_h = len(roundtrip_catalog())
        ok = not fails and not undecided and n_h >= 8
        return ok, (f"{total - len(fails) - len(undecided)}/{total} witnesses over {n_h} groupoids; "
                    f"failures {fails}, undecided {undecided}")
    return _timed(3, "effectivity round trip", run)


def criterion_4() -> CriterionResult:
    def run():
        fixtures = involution_fixtures()
        wrong = []
        for name, w in fixtures.items():
            g = w.groupoid
            sigma = 1 - w.gamma.identity
            expected = involution_pairs(g, w.mu[sigma].obj, w.mu[sigma].mor,
                                        w.alpha[sigma][sigma].components)
            D = descend(action_to_descent(w))
            e = w.gamma.identity
            if not np.array_equal(D.phi[:, e], g.ident[D.base]):
                wrong.append(name)
                continue
            got = list(zip(D.base.tolist(), D.phi[:, sigma].tolist()))
            if got != expected:
                wrong.append(name)
        ok = not wrong and len(fixtures) >= 10
        return ok, f"{len(fixtures) - len(wrong)}/{len(fixtures)} fixtures agree bit-exactly; {wrong}"
    return _timed(4, "Z/2 pair set golden test", run)


def _expected_h1(name, action) -> tuple[int, list[int]]:
    """Independent expectations for the fixture pairs."""
    A = action.group
    if name == "(Z2, S3 trivial)":
        classes = [c for c in conjugacy_classes(A) if np.all(A.table[c, c] == A.identity)]
        return len(classes), sorted(int(centralizer(A, int(c[0])).size) for c in classes)
    table = {"(Z2, Z3 inversion)": (1, [1]), "(Z2, Z2 trivial)": (2, [2, 2]),
             "(Z3, Z3 trivial)": (3, [3, 3, 3])}
    return table[name]


def criterion_5() -> CriterionResult:
    def run():
        lines, ok = [], True
        for name, action in h1_fixtures().items():
            rep = compare_with_descent(action.gamma, action.group, action)
            n, orders = _expected_h1(name, action)
            good = rep.ok and rep.n_classes == n and sorted(rep.aut_orders) == orders
            ok &= good
            word = "class" if rep.n_classes == 1 else "classes"
            lines.append(f"{name}: {rep.n_classes} {word}, |Aut| {sorted(rep.aut_orders)}"
                         + ("" if good else f" (expected {n}, {orders}; {rep.message})"))
        return ok, "; ".join(lines)
    return _timed(5, "cohomology cross-validation", run)


def criterion_6(max_objects: int = 2, max_morphisms: int = 8) -> CriterionResult:
    def run():
        gs = small_groupoids(max_objects, max_morphisms)
        fails, undecided, total = [], [], 0
        for n1, h1 in gs.items():
            for n2, h2 in gs.items():
                total += 1
                r = hom_descent_check(h1, h2)
                if not r.decided:
                    undecided.append(f"{n1}->{n2}")
                elif not r.ok:
                    fails.append(f"{n1}->{n2}")
        ok = not fails and not undecided
        return ok, (f"{total - len(fails) - len(undecided)}/{total} pairs over {len(gs)} groupoids "
                    f"essentially surjective and fully faithful; failures {fails[:5]}, "
                    f"undecided {undecided[:5]}")
    return _timed(6, "functors downstairs = descent morphisms upstairs", run)


def criterion_7(n_each: int = 20, seed: int = 7) -> CriterionResult:
    def run():
        rng = np.random.default_rng(seed)
        corpus = weak_action_corpus(40, seed)
        counts = {"alpha": [0, 0], "psi": [0, 0], "eta": [0, 0]}
        benign = 0
        tries = 0
        while min(c[0] for c in counts.values()) < n_each and tries < 200 * n_each:
            tries += 1
            w = corpus[int(rng.integers(len(corpus)))]
            g, G = w.groupoid, w.gamma
            kind = ("alpha", "psi", "eta")[tries % 3]
            if counts[kind][0] >= n_each:
                continue
            if kind == "alpha":
                mu_obj, mu_mor, alpha, beta = w.tables()
                new = _inject(g, alpha, rng)
                if new is None:
                    continue
                if naive_weak_action_ok(G, g, mu_obj, mu_mor, new, beta):
                    benign += 1
                    continue
                caught = not validate_weak_action(action_from_tables(G, g, mu_obj, mu_mor, new, beta))
            elif kind == "psi":
                d = action_to_descent(w)
                f_obj, f_mor, psi = d.tables()
                new = _inject(g, psi, rng)
                if new is None:
                    continue
                if naive_galois_ok(G, g, f_obj, f_mor, new):
                    benign += 1
                    continue
                caught = not validate_galois_datum(galois_from_tables(G, g, f_obj, f_mor, new))
            else:
                d = action_to_descent(w)
                m = unit_descent_morphism(w, d) if rng.random() < 0.5 else identity_descent_morphism(d)
                eta = m.eta_table()
                new = _inject(g, eta, rng)
                if new is None:
                    continue
                if naive_morphism_ok(G, g, g, d.tables(), d.tables(), m.functor.obj,
                                     m.functor.mor, new):
                    benign += 1
                    continue
                bad = descent_morphism_from_tables(d, d, m.functor.obj, m.functor.mor, new)
                caught = not validate_descent_morphism(bad)
            counts[kind][0] += 1
            counts[kind][1] += caught
        injected = sum(c[0] for c in counts.values())
        detected = sum(c[1] for c in counts.values())
        ok = injected >= 50 and detected == injected
        per = ", ".join(f"{k} {c[1]}/{c[0]}" for k, c in counts.items())
        return ok, f"{detected}/{injected} faults detected ({per}); {benign} benign perturbations"
    return _timed(7, "single-component fault injection", run)


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7}


def criterion_8(results: list[CriterionResult]) -> CriterionResult:
    total = sum(r.seconds for r in results)
    covered = sorted(r.number for r in results)
    ok = total < SELFTEST_LIMIT_SECONDS and covered == sorted(CRITERIA)
    return CriterionResult(8, "full catalog runtime", ok,
                           f"criteria {covered} ran in {total:.1f}s (limit {SELFTEST_LIMIT_SECONDS:.0f}s)",
                           total)


def run_all(only=None) -> list[CriterionResult]:
    # the runtime criterion needs the whole catalog
    numbers = sorted(CRITERIA) if not only or 8 in only else sorted(set(only) & set(CRITERIA))
    results = [CRITERIA[i]() for i in numbers]
    if not only or 8 in only:
        results.append(criterion_8(results))
    return results
