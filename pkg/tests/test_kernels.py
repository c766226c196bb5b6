import os
import subprocess
import sys

import numpy as np
import pytest

from twodesc import _accel, kernels
from twodesc.catalog import B, involution_fixtures
from twodesc.descent import coherent_families
from twodesc.descent_data import action_to_descent
from twodesc.groupoid import FiniteGroupoid, codiscrete, power, product
from twodesc.groups import cyclic, symmetric

pytestmark = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not importable")


@pytest.fixture
def both():
    prev = _accel.backend()

    def run(fn):
        out = {}
        for be in ("numba", "numpy"):
            _accel.set_backend(be)
            out[be] = fn()
        return out["numba"], out["numpy"]

    yield run
    _accel.set_backend(prev)


def _assoc(g):
    ptr, idx = g._out_csr
    return kernels.assoc_violation(g.comp, g.tgt, ptr, idx)


@pytest.mark.parametrize("g", [B(symmetric(3)), power(B(cyclic(2)), 3),
                               product([codiscrete(3), B(cyclic(3))])])
def test_assoc_scan_parity_on_valid(both, g):
    a, b = both(lambda: _assoc(g))
    assert a == b == (-1, -1, -1)


def test_assoc_scan_parity_on_corrupted(both, rng):
    g = product([codiscrete(2), B(cyclic(3))])
    for _ in range(10):
        comp = g.comp.copy()
        i, j = rng.integers(g.n_morphisms, size=2)
        if comp[i, j] < 0:
            continue
        choices = g.hom(int(g.src[comp[i, j]]), int(g.tgt[comp[i, j]]))
        comp[i, j] = choices[(np.searchsorted(choices, comp[i, j]) + 1) % choices.size]
        bad = FiniteGroupoid(g.n_objects, g.src, g.tgt, comp, g.ident, g.inv)
        a, b = both(lambda: _assoc(bad))
        assert a == b


def test_fixed_points_parity(both, corpus, z2_fixtures):
    data = [action_to_descent(w) for w in list(z2_fixtures.values()) + corpus[:15]]
    for d in data:
        a, b = both(lambda: coherent_families(d))
        assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_env_flag_selects_numpy():
    env = dict(os.environ, TWODESC_BACKEND="numpy")
    out = subprocess.run([sys.executable, "-c", "from twodesc import _accel; print(_accel.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        _accel.set_backend("fortran")
