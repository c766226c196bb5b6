"""Backend selection for the compiled kernels.

``TWODESC_BACKEND=numpy`` forces the pure numpy path; the default is numba
when it imports.
"""

from __future__ import annotations

import os

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kw):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def _initial_backend() -> str:
    requested = os.environ.get("TWODESC_BACKEND", "").strip().lower()
    if requested in ("numpy", "python", "off", "0"):
        return "numpy"
    if requested == "numba" and not HAVE_NUMBA:
        raise RuntimeError("TWODESC_BACKEND=numba but numba is not importable")
    return "numba" if HAVE_NUMBA else "numpy"


_backend = _initial_backend()


def backend() -> str:
    return _backend


def set_backend(name: str) -> str:
    """Switch backend at runtime; returns the previous one."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable")
    prev, _backend = _backend, name
    return prev
