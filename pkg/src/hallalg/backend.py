"""Kernel backend selection.

The hot counting loops (row reduction mod p, invertible counting, exact
sequence census) exist twice: a numba-compiled version and a pure NumPy
one.  The environment variable HALLALG_BACKEND picks one at import time:

    HALLALG_BACKEND=numba   force the JIT kernels (error if numba missing)
    HALLALG_BACKEND=numpy   force the pure NumPy fallback
    unset                   numba when importable, NumPy otherwise

benchmarks/bench_kernels.py compares the two on identical workloads.
"""

from __future__ import annotations

import os

_VALID = ("numba", "numpy")


def _load(name):
    if name == "numba":
        from . import _kernels_numba as impl
    else:
        from . import _kernels_numpy as impl
    return impl


def get_backend(name):
    """Return the kernel module for an explicit backend name."""
    if name not in _VALID:
        raise ValueError(f"unknown backend {name!r}; expected one of {_VALID}")
    return _load(name)


_requested = os.environ.get("HALLALG_BACKEND", "").strip().lower()
if _requested and _requested not in _VALID:
    raise RuntimeError(
        f"HALLALG_BACKEND={_requested!r} is not valid; use 'numba' or 'numpy'"
    )

if _requested == "numpy":
    BACKEND = "numpy"
    _impl = _load("numpy")
elif _requested == "numba":
    BACKEND = "numba"
    _impl = _load("numba")
else:
    try:
        _impl = _load("numba")
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - depends on environment
        _impl = _load("numpy")
        BACKEND = "numpy"

rref_mod = _impl.rref_mod
rank_mod = _impl.rank_mod
count_invertible = _impl.count_invertible
count_exact_triples = _impl.count_exact_triples


def warm_up():
    """Trigger JIT compilation of every kernel on a trivial input."""
    import numpy as np

    one = np.eye(2, dtype=np.int64)
    rref_mod(one, 2)
    rank_mod(one, 2)
    count_invertible(one.reshape(1, 2, 2), 2)
    off = np.array([0, 1], dtype=np.int64)
    basis = np.zeros((1, 1, 1), dtype=np.int64)
    basis[0, 0, 0] = 1
    count_exact_triples(basis, basis, basis, off, off, off, off, 2)
