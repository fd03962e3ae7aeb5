"""Backend selection for the counting kernel.

The compiled extension is used when it imports and
``EHRHART_FORGE_PURE_PYTHON`` is unset; otherwise the pure-Python twin.
Both expose ``count_box(coef, rhs, is_eq, lo, hi, max_nodes)`` with
identical results.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"python": _kernels_py.count_box}
if _compiled is not None:
    _BACKENDS["cython"] = _compiled.count_box

if _compiled is not None and not os.environ.get("EHRHART_FORGE_PURE_PYTHON"):
    DEFAULT_BACKEND = "cython"
else:
    DEFAULT_BACKEND = "python"

# int64 headroom for the compiled path
_INT64_SAFE = 2**60


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def count_box(coef, rhs, is_eq, lo, hi, max_nodes=-1, backend: str | None = None):
    name = backend or DEFAULT_BACKEND
    if name not in _BACKENDS:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {available_backends()}")
    if name == "cython" and not _fits_int64(coef, rhs, lo, hi):
        name = "python"
    return _BACKENDS[name](coef, rhs, is_eq, lo, hi, max_nodes)


def _fits_int64(coef, rhs, lo, hi) -> bool:
    span = max([abs(x) for x in lo] + [abs(x) for x in hi] + [1])
    for row, b in zip(coef, rhs):
        if abs(b) + sum(abs(a) for a in row) * span >= _INT64_SAFE:
            return False
    return True
