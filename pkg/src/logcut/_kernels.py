"""Pick the compiled kernels when available, else the numpy fallback.

Set ``LOGCUT_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _fallback


def _load_compiled() -> ModuleType | None:
    try:
        from . import _speedups
    except ImportError:
        return None
    return _speedups


_compiled = _load_compiled()

if _compiled is not None and not os.environ.get("LOGCUT_PURE_PYTHON"):
    _active = _compiled
    BACKEND = "cython"
else:
    _active = _fallback
    BACKEND = "python"


def available_backends() -> dict[str, ModuleType]:
    backends = {"python": _fallback}
    if _compiled is not None:
        backends["cython"] = _compiled
    return backends


pauli_coefficients = _active.pauli_coefficients
pauli_expectations = _active.pauli_expectations
gray_maxcut = _active.gray_maxcut
