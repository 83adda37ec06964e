"""Selects the prime-field kernels at import time.

The compiled extension is used when it was built; setting the environment
variable ``HOMOLOG_PURE_PYTHON=1`` forces the numpy fallback.
"""
from __future__ import annotations

import os

from . import _fpkernels_py as pure

BACKEND = "python"
rref_mod = pure.rref_mod
matmul_mod = pure.matmul_mod

if os.environ.get("HOMOLOG_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _fpkernels as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        rref_mod = _compiled.rref_mod
        matmul_mod = _compiled.matmul_mod
        BACKEND = "cython"

__all__ = ["BACKEND", "rref_mod", "matmul_mod", "pure"]
