"""Kernel selection.

The compiled ``_kernels`` extension is used when it imports cleanly;
otherwise the pure-Python twin is used. Setting the environment variable
``KLEENEWAND_PURE=1`` forces the pure-Python path, which is how the test
suite and the benchmark exercise both backends.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("KLEENEWAND_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _compiled = None
else:
    _compiled = None

if _compiled is not None:
    compose = _compiled.compose
    restrict = _compiled.restrict
    union = _compiled.union
    wand = _compiled.wand
    BACKEND = "cython"
else:
    compose = _kernels_py.compose
    restrict = _kernels_py.restrict
    union = _kernels_py.union
    wand = _kernels_py.wand

UNDEF = -1

__all__ = ["BACKEND", "UNDEF", "compose", "restrict", "union", "wand"]
