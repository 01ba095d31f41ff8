"""Backend selection for the brute-force kernels.

The compiled extension is used when it imports; otherwise, or when
``ROBUSTLAT_PURE=1`` is set, the pure-Python fallback is used. ``BACKEND``
names the active one.
"""
from __future__ import annotations

import os

from . import _fallback

fallback = _fallback

if os.environ.get("ROBUSTLAT_PURE"):
    compiled = None
else:
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

_active = compiled if compiled is not None else _fallback
BACKEND = "cython" if compiled is not None else "python"

topology_families = _active.topology_families
monotone_maps = _active.monotone_maps
adjoint_candidates = _active.adjoint_candidates

__all__ = [
    "BACKEND",
    "adjoint_candidates",
    "compiled",
    "fallback",
    "monotone_maps",
    "topology_families",
]
