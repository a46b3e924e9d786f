"""Kernel backend selection.

The compiled extension is used when it was built; otherwise (or when
``COXBUILD_PURE=1`` is set) the pure-Python implementations are used.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("COXBUILD_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

bfs_distances = _impl.bfs_distances
label_components = _impl.label_components
voronoi_min = _impl.voronoi_min
tree_distance_block = _impl.tree_distance_block
pair_sum_max = _impl.pair_sum_max

__all__ = ["BACKEND", "bfs_distances", "label_components", "voronoi_min", "tree_distance_block", "pair_sum_max"]
