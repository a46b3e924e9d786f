"""Finite chamber balls around the base chamber, with CSR adjacency for the kernels."""
from __future__ import annotations

from collections import defaultdict
from functools import cached_property

import numpy as np

from .buildings.base import ChamberComplex
from .coxeter import DEFAULT_CAP, Element
from .errors import ResourceLimitError


class Window:
    """The ball of gallery radius ``radius`` around the base chamber.

    Chambers are listed in BFS order (panels visited in generator order,
    panel members in sorted order), so indices are deterministic.
    """

    def __init__(self, bld: ChamberComplex, radius: int, cap: int = DEFAULT_CAP):
        if radius < 0:
            raise ValueError("window radius must be non-negative")
        bld.check(bld.base)
        self.building = bld
        self.radius = radius
        chambers = [bld.base]
        depth = [0]
        index = {bld.base: 0}
        nbrs: list[list[tuple[int, object]]] = []
        frontier = [bld.base]
        for r in range(1, radius + 1):
            nxt = []
            for c in frontier:
                nb = list(bld.neighbours_unchecked(c))
                nbrs.append(nb)
                for _s, x in nb:
                    if x not in index:
                        index[x] = len(chambers)
                        chambers.append(x)
                        depth.append(r)
                        nxt.append(x)
                if len(chambers) > cap:
                    raise ResourceLimitError(
                        f"window of radius {radius} exceeds {cap} chambers")
            frontier = nxt
        self.chambers = chambers
        self.index = index
        self.depth = np.asarray(depth, dtype=np.int32)

        # BFS visits chambers in index order, so nbrs[i] belongs to chambers[i]
        for c in chambers[len(nbrs):]:
            nbrs.append(list(bld.neighbours_unchecked(c)))
        indptr = [0]
        indices: list[int] = []
        types: list[int] = []
        for nb in nbrs:
            for s, x in nb:
                j = index.get(x)
                if j is not None:
                    indices.append(j)
                    types.append(s)
            indptr.append(len(indices))
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.edge_types = np.asarray(types, dtype=np.int16)

    def __len__(self) -> int:
        return len(self.chambers)

    def __contains__(self, c) -> bool:
        return c in self.index

    @cached_property
    def folds(self) -> list[Element]:
        bld = self.building
        return [bld.w_distance(bld.base, c) for c in self.chambers]

    @cached_property
    def fold_index(self) -> dict[Element, list[int]]:
        out: dict[Element, list[int]] = defaultdict(list)
        for i, w in enumerate(self.folds):
            out[w].append(i)
        return dict(out)

    def adjacent(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def edges(self):
        """Undirected edges ``(i, j, type)`` with ``i < j``."""
        for i in range(len(self.chambers)):
            for k in range(self.indptr[i], self.indptr[i + 1]):
                j = int(self.indices[k])
                if i < j:
                    yield i, j, int(self.edge_types[k])
