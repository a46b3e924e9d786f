"""Thick buildings of type affine A1: edges of the (q+1)-regular tree."""
from __future__ import annotations

import numpy as np

from .. import kernels
from ..coxeter import Element, alternating, infinite_dihedral
from .base import ChamberComplex


class TreeBuilding(ChamberComplex):
    """Chambers are edges of the (q+1)-regular tree, generated lazily.

    A chamber is the path from the base edge: ``()`` for the base, otherwise
    ``(a, l1, ..., lk)`` where ``a`` is the type of the base vertex the path
    leaves through and ``li in range(q)`` picks one of the q edges at each
    successive vertex.  Step j crosses a vertex of type ``a ^ ((j - 1) & 1)``.
    """

    def __init__(self, q: int):
        if q < 1:
            raise ValueError("tree thickness q must be >= 1")
        self.q = q
        self.coxeter = infinite_dihedral()
        self.base = ()

    def contains(self, c) -> bool:
        if not isinstance(c, tuple):
            return False
        if not c:
            return True
        return (len(c) >= 2 and c[0] in (0, 1)
                and all(isinstance(x, int) and 0 <= x < self.q for x in c[1:]))

    @staticmethod
    def depth(c) -> int:
        return len(c) - 1 if c else 0

    @staticmethod
    def step_type(c, j: int) -> int:
        return c[0] ^ ((j - 1) & 1)

    def w_distance(self, c, c2) -> Element:
        self.check(c)
        self.check(c2)
        n, start = self._path(c, c2)
        return alternating(start, 1 - start, n)

    def _path(self, c, c2) -> tuple[int, int]:
        """(length, first step type) of the tree path from c to c2."""
        k, k2 = self.depth(c), self.depth(c2)
        if c == c2:
            return 0, 0
        if k == 0:
            return k2, c2[0]
        if k2 == 0 or c[0] != c2[0]:
            return k + k2, self.step_type(c, k)
        p = 0
        lim = min(k, k2)
        while p < lim and c[p + 1] == c2[p + 1]:
            p += 1
        if p == k:
            return k2 - k, self.step_type(c2, k + 1)
        if p == k2:
            return k - k2, self.step_type(c, k)
        return k + k2 - 2 * p - 1, self.step_type(c, k)

    def gallery_distance(self, c, c2) -> int:
        return self._path(c, c2)[0]

    def s_panel(self, c, s: int) -> tuple:
        self.check(c)
        q = self.q
        if not c:
            return ((),) + tuple((s, l) for l in range(q))
        k = len(c) - 1
        if self.step_type(c, k) == s:
            parent = c[:-1] if k > 1 else ()
            return tuple(sorted((parent,) + tuple(c[:-1] + (l,) for l in range(q))))
        return (c,) + tuple(c + (l,) for l in range(q))

    def neighbours(self, c):
        self.check(c)
        return self.neighbours_unchecked(c)

    def neighbours_unchecked(self, c):
        # same chambers as the generic version, without rebuilding whole panels
        q = self.q
        if not c:
            return [(s, (s, l)) for s in (0, 1) for l in range(q)]
        k = len(c) - 1
        near = c[0] ^ ((k - 1) & 1)
        head = c[:-1]
        last = c[-1]
        # the parent is a prefix of every sibling, so this list is already sorted
        side = [(near, head if k > 1 else ())]
        side += [(near, head + (l,)) for l in range(q) if l != last]
        out = [(1 - near, c + (l,)) for l in range(q)]
        return side + out if near == 0 else out + side

    def descriptor(self) -> dict:
        return {"kind": "tree", "q": self.q}

    def encode_arrays(self, chambers) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        n = len(chambers)
        width = max([self.depth(c) for c in chambers], default=0)
        depth = np.zeros(n, dtype=np.int32)
        first = np.zeros(n, dtype=np.int8)
        labels = np.full((n, max(width, 1)), -1, dtype=np.int16)
        for i, c in enumerate(chambers):
            if c:
                depth[i] = len(c) - 1
                first[i] = c[0]
                labels[i, :len(c) - 1] = c[1:]
        return depth, first, labels

    def pairwise_distances(self, xs, ys) -> np.ndarray:
        a = self.encode_arrays(xs)
        b = self.encode_arrays(ys)
        return kernels.tree_distance_block(*a, *b)

    def set_diameter(self, chambers) -> int:
        """Double sweep: gallery distance is the distance between edge midpoints,
        a tree metric, so the farthest point from a farthest point is extremal."""
        pts = list(chambers)
        if len(pts) < 2:
            return 0
        arrs = self.encode_arrays(pts)
        far = 0
        best = 0
        for _ in range(2):
            row = kernels.tree_distance_block(*(x[far:far + 1] for x in arrs), *arrs)[0]
            far = int(row.argmax())
            best = int(row[far])
        return best


def tree_building(q: int) -> TreeBuilding:
    return TreeBuilding(q)
