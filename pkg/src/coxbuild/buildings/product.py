"""Products of buildings over W1 x W2."""
from __future__ import annotations

import numpy as np

from .. import kernels
from ..coxeter import Element, direct_product
from .base import ChamberComplex


class ProductBuilding(ChamberComplex):
    def __init__(self, b1: ChamberComplex, b2: ChamberComplex):
        self.factors = (b1, b2)
        self.coxeter = direct_product(b1.coxeter, b2.coxeter)
        self.shift = b1.coxeter.rank
        self.base = (b1.base, b2.base)

    def contains(self, c) -> bool:
        return (isinstance(c, tuple) and len(c) == 2
                and self.factors[0].contains(c[0]) and self.factors[1].contains(c[1]))

    def join(self, e1: Element, e2: Element) -> Element:
        # factor-1 letters all precede factor-2 letters, so the concatenation
        # of canonical words is canonical in the product
        return tuple(e1) + tuple(a + self.shift for a in e2)

    def split(self, e: Element) -> tuple[Element, Element]:
        return (tuple(a for a in e if a < self.shift),
                tuple(a - self.shift for a in e if a >= self.shift))

    def w_distance(self, c, c2) -> Element:
        b1, b2 = self.factors
        return self.join(b1.w_distance(c[0], c2[0]), b2.w_distance(c[1], c2[1]))

    def gallery_distance(self, c, c2) -> int:
        b1, b2 = self.factors
        return b1.gallery_distance(c[0], c2[0]) + b2.gallery_distance(c[1], c2[1])

    def s_panel(self, c, s: int) -> tuple:
        self.check(c)
        b1, b2 = self.factors
        if s < self.shift:
            return tuple((x, c[1]) for x in b1.s_panel(c[0], s))
        return tuple((c[0], y) for y in b2.s_panel(c[1], s - self.shift))

    def neighbours_unchecked(self, c):
        # panels of a product move one coordinate, factor-1 types first
        b1, b2 = self.factors
        out = [(s, (x, c[1])) for s, x in b1.neighbours_unchecked(c[0])]
        out += [(s + self.shift, (c[0], y)) for s, y in b2.neighbours_unchecked(c[1])]
        return out

    def descriptor(self) -> dict:
        return {"kind": "product", "factors": [b.descriptor() for b in self.factors]}

    def pairwise_distances(self, xs, ys) -> np.ndarray:
        out = None
        for k, b in enumerate(self.factors):
            ux = sorted({c[k] for c in xs})
            uy = sorted({c[k] for c in ys})
            D = b.pairwise_distances(ux, uy)
            ix = {c: i for i, c in enumerate(ux)}
            iy = {c: i for i, c in enumerate(uy)}
            rows = np.fromiter((ix[c[k]] for c in xs), dtype=np.int64, count=len(xs))
            cols = np.fromiter((iy[c[k]] for c in ys), dtype=np.int64, count=len(ys))
            part = D[np.ix_(rows, cols)]
            out = part if out is None else out + part
        return out


    def _factor_index(self, pts):
        mats, idx = [], []
        for k, b in enumerate(self.factors):
            u = sorted({c[k] for c in pts})
            pos = {c: i for i, c in enumerate(u)}
            mats.append(np.ascontiguousarray(b.pairwise_distances(u, u), dtype=np.int32))
            idx.append(np.fromiter((pos[c[k]] for c in pts), dtype=np.int64, count=len(pts)))
        return mats, idx

    def set_diameter(self, chambers) -> int:
        pts = list(chambers)
        if len(pts) < 2:
            return 0
        (d1, d2), (i1, i2) = self._factor_index(pts)
        return int(kernels.pair_sum_max(d1, d2, i1, i2, i1, i2))


def product_building(b1: ChamberComplex, b2: ChamberComplex) -> ProductBuilding:
    return ProductBuilding(b1, b2)
