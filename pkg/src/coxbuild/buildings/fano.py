"""The spherical A2 building of the Fano plane: 21 incident point-line flags."""
from __future__ import annotations

from ..coxeter import CoxeterSystem, Element
from .base import ChamberComplex

POINT, LINE = 0, 1  # s = change the line through a fixed point, t = change the point on a fixed line

LINES = tuple(frozenset({i % 7, (i + 1) % 7, (i + 3) % 7}) for i in range(7))


class FanoBuilding(ChamberComplex):
    """Chambers are flags ``(p, L)`` with point p on line ``LINES[L]``."""

    def __init__(self):
        self.coxeter = CoxeterSystem([[1, 3], [3, 1]])
        self.flags = tuple(sorted((p, L) for L, line in enumerate(LINES) for p in line))
        self._flagset = frozenset(self.flags)
        self.base = self.flags[0]

    def contains(self, c) -> bool:
        return c in self._flagset

    def w_distance(self, c, c2) -> Element:
        self.check(c)
        self.check(c2)
        (p, L), (p2, L2) = c, c2
        if c == c2:
            return ()
        if p == p2:
            return (POINT,)
        if L == L2:
            return (LINE,)
        if p in LINES[L2]:
            return (POINT, LINE)     # turn the line about p, then slide the point along L2
        if p2 in LINES[L]:
            return (LINE, POINT)
        return (POINT, LINE, POINT)  # opposite flags

    def s_panel(self, c, s: int) -> tuple:
        self.check(c)
        p, L = c
        if s == POINT:
            return tuple(sorted((p, M) for M, line in enumerate(LINES) if p in line))
        return tuple(sorted((x, L) for x in LINES[L]))

    def descriptor(self) -> dict:
        return {"kind": "fano"}


def fano_building() -> FanoBuilding:
    return FanoBuilding()
