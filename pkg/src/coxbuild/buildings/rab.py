"""Right-angled buildings as graph products of cyclic groups.

Chambers are graph-product elements in lexicographic syllable normal form:
a tuple of ``(generator, exponent)`` pairs, exponent in ``1..order-1``.
Syllables of generators with ``m = 2`` commute; all others are free.
"""
from __future__ import annotations

from typing import Sequence

from ..coxeter import INF, CoxeterSystem, Element
from ..errors import InvalidMatrixError
from .base import ChamberComplex

Syllables = tuple[tuple[int, int], ...]


class RightAngledBuilding(ChamberComplex):
    def __init__(self, sys: CoxeterSystem, params: Sequence[int]):
        for i in range(sys.rank):
            for j in range(sys.rank):
                if i != j and sys.m[i][j] not in (2, INF):
                    raise InvalidMatrixError("right-angled building needs m(s,t) in {2, inf}")
        params = list(params)
        if len(params) != sys.rank or any(int(p) < 2 for p in params):
            raise ValueError("need one cyclic order >= 2 per generator")
        self.coxeter = sys
        self.orders = tuple(int(p) for p in params)
        self.base: Syllables = ()
        self._valid: set = set()
        self._commute = [[sys.m[i][j] == 2 for j in range(sys.rank)] for i in range(sys.rank)]

    def check(self, c) -> None:
        if c not in self._valid:
            super().check(c)
            self._valid.add(c)

    def contains(self, c) -> bool:
        if not isinstance(c, tuple):
            return False
        try:
            for g, a in c:
                if not (0 <= g < self.coxeter.rank and 1 <= a < self.orders[g]):
                    return False
        except (TypeError, ValueError):
            return False
        return self._normalize(list(c)) == c and self._is_reduced(c)

    def _is_reduced(self, c) -> bool:
        for i, (g, _) in enumerate(c):
            for h, _b in c[i + 1:]:
                if h == g:
                    return False
                if not self._commute[g][h]:
                    break
        return True

    def _push(self, syl: list[tuple[int, int]], g: int, a: int) -> None:
        """In-place right multiplication of a reduced syllable list by g^a."""
        a %= self.orders[g]
        if a == 0:
            return
        for i in range(len(syl) - 1, -1, -1):
            h, b = syl[i]
            if h == g:
                e = (a + b) % self.orders[g]
                if e:
                    syl[i] = (g, e)
                else:
                    del syl[i]
                return
            if not self._commute[g][h]:
                break
        syl.append((g, a))

    def _normalize(self, syl: list[tuple[int, int]]) -> Syllables:
        out = []
        rest = list(syl)
        while rest:
            best = None
            for j, (g, _a) in enumerate(rest):
                if all(self._commute[g][h] for h, _ in rest[:j]):
                    if best is None or g < rest[best][0]:
                        best = j
            out.append(rest.pop(best))
        return tuple(out)

    def multiply(self, x: Syllables, y: Syllables) -> Syllables:
        syl = list(x)
        for g, a in y:
            self._push(syl, g, a)
        return self._normalize(syl)

    def inverse(self, x: Syllables) -> Syllables:
        return self._normalize([(g, (-a) % self.orders[g]) for g, a in reversed(x)])

    def w_distance(self, c, c2) -> Element:
        self.check(c)
        self.check(c2)
        # drop the common prefix first: x^-1 y only depends on what follows it
        p = 0
        while p < min(len(c), len(c2)) and c[p] == c2[p]:
            p += 1
        syl = [(g, (-a) % self.orders[g]) for g, a in reversed(c[p:])]
        for g, a in c2[p:]:
            self._push(syl, g, a)
        return self.coxeter.reduce(g for g, _ in syl)

    def s_panel(self, c, s: int) -> tuple:
        self.check(c)
        out = {c}
        for a in range(1, self.orders[s]):
            syl = list(c)
            self._push(syl, s, a)
            out.add(self._normalize(syl))
        return tuple(sorted(out))

    def descriptor(self) -> dict:
        from ..io import coxeter_to_json

        return {"kind": "rab", "coxeter": coxeter_to_json(self.coxeter), "params": list(self.orders)}


def right_angled_building(sys: CoxeterSystem, params: Sequence[int]) -> RightAngledBuilding:
    return RightAngledBuilding(sys, params)
