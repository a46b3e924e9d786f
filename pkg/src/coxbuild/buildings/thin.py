"""The Coxeter complex W viewed as a thin building."""
from __future__ import annotations

from ..coxeter import CoxeterSystem, Element
from .base import ChamberComplex


class ThinBuilding(ChamberComplex):
    def __init__(self, sys: CoxeterSystem):
        self.coxeter = sys
        self.base: Element = ()
        self._valid: set = set()

    def check(self, c) -> None:
        if c not in self._valid:
            super().check(c)
            self._valid.add(c)

    def contains(self, c) -> bool:
        try:
            return isinstance(c, tuple) and self.coxeter.reduce(c) == c
        except ValueError:
            return False

    def w_distance(self, c, c2) -> Element:
        self.check(c)
        self.check(c2)
        sys = self.coxeter
        return sys.multiply(sys.inverse(c), c2)

    def s_panel(self, c, s: int) -> tuple:
        self.check(c)
        return tuple(sorted((c, self.coxeter.mul_gen(c, s))))

    def descriptor(self) -> dict:
        from ..io import coxeter_to_json

        return {"kind": "thin", "coxeter": coxeter_to_json(self.coxeter)}


def thin_building(sys: CoxeterSystem) -> ThinBuilding:
    return ThinBuilding(sys)
