"""Fault injection helpers shared by the axiom tests."""
from coxbuild.buildings import ChamberComplex


class Corrupted(ChamberComplex):
    """Wraps a building and flips delta on one ordered pair."""

    def __init__(self, inner, c, c2, value):
        self.inner, self.bad = inner, (c, c2)
        self.value = value
        self.coxeter, self.base = inner.coxeter, inner.base

    def w_distance(self, c, c2):
        if (c, c2) == self.bad:
            return self.value
        return self.inner.w_distance(c, c2)

    def s_panel(self, c, s):
        return self.inner.s_panel(c, s)

    def contains(self, c):
        return self.inner.contains(c)

    def descriptor(self):
        return self.inner.descriptor()


def corrupt_pair(bld, sample):
    """Corrupted copy of bld with delta on (sample[1], sample[-1]) replaced by a wrong element."""
    c, c2 = sample[1], sample[-1]
    w = bld.w_distance(c, c2)
    sys = bld.coxeter
    fake = next(x for x in sys.ball((), len(w) + 1) if x != w and x != sys.inverse(w))
    return Corrupted(bld, c, c2, fake)
