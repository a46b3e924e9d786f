"""The base-chamber folding map and lifting of minimal galleries along it."""
from __future__ import annotations

from typing import Iterable, Sequence

from .buildings.base import ChamberComplex, Gallery, prefix_chamber
from .coxeter import BraidMove, Element, Word
from .errors import GateIndependenceError, LiftError


class FoldingMap:
    """``c -> delta_C(B, c)``: retraction of the building onto the apartment W."""

    def __init__(self, building: ChamberComplex, base=None):
        self.building = building
        self.base = building.base if base is None else base
        building.check(self.base)

    @property
    def coxeter(self):
        return self.building.coxeter

    def fold(self, c) -> Element:
        return self.building.w_distance(self.base, c)

    def preimage(self, U: Iterable[Element], window: Iterable) -> set:
        targets = {self.coxeter.reduce(u) for u in U}
        return {c for c in window if self.fold(c) in targets}

    def lift_with_prefix(self, c, gamma: Sequence[int]) -> Gallery:
        """A minimal gallery from the base to c whose type starts with ``gamma``.

        Starts from the canonical minimal gallery and lifts, move by move, the
        braid moves carrying its type to ``gamma + delta``.
        """
        sys = self.coxeter
        gamma = sys.check_word(gamma)
        if not sys.is_reduced(gamma):
            raise LiftError(f"prefix {gamma} is not reduced")
        w = self.fold(c)
        rest = sys.multiply(sys.inverse(gamma), w)
        if len(gamma) + len(rest) != len(w):
            raise LiftError(f"no reduced word of {w} begins with {gamma}")
        g = self.building.minimal_gallery(self.base, c)
        for mv in sys.braid_move_sequence(g.type_word, gamma + rest):
            g = self.lift_braid_move(g, mv)
        return g

    def lift_braid_move(self, g: Gallery, move: BraidMove) -> Gallery:
        """Apply a braid move to a minimal gallery, keeping its endpoints.

        The affected stretch lies in one rank-2 residue; it is replaced by the
        unique minimal gallery of the new alternating type between the same
        two chambers.
        """
        if not move.applies_to(g.type_word):
            raise LiftError(f"{move} does not apply to gallery type {g.type_word}")
        p, n = move.position, move.length
        new_type = move.apply(g.type_word)
        piece = self.building.gallery_of_type(g.chambers[p], new_type[p:p + n], end=g.chambers[p + n])
        if piece is None:
            raise LiftError("no gallery of the moved type inside the rank-2 residue")
        chambers = g.chambers[:p] + piece.chambers + g.chambers[p + n + 1:]
        return Gallery(chambers, new_type)

    def component_gate(self, V: Iterable, gamma: Sequence[int]):
        """The chamber over the end of ``gamma`` through which every lift passes.

        Computed from every chamber of V; raises if the result depends on the
        chamber.
        """
        k = len(gamma)
        gate = None
        first = None
        for c in sorted(V):
            e = prefix_chamber(self.lift_with_prefix(c, gamma), k)
            if gate is None:
                gate, first = e, c
            elif e != gate:
                raise GateIndependenceError(
                    f"gate from {c!r} is {e!r}, but from {first!r} it is {gate!r}")
        if gate is None:
            raise ValueError("component_gate needs a non-empty set")
        return gate


def all_minimal_galleries(bld: ChamberComplex, c, c2) -> list[Gallery]:
    """Every minimal gallery between two chambers: one per reduced word of delta(c, c2)."""
    sys = bld.coxeter
    out = []
    for word in sorted(sys.reduced_words(bld.w_distance(c, c2))):
        g = bld.gallery_of_type(c, word, end=c2)
        assert g is not None
        out.append(g)
    return out


def enumerate_minimal_galleries(bld: ChamberComplex, c, c2) -> list[Gallery]:
    """Brute-force DFS over panel moves that strictly approach c2 (test oracle)."""
    out = []

    def rec(chambers, types):
        cur = chambers[-1]
        if cur == c2:
            out.append(Gallery(tuple(chambers), tuple(types)))
            return
        d = bld.gallery_distance(cur, c2)
        for s, x in bld.neighbours(cur):
            if bld.gallery_distance(x, c2) == d - 1:
                rec(chambers + [x], types + [s])

    rec([c], [])
    return out


def extends(word: Word, prefix: Word) -> bool:
    return tuple(word[:len(prefix)]) == tuple(prefix)
