"""Abstract W-metric chamber system and the algorithms that only need its contract."""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Iterator, Sequence

import numpy as np

from ..coxeter import DEFAULT_CAP, CoxeterSystem, Element, Word
from ..errors import ResourceLimitError, UnknownChamberError

Chamber = Hashable


@dataclass(frozen=True)
class Gallery:
    chambers: tuple
    type_word: Word

    def __post_init__(self):
        if len(self.type_word) != len(self.chambers) - 1:
            raise ValueError("type word must have one letter per step")

    def __len__(self) -> int:
        return len(self.type_word)

    def is_minimal(self, sys: CoxeterSystem) -> bool:
        return sys.is_reduced(self.type_word)

    def to_json(self, bld: "ChamberComplex") -> dict:
        return {"chambers": [bld.encode(c) for c in self.chambers], "type": list(self.type_word)}


def prefix_chamber(g: Gallery, k: int):
    if not 0 <= k < len(g.chambers):
        raise IndexError(f"position {k} outside gallery of {len(g.chambers)} chambers")
    return g.chambers[k]


class ChamberComplex(ABC):
    """A building presented as a W-metric chamber system.

    Subclasses supply ``w_distance`` and ``s_panel``; everything else is
    derived from those two.  Chambers are hashable, totally ordered within
    one building, and generated lazily.
    """

    coxeter: CoxeterSystem
    base: Chamber

    @abstractmethod
    def w_distance(self, c, c2) -> Element:
        """delta_C(c, c2) as a canonical element of W."""

    @abstractmethod
    def s_panel(self, c, s: int) -> tuple:
        """Sorted s-panel of c (includes c)."""

    @abstractmethod
    def contains(self, c) -> bool:
        ...

    @abstractmethod
    def descriptor(self) -> dict:
        ...

    def encode(self, c) -> Any:
        return _to_lists(c)

    def decode(self, obj: Any):
        c = _to_tuples(obj)
        self.check(c)
        return c

    def check(self, c) -> None:
        if not self.contains(c):
            raise UnknownChamberError(c)

    # -- derived metric data --------------------------------------------------

    def gallery_distance(self, c, c2) -> int:
        return len(self.w_distance(c, c2))

    def pairwise_distances(self, xs: Sequence, ys: Sequence) -> np.ndarray:
        out = np.empty((len(xs), len(ys)), dtype=np.int32)
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                out[i, j] = self.gallery_distance(x, y)
        return out

    def neighbours(self, c) -> Iterator[tuple[int, Any]]:
        for s in range(self.coxeter.rank):
            for x in self.s_panel(c, s):
                if x != c:
                    yield s, x

    def neighbours_unchecked(self, c) -> Iterable[tuple[int, Any]]:
        """``neighbours`` for chambers already known to be valid."""
        return self.neighbours(c)

    def set_diameter(self, chambers: Sequence, chunk: int = 2048) -> int:
        pts = list(chambers)
        best = 0
        for a in range(0, len(pts), chunk):
            block = self.pairwise_distances(pts[a:a + chunk], pts)
            if block.size:
                best = max(best, int(block.max()))
        return best

    def ball(self, radius: int, center=None, cap: int = DEFAULT_CAP) -> list:
        """Chambers within gallery distance ``radius`` of ``center`` (default: base), BFS order."""
        c0 = self.base if center is None else center
        self.check(c0)
        seen = {c0}
        order = [c0]
        frontier = [c0]
        for _ in range(radius):
            nxt = []
            for c in frontier:
                for _s, x in self.neighbours(c):
                    if x not in seen:
                        seen.add(x)
                        nxt.append(x)
                        order.append(x)
                if len(seen) > cap:
                    raise ResourceLimitError(f"chamber ball exceeds {cap} chambers")
            frontier = nxt
        return order

    # -- galleries ------------------------------------------------------------

    def _step_towards(self, cur, s: int, end, want: Element):
        for x in self.s_panel(cur, s):
            if x != cur and self.w_distance(x, end) == want:
                return x
        return None

    def minimal_gallery(self, c, c2) -> Gallery:
        """Canonical-type minimal gallery; each step is the projection towards c2."""
        word = self.w_distance(c, c2)
        g = self.gallery_of_type(c, word, end=c2)
        assert g is not None
        return g

    def gallery_of_type(self, c, type_word: Sequence[int], end=None) -> Gallery | None:
        """The minimal gallery of the given reduced type from c (to ``end`` if given)."""
        sys = self.coxeter
        tw = sys.check_word(type_word)
        if not sys.is_reduced(tw):
            raise ValueError("gallery type must be reduced")
        if end is None:
            for g in self.galleries_of_type(c, tw):
                return g
            return None
        if self.w_distance(c, end) != sys.reduce(tw):
            return None
        chambers = [c]
        cur = c
        for i, s in enumerate(tw):
            want = sys.reduce(tw[i + 1:])
            cur = self._step_towards(cur, s, end, want)
            if cur is None:
                return None
            chambers.append(cur)
        return Gallery(tuple(chambers), tw)

    def galleries_of_type(self, c, type_word: Sequence[int]) -> Iterator[Gallery]:
        """All non-stuttering galleries of a reduced type from c (each is minimal)."""
        tw = tuple(type_word)

        def rec(path):
            if len(path) == len(tw) + 1:
                yield Gallery(tuple(path), tw)
                return
            cur = path[-1]
            for x in self.s_panel(cur, tw[len(path) - 1]):
                if x != cur:
                    yield from rec(path + [x])

        yield from rec([c])

    # -- residues, thickening, neighbourhoods -----------------------------------

    def residue_chambers(self, anchor, types: Iterable[int], cap: int = DEFAULT_CAP) -> frozenset:
        J = sorted(set(types))
        self.check(anchor)
        seen = {anchor}
        todo = [anchor]
        while todo:
            c = todo.pop()
            for s in J:
                for x in self.s_panel(c, s):
                    if x not in seen:
                        seen.add(x)
                        if len(seen) > cap:
                            raise ResourceLimitError(f"residue exceeds {cap} chambers")
                        todo.append(x)
        return frozenset(seen)

    def thicken(self, X: Iterable) -> frozenset:
        """Union of the maximal spherical residues of the chambers of X."""
        Js = self.coxeter.maximal_spherical_subsets()
        out: set = set()
        for c in X:
            for J in Js:
                out |= self.residue_chambers(c, J)
        return frozenset(out)

    def neighborhood(self, X: Iterable) -> frozenset:
        out = set()
        for c in X:
            out.add(c)
            for _s, x in self.neighbours(c):
                out.add(x)
        return frozenset(out)

    def components(self, X: Iterable) -> list[frozenset]:
        """Gallery-connected components of X, ordered by their smallest chamber."""
        members = set(X)
        seen: set = set()
        comps = []
        for c in sorted(members):
            if c in seen:
                continue
            comp = {c}
            seen.add(c)
            todo = [c]
            while todo:
                y = todo.pop()
                for _s, x in self.neighbours(y):
                    if x in members and x not in seen:
                        seen.add(x)
                        comp.add(x)
                        todo.append(x)
            comps.append(frozenset(comp))
        return comps


# -- axiom checker -----------------------------------------------------------


@dataclass
class AxiomReport:
    sample_size: int
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_axioms(bld: ChamberComplex, sample: Iterable, max_violations: int = 50) -> AxiomReport:
    """Check the W-metric building axioms on all pairs of a finite sample.

    For each pair (c, c') and generator s, with w = delta(c, c'):
    symmetry and identity; every other chamber c'' of the s-panel of c' has
    delta(c, c'') in {w, ws}, equal to ws when l(ws) > l(w); and when
    l(ws) < l(w) some chamber of that panel realises ws.
    """
    sys = bld.coxeter
    pts = sorted(set(sample))
    rep = AxiomReport(sample_size=len(pts))

    def bad(msg):
        if len(rep.violations) < max_violations:
            rep.violations.append(msg)

    panels = {}
    for c in pts:
        for s in range(sys.rank):
            P = bld.s_panel(c, s)
            panels[c, s] = P
            if c not in P or len(P) < 2:
                bad(f"panel({c!r}, {s}) must contain c and have >= 2 chambers")
            for x in P:
                if x != c and bld.w_distance(c, x) != (s,):
                    bad(f"delta({c!r}, {x!r}) != {s} inside an {s}-panel")
    for c in pts:
        for c1 in pts:
            rep.checked += 1
            w = bld.w_distance(c, c1)
            if (w == ()) != (c == c1):
                bad(f"delta({c!r}, {c1!r}) = 1 must hold iff the chambers coincide")
            if bld.w_distance(c1, c) != sys.inverse(w):
                bad(f"delta({c1!r}, {c!r}) != delta({c!r}, {c1!r})^-1")
            for s in range(sys.rank):
                ws = sys.mul_gen(w, s)
                longer = len(ws) > len(w)
                found_ws = False
                for c2 in panels[c1, s]:
                    if c2 == c1:
                        continue
                    rep.checked += 1
                    w2 = bld.w_distance(c, c2)
                    if w2 == ws:
                        found_ws = True
                    elif w2 != w or longer:
                        bad(f"delta({c!r}, {c2!r}) = {w2} violates panel axiom (w={w}, s={s})")
                if not found_ws and not longer:
                    bad(f"no chamber in {s}-panel of {c1!r} at W-distance {ws} from {c!r}")
    return rep


def _to_lists(obj):
    if isinstance(obj, tuple):
        return [_to_lists(x) for x in obj]
    return obj


def _to_tuples(obj):
    if isinstance(obj, list):
        return tuple(_to_tuples(x) for x in obj)
    return obj
