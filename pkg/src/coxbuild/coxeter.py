"""Coxeter systems and their word problem.

Elements of W are stored as plain tuples of generator indices: the ShortLex
minimal reduced word (generators ordered by index).  Canonical forms are
computed by saturating under braid moves inside each irreducible component
and merging the component words greedily, which is exact for every Coxeter
system and cheap at the scales this package works with.
"""
from __future__ import annotations

import itertools
import math
import threading
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidMatrixError, NotReducedError, ResourceLimitError

INF = math.inf
DEFAULT_CAP = 10**6

Word = tuple[int, ...]
Element = tuple[int, ...]

_DEFAULT_NAMES = "stuvwxyz"


def alternating(s: int, t: int, n: int) -> Word:
    return tuple(s if i % 2 == 0 else t for i in range(n))


@dataclass(frozen=True)
class BraidMove:
    """Replace the alternating subword ``first second first ...`` of length
    ``length`` starting at ``position`` by ``second first second ...``."""

    position: int
    first: int
    second: int
    length: int

    def applies_to(self, word: Sequence[int]) -> bool:
        if self.first == self.second or self.position < 0:
            return False
        end = self.position + self.length
        return end <= len(word) and tuple(word[self.position:end]) == alternating(
            self.first, self.second, self.length
        )

    def apply(self, word: Sequence[int]) -> Word:
        if not self.applies_to(word):
            raise ValueError(f"{self} does not apply to {tuple(word)}")
        p, n = self.position, self.length
        return tuple(word[:p]) + alternating(self.second, self.first, n) + tuple(word[p + n:])


class CoxeterSystem:
    """A finitely generated Coxeter system given by its Coxeter matrix.

    ``matrix[i][j]`` is the order of ``s_i s_j``; use ``math.inf`` (or ``INF``)
    for no relation.  All word operations are memoized; the memo tables are
    guarded by a lock so a system can be shared between worker threads.
    """

    def __init__(self, matrix: Sequence[Sequence[float]], names: Sequence[str] | None = None):
        m = [list(row) for row in matrix]
        n = len(m)
        if n == 0:
            raise InvalidMatrixError("Coxeter matrix must have positive rank")
        for i, row in enumerate(m):
            if len(row) != n:
                raise InvalidMatrixError("Coxeter matrix must be square")
            for j, v in enumerate(row):
                if v != INF and (not float(v).is_integer()):
                    raise InvalidMatrixError(f"entry ({i},{j}) = {v} is not an integer or inf")
                if i == j and v != 1:
                    raise InvalidMatrixError(f"diagonal entry ({i},{i}) must be 1, got {v}")
                if i != j and v < 2:
                    raise InvalidMatrixError(f"off-diagonal entry ({i},{j}) must be >= 2, got {v}")
                if m[j][i] != v:
                    raise InvalidMatrixError(f"matrix is not symmetric at ({i},{j})")
        self.m: tuple[tuple[float, ...], ...] = tuple(
            tuple(v if v == INF else int(v) for v in row) for row in m
        )
        self.rank = n
        if names is None:
            names = list(_DEFAULT_NAMES[:n]) if n <= len(_DEFAULT_NAMES) else [f"s{i}" for i in range(n)]
        if len(names) != n:
            raise InvalidMatrixError("need one name per generator")
        self.names = tuple(names)

        self._components = self._irreducible_components()
        self._comp_of = [0] * n
        for k, comp in enumerate(self._components):
            for g in comp:
                self._comp_of[g] = k

        self._lock = threading.Lock()
        self._mul: dict[tuple[Element, int], Element] = {}
        self._canon: dict[Word, Word] = {}
        self._red: dict[Word, frozenset[Word]] = {}
        self._parabolic: dict[frozenset[int], frozenset[Element]] = {}
        self._spherical: dict[frozenset[int], bool] = {}

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_rank2(cls, m: float) -> "CoxeterSystem":
        return cls([[1, m], [m, 1]])

    def __repr__(self) -> str:
        rows = [[("inf" if v == INF else v) for v in row] for row in self.m]
        return f"CoxeterSystem({rows})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoxeterSystem) and self.m == other.m

    def __hash__(self) -> int:
        return hash(self.m)

    def _irreducible_components(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        comps = []
        for start in range(self.rank):
            if start in seen:
                continue
            comp, todo = [], [start]
            seen.add(start)
            while todo:
                a = todo.pop()
                comp.append(a)
                for b in range(self.rank):
                    if b not in seen and self.m[a][b] != 2 and a != b:
                        seen.add(b)
                        todo.append(b)
            comps.append(tuple(sorted(comp)))
        return comps

    @property
    def components(self) -> list[tuple[int, ...]]:
        return list(self._components)

    # -- validation -----------------------------------------------------------

    def check_word(self, word: Iterable[int]) -> Word:
        w = tuple(word)
        for a in w:
            if not (isinstance(a, (int, np.integer)) and 0 <= a < self.rank):
                raise ValueError(f"invalid generator {a!r} for rank {self.rank}")
        return tuple(int(a) for a in w)

    def parse(self, text: str) -> Word:
        """Parse ``"s t s"`` or ``"sts"`` using the generator names."""
        tokens = text.split() if " " in text.strip() else list(text.strip())
        index = {name: i for i, name in enumerate(self.names)}
        try:
            return tuple(index[t] for t in tokens)
        except KeyError as exc:
            raise ValueError(f"unknown generator name {exc.args[0]!r}") from None

    def format(self, word: Sequence[int]) -> str:
        return " ".join(self.names[a] for a in word)

    # -- braid closure --------------------------------------------------------

    def _braid_neighbours(self, word: Word):
        n = len(word)
        for i in range(n - 1):
            s, t = word[i], word[i + 1]
            if s == t:
                continue
            mst = self.m[s][t]
            if mst == INF or i + mst > n:
                continue
            mst = int(mst)
            if word[i:i + mst] == alternating(s, t, mst):
                yield BraidMove(i, s, t, mst)

    def _braid_closure(self, word: Word, cap: int = DEFAULT_CAP) -> frozenset[Word]:
        seen = {word}
        todo = [word]
        while todo:
            w = todo.pop()
            for mv in self._braid_neighbours(w):
                x = mv.apply(w)
                if x not in seen:
                    seen.add(x)
                    if len(seen) > cap:
                        raise ResourceLimitError(f"more than {cap} reduced words")
                    todo.append(x)
        return frozenset(seen)

    def _component_canonical(self, word: Word) -> Word:
        """Canonical form of a *reduced* word living in one irreducible component."""
        c = self._canon.get(word)
        if c is not None:
            return c
        words = self._braid_closure(word)
        c = min(words)
        with self._lock:
            self._red[c] = words
            for w in words:
                self._canon[w] = c
        return c

    def _component_reduced_words(self, canonical: Word) -> frozenset[Word]:
        r = self._red.get(canonical)
        if r is None:
            self._component_canonical(canonical)
            r = self._red[canonical]
        return r

    def _split(self, elem: Element) -> list[list[int]]:
        parts: list[list[int]] = [[] for _ in self._components]
        for a in elem:
            parts[self._comp_of[a]].append(a)
        return parts

    @staticmethod
    def _merge(parts: Sequence[Sequence[int]]) -> Element:
        # Greedy merge by smallest head is the lex-minimal shuffle because
        # the component alphabets are disjoint.
        idx = [0] * len(parts)
        out = []
        total = sum(len(p) for p in parts)
        for _ in range(total):
            best, best_k = None, -1
            for k, p in enumerate(parts):
                if idx[k] < len(p) and (best is None or p[idx[k]] < best):
                    best, best_k = p[idx[k]], k
            out.append(best)
            idx[best_k] += 1
        return tuple(out)

    # -- group operations -----------------------------------------------------

    def _component_mul_gen(self, c: Word, s: int) -> Word:
        for r in self._component_reduced_words(c):
            if r and r[-1] == s:
                return self._component_canonical(r[:-1])
        return self._component_canonical(c + (s,))

    def mul_gen(self, elem: Element, s: int) -> Element:
        """Right multiplication of a canonical element by a generator."""
        key = (elem, s)
        out = self._mul.get(key)
        if out is not None:
            return out
        if len(self._components) == 1:
            out = self._component_mul_gen(elem, s)
        else:
            parts = self._split(elem)
            k = self._comp_of[s]
            parts[k] = list(self._component_mul_gen(tuple(parts[k]), s))
            out = self._merge(parts)
        with self._lock:
            self._mul[key] = out
        return out

    def reduce(self, word: Iterable[int]) -> Element:
        """Canonical (ShortLex) reduced word of the element represented by ``word``."""
        e: Element = ()
        for a in self.check_word(word):
            e = self.mul_gen(e, a)
        return e

    def element(self, word: Iterable[int] | str) -> Element:
        if isinstance(word, str):
            word = self.parse(word)
        return self.reduce(word)

    def length(self, word: Iterable[int]) -> int:
        return len(self.reduce(word))

    def is_reduced(self, word: Iterable[int]) -> bool:
        w = self.check_word(word)
        return len(self.reduce(w)) == len(w)

    def elements_equal(self, w1: Iterable[int], w2: Iterable[int]) -> bool:
        return self.reduce(w1) == self.reduce(w2)

    def multiply(self, u: Iterable[int], v: Iterable[int]) -> Element:
        e = self.reduce(u)
        for a in self.check_word(v):
            e = self.mul_gen(e, a)
        return e

    def inverse(self, elem: Iterable[int]) -> Element:
        return self.reduce(reversed(tuple(elem)))

    def reduced_words(self, elem: Iterable[int], cap: int = DEFAULT_CAP) -> frozenset[Word]:
        """All reduced words of an element (connected by braid moves)."""
        return self._braid_closure(self.reduce(elem), cap)

    def right_descents(self, elem: Element) -> frozenset[int]:
        e = self.reduce(elem)
        return frozenset(s for s in range(self.rank) if len(self.mul_gen(e, s)) < len(e))

    def left_descents(self, elem: Element) -> frozenset[int]:
        """``{s : l(s w) < l(w)}``."""
        return self.right_descents(self.inverse(elem))

    def delta_w(self, u: Element, v: Element) -> int:
        """Gallery distance ``l(u^-1 v)`` in the Coxeter complex."""
        return len(self.multiply(self.inverse(u), v))

    # -- reflections and walls ------------------------------------------------

    def reflection(self, w: Iterable[int], s: int) -> Element:
        """The reflection ``w s w^-1``: the wall between chambers w and ws."""
        w = self.reduce(w)
        return self.multiply(self.mul_gen(w, s), self.inverse(w))

    def is_reflection(self, t: Iterable[int]) -> bool:
        t = self.reduce(t)
        if len(t) % 2 == 0 or self.multiply(t, t) != ():
            return False
        half = (len(t) - 1) // 2
        for w in self.ball((), half):
            for s in range(self.rank):
                if self.reflection(w, s) == t:
                    return True
        return False

    def on_negative_side(self, t: Element, w: Element) -> bool:
        """True iff the wall of ``t`` separates chamber ``w`` from the identity."""
        return len(self.multiply(t, w)) < len(w)

    def reflection_separates(self, t: Element, u: Element, v: Element) -> bool:
        return self.on_negative_side(t, u) != self.on_negative_side(t, v)

    def separating_reflections(self, u: Element, v: Element) -> list[Element]:
        """Walls crossed by the canonical minimal gallery from u to v, in order."""
        g = self.reduce(u)
        out = []
        for s in self.multiply(self.inverse(g), v):
            out.append(self.reflection(g, s))
            g = self.mul_gen(g, s)
        return out

    # -- braid move sequences -------------------------------------------------

    def longest_rank2(self, s: int, t: int) -> Element:
        mst = self.m[s][t]
        if mst == INF:
            raise ValueError(f"<{s},{t}> is infinite")
        return self.reduce(alternating(s, t, int(mst)))

    def braid_move_sequence(self, r1: Sequence[int], r2: Sequence[int]) -> list[BraidMove]:
        """Braid moves transforming reduced word ``r1`` into reduced word ``r2``.

        Follows the inductive proof of Matsumoto's theorem: words with a common
        first letter are handled on their tails; when the first letters s != t
        differ, both are left descents, so the element has reduced words
        ``(sts...)u`` and ``(tst...)u`` joined by one move.
        """
        a, b = self.check_word(r1), self.check_word(r2)
        if not self.is_reduced(a) or not self.is_reduced(b):
            raise NotReducedError("braid_move_sequence needs reduced words")
        if self.reduce(a) != self.reduce(b):
            raise ValueError("words represent different elements")
        memo: dict[tuple[Word, Word], list[BraidMove]] = {}
        return self._braid_seq(a, b, memo)

    def _braid_seq(self, a: Word, b: Word, memo) -> list[BraidMove]:
        if a == b:
            return []
        key = (a, b)
        if key in memo:
            return memo[key]
        s, t = a[0], b[0]
        if s == t:
            out = [BraidMove(mv.position + 1, mv.first, mv.second, mv.length)
                   for mv in self._braid_seq(a[1:], b[1:], memo)]
        else:
            mst = int(self.m[s][t])
            head = alternating(s, t, mst)
            u = self.multiply(self.inverse(head), a)
            assert len(u) + mst == len(a)
            mid1 = head + u
            mid2 = alternating(t, s, mst) + u
            out = (self._braid_seq(a, mid1, memo) + [BraidMove(0, s, t, mst)]
                   + self._braid_seq(mid2, b, memo))
        memo[key] = out
        return out

    # -- enumeration, parabolics, convexity -----------------------------------

    def ball(self, center: Iterable[int], radius: int, cap: int = DEFAULT_CAP) -> list[Element]:
        """Elements at distance <= radius from ``center``, in BFS order."""
        c = self.reduce(center)
        seen = {c}
        order = [c]
        frontier = [c]
        for _ in range(radius):
            nxt = []
            for w in frontier:
                for s in range(self.rank):
                    x = self.mul_gen(w, s)
                    if x not in seen:
                        seen.add(x)
                        if len(seen) > cap:
                            raise ResourceLimitError(f"ball exceeds {cap} elements")
                        nxt.append(x)
                        order.append(x)
            frontier = nxt
        return order

    def parabolic_elements(self, types: Iterable[int], cap: int = DEFAULT_CAP) -> frozenset[Element]:
        J = frozenset(types)
        out = self._parabolic.get(J)
        if out is not None:
            return out
        seen = {()}
        todo = [()]
        while todo:
            w = todo.pop()
            for s in J:
                x = self.mul_gen(w, s)
                if x not in seen:
                    seen.add(x)
                    if len(seen) > cap:
                        raise ResourceLimitError(f"parabolic subgroup {sorted(J)} exceeds {cap} elements")
                    todo.append(x)
        out = frozenset(seen)
        with self._lock:
            self._parabolic[J] = out
        return out

    def is_spherical(self, types: Iterable[int]) -> bool:
        """Whether the parabolic subgroup W_J is finite (positive definite cosine form)."""
        J = frozenset(types)
        hit = self._spherical.get(J)
        if hit is not None:
            return hit
        idx = sorted(J)
        if any(self.m[a][b] == INF for a in idx for b in idx):
            res = False
        elif len(idx) <= 2:
            res = True
        else:
            B = np.array([[-math.cos(math.pi / self.m[a][b]) for b in idx] for a in idx])
            res = bool(np.linalg.eigvalsh(B).min() > 1e-9)
        self._spherical[J] = res
        return res

    def maximal_spherical_subsets(self) -> list[frozenset[int]]:
        sph = [frozenset(J) for k in range(self.rank + 1)
               for J in itertools.combinations(range(self.rank), k) if self.is_spherical(J)]
        return [J for J in sph if not any(J < K for K in sph)]

    def gallery_hull(self, X: Iterable[Iterable[int]], cap: int = DEFAULT_CAP) -> frozenset[Element]:
        """Chambers not separated from all of X by any wall.

        Grown outward from X: a neighbour ``c = y s`` of a hull chamber ``y``
        can only be cut off by the wall between y and c, so c is in the hull
        iff some member of X lies on c's side of that wall.
        """
        pts = sorted({self.reduce(x) for x in X})
        if not pts:
            raise ValueError("gallery_hull needs a non-empty set")
        hull = set(pts)
        todo = deque(pts)
        while todo:
            y = todo.popleft()
            for s in range(self.rank):
                c = self.mul_gen(y, s)
                if c in hull:
                    continue
                t = self.reflection(y, s)
                c_side = self.on_negative_side(t, c)
                if any(self.on_negative_side(t, x) == c_side for x in pts):
                    hull.add(c)
                    if len(hull) > cap:
                        raise ResourceLimitError(f"hull exceeds {cap} elements")
                    todo.append(c)
        return frozenset(hull)

    def weak_order_gate(self, X: Iterable[Iterable[int]]) -> tuple[Word, Element]:
        """Greedy longest common prefix (in the weak order) of a set of elements.

        Returns the reduced word of the gate gallery and its endpoint; ties are
        broken by the smallest generator.
        """
        pts = [self.reduce(x) for x in X]
        if not pts:
            raise ValueError("weak_order_gate needs a non-empty set")
        word: list[int] = []
        g: Element = ()
        rel = pts
        while True:
            common = None
            for x in rel:
                ld = self.left_descents(x)
                common = ld if common is None else common & ld
                if not common:
                    break
            if not common:
                return tuple(word), g
            s = min(common)
            word.append(s)
            g = self.mul_gen(g, s)
            rel = [self.multiply((s,), x) for x in rel]


def dihedral(m: float) -> CoxeterSystem:
    return CoxeterSystem.from_rank2(m)


def infinite_dihedral() -> CoxeterSystem:
    return CoxeterSystem.from_rank2(INF)


def affine_a2() -> CoxeterSystem:
    return CoxeterSystem([[1, 3, 3], [3, 1, 3], [3, 3, 1]])


def direct_product(a: CoxeterSystem, b: CoxeterSystem) -> CoxeterSystem:
    n = a.rank + b.rank
    m = [[2] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1
    for i in range(a.rank):
        for j in range(a.rank):
            m[i][j] = a.m[i][j]
    for i in range(b.rank):
        for j in range(b.rank):
            m[a.rank + i][a.rank + j] = b.m[i][j]
    names = None
    if n <= len(_DEFAULT_NAMES):
        names = list(_DEFAULT_NAMES[:n])
    return CoxeterSystem(m, names)


def new_coxeter_system(matrix: Sequence[Sequence[float]]) -> CoxeterSystem:
    return CoxeterSystem(matrix)
