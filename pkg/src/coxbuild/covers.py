"""Colored covers of the apartment, their lift through the folding map, and verification.

All scales are gallery distances.  A lifted set is ``fold^-1(U) ∩ A`` where A
is a gallery-connected component of ``fold^-1(T(hull(N_d(U))))`` and T is the
spherical-residue thickening.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .buildings.base import ChamberComplex
from .coxeter import DEFAULT_CAP, INF, CoxeterSystem, Element, alternating, direct_product
from .retraction import FoldingMap
from .window import Window


# -- the infinite dihedral group as the integer line -------------------------


def is_infinite_dihedral(sys: CoxeterSystem) -> bool:
    return sys.rank == 2 and sys.m[0][1] == INF


def line_position(e: Element) -> int:
    """Position of a D-infinity element on its Cayley line (s-side positive)."""
    if not e:
        return 0
    return len(e) if e[0] == 0 else -len(e)


def line_element(n: int) -> Element:
    return alternating(0, 1, n) if n >= 0 else alternating(1, 0, -n)


# -- apartment covers --------------------------------------------------------


@dataclass
class ApartmentCover:
    coxeter: CoxeterSystem
    scale_d: int
    families: list[list[frozenset]]
    mesh: int
    window_radius: int

    @property
    def colors(self) -> int:
        return len(self.families)

    def sets(self):
        for i, fam in enumerate(self.families):
            for j, U in enumerate(fam):
                yield i, j, U


def interval_cover(sys: CoxeterSystem, d: int, window_radius: int) -> ApartmentCover:
    """Two colors of alternating blocks of length 2d on the D-infinity line.

    Color 0 holds ``[4dk, 4dk + 2d - 1]``, color 1 holds ``[4dk + 2d, 4dk + 4d - 1]``;
    same-colored blocks are 2d + 1 apart.
    """
    if not is_infinite_dihedral(sys):
        raise ValueError("interval_cover needs the infinite dihedral system")
    if d < 1:
        raise ValueError("scale d must be positive")
    blocks: dict[int, list[int]] = defaultdict(list)
    for n in range(-window_radius, window_radius + 1):
        blocks[n // (2 * d)].append(n)
    families: list[list[frozenset]] = [[], []]
    for k in sorted(blocks):
        families[k % 2].append(frozenset(line_element(n) for n in blocks[k]))
    families = [f for f in families if f]
    return ApartmentCover(sys, d, families, 2 * d - 1, window_radius)


def _brick_key(x: int, y: int, d: int) -> tuple[int, int, int]:
    side = 4 * d
    r = y // side
    k = (x - r * (side // 2)) // side
    return (k + 2 * r) % 3, r, k


def brick_cover_product(cov1: ApartmentCover, cov2: ApartmentCover, d: int,
                        mode: str = "brick") -> ApartmentCover:
    """Cover of W1 x W2 built from covers of the factors.

    ``mode="product"`` takes all products ``U1 x U2`` colored by pairs of colors.
    ``mode="brick"`` (both factors D-infinity) tiles the plane by 4d x 4d bricks
    in rows staggered by half a brick, 3-colored so that same-colored bricks
    are at least 2d + 1 apart in the L1 metric.
    """
    sys = direct_product(cov1.coxeter, cov2.coxeter)
    shift = cov1.coxeter.rank

    def join(a, b):
        return tuple(a) + tuple(x + shift for x in b)

    if mode == "product":
        families = []
        for f1 in cov1.families:
            for f2 in cov2.families:
                fam = [frozenset(join(a, b) for a in U1 for b in U2) for U1 in f1 for U2 in f2]
                if fam:
                    families.append(fam)
        return ApartmentCover(sys, d, families, cov1.mesh + cov2.mesh,
                              cov1.window_radius + cov2.window_radius)
    if mode != "brick":
        raise ValueError(f"unknown product cover mode {mode!r}")
    if not (is_infinite_dihedral(cov1.coxeter) and is_infinite_dihedral(cov2.coxeter)):
        raise ValueError("brick mode needs two infinite dihedral factors")
    R1, R2 = cov1.window_radius, cov2.window_radius
    bricks: dict[tuple[int, int, int], set] = defaultdict(set)
    for x in range(-R1, R1 + 1):
        for y in range(-R2, R2 + 1):
            bricks[_brick_key(x, y, d)].add(join(line_element(x), line_element(y)))
    families = [[], [], []]
    for key in sorted(bricks):
        families[key[0]].append(frozenset(bricks[key]))
    families = [f for f in families if f]
    return ApartmentCover(sys, d, families, 8 * d - 2, R1 + R2)


# -- apartment-side operations -------------------------------------------------


def thicken_nd(sys: CoxeterSystem, U: Iterable[Element], d: int) -> frozenset:
    """``{w : delta(w, U) < d}``."""
    out: set = set()
    for u in U:
        out.update(sys.ball(u, d - 1))
    return frozenset(out)


def thicken_apartment(sys: CoxeterSystem, X: Iterable[Element]) -> frozenset:
    """Spherical-residue thickening T(X) inside the Coxeter complex."""
    Js = sys.maximal_spherical_subsets()
    pars = [sorted(sys.parabolic_elements(J)) for J in Js]
    out: set = set()
    for w in X:
        for P in pars:
            for p in P:
                out.add(sys.multiply(w, p))
    return frozenset(out)


def apartment_neighborhood(sys: CoxeterSystem, X: Iterable[Element]) -> frozenset:
    out = set()
    for w in X:
        out.add(w)
        for s in range(sys.rank):
            out.add(sys.mul_gen(w, s))
    return frozenset(out)


def apartment_diameter(sys: CoxeterSystem, X: Iterable[Element]) -> int:
    pts = list(X)
    return max((sys.delta_w(a, b) for a in pts for b in pts), default=0)


# -- lifted covers ---------------------------------------------------------------


@dataclass(frozen=True)
class LiftedSet:
    chambers: tuple
    color: int
    source_index: int
    component: int


@dataclass
class LiftedCover:
    scale_d: int
    window_radius: int
    margin: int
    families: list[list[LiftedSet]]
    sources: list[list[frozenset]]

    @property
    def colors(self) -> int:
        return len(self.families)

    def all_sets(self):
        for fam in self.families:
            yield from fam


def _lift_one(fm: FoldingMap, big: Window, radius: int, d: int, color: int, index: int, U):
    sys = fm.coxeter
    hull = sys.gallery_hull(thicken_nd(sys, U, d))
    thick = thicken_apartment(sys, hull)
    mask = np.zeros(len(big), dtype=np.uint8)
    for w in thick:
        for i in big.fold_index.get(w, ()):
            mask[i] = 1
    labels = kernels.label_components(big.indptr, big.indices, mask)
    groups: dict[int, list[int]] = defaultdict(list)
    for u in U:
        for i in big.fold_index.get(u, ()):
            if big.depth[i] <= radius:
                groups[int(labels[i])].append(i)
    out = []
    for k, lab in enumerate(sorted(groups)):
        idx = sorted(groups[lab])
        out.append(LiftedSet(tuple(big.chambers[i] for i in idx), color, index, k))
    return out


def build_lifted_cover(fm: FoldingMap, cov: ApartmentCover, window: Window, margin: int = 0,
                       workers: int = 1, cap: int = DEFAULT_CAP) -> LiftedCover:
    """Pull an apartment cover back to the chamber window.

    Components are computed in the window enlarged by ``margin``; the sets are
    then clipped to the window.
    """
    if fm.building is not window.building:
        raise ValueError("window belongs to a different building")
    big = window if margin == 0 else Window(window.building, window.radius + margin, cap)
    tasks = [(i, j, U) for i, j, U in cov.sets()]

    def run(task):
        i, j, U = task
        return _lift_one(fm, big, window.radius, cov.scale_d, i, j, U)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(run, tasks))
    else:
        results = [run(t) for t in tasks]
    families: list[list[LiftedSet]] = [[] for _ in cov.families]
    for (i, _j, _U), sets in zip(tasks, results):
        families[i].extend(sets)
    return LiftedCover(cov.scale_d, window.radius, margin, families,
                       [list(f) for f in cov.families])


# -- verification ------------------------------------------------------------------


@dataclass
class CoverReport:
    d: int
    window_radius: int
    lift_margin: int
    verification_radius: int
    chamber_count: int
    set_count: int
    colors_used: int
    covered: bool
    uncovered: list
    min_same_color_distance: int | None
    closest_pair: list | None
    max_set_diameter: int
    diameter_histogram: dict[int, int]
    set_diameters: list[dict] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def set_diameter(bld: ChamberComplex, chambers: Sequence) -> int:
    return bld.set_diameter(chambers)


def verify_cover(bld: ChamberComplex, lc: LiftedCover, window: Window, d: int | None = None,
                 cap: int = DEFAULT_CAP) -> CoverReport:
    """Recompute coverage, same-color separation and set diameters from scratch.

    Separation uses a multi-source BFS over the window enlarged by
    ``(d - 1) // 2``: every gallery shorter than d between window chambers
    stays inside it, so any pair closer than d is found with its exact
    distance.  Larger reported minima are upper bounds that are >= d.
    """
    d = lc.scale_d if d is None else d
    margin = max(0, (d - 1) // 2)
    vw = window if margin == 0 else Window(bld, window.radius + margin, cap)
    violations: list[str] = []

    hit = np.zeros(len(window), dtype=bool)
    for V in lc.all_sets():
        for c in V.chambers:
            i = window.index.get(c)
            if i is None:
                violations.append(f"chamber {c!r} of a lifted set lies outside the window")
            else:
                hit[i] = True
    uncovered = [window.chambers[i] for i in np.flatnonzero(~hit)]
    if uncovered:
        violations.append(f"{len(uncovered)} chambers of the window are not covered")

    best = None
    best_pair = None
    for color, fam in enumerate(lc.families):
        if len(fam) < 2:
            continue
        owner = np.full(len(vw), -1, dtype=np.int32)
        overlap = None
        for j, V in enumerate(fam):
            for c in V.chambers:
                i = vw.index.get(c)
                if i is None:
                    continue
                if owner[i] >= 0 and owner[i] != j and overlap is None:
                    overlap = (0, int(owner[i]), j)
                owner[i] = j
        if overlap is not None:
            dist, a, b = overlap
        else:
            dist, a, b = kernels.voronoi_min(vw.indptr, vw.indices, owner)
        if dist < 0:
            continue
        if best is None or dist < best:
            best, best_pair = int(dist), [color, int(a), int(b)]
    if best is not None and best < d:
        violations.append(
            f"color {best_pair[0]}: sets {best_pair[1]} and {best_pair[2]} are {best} < {d} apart")

    diams = []
    for color, fam in enumerate(lc.families):
        for j, V in enumerate(fam):
            diams.append({"color": color, "set": j, "source": V.source_index,
                          "component": V.component, "size": len(V.chambers),
                          "diameter": set_diameter(bld, V.chambers)})
    hist = Counter(x["diameter"] for x in diams)
    return CoverReport(
        d=d,
        window_radius=window.radius,
        lift_margin=lc.margin,
        verification_radius=vw.radius,
        chamber_count=len(window),
        set_count=len(diams),
        colors_used=sum(1 for fam in lc.families if fam),
        covered=not uncovered,
        uncovered=uncovered,
        min_same_color_distance=best,
        closest_pair=best_pair,
        max_set_diameter=max((x["diameter"] for x in diams), default=0),
        diameter_histogram=dict(sorted(hist.items())),
        set_diameters=diams,
        violations=violations,
    )


# -- diameter bound of a component ----------------------------------------------


@dataclass
class BoundCheck:
    N: int
    L: int
    diameter: int
    max_gate_distance: int
    holds: bool


def diameter_bound_check(bld: ChamberComplex, fm: FoldingMap, U: Iterable[Element],
                         gamma_and_gate: tuple, measured_V: Iterable) -> BoundCheck:
    """Check ``diam(V) < 2L + 2N`` and ``delta(e, c) < L + N`` for every c in V.

    N is the diameter of U in W; L is one more than the gallery distance from
    the gate chamber e to the nearest chamber of V.
    """
    sys = fm.coxeter
    _gamma, e = gamma_and_gate
    V = list(measured_V)
    N = apartment_diameter(sys, U)
    dists = [bld.gallery_distance(e, c) for c in V]
    L = min(dists) + 1
    diam = set_diameter(bld, V)
    holds = diam < 2 * L + 2 * N and max(dists) < L + N
    return BoundCheck(N, L, diam, max(dists), holds)


@dataclass
class ComponentMeasure:
    U: frozenset
    gamma: tuple
    gate: object
    chambers: tuple
    bound: BoundCheck


def measure_components(fm: FoldingMap, window: Window, U: Iterable[Element]) -> list[ComponentMeasure]:
    """Gate and diameter bound for every gallery-connected component of fold^-1(U) in the window."""
    sys = fm.coxeter
    U = frozenset(sys.reduce(u) for u in U)
    gamma, _g = sys.weak_order_gate(apartment_neighborhood(sys, U))
    mask = np.zeros(len(window), dtype=np.uint8)
    for u in U:
        for i in window.fold_index.get(u, ()):
            mask[i] = 1
    labels = kernels.label_components(window.indptr, window.indices, mask)
    groups: dict[int, list] = defaultdict(list)
    for i in np.flatnonzero(labels >= 0):
        groups[int(labels[i])].append(window.chambers[i])
    out = []
    for lab in sorted(groups):
        V = groups[lab]
        e = fm.component_gate(V, gamma)
        out.append(ComponentMeasure(U, gamma, e, tuple(V),
                                    diameter_bound_check(fm.building, fm, U, (gamma, e), V)))
    return out
