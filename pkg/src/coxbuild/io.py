"""JSON documents (Coxeter matrices, building descriptors, windows, covers, reports) and DOT export.

Coxeter matrices use ``{"rank": n, "m": [[...]]}`` with 0 standing for infinity.
"""
from __future__ import annotations

import csv
import io as _io
import json
from typing import Any

from .buildings import (
    ChamberComplex, FanoBuilding, ProductBuilding, RightAngledBuilding, ThinBuilding, TreeBuilding,
)
from .coxeter import INF, CoxeterSystem
from .covers import ApartmentCover, CoverReport, LiftedCover, LiftedSet
from .errors import CoxbuildError
from .window import Window


class SchemaError(CoxbuildError, ValueError):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


# -- Coxeter matrices and building descriptors ---------------------------------


def coxeter_to_json(sys: CoxeterSystem) -> dict:
    return {"rank": sys.rank, "m": [[0 if v == INF else int(v) for v in row] for row in sys.m]}


def coxeter_from_json(obj: dict) -> CoxeterSystem:
    try:
        rank = int(obj["rank"])
        m = [[INF if v == 0 else v for v in row] for row in obj["m"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad Coxeter matrix document: {exc}") from None
    if len(m) != rank:
        raise SchemaError("rank does not match matrix size")
    return CoxeterSystem(m)


def building_from_descriptor(desc: dict) -> ChamberComplex:
    try:
        kind = desc["kind"]
    except (KeyError, TypeError):
        raise SchemaError("building descriptor needs a 'kind'") from None
    if kind == "thin":
        return ThinBuilding(coxeter_from_json(desc["coxeter"]))
    if kind == "tree":
        return TreeBuilding(int(desc.get("q", 2)))
    if kind == "rab":
        return RightAngledBuilding(coxeter_from_json(desc["coxeter"]), desc["params"])
    if kind == "product":
        f = desc.get("factors")
        if not isinstance(f, list) or len(f) != 2:
            raise SchemaError("product descriptor needs two factors")
        return ProductBuilding(building_from_descriptor(f[0]), building_from_descriptor(f[1]))
    if kind == "fano":
        return FanoBuilding()
    raise SchemaError(f"unknown building kind {kind!r}")


# -- windows -------------------------------------------------------------------------


def tree_window_count(q: int, radius: int) -> int:
    """Closed form ``1 + 2 * sum_{k=1..r} q^k`` for a tree window."""
    return 1 + 2 * sum(q**k for k in range(1, radius + 1))


def window_to_json(win: Window) -> dict:
    bld = win.building
    chambers = []
    for i, c in enumerate(win.chambers):
        adj = [[int(win.indices[k]), int(win.edge_types[k])]
               for k in range(win.indptr[i], win.indptr[i + 1])]
        chambers.append({"id": i, "chamber": bld.encode(c), "depth": int(win.depth[i]),
                         "fold": list(win.folds[i]), "adjacent": adj})
    doc = {"building": bld.descriptor(), "radius": win.radius, "count": len(win)}
    if isinstance(bld, TreeBuilding):
        doc["expected_count"] = tree_window_count(bld.q, win.radius)
    doc["chambers"] = chambers
    return doc


def window_from_json(doc: dict, cap: int = 10**6) -> Window:
    """Rebuild a window from its descriptor and check the stored data against it."""
    try:
        bld = building_from_descriptor(doc["building"])
        win = Window(bld, int(doc["radius"]), cap)
        stored = doc["chambers"]
    except KeyError as exc:
        raise SchemaError(f"window document lacks {exc}") from None
    if len(stored) != len(win):
        raise SchemaError(f"window lists {len(stored)} chambers, descriptor gives {len(win)}")
    for i, rec in enumerate(stored):
        c = bld.decode(rec["chamber"])
        if win.index.get(c) != i or list(win.folds[i]) != rec["fold"]:
            raise SchemaError(f"chamber record {i} disagrees with the building")
        adj = sorted((int(j), int(s)) for j, s in rec["adjacent"])
        mine = sorted((int(win.indices[k]), int(win.edge_types[k]))
                      for k in range(win.indptr[i], win.indptr[i + 1]))
        if adj != mine:
            raise SchemaError(f"adjacency of chamber {i} disagrees with the building")
    return win


# -- covers and reports ---------------------------------------------------------------


def cover_to_json(bld: ChamberComplex, lc: LiftedCover, mode: str) -> dict:
    fams = []
    for fam in lc.families:
        out = []
        for V in fam:
            U = lc.sources[V.color][V.source_index]
            out.append({
                "chambers": [bld.encode(c) for c in V.chambers],
                "source": {"color": V.color, "index": V.source_index, "component": V.component,
                           "elements": [list(u) for u in sorted(U, key=lambda e: (len(e), e))]},
            })
        fams.append(out)
    return {"d": lc.scale_d, "building": bld.descriptor(), "window_radius": lc.window_radius,
            "margin": lc.margin, "cover_mode": mode, "families": fams}


def cover_from_json(doc: dict) -> tuple[ChamberComplex, LiftedCover]:
    try:
        bld = building_from_descriptor(doc["building"])
        d = int(doc["d"])
        radius = int(doc["window_radius"])
        margin = int(doc.get("margin", 0))
        fams_doc = doc["families"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad cover document: {exc}") from None
    families, sources = [], []
    for color, fam in enumerate(fams_doc):
        sets, srcs = [], {}
        for rec in fam:
            try:
                src = rec.get("source", {})
                chambers = tuple(bld.decode(c) for c in rec["chambers"])
            except (KeyError, AttributeError) as exc:
                raise SchemaError(f"bad lifted set record: {exc}") from None
            idx = int(src.get("index", len(sets)))
            srcs[idx] = frozenset(tuple(e) for e in src.get("elements", []))
            sets.append(LiftedSet(chambers, color, idx, int(src.get("component", 0))))
        families.append(sets)
        n = max(srcs, default=-1) + 1
        sources.append([srcs.get(k, frozenset()) for k in range(n)])
    return bld, LiftedCover(d, radius, margin, families, sources)


def report_to_json(bld: ChamberComplex, rep: CoverReport) -> dict:
    return {
        "ok": rep.ok,
        "d": rep.d,
        "window_radius": rep.window_radius,
        "lift_margin": rep.lift_margin,
        "verification_radius": rep.verification_radius,
        "chamber_count": rep.chamber_count,
        "set_count": rep.set_count,
        "colors_used": rep.colors_used,
        "covered": rep.covered,
        "uncovered": [bld.encode(c) for c in rep.uncovered],
        "min_same_color_distance": rep.min_same_color_distance,
        "closest_pair": rep.closest_pair,
        "max_set_diameter": rep.max_set_diameter,
        "diameter_histogram": {str(k): v for k, v in rep.diameter_histogram.items()},
        "violations": list(rep.violations),
        "sets": rep.set_diameters,
    }


def report_to_csv(rep: CoverReport) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["color", "set", "source", "component", "size", "diameter"])
    for x in rep.set_diameters:
        w.writerow([x["color"], x["set"], x["source"], x["component"], x["size"], x["diameter"]])
    return buf.getvalue()


def apartment_cover_to_json(cov: ApartmentCover) -> dict:
    return {"d": cov.scale_d, "mesh": cov.mesh, "window_radius": cov.window_radius,
            "families": [[{"elements": [list(u) for u in sorted(U, key=lambda e: (len(e), e))]}
                          for U in fam] for fam in cov.families]}


# -- DOT -----------------------------------------------------------------------------------

_PALETTE = ["#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999"]
_SHADES = ["ff", "cc", "99"]


def window_to_dot(win: Window, lc: LiftedCover | None = None) -> str:
    bld = win.building
    names = bld.coxeter.names
    owner: dict[int, tuple[int, int]] = {}
    if lc is not None:
        for color, fam in enumerate(lc.families):
            for j, V in enumerate(fam):
                for c in V.chambers:
                    i = win.index.get(c)
                    if i is not None and i not in owner:
                        owner[i] = (color, j)
    lines = ["graph window {", "  node [shape=circle, style=filled, fillcolor=white];"]
    for i, c in enumerate(win.chambers):
        attrs = [f'tooltip="{json.dumps(bld.encode(c))}"']
        label = "B" if i == 0 else str(i)
        if i in owner:
            color, j = owner[i]
            fill = _PALETTE[color % len(_PALETTE)] + _SHADES[j % len(_SHADES)]
            attrs.append(f'fillcolor="{fill}"')
            label += f"\\n{color}:{j}"
        if i == 0:
            attrs.append("shape=doublecircle")
        attrs.append(f'label="{label}"')
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for i, j, s in win.edges():
        lines.append(f'  n{i} -- n{j} [label="{names[s]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
