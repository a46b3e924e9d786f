"""Command-line driver: build, cover, gallery, verify, export-dot."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import io
from .buildings import ChamberComplex, ProductBuilding, ThinBuilding, TreeBuilding, fano_building
from .coxeter import DEFAULT_CAP, CoxeterSystem, affine_a2, direct_product, infinite_dihedral
from .covers import brick_cover_product, build_lifted_cover, interval_cover, is_infinite_dihedral, verify_cover
from .errors import CoxbuildError, ResourceLimitError
from .retraction import FoldingMap
from .window import Window

SHORTHANDS = {
    "thin-dinf": lambda q: ThinBuilding(infinite_dihedral()),
    "thin-a2": lambda q: ThinBuilding(CoxeterSystem([[1, 3], [3, 1]])),
    "thin-b2": lambda q: ThinBuilding(CoxeterSystem([[1, 4], [4, 1]])),
    "thin-a2tilde": lambda q: ThinBuilding(affine_a2()),
    "thin-dinf2": lambda q: ThinBuilding(direct_product(infinite_dihedral(), infinite_dihedral())),
    "tree": lambda q: TreeBuilding(q),
    "tree-product": lambda q: ProductBuilding(TreeBuilding(q), TreeBuilding(q)),
    "fano": lambda q: fano_building(),
}


@dataclass
class RunConfig:
    building: ChamberComplex
    radius: int = 0
    d: int = 1
    cover_mode: str = "auto"
    max_chambers: int = DEFAULT_CAP
    margin: int = 0
    out: Path | None = None
    report: Path | None = None
    format: str = "json"
    workers: int = 1

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("--radius must be non-negative")
        if self.d < 1:
            raise ValueError("--d must be positive")
        if self.workers < 1:
            raise ValueError("--workers must be positive")


def resolve_building(spec: str, q: int) -> ChamberComplex:
    if spec in SHORTHANDS:
        return SHORTHANDS[spec](q)
    text = spec
    if not spec.lstrip().startswith("{"):
        p = Path(spec)
        if not p.exists():
            raise io.SchemaError(f"unknown building {spec!r} (shorthands: {', '.join(SHORTHANDS)})")
        text = p.read_text()
    return io.building_from_descriptor(json.loads(text))


def apartment_cover(bld: ChamberComplex, d: int, radius: int, mode: str):
    sys_ = bld.coxeter
    if is_infinite_dihedral(sys_):
        if mode not in ("auto", "interval"):
            raise ValueError(f"cover mode {mode!r} needs a rank-4 product apartment")
        return interval_cover(sys_, d, radius), "interval"
    dinf = infinite_dihedral()
    if sys_ == direct_product(dinf, dinf):
        m = "brick" if mode == "auto" else mode
        c1 = interval_cover(dinf, d, radius)
        return brick_cover_product(c1, c1, d, mode=m), m
    raise ValueError("covers are available for D-infinity and D-infinity x D-infinity apartments")


def _write(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def cmd_build(cfg: RunConfig) -> int:
    win = Window(cfg.building, cfg.radius, cfg.max_chambers)
    doc = io.window_to_json(win)
    _write(cfg.out, io.dumps(doc))
    if "expected_count" in doc and doc["expected_count"] != doc["count"]:
        print(f"chamber count {doc['count']} != closed form {doc['expected_count']}", file=sys.stderr)
        return 1
    return 0


def run_cover(cfg: RunConfig):
    bld = cfg.building
    win = Window(bld, cfg.radius, cfg.max_chambers)
    fm = FoldingMap(bld)
    cov, mode = apartment_cover(bld, cfg.d, cfg.radius, cfg.cover_mode)
    lc = build_lifted_cover(fm, cov, win, margin=cfg.margin, workers=cfg.workers, cap=cfg.max_chambers)
    rep = verify_cover(bld, lc, win, cap=cfg.max_chambers)
    return win, lc, rep, mode


def _report_text(bld, rep, fmt: str) -> str:
    return io.report_to_csv(rep) if fmt == "csv" else io.dumps(io.report_to_json(bld, rep))


def cmd_cover(cfg: RunConfig) -> int:
    written = []
    try:
        _win, lc, rep, mode = run_cover(cfg)
        cover_text = io.dumps(io.cover_to_json(cfg.building, lc, mode))
        report_text = _report_text(cfg.building, rep, cfg.format)
        if cfg.out is not None:
            written.append(cfg.out)
            cfg.out.write_text(cover_text)
        if cfg.report is not None:
            written.append(cfg.report)
            cfg.report.write_text(report_text)
        else:
            sys.stdout.write(report_text)
    except BaseException:
        for p in written:
            p.unlink(missing_ok=True)
        raise
    return 0 if rep.ok else 1


def cmd_verify(cfg: RunConfig, cover_path: Path, d: int | None) -> int:
    doc = json.loads(Path(cover_path).read_text())
    bld, lc = io.cover_from_json(doc)
    win = Window(bld, lc.window_radius, cfg.max_chambers)
    rep = verify_cover(bld, lc, win, d=d, cap=cfg.max_chambers)
    _write(cfg.out, _report_text(bld, rep, cfg.format))
    return 0 if rep.ok else 1


def cmd_gallery(cfg: RunConfig, src: str | None, dst: str, prefix: str | None) -> int:
    bld = cfg.building
    c2 = bld.decode(json.loads(dst))
    if prefix is not None:
        if src is not None and bld.decode(json.loads(src)) != bld.base:
            raise ValueError("--prefix lifts from the base chamber; omit --from")
        word = json.loads(prefix) if prefix.strip().startswith("[") else bld.coxeter.parse(prefix)
        g = FoldingMap(bld).lift_with_prefix(c2, word)
    else:
        c = bld.base if src is None else bld.decode(json.loads(src))
        g = bld.minimal_gallery(c, c2)
    _write(cfg.out, io.dumps(g.to_json(bld)))
    return 0


def cmd_export_dot(cfg: RunConfig, cover_path: Path | None) -> int:
    if cover_path is not None:
        bld, lc = io.cover_from_json(json.loads(Path(cover_path).read_text()))
        win = Window(bld, lc.window_radius, cfg.max_chambers)
    else:
        lc = None
        win = Window(cfg.building, cfg.radius, cfg.max_chambers)
    _write(cfg.out, io.window_to_dot(win, lc))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--building", default="tree",
                        help="shorthand, inline JSON descriptor, or path to a descriptor file")
    common.add_argument("--q", type=int, default=2, help="tree thickness for tree shorthands")
    common.add_argument("--radius", type=int, default=3)
    common.add_argument("--d", type=int, default=None)
    common.add_argument("--cover-mode", choices=["auto", "interval", "brick", "product"], default="auto")
    common.add_argument("--max-chambers", type=int, default=DEFAULT_CAP)
    common.add_argument("--margin", type=int, default=0,
                        help="extra radius used when computing lifted components")
    common.add_argument("--out", type=Path, default=None)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(prog="coxbuild", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="write a chamber window as JSON")
    c = sub.add_parser("cover", parents=[common], help="lift an apartment cover and verify it")
    c.add_argument("--report", type=Path, default=None)
    g = sub.add_parser("gallery", parents=[common], help="print a minimal gallery")
    g.add_argument("--from", dest="src", default=None, help="JSON chamber (default: base)")
    g.add_argument("--to", dest="dst", required=True, help="JSON chamber")
    g.add_argument("--prefix", default=None, help='type prefix, e.g. "s t" or [0,1]')
    v = sub.add_parser("verify", parents=[common], help="recompute the report of a stored cover")
    v.add_argument("cover", type=Path)
    e = sub.add_parser("export-dot", parents=[common], help="DOT graph of a window")
    e.add_argument("--cover", type=Path, default=None)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            building=resolve_building(args.building, args.q),
            radius=args.radius,
            d=args.d if args.d is not None else 1,
            cover_mode=args.cover_mode,
            max_chambers=args.max_chambers,
            margin=args.margin,
            out=args.out,
            report=getattr(args, "report", None),
            format=args.format,
            workers=args.workers,
        )
        if args.command == "build":
            return cmd_build(cfg)
        if args.command == "cover":
            return cmd_cover(cfg)
        if args.command == "gallery":
            return cmd_gallery(cfg, args.src, args.dst, args.prefix)
        if args.command == "verify":
            return cmd_verify(cfg, args.cover, args.d)
        return cmd_export_dot(cfg, args.cover)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2
    except (CoxbuildError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
