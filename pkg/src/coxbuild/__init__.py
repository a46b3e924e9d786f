"""Coxeter groups, buildings as W-metric chamber systems, folding maps and lifted covers."""
from .buildings import (
    ChamberComplex, FanoBuilding, Gallery, ProductBuilding, RightAngledBuilding, ThinBuilding,
    TreeBuilding, check_axioms,
)
from .coxeter import INF, BraidMove, CoxeterSystem, affine_a2, dihedral, direct_product, infinite_dihedral
from .covers import (
    ApartmentCover, CoverReport, LiftedCover, brick_cover_product, build_lifted_cover, interval_cover,
    measure_components, verify_cover,
)
from .errors import (
    CoxbuildError, GateIndependenceError, InvalidMatrixError, LiftError, NotReducedError,
    ResourceLimitError, UnknownChamberError,
)
from .retraction import FoldingMap
from .window import Window

__version__ = "0.1.0"

__all__ = [
    "ChamberComplex", "FanoBuilding", "Gallery", "ProductBuilding", "RightAngledBuilding",
    "ThinBuilding", "TreeBuilding", "check_axioms", "INF", "BraidMove", "CoxeterSystem",
    "affine_a2", "dihedral", "direct_product", "infinite_dihedral", "ApartmentCover", "CoverReport",
    "LiftedCover", "brick_cover_product", "build_lifted_cover", "interval_cover",
    "measure_components", "verify_cover", "CoxbuildError", "GateIndependenceError",
    "InvalidMatrixError", "LiftError", "NotReducedError", "ResourceLimitError",
    "UnknownChamberError", "FoldingMap", "Window",
]
