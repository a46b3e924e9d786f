"""Buildings as W-metric chamber systems."""
from .base import AxiomReport, ChamberComplex, Gallery, check_axioms, prefix_chamber
from .fano import FanoBuilding, fano_building
from .product import ProductBuilding, product_building
from .rab import RightAngledBuilding, right_angled_building
from .thin import ThinBuilding, thin_building
from .tree import TreeBuilding, tree_building

__all__ = [
    "AxiomReport", "ChamberComplex", "Gallery", "check_axioms", "prefix_chamber",
    "FanoBuilding", "fano_building", "ProductBuilding", "product_building",
    "RightAngledBuilding", "right_angled_building", "ThinBuilding", "thin_building",
    "TreeBuilding", "tree_building",
]
