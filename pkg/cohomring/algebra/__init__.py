from .linalg import nullspace, rank, rref, solve
from .polynomial import GradedPolynomial, homogeneous_monomials, substitute_linear
from .scalar import Cyclotomic, euler_phi
from .series import PoincareSeries, product_of_geometric

__all__ = [
    "nullspace", "rank", "rref", "solve",
    "GradedPolynomial", "homogeneous_monomials", "substitute_linear",
    "Cyclotomic", "euler_phi",
    "PoincareSeries", "product_of_geometric",
]
