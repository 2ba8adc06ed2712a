"""Exact rational linear programming."""

from .analysis import AffineHull, affine_hull, implicit_equalities, is_feasible, remove_redundant
from .kernels import BACKEND
from .model import MAX_VARIABLES, LinearProgram, LPResult, Status, as_row, row_dot
from .simplex import solve

__all__ = [
    "AffineHull",
    "BACKEND",
    "LPResult",
    "LinearProgram",
    "MAX_VARIABLES",
    "Status",
    "affine_hull",
    "as_row",
    "implicit_equalities",
    "is_feasible",
    "remove_redundant",
    "row_dot",
    "solve",
]
