from torus_skein.linalg.base import BaseReducer, BoundaryReduction
from torus_skein.linalg.elimination import eliminate_units
from torus_skein.linalg.gf2 import Gf2Reducer, rank_mod2
from torus_skein.linalg.smith import IntegerReducer, smith_normal_form
from torus_skein.linalg.sparse import SparseMatrix

__all__ = [
    "BaseReducer",
    "BoundaryReduction",
    "Gf2Reducer",
    "IntegerReducer",
    "SparseMatrix",
    "eliminate_units",
    "rank_mod2",
    "smith_normal_form",
]
