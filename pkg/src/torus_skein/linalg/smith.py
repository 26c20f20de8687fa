from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from torus_skein.linalg.base import BaseReducer, BoundaryReduction
from torus_skein.linalg.elimination import Rows, eliminate_units
from torus_skein.linalg.sparse import SparseMatrix


def _remainder_factors(rows: Rows) -> list[int]:
    columns = sorted({c for row in rows.values() for c in row})
    index = {c: i for i, c in enumerate(columns)}
    sdm = {i: {index[c]: ZZ(value) for c, value in row.items()} for i, row in enumerate(rows.values())}
    remainder = DomainMatrix(sdm, (len(rows), len(columns)), ZZ)
    return sorted(abs(int(f)) for f in invariant_factors(remainder) if f)


def smith_normal_form(matrix: SparseMatrix) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... | dr of an integer matrix.

    Unit pivots are eliminated sparsely first; sympy takes the Smith form of
    whatever is left, which is where all the torsion lives.
    """
    units, remainder = eliminate_units(matrix)
    factors = [1] * units
    if remainder:
        factors += _remainder_factors(remainder)
    return sorted(factors)


class IntegerReducer(BaseReducer):
    def reduce(self, matrix: SparseMatrix) -> BoundaryReduction:
        factors = smith_normal_form(matrix)
        return BoundaryReduction(rank=len(factors), torsion=tuple(f for f in factors if f > 1))
