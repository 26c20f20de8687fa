import numpy as np
from numpy.typing import NDArray

from torus_skein.linalg.base import BaseReducer, BoundaryReduction
from torus_skein.linalg.elimination import Rows, eliminate_units
from torus_skein.linalg.sparse import SparseMatrix

# columns denser than this go to the packed dense phase
SPARSE_PIVOT_DEGREE = 32


def pack_rows(rows: Rows) -> NDArray[np.uint64]:
    """Rows as bit arrays, 64 columns per uint64 word."""
    columns = sorted({c for row in rows.values() for c in row})
    index = {c: i for i, c in enumerate(columns)}
    packed = np.zeros((len(rows), max(1, (len(columns) + 63) // 64)), dtype=np.uint64)
    row_index = np.fromiter(
        (i for i, row in enumerate(rows.values()) for _ in row), dtype=np.int64, count=sum(map(len, rows.values()))
    )
    positions = np.fromiter((index[c] for row in rows.values() for c in row), dtype=np.int64, count=row_index.size)
    bits = np.left_shift(np.uint64(1), (positions & 63).astype(np.uint64))
    np.bitwise_or.at(packed, (row_index, positions >> 6), bits)
    return packed


def packed_rank(packed: NDArray[np.uint64]) -> int:
    n_rows, words = packed.shape
    rank = 0
    for word in range(words):
        for bit in range(64):
            if rank == n_rows:
                return rank
            hits = np.flatnonzero(packed[rank:, word] & np.uint64(1 << bit)) + rank
            if not hits.size:
                continue
            pivot = hits[0]
            if pivot != rank:
                packed[[rank, pivot]] = packed[[pivot, rank]]
            if hits.size > 1:
                packed[hits[1:], word:] ^= packed[rank, word:]
            rank += 1
    return rank


def rank_mod2(matrix: SparseMatrix) -> int:
    eliminated, remainder = eliminate_units(matrix, modulus=2, max_degree=SPARSE_PIVOT_DEGREE)
    if not remainder:
        return eliminated
    return eliminated + packed_rank(pack_rows(remainder))


class Gf2Reducer(BaseReducer):
    def reduce(self, matrix: SparseMatrix) -> BoundaryReduction:
        return BoundaryReduction(rank=rank_mod2(matrix))
