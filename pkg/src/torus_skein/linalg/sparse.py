from collections.abc import Iterable, Mapping
from typing import Self

import numpy as np
from numpy.typing import ArrayLike
from scipy import sparse


def _csr(shape: tuple[int, int], rows: ArrayLike, cols: ArrayLike, values: ArrayLike) -> sparse.csr_array:
    matrix = sparse.csr_array(
        (np.asarray(values, dtype=np.int64), (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
        shape=shape,
        dtype=np.int64,
    )
    matrix.eliminate_zeros()
    return matrix


class SparseMatrix:
    __slots__ = ("_csr",)

    def __init__(
        self,
        rows: int,
        cols: int,
        entries: Mapping[tuple[int, int], int] | Iterable[tuple[int, int, int]] = (),
    ) -> None:
        if rows < 0 or cols < 0:
            raise ValueError(f"Invalid shape ({rows}, {cols})")
        if isinstance(entries, Mapping):
            triples: Iterable[tuple[int, int, int]] = ((r, c, v) for (r, c), v in entries.items())
        else:
            triples = entries
        seen: set[tuple[int, int]] = set()
        row_index: list[int] = []
        col_index: list[int] = []
        values: list[int] = []
        for r, c, value in triples:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"Entry ({r}, {c}) outside shape ({rows}, {cols})")
            if (r, c) in seen:
                raise ValueError(f"Duplicate entry ({r}, {c})")
            seen.add((r, c))
            row_index.append(r)
            col_index.append(c)
            values.append(value)
        self._csr = _csr((rows, cols), row_index, col_index, values)

    @classmethod
    def from_coo(cls, shape: tuple[int, int], rows: ArrayLike, cols: ArrayLike, values: ArrayLike) -> Self:
        """Bulk constructor from index arrays; repeated positions are summed."""
        matrix = cls.__new__(cls)
        matrix._csr = _csr(shape, rows, cols, values)
        return matrix

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Self:
        return cls(rows, cols)

    @classmethod
    def from_dense(cls, dense: list[list[int]]) -> Self:
        rows = len(dense)
        cols = len(dense[0]) if dense else 0
        return cls(rows, cols, ((r, c, v) for r, line in enumerate(dense) for c, v in enumerate(line) if v))

    @property
    def csr(self) -> sparse.csr_array:
        return self._csr

    @property
    def shape(self) -> tuple[int, int]:
        rows, cols = self._csr.shape
        return (int(rows), int(cols))

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    @property
    def nnz(self) -> int:
        return int(self._csr.nnz)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return int(self._csr[key])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and (self._csr - other._csr).count_nonzero() == 0

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def entries(self) -> list[tuple[int, int, int]]:
        coo = self._csr.tocoo()
        return sorted(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist(), strict=True))

    def is_zero(self) -> bool:
        return self._csr.count_nonzero() == 0

    def to_dense(self) -> list[list[int]]:
        dense: list[list[int]] = self._csr.toarray().tolist()
        return dense

    def mod2(self) -> "SparseMatrix":
        reduced = self._csr.copy()
        reduced.data &= 1
        reduced.eliminate_zeros()
        matrix = SparseMatrix.__new__(SparseMatrix)
        matrix._csr = reduced
        return matrix

    def row_maps(self) -> dict[int, dict[int, int]]:
        indptr = self._csr.indptr.tolist()
        indices = self._csr.indices.tolist()
        data = self._csr.data.tolist()
        return {
            r: dict(zip(indices[start:end], data[start:end], strict=True))
            for r, (start, end) in enumerate(zip(indptr, indptr[1:], strict=False))
            if end > start
        }

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Shape mismatch: {self.shape} @ {other.shape}")
        product = SparseMatrix.__new__(SparseMatrix)
        product._csr = sparse.csr_array(self._csr @ other._csr)
        product._csr.eliminate_zeros()
        return product

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self.matmul(other)
