from abc import ABC, abstractmethod

from pydantic import BaseModel, ConfigDict

from torus_skein.linalg.sparse import SparseMatrix


class BoundaryReduction(BaseModel):
    model_config = ConfigDict(frozen=True)

    rank: int
    torsion: tuple[int, ...] = ()


class BaseReducer(ABC):
    @abstractmethod
    def reduce(self, matrix: SparseMatrix) -> BoundaryReduction: ...
