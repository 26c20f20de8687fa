from pydantic import BaseModel, ConfigDict

from torus_skein.models.diagram import Winding
from torus_skein.models.grading import CurveClass


class Circle(BaseModel):
    """A circle of a resolved diagram.

    ``traversals`` lists (edge index, +1 | -1) in tracing order; consecutive
    traversals are joined by a hop inside a crossing. Free-loop circles have no
    traversals and carry their loop index instead.
    """

    model_config = ConfigDict(frozen=True)

    id: int
    key: int
    half_edges: tuple[int, ...] = ()
    traversals: tuple[tuple[int, int], ...] = ()
    loop: int | None = None
    winding: Winding
    curve: CurveClass


class ResolvedState(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertex: int
    crossing_count: int
    circles: tuple[Circle, ...]
    slot_owner: tuple[int, ...]
    loop_owner: tuple[int, ...] = ()

    @property
    def hom_degree(self) -> int:
        return self.vertex.bit_count()

    def owner(self, crossing: int, slot: int) -> int:
        return self.slot_owner[4 * crossing + slot]

    def essential_class(self) -> CurveClass | None:
        return next((c.curve for c in self.circles if c.curve.is_essential), None)

    def index_by_key(self) -> dict[int, int]:
        return {c.key: c.id for c in self.circles}
