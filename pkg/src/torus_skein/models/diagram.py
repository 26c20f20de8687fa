from enum import StrEnum
from typing import Self

from pydantic import BaseModel, ConfigDict, Field

Winding = tuple[int, int]


class Chirality(StrEnum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class Slot(BaseModel):
    """One of the four strand ends at a crossing, numbered counterclockwise.

    Slots 0 and 2 carry the understrand, slots 1 and 3 the overstrand.
    """

    model_config = ConfigDict(frozen=True)

    crossing: int = Field(ge=0)
    slot: int = Field(ge=0, le=3)

    @property
    def half_edge(self) -> int:
        return 4 * self.crossing + self.slot

    def __str__(self) -> str:
        return f"{self.crossing}.{self.slot}"


class Edge(BaseModel):
    """Arc between two slots; ``winding`` is its class in H1(T^2) traversed a -> b."""

    model_config = ConfigDict(frozen=True)

    a: Slot
    b: Slot
    winding: Winding = (0, 0)

    @classmethod
    def between(cls, a: tuple[int, int], b: tuple[int, int], winding: Winding = (0, 0)) -> Self:
        return cls(
            a=Slot(crossing=a[0], slot=a[1]),
            b=Slot(crossing=b[0], slot=b[1]),
            winding=winding,
        )


class FreeLoop(BaseModel):
    model_config = ConfigDict(frozen=True)

    winding: Winding = (0, 0)


class TorusDiagram(BaseModel):
    model_config = ConfigDict(frozen=True)

    crossing_count: int = Field(default=0, ge=0)
    edges: tuple[Edge, ...] = ()
    loops: tuple[FreeLoop, ...] = ()

    @property
    def is_empty(self) -> bool:
        return self.crossing_count == 0 and not self.loops

    @property
    def component_slots(self) -> int:
        return len(self.edges) + len(self.loops)

    def canonical(self) -> "TorusDiagram":
        ordered = tuple(sorted(self.edges, key=lambda e: (e.a.crossing, e.a.slot)))
        return self.model_copy(update={"edges": ordered})


class ValidationIssue(BaseModel):
    model_config = ConfigDict(frozen=True)

    code: str
    message: str


class ValidationReport(BaseModel):
    errors: list[ValidationIssue] = Field(default_factory=list)
    warnings: list[ValidationIssue] = Field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return not self.errors

    def error(self, code: str, message: str) -> None:
        self.errors.append(ValidationIssue(code=code, message=message))

    def warn(self, code: str, message: str) -> None:
        self.warnings.append(ValidationIssue(code=code, message=message))
