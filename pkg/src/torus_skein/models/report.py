from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field

from torus_skein.models.diagram import ValidationReport, Winding
from torus_skein.models.grading import Ring, SkeinDegree
from torus_skein.models.results import ComparisonVerdict, DetectionReport


class ReportRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    hom_degree: int | None = None
    degree: str
    degree_terms: SkeinDegree
    betti: int
    torsion: tuple[int, ...] = ()


class CGradedRank(BaseModel):
    model_config = ConfigDict(frozen=True)

    c_degree: int
    rank: int


class ValidationPayload(BaseModel):
    kind: Literal["validation"] = "validation"
    accepted: bool
    report: ValidationReport


class HomologyPayload(BaseModel):
    kind: Literal["homology"] = "homology"
    ring: Ring
    hom_degree_column: bool
    rows: list[ReportRow]
    total_rank: int
    c: Winding | None = None
    c_graded: list[CGradedRank] | None = None


class DetectionPayload(BaseModel):
    kind: Literal["detection"] = "detection"
    report: DetectionReport
    summary: str


class ComparisonPayload(BaseModel):
    kind: Literal["comparison"] = "comparison"
    verdict: ComparisonVerdict


Payload = Annotated[
    ValidationPayload | HomologyPayload | DetectionPayload | ComparisonPayload,
    Field(discriminator="kind"),
]


class ReportDocument(BaseModel):
    tool_version: str
    input_digest: str
    command: list[str]
    payload: Payload
