from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from torus_skein.models.diagram import ValidationReport


class TorusSkeinError(Exception):
    pass


class DiagramParseError(TorusSkeinError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DiagramValidationError(TorusSkeinError):
    def __init__(self, report: ValidationReport) -> None:
        self.report = report
        summary = "; ".join(f"{issue.code}: {issue.message}" for issue in report.errors)
        super().__init__(f"Invalid diagram: {summary}")


class NonPrimitiveClassError(TorusSkeinError):
    pass


class CrossingCapExceededError(TorusSkeinError):
    pass


class WrongRingError(TorusSkeinError):
    pass


class EdgeIndexError(TorusSkeinError):
    pass


class EngineInvariantError(TorusSkeinError):
    pass


class CaseAnalysisViolation(EngineInvariantError):  # noqa: N818
    pass


class BoundaryNotNilpotentError(EngineInvariantError):
    pass


class DegreeViolationError(EngineInvariantError):
    pass
