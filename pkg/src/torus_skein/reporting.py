import hashlib
from collections.abc import Sequence

from torus_skein.core.homology import c_graded_ranks
from torus_skein.models.diagram import ValidationReport, Winding
from torus_skein.models.grading import Ring
from torus_skein.models.report import (
    CGradedRank,
    ComparisonPayload,
    DetectionPayload,
    HomologyPayload,
    Payload,
    ReportDocument,
    ReportRow,
    ValidationPayload,
)
from torus_skein.models.results import (
    AnnulusVerdict,
    ComparisonVerdict,
    DetectionReport,
    HomologyResult,
    KnotVerdict,
)
from torus_skein.version import __version__


def combined_digest(digests: Sequence[str]) -> str:
    return hashlib.sha256("\n".join(digests).encode("utf-8")).hexdigest()


def build_document(command: Sequence[str], input_digest: str, payload: Payload) -> ReportDocument:
    return ReportDocument(tool_version=__version__, input_digest=input_digest, command=list(command), payload=payload)


def validation_payload(report: ValidationReport) -> ValidationPayload:
    return ValidationPayload(accepted=report.accepted, report=report)


def homology_payload(
    result: HomologyResult,
    *,
    hom_degree_column: bool = False,
    c: Winding | None = None,
) -> HomologyPayload:
    rows: list[ReportRow] = []
    if hom_degree_column:
        for row in sorted(result.rows, key=lambda r: (r.degree.sort_key(), r.hom_degree)):
            rows.append(
                ReportRow(
                    hom_degree=row.hom_degree,
                    degree=row.degree.render(),
                    degree_terms=row.degree,
                    betti=row.betti,
                    torsion=row.torsion,
                )
            )
    else:
        ranks = result.ranks_by_degree()
        torsion = result.torsion_by_degree()
        for degree in sorted(set(ranks) | set(torsion), key=lambda d: d.sort_key()):
            rows.append(
                ReportRow(
                    degree=degree.render(),
                    degree_terms=degree,
                    betti=ranks.get(degree, 0),
                    torsion=torsion.get(degree, ()),
                )
            )

    c_graded = None
    if c is not None:
        c_graded = [CGradedRank(c_degree=k, rank=n) for k, n in c_graded_ranks(result, c).items()]
    return HomologyPayload(
        ring=result.ring,
        hom_degree_column=hom_degree_column,
        rows=rows,
        total_rank=result.total_rank,
        c=c,
        c_graded=c_graded,
    )


def detection_summary(report: DetectionReport) -> str:
    if report.knot_verdict is KnotVerdict.EMPTY_LINK:
        return "empty link"

    curve = report.annulus_class
    match report.annulus_verdict:
        case AnnulusVerdict.SUPPORTED_ON if curve is not None:
            support = f"supported on class ({curve.p},{curve.q})"
        case AnnulusVerdict.SUPPORTED_AT_ZERO_ONLY:
            support = "supported at zero only"
        case _:
            classes = ", ".join(f"({c.p},{c.q})" for c in report.support_classes)
            support = f"not supported on a single class ({classes})"

    if report.knot_verdict is KnotVerdict.CRITERION_MET:
        knot = f"({curve.p},{curve.q})-knot" if curve is not None else "knot"
        rank = f"rank-2 criterion met → link is an embedded {knot}"
    else:
        rank = f"rank {report.total_rank_mod2} > 2"
    return f"{support}; {rank}"


def detection_payload(report: DetectionReport) -> DetectionPayload:
    return DetectionPayload(report=report, summary=detection_summary(report))


def comparison_payload(verdict: ComparisonVerdict) -> ComparisonPayload:
    return ComparisonPayload(verdict=verdict)


def _ring_label(ring: Ring) -> str:
    return "Z/2" if ring is Ring.Z2 else "Z"


def _render_homology(payload: HomologyPayload) -> list[str]:
    lines = [f"coefficients: {_ring_label(payload.ring)}"]
    header = ["hom"] if payload.hom_degree_column else []
    header += ["degree", "rank"]
    if payload.ring is Ring.Z:
        header.append("torsion")
    lines.append("\t".join(header))
    for row in payload.rows:
        cells = [str(row.hom_degree)] if payload.hom_degree_column else []
        cells += [row.degree, str(row.betti)]
        if payload.ring is Ring.Z:
            cells.append(" + ".join(f"Z/{f}" for f in row.torsion) or "-")
        lines.append("\t".join(cells))
    lines.append(f"total rank: {payload.total_rank}")
    if payload.c is not None and payload.c_graded is not None:
        lines.append(f"c-graded ranks (c = {payload.c[0]},{payload.c[1]}):")
        lines += [f"{entry.c_degree:+d}\t{entry.rank}" for entry in payload.c_graded]
    return lines


def render_text(document: ReportDocument) -> str:
    payload = document.payload
    match payload:
        case ValidationPayload():
            lines = ["accepted" if payload.accepted else "rejected"]
            lines += [f"error {issue.code}: {issue.message}" for issue in payload.report.errors]
            lines += [f"warning {issue.code}: {issue.message}" for issue in payload.report.warnings]
        case HomologyPayload():
            lines = _render_homology(payload)
        case DetectionPayload():
            classes = ", ".join(str(c) for c in payload.report.support_classes) or "-"
            lines = [
                payload.summary,
                f"support classes: {classes}",
                f"Z/2 rank: {payload.report.total_rank_mod2}",
            ]
            if payload.report.transverse_ranks is not None:
                ranks = ", ".join(f"{grade:+d}:{rank}" for grade, rank in payload.report.transverse_ranks.items())
                lines.insert(2, f"transverse ranks: {ranks}")
        case ComparisonPayload():
            verdict = payload.verdict
            lines = ["equal" if verdict.equal else f"differ: {verdict.first_difference}"]
    return "\n".join(lines)
