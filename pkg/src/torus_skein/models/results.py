from enum import StrEnum

from pydantic import BaseModel, ConfigDict

from torus_skein.models.grading import CurveClass, Ring, SkeinDegree


class AnnulusVerdict(StrEnum):
    SUPPORTED_ON = "supported_on"
    SUPPORTED_AT_ZERO_ONLY = "supported_at_zero_only"
    NOT_SUPPORTED = "not_supported"


class KnotVerdict(StrEnum):
    CRITERION_MET = "rank_is_2_embedded_knot_criterion_met"
    RANK_EXCEEDS_2 = "rank_exceeds_2"
    EMPTY_LINK = "empty_link"


class HomologyRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    hom_degree: int
    degree: SkeinDegree
    betti: int
    torsion: tuple[int, ...] = ()


class HomologyResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    ring: Ring
    crossing_count: int
    link_empty: bool
    rows: tuple[HomologyRow, ...] = ()
    total_rank_mod2: int | None = None

    @property
    def total_rank(self) -> int:
        return sum(row.betti for row in self.rows)

    def ranks_by_degree(self) -> dict[SkeinDegree, int]:
        ranks: dict[SkeinDegree, int] = {}
        for row in self.rows:
            if row.betti:
                ranks[row.degree] = ranks.get(row.degree, 0) + row.betti
        return dict(sorted(ranks.items(), key=lambda item: item[0].sort_key()))

    def torsion_by_degree(self) -> dict[SkeinDegree, tuple[int, ...]]:
        torsion: dict[SkeinDegree, list[int]] = {}
        for row in self.rows:
            if row.torsion:
                torsion.setdefault(row.degree, []).extend(row.torsion)
        return {degree: tuple(sorted(factors)) for degree, factors in sorted(torsion.items(), key=lambda i: i[0].sort_key())}

    def support_classes(self) -> tuple[CurveClass, ...]:
        classes = {curve for row in self.rows if row.betti for curve in row.degree.classes()}
        return tuple(sorted(classes, key=lambda c: c.vector))


class DetectionReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    support_classes: tuple[CurveClass, ...]
    annulus_verdict: AnnulusVerdict
    annulus_class: CurveClass | None = None
    knot_verdict: KnotVerdict
    total_rank_mod2: int
    # ranks by skein coefficient along the support class, when there is exactly one
    transverse_ranks: dict[int, int] | None = None


class ComparisonVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    ring: Ring
    equal: bool
    first_difference: str | None = None
