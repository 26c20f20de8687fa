import logging
import math
from collections.abc import Mapping

from torus_skein.core.complex import BlockKey, GradedChainComplex, assemble_complex
from torus_skein.core.cube import dual_class, intersection_number, orient
from torus_skein.core.validation import validate_diagram
from torus_skein.exceptions import (
    DiagramValidationError,
    EngineInvariantError,
    NonPrimitiveClassError,
    WrongRingError,
)
from torus_skein.linalg import BaseReducer, BoundaryReduction, Gf2Reducer, IntegerReducer, SparseMatrix
from torus_skein.models.diagram import TorusDiagram, Winding
from torus_skein.models.grading import CurveClass, Ring, SkeinDegree
from torus_skein.models.results import (
    AnnulusVerdict,
    ComparisonVerdict,
    DetectionReport,
    HomologyResult,
    HomologyRow,
    KnotVerdict,
)

logger = logging.getLogger(__name__)


def reducer_for(ring: Ring) -> BaseReducer:
    match ring:
        case Ring.Z2:
            return Gf2Reducer()
        case Ring.Z:
            return IntegerReducer()
        case _:
            raise ValueError(f"Unknown ring: {ring}")


def reduce_block(ring: Ring, matrix: SparseMatrix) -> BoundaryReduction:
    return reducer_for(ring).reduce(matrix)


def reduce_boundaries(complex_: GradedChainComplex) -> dict[BlockKey, BoundaryReduction]:
    reducer = reducer_for(complex_.ring)
    return {key: reducer.reduce(matrix) for key, matrix in complex_.nonzero_boundaries().items()}


def collect_homology(
    complex_: GradedChainComplex,
    reductions: Mapping[BlockKey, BoundaryReduction],
) -> HomologyResult:
    empty = BoundaryReduction(rank=0)
    betti: dict[tuple[int, SkeinDegree], int] = {}
    torsion: dict[tuple[int, SkeinDegree], list[int]] = {}
    for key in complex_.keys():
        hom, degree, quantum = key
        outgoing = reductions.get(key, empty)
        incoming = reductions.get((hom - 1, degree, quantum), empty)
        value = complex_.dimension(key) - outgoing.rank - incoming.rank
        if value < 0:
            raise EngineInvariantError(
                f"negative betti number {value} at hom degree {hom}, skein degree {degree}, quantum {quantum}"
            )
        betti[(hom, degree)] = betti.get((hom, degree), 0) + value
        if incoming.torsion:
            torsion.setdefault((hom, degree), []).extend(incoming.torsion)
    rows = [
        HomologyRow(hom_degree=hom, degree=degree, betti=value, torsion=tuple(sorted(torsion.get((hom, degree), ()))))
        for (hom, degree), value in betti.items()
        if value or (hom, degree) in torsion
    ]

    total = sum(row.betti for row in rows)
    result = HomologyResult(
        ring=complex_.ring,
        crossing_count=complex_.crossing_count,
        link_empty=complex_.link_empty,
        rows=tuple(rows),
        total_rank_mod2=total if complex_.ring is Ring.Z2 else None,
    )
    logger.debug("Homology over %s: %d rows, total rank %d", complex_.ring, len(rows), total)
    return result


def ensure_valid(diagram: TorusDiagram) -> None:
    report = validate_diagram(diagram)
    if not report.accepted:
        raise DiagramValidationError(report)


def homology(
    diagram: TorusDiagram,
    ring: Ring = Ring.Z2,
    *,
    max_crossings: int = 24,
    verify: bool = True,
) -> HomologyResult:
    ensure_valid(diagram)
    complex_ = assemble_complex(diagram, ring, max_crossings=max_crossings, verify=verify)
    return collect_homology(complex_, reduce_boundaries(complex_))


def _primitive(c: Winding | CurveClass) -> Winding:
    vector = c.vector if isinstance(c, CurveClass) else c
    if math.gcd(*vector) != 1:
        raise NonPrimitiveClassError(f"c = ({vector[0]},{vector[1]}) must be a nonzero primitive class")
    return vector


def c_degree(degree: SkeinDegree, c: Winding | CurveClass) -> int:
    return sum(term.coefficient * intersection_number(orient(term.curve), c) for term in degree.terms)


def c_graded_ranks(result: HomologyResult, c: Winding | CurveClass) -> dict[int, int]:
    vector = _primitive(c)
    ranks: dict[int, int] = {}
    for row in result.rows:
        if row.betti:
            grade = c_degree(row.degree, vector)
            ranks[grade] = ranks.get(grade, 0) + row.betti
    return dict(sorted(ranks.items()))


def supported_at_c_zero(result: HomologyResult, c: Winding | CurveClass) -> bool:
    if result.ring is not Ring.Z2:
        raise WrongRingError("the support criterion is stated for Z/2 coefficients")
    return set(c_graded_ranks(result, c)) <= {0}


def detect(result: HomologyResult) -> DetectionReport:
    if result.ring is not Ring.Z2:
        raise WrongRingError(f"detection needs Z/2 homology, got {result.ring}")
    total = result.total_rank
    support = result.support_classes()

    if not support:
        annulus, annulus_class = AnnulusVerdict.SUPPORTED_AT_ZERO_ONLY, None
    elif len(support) == 1:
        annulus, annulus_class = AnnulusVerdict.SUPPORTED_ON, support[0]
    else:
        annulus, annulus_class = AnnulusVerdict.NOT_SUPPORTED, None

    if result.link_empty:
        knot = KnotVerdict.EMPTY_LINK
    elif total < 2:
        raise EngineInvariantError(f"nonempty link with Z/2 rank {total} < 2")
    elif total <= 2:
        knot = KnotVerdict.CRITERION_MET
    else:
        knot = KnotVerdict.RANK_EXCEEDS_2

    logger.info("Detection: %s, %s (rank %d)", annulus, knot, total)
    return DetectionReport(
        support_classes=support,
        annulus_verdict=annulus,
        annulus_class=annulus_class,
        knot_verdict=knot,
        total_rank_mod2=total,
        transverse_ranks=c_graded_ranks(result, dual_class(annulus_class)) if annulus_class is not None else None,
    )


def compare_results(first: HomologyResult, second: HomologyResult) -> ComparisonVerdict:
    """Compare graded ranks (and torsion over Z) per skein degree, ignoring hom degree."""
    if first.ring is not second.ring:
        raise WrongRingError(f"cannot compare {first.ring} with {second.ring} homology")
    ranks_a, ranks_b = first.ranks_by_degree(), second.ranks_by_degree()
    torsion_a, torsion_b = first.torsion_by_degree(), second.torsion_by_degree()
    degrees = sorted(set(ranks_a) | set(ranks_b) | set(torsion_a) | set(torsion_b), key=SkeinDegree.sort_key)

    for degree in degrees:
        if ranks_a.get(degree, 0) != ranks_b.get(degree, 0):
            difference = f"degree {degree}: rank {ranks_a.get(degree, 0)} vs {ranks_b.get(degree, 0)}"
            return ComparisonVerdict(ring=first.ring, equal=False, first_difference=difference)
        if torsion_a.get(degree, ()) != torsion_b.get(degree, ()):
            difference = f"degree {degree}: torsion {list(torsion_a.get(degree, ()))} vs {list(torsion_b.get(degree, ()))}"
            return ComparisonVerdict(ring=first.ring, equal=False, first_difference=difference)
    return ComparisonVerdict(ring=first.ring, equal=True)


def euler_characteristic(result: HomologyResult) -> int:
    return sum((-1) ** row.hom_degree * row.betti for row in result.rows)


def graded_euler(result: HomologyResult) -> dict[SkeinDegree, int]:
    totals: dict[SkeinDegree, int] = {}
    for row in result.rows:
        totals[row.degree] = totals.get(row.degree, 0) + (-1) ** row.hom_degree * row.betti
    return {degree: value for degree, value in sorted(totals.items(), key=lambda i: i[0].sort_key()) if value}
