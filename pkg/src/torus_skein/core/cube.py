import logging
import math
from functools import lru_cache

from torus_skein.exceptions import CaseAnalysisViolation, CrossingCapExceededError, NonPrimitiveClassError
from torus_skein.models.diagram import TorusDiagram, Winding
from torus_skein.models.grading import TRIVIAL, CurveClass
from torus_skein.models.resolution import Circle, ResolvedState

logger = logging.getLogger(__name__)

HARD_CROSSING_CAP = 24


def normalize_class(p: int, q: int, *, strict: bool = False) -> CurveClass:
    """Unoriented class of the winding (p, q).

    With ``strict`` a nonzero non-primitive winding is an error: no embedded
    circle has one. Otherwise the gcd is divided out.
    """
    if p == 0 and q == 0:
        return TRIVIAL
    g = math.gcd(p, q)
    if g != 1 and strict:
        raise NonPrimitiveClassError(f"traced circle has non-primitive class ({p},{q})")
    p, q = p // g, q // g
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    return CurveClass(p=p, q=q)


def _vector(value: Winding | CurveClass) -> Winding:
    return value.vector if isinstance(value, CurveClass) else value


def intersection_number(a: Winding | CurveClass, b: Winding | CurveClass) -> int:
    (pa, qa), (pb, qb) = _vector(a), _vector(b)
    return pa * qb - qa * pb


def orient(curve: CurveClass) -> Winding:
    return curve.vector


def dual_class(c: Winding | CurveClass) -> Winding:
    """A primitive τ with c · τ = +1."""
    p, q = _vector(c)
    if math.gcd(p, q) != 1:
        raise NonPrimitiveClassError(f"class ({p},{q}) is not primitive")
    # extended Euclid: p*x + q*y = 1, then tau = (-y, x)
    old_r, r = p, q
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_x, x = x, old_x - quotient * x
        old_y, y = y, old_y - quotient * y
    if old_r < 0:
        old_x, old_y = -old_x, -old_y
    return (-old_y, old_x)


def check_cube_size(crossing_count: int, cap: int = HARD_CROSSING_CAP) -> None:
    limit = min(cap, HARD_CROSSING_CAP)
    if crossing_count > limit:
        raise CrossingCapExceededError(
            f"diagram has {crossing_count} crossings; the cube of resolutions is capped at {limit}"
        )


def partner(half_edge: int, bit: int) -> int:
    slot = half_edge & 3
    base = half_edge - slot
    return base + (slot ^ 1 if bit == 0 else 3 - slot)


@lru_cache(maxsize=64)
def _endpoint_table(diagram: TorusDiagram) -> tuple[tuple[int, int, int, int, int], ...]:
    # per half-edge: (other end, edge index, direction, wx, wy) for leaving through that end
    table: list[tuple[int, int, int, int, int]] = [(-1, -1, 0, 0, 0)] * (4 * diagram.crossing_count)
    for index, edge in enumerate(diagram.edges):
        a, b = edge.a.half_edge, edge.b.half_edge
        x, y = edge.winding
        table[a] = (b, index, 1, x, y)
        table[b] = (a, index, -1, -x, -y)
    return tuple(table)


def resolve(diagram: TorusDiagram, vertex: int) -> ResolvedState:
    d = diagram.crossing_count
    if not 0 <= vertex < 1 << d:
        raise ValueError(f"vertex {vertex} outside the {d}-dimensional cube")
    table = _endpoint_table(diagram)
    owner = [-1] * (4 * d)
    circles: list[Circle] = []

    for start in range(4 * d):
        if owner[start] != -1:
            continue
        circle_id = len(circles)
        half_edges: list[int] = []
        traversals: list[tuple[int, int]] = []
        wx = wy = 0
        current = start
        while True:
            other, edge_index, direction, dx, dy = table[current]
            owner[current] = owner[other] = circle_id
            half_edges += [current, other]
            traversals.append((edge_index, direction))
            wx += dx
            wy += dy
            current = partner(other, (vertex >> (other >> 2)) & 1)
            if current == start:
                break
        circles.append(
            Circle(
                id=circle_id,
                key=start,
                half_edges=tuple(sorted(half_edges)),
                traversals=tuple(traversals),
                winding=(wx, wy),
                curve=normalize_class(wx, wy, strict=True),
            )
        )

    loop_owner: list[int] = []
    for index, loop in enumerate(diagram.loops):
        loop_owner.append(len(circles))
        circles.append(
            Circle(
                id=len(circles),
                key=4 * d + index,
                loop=index,
                winding=loop.winding,
                curve=normalize_class(*loop.winding, strict=True),
            )
        )

    essential = {c.curve for c in circles if c.curve.is_essential}
    if len(essential) > 1:
        raise CaseAnalysisViolation(
            f"vertex {vertex}: disjoint essential circles in classes {sorted(str(c) for c in essential)}"
        )
    return ResolvedState(
        vertex=vertex,
        crossing_count=d,
        circles=tuple(circles),
        slot_owner=tuple(owner),
        loop_owner=tuple(loop_owner),
    )


def resolve_all(diagram: TorusDiagram) -> list[ResolvedState]:
    states = [resolve(diagram, vertex) for vertex in range(1 << diagram.crossing_count)]
    logger.debug("Resolved %d cube vertices", len(states))
    return states
