import logging
from collections.abc import Sequence

from torus_skein.exceptions import DiagramParseError, EdgeIndexError
from torus_skein.models.diagram import Chirality, Edge, FreeLoop, Slot, TorusDiagram, Winding
from torus_skein.models.grading import CurveClass

logger = logging.getLogger(__name__)

# (self-edge slots, exit slot); the strand always enters the new crossing at slot 0
_KINKS: dict[Chirality, tuple[tuple[int, int], int]] = {
    Chirality.POSITIVE: ((1, 2), 3),
    Chirality.NEGATIVE: ((2, 3), 1),
}


def apply_r1(diagram: TorusDiagram, edge: int, chirality: Chirality = Chirality.POSITIVE) -> TorusDiagram:
    """Insert a kink on a component.

    ``edge`` indexes the edges first and then the free loops, so index
    ``len(edges) + k`` promotes loop k to a one-crossing kinked curve.
    """
    edge_count = len(diagram.edges)
    if not 0 <= edge < diagram.component_slots:
        raise EdgeIndexError(f"edge index {edge} out of range 0..{diagram.component_slots - 1}")

    n = diagram.crossing_count
    (first, second), exit_slot = _KINKS[Chirality(chirality)]
    kink = Edge.between((n, first), (n, second))
    edges = list(diagram.edges)
    loops = list(diagram.loops)

    if edge < edge_count:
        original = edges[edge]
        edges[edge] = Edge(a=original.a, b=Slot(crossing=n, slot=0), winding=original.winding)
        edges += [kink, Edge(a=Slot(crossing=n, slot=exit_slot), b=original.b)]
    else:
        loop = loops.pop(edge - edge_count)
        edges += [kink, Edge.between((n, exit_slot), (n, 0), loop.winding)]

    logger.debug("R1 (%s) on component %d: %d -> %d crossings", chirality, edge, n, n + 1)
    return TorusDiagram(crossing_count=n + 1, edges=tuple(edges), loops=tuple(loops))


def permute_crossings(diagram: TorusDiagram, order: Sequence[int]) -> TorusDiagram:
    """Relabel crossing i as ``order[i]``."""
    if sorted(order) != list(range(diagram.crossing_count)):
        raise ValueError(f"{list(order)} is not a permutation of the {diagram.crossing_count} crossings")

    def moved(slot: Slot) -> Slot:
        return Slot(crossing=order[slot.crossing], slot=slot.slot)

    edges = tuple(Edge(a=moved(e.a), b=moved(e.b), winding=e.winding) for e in diagram.edges)
    return diagram.model_copy(update={"edges": edges})


def disjoint_union(first: TorusDiagram, second: TorusDiagram) -> TorusDiagram:
    offset = first.crossing_count
    shifted = tuple(
        Edge.between((e.a.crossing + offset, e.a.slot), (e.b.crossing + offset, e.b.slot), e.winding)
        for e in second.edges
    )
    return TorusDiagram(
        crossing_count=offset + second.crossing_count,
        edges=first.edges + shifted,
        loops=first.loops + second.loops,
    )


def parallel_loops(curve: Winding | CurveClass, count: int) -> TorusDiagram:
    if count < 0:
        raise ValueError(f"loop count must be non-negative, got {count}")
    winding = curve.vector if isinstance(curve, CurveClass) else curve
    return TorusDiagram(loops=tuple(FreeLoop(winding=winding) for _ in range(count)))


def from_planar_diagram(code: Sequence[Sequence[int]]) -> TorusDiagram:
    """Disk diagram from a PD code.

    Each X[a, b, c, d] lists its arcs counterclockwise starting from the
    incoming understrand, which matches the slot numbering directly.
    """
    ends: dict[int, list[tuple[int, int]]] = {}
    for crossing, labels in enumerate(code):
        if len(labels) != 4:
            raise DiagramParseError(f"crossing {crossing} has {len(labels)} labels, expected 4")
        for slot, label in enumerate(labels):
            ends.setdefault(label, []).append((crossing, slot))

    edges: list[Edge] = []
    for label in sorted(ends):
        if len(ends[label]) != 2:
            raise DiagramParseError(f"arc {label} appears {len(ends[label])} times, expected 2")
        a, b = ends[label]
        edges.append(Edge.between(a, b))
    return TorusDiagram(crossing_count=len(code), edges=tuple(edges))
