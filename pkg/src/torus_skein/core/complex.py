import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import StrEnum
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from torus_skein.core.cube import check_cube_size, resolve, resolve_all
from torus_skein.exceptions import BoundaryNotNilpotentError, CaseAnalysisViolation, DegreeViolationError
from torus_skein.linalg.sparse import SparseMatrix
from torus_skein.models.diagram import TorusDiagram
from torus_skein.models.grading import CurveClass, Generator, Ring, SkeinDegree
from torus_skein.models.resolution import ResolvedState

logger = logging.getLogger(__name__)

# (hom degree, skein degree, quantum degree); boundaries preserve the last two
BlockKey = tuple[int, SkeinDegree, int]
Masks = NDArray[np.int64]


class Transition(StrEnum):
    MERGE_TT = "merge_tt"
    MERGE_TE = "merge_te"
    MERGE_EE = "merge_ee"
    SPLIT_T_TT = "split_t_tt"
    SPLIT_E_TE = "split_e_te"
    SPLIT_T_EE = "split_t_ee"
    ONE_TO_ONE = "one_to_one"


@dataclass(frozen=True, slots=True)
class EdgeRule:
    """How one smoothing change acts on label masks.

    ``source`` and ``target`` are the involved circle ids at v and u; in the
    TE cases the trivial circle comes first. ``carried`` pairs the bit of every
    uninvolved circle at v with its bit at u.
    """

    transition: Transition
    source: tuple[int, ...]
    target: tuple[int, ...]
    carried: tuple[tuple[int, int], ...]

    def apply(self, masks: Masks) -> tuple[Masks, Masks]:
        base = np.zeros_like(masks)
        for src, dst in self.carried:
            base |= ((masks >> src) & 1) << dst
        bits = [(masks >> c) & 1 for c in self.source]

        match self.transition:
            case Transition.MERGE_TT:
                both = (bits[0] & bits[1]).astype(bool)
                hit = (bits[0] | bits[1]).astype(bool)
                images = np.where(both, base | 1 << self.target[0], base)
                return masks[hit], images[hit]
            case Transition.MERGE_TE:
                hit = bits[0].astype(bool)
                return masks[hit], (base | bits[1] << self.target[0])[hit]
            case Transition.MERGE_EE:
                hit = bits[0] != bits[1]
                return masks[hit], base[hit]
            case Transition.SPLIT_T_TT | Transition.SPLIT_T_EE:
                plus = bits[0].astype(bool)
                sources = [masks[plus], masks[plus]]
                images = [base[plus] | 1 << self.target[0], base[plus] | 1 << self.target[1]]
                if self.transition is Transition.SPLIT_T_TT:
                    sources.append(masks[~plus])
                    images.append(base[~plus])
                return np.concatenate(sources), np.concatenate(images)
            case Transition.SPLIT_E_TE:
                return masks, base | bits[0] << self.target[1]
            case Transition.ONE_TO_ONE:
                return masks[:0], masks[:0]

    def images(self, mask: int) -> list[int]:
        _, images = self.apply(np.array([mask], dtype=np.int64))
        return [int(image) for image in images]


def classify_transition(source: ResolvedState, target: ResolvedState, crossing: int) -> EdgeRule:
    a, b = source.owner(crossing, 0), source.owner(crossing, 2)
    a2, b2 = target.owner(crossing, 1), target.owner(crossing, 3)
    involved_v = (a,) if a == b else (a, b)
    involved_u = (a2,) if a2 == b2 else (a2, b2)

    keys_u = target.index_by_key()
    carried = tuple(
        (c.id, keys_u[c.key]) for c in source.circles if c.id not in involved_v
    )
    classes_v = [source.circles[c].curve for c in involved_v]
    classes_u = [target.circles[c].curve for c in involved_u]
    trivial_v = [c.is_trivial for c in classes_v]
    trivial_u = [c.is_trivial for c in classes_u]

    def violation() -> CaseAnalysisViolation:
        return CaseAnalysisViolation(
            f"crossing {crossing}, vertex {source.vertex} -> {target.vertex}: "
            f"{[str(c) for c in classes_v]} -> {[str(c) for c in classes_u]} matches no case"
        )

    transition: Transition
    match (len(involved_v), len(involved_u)):
        case (2, 1):
            if all(trivial_v) and trivial_u[0]:
                transition = Transition.MERGE_TT
            elif trivial_v[0] != trivial_v[1] and not trivial_u[0] and classes_u[0] in classes_v:
                transition = Transition.MERGE_TE
                if not trivial_v[0]:
                    involved_v = involved_v[::-1]
            elif not any(trivial_v) and classes_v[0] == classes_v[1] and trivial_u[0]:
                transition = Transition.MERGE_EE
            else:
                raise violation()
        case (1, 2):
            if trivial_v[0] and all(trivial_u):
                transition = Transition.SPLIT_T_TT
            elif not trivial_v[0] and trivial_u[0] != trivial_u[1] and classes_v[0] in classes_u:
                transition = Transition.SPLIT_E_TE
                if not trivial_u[0]:
                    involved_u = involved_u[::-1]
            elif trivial_v[0] and not any(trivial_u) and classes_u[0] == classes_u[1]:
                transition = Transition.SPLIT_T_EE
            else:
                raise violation()
        case (1, 1):
            if trivial_v[0] or trivial_u[0]:
                raise violation()
            transition = Transition.ONE_TO_ONE
        case _:
            raise violation()
    return EdgeRule(transition=transition, source=involved_v, target=involved_u, carried=carried)




class LabelGrading(NamedTuple):
    curve: CurveClass | None
    skein: Masks
    quantum: Masks


def grade_labels(state: ResolvedState) -> LabelGrading:
    n = len(state.circles)
    labels = np.arange(1 << n, dtype=np.int64)
    essential_mask = sum(1 << c.id for c in state.circles if c.curve.is_essential)
    skein = 2 * np.bitwise_count(labels & essential_mask).astype(np.int64) - essential_mask.bit_count()
    quantum = 2 * np.bitwise_count(labels).astype(np.int64) - n + state.hom_degree
    return LabelGrading(state.essential_class(), skein, quantum)


def chain_group(state: ResolvedState) -> list[Generator]:
    curve, skein, quantum = grade_labels(state)
    return [
        Generator(
            vertex=state.vertex,
            labels=labels,
            degree=SkeinDegree.of(curve, k) if curve is not None else SkeinDegree.zero(),
            hom_degree=state.hom_degree,
            quantum=j,
        )
        for labels, (k, j) in enumerate(zip(skein.tolist(), quantum.tolist(), strict=True))
    ]


def edge_block(
    diagram: TorusDiagram,
    vertex: int,
    crossing: int,
    states: Sequence[ResolvedState] | None = None,
) -> SparseMatrix:
    """Unsigned matrix of the edge map from ``vertex`` to ``vertex + e_crossing``; rows index the target labels."""
    if vertex >> crossing & 1:
        raise ValueError(f"crossing {crossing} is already 1-smoothed at vertex {vertex}")
    target = vertex | 1 << crossing
    source_state = states[vertex] if states is not None else resolve(diagram, vertex)
    target_state = states[target] if states is not None else resolve(diagram, target)
    rule = classify_transition(source_state, target_state, crossing)
    sources, images = rule.apply(np.arange(1 << len(source_state.circles), dtype=np.int64))
    shape = (1 << len(target_state.circles), 1 << len(source_state.circles))
    return SparseMatrix.from_coo(shape, images, sources, np.ones_like(sources))


class GradedChainComplex:
    def __init__(
        self,
        ring: Ring,
        crossing_count: int,
        link_empty: bool,
        dimensions: dict[BlockKey, int],
        boundaries: dict[BlockKey, SparseMatrix],
    ) -> None:
        self.ring = ring
        self.crossing_count = crossing_count
        self.link_empty = link_empty
        self._dimensions = dimensions
        self._boundaries = boundaries

    def keys(self) -> list[BlockKey]:
        return sorted(self._dimensions, key=lambda key: (key[1].sort_key(), key[0], key[2]))

    def __iter__(self) -> Iterator[BlockKey]:
        return iter(self.keys())

    def dimension(self, key: BlockKey) -> int:
        return self._dimensions.get(key, 0)

    @property
    def total_dimension(self) -> int:
        return sum(self._dimensions.values())

    def boundary(self, key: BlockKey) -> SparseMatrix:
        hom, degree, quantum = key
        matrix = self._boundaries.get(key)
        if matrix is None:
            return SparseMatrix.zeros(self.dimension((hom + 1, degree, quantum)), self.dimension(key))
        return matrix

    def incoming(self, key: BlockKey) -> SparseMatrix:
        hom, degree, quantum = key
        return self.boundary((hom - 1, degree, quantum))

    def nonzero_boundaries(self) -> dict[BlockKey, SparseMatrix]:
        return dict(self._boundaries)

    def verify(self) -> None:
        for (hom, degree, quantum), first in self._boundaries.items():
            second = self._boundaries.get((hom + 1, degree, quantum))
            if second is None:
                continue
            product = second @ first
            if self.ring is Ring.Z2:
                product = product.mod2()
            if not product.is_zero():
                raise BoundaryNotNilpotentError(
                    f"D^2 != 0 from hom degree {hom} in skein degree {degree}, quantum {quantum}: "
                    f"{product.nnz} nonzero entries"
                )


def _edge_arrays(states: Sequence[ResolvedState], offsets: Masks) -> tuple[Masks, Masks, Masks]:
    """Global (row, col, sign) of every cube edge entry; generator ids are offsets[v] + labels."""
    rows: list[Masks] = []
    cols: list[Masks] = []
    signs: list[Masks] = []
    for state in states:
        v = state.vertex
        masks = np.arange(1 << len(state.circles), dtype=np.int64)
        for crossing in range(state.crossing_count):
            if v >> crossing & 1:
                continue
            u = v | 1 << crossing
            sources, images = classify_transition(state, states[u], crossing).apply(masks)
            if not sources.size:
                continue
            cols.append(sources + offsets[v])
            rows.append(images + offsets[u])
            signs.append(np.full(sources.size, -1 if (v >> (crossing + 1)).bit_count() & 1 else 1, dtype=np.int64))
    if not rows:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    return np.concatenate(rows), np.concatenate(cols), np.concatenate(signs)


def assemble_complex(
    diagram: TorusDiagram,
    ring: Ring = Ring.Z2,
    *,
    max_crossings: int = 24,
    verify: bool = True,
) -> GradedChainComplex:
    check_cube_size(diagram.crossing_count, max_crossings)
    states = resolve_all(diagram)
    sizes = np.array([1 << len(state.circles) for state in states], dtype=np.int64)
    offsets = np.concatenate(([0], np.cumsum(sizes)))

    curves: list[CurveClass] = []
    curve_index: dict[CurveClass, int] = {}
    vertex_curve = np.full(len(states), -1, dtype=np.int64)
    skein_parts: list[Masks] = []
    quantum_parts: list[Masks] = []
    for state in states:
        curve, skein, quantum = grade_labels(state)
        if curve is not None:
            if curve not in curve_index:
                curve_index[curve] = len(curves)
                curves.append(curve)
            vertex_curve[state.vertex] = curve_index[curve]
        skein_parts.append(skein)
        quantum_parts.append(quantum)
    hom = np.repeat(np.array([state.hom_degree for state in states], dtype=np.int64), sizes)
    skein = np.concatenate(skein_parts)
    quantum = np.concatenate(quantum_parts)
    # degree zero is one block whatever the vertex's essential class
    curve_of = np.where(skein == 0, -1, np.repeat(vertex_curve, sizes))

    block_table, block_of = np.unique(np.stack([hom, curve_of, skein, quantum], axis=1), axis=0, return_inverse=True)
    block_of = block_of.ravel()
    counts = np.bincount(block_of, minlength=len(block_table))
    order = np.argsort(block_of, kind="stable")
    position = np.empty_like(block_of)
    position[order] = np.arange(block_of.size) - np.repeat(np.cumsum(counts) - counts, counts)

    rows, cols, signs = _edge_arrays(states, offsets)
    broken = (curve_of[rows] != curve_of[cols]) | (skein[rows] != skein[cols]) | (quantum[rows] != quantum[cols])
    if broken.any():
        first = int(np.flatnonzero(broken)[0])
        v, u = np.searchsorted(offsets, [cols[first], rows[first]], side="right") - 1
        raise DegreeViolationError(
            f"edge {v} -> {u} maps (skein, quantum) {(int(skein[cols[first]]), int(quantum[cols[first]]))} "
            f"to {(int(skein[rows[first]]), int(quantum[rows[first]]))}"
        )
    logger.debug("Assembled %d generators, %d edge entries in %d blocks", block_of.size, rows.size, len(block_table))

    def block_key(index: int) -> BlockKey:
        h, c, k, j = (int(x) for x in block_table[index])
        return (h, SkeinDegree.of(curves[c], k) if c >= 0 else SkeinDegree.zero(), j)

    keys = [block_key(index) for index in range(len(block_table))]
    values = signs & 1 if ring is Ring.Z2 else signs
    entry_block = block_of[cols]
    entry_order = np.argsort(entry_block, kind="stable")
    boundaries: dict[BlockKey, SparseMatrix] = {}
    for chunk in np.split(entry_order, np.flatnonzero(np.diff(entry_block[entry_order])) + 1):
        if not chunk.size:
            continue
        source = int(entry_block[chunk[0]])
        target = int(block_of[rows[chunk[0]]])
        matrix = SparseMatrix.from_coo(
            (int(counts[target]), int(counts[source])), position[rows[chunk]], position[cols[chunk]], values[chunk]
        )
        if ring is Ring.Z2:
            matrix = matrix.mod2()
        if not matrix.is_zero():
            boundaries[keys[source]] = matrix

    dimensions = {key: int(count) for key, count in zip(keys, counts, strict=True)}
    complex_ = GradedChainComplex(ring, diagram.crossing_count, diagram.is_empty, dimensions, boundaries)
    if verify:
        complex_.verify()
        logger.debug("Verified D^2 = 0 on %d boundary blocks", len(boundaries))
    return complex_
