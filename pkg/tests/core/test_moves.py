import random

import pytest

from tests.diagrams import HOPF, KINK, KINK_TEXT, TORUS_HOPF, TREFOIL, random_diagram
from torus_skein.core.codec import parse_diagram, serialize_diagram
from torus_skein.core.moves import apply_r1, disjoint_union, from_planar_diagram, parallel_loops, permute_crossings
from torus_skein.core.validation import validate_diagram
from torus_skein.exceptions import DiagramParseError, EdgeIndexError
from torus_skein.models.diagram import Chirality, Edge, FreeLoop, TorusDiagram


class TestApplyR1:
    def test_loop_becomes_kink(self) -> None:
        diagram = apply_r1(parallel_loops((1, 0), 1), 0, Chirality.POSITIVE)
        assert serialize_diagram(diagram) == KINK_TEXT

    def test_negative_loop_kink(self) -> None:
        diagram = apply_r1(parallel_loops((1, 0), 1), 0, Chirality.NEGATIVE)
        assert serialize_diagram(diagram) == "crossings 1\nedge 0.1 0.0 w 1 0\nedge 0.2 0.3 w 0 0\n"

    def test_edge_split_keeps_winding_on_first_piece(self) -> None:
        diagram = apply_r1(KINK, 1)
        assert diagram.crossing_count == 2
        assert diagram.edges[1] == Edge.between((0, 3), (1, 0), (1, 0))
        assert diagram.edges[2] == Edge.between((1, 1), (1, 2))
        assert diagram.edges[3] == Edge.between((1, 3), (0, 0))

    def test_twice_gives_two_self_edges(self) -> None:
        diagram = apply_r1(apply_r1(parallel_loops((1, 0), 1), 0), 0)
        assert diagram.crossing_count == 2
        assert sum(edge.a.crossing == edge.b.crossing for edge in diagram.edges) == 2
        assert validate_diagram(diagram).accepted is True

    def test_loop_index_follows_edges(self) -> None:
        diagram = TorusDiagram(crossing_count=1, edges=KINK.edges, loops=(FreeLoop(winding=(1, 0)),))
        moved = apply_r1(diagram, 2)
        assert moved.loops == ()
        assert moved.crossing_count == 2

    def test_index_out_of_range(self) -> None:
        with pytest.raises(EdgeIndexError):
            apply_r1(KINK, 2)
        with pytest.raises(EdgeIndexError):
            apply_r1(KINK, -1)

    def test_output_stays_valid(self, diagram_corpus: dict[str, TorusDiagram]) -> None:
        for name, diagram in diagram_corpus.items():
            for index in range(diagram.component_slots):
                for chirality in Chirality:
                    assert validate_diagram(apply_r1(diagram, index, chirality)).accepted, (name, index, chirality)


class TestPermuteCrossings:
    def test_identity(self) -> None:
        assert permute_crossings(TREFOIL, [0, 1, 2]) == TREFOIL

    def test_relabels_endpoints(self) -> None:
        moved = permute_crossings(HOPF, [1, 0])
        ends = sorted((s.crossing, s.slot) for e in moved.edges for s in (e.a, e.b))
        assert {crossing for crossing, _ in ends} == {0, 1}
        assert ends == sorted((1 - s.crossing, s.slot) for e in HOPF.edges for s in (e.a, e.b))

    def test_rejects_non_permutation(self) -> None:
        with pytest.raises(ValueError):
            permute_crossings(HOPF, [0, 0])


class TestDisjointUnion:
    def test_offsets_second_diagram(self) -> None:
        union = disjoint_union(HOPF, KINK)
        assert union.crossing_count == 3
        assert union.edges[-1] == Edge.between((2, 3), (2, 0), (1, 0))

    def test_concatenates_loops(self) -> None:
        union = disjoint_union(parallel_loops((0, 1), 1), parallel_loops((0, 1), 2))
        assert len(union.loops) == 3


class TestParallelLoops:
    def test_count(self) -> None:
        assert parallel_loops((1, 1), 3).loops == (FreeLoop(winding=(1, 1)),) * 3

    def test_zero_loops_is_empty(self) -> None:
        assert parallel_loops((1, 0), 0).is_empty is True

    def test_negative_count(self) -> None:
        with pytest.raises(ValueError):
            parallel_loops((1, 0), -1)


class TestFromPlanarDiagram:
    def test_hopf(self) -> None:
        assert HOPF.crossing_count == 2
        assert len(HOPF.edges) == 4
        assert all(edge.winding == (0, 0) for edge in HOPF.edges)

    def test_kink_matches_labels(self) -> None:
        diagram = from_planar_diagram([[1, 1, 2, 2]])
        assert diagram.edges == (Edge.between((0, 0), (0, 1)), Edge.between((0, 2), (0, 3)))

    def test_label_used_three_times(self) -> None:
        with pytest.raises(DiagramParseError, match="appears 3 times"):
            from_planar_diagram([[1, 1, 1, 2]])

    def test_short_crossing(self) -> None:
        with pytest.raises(DiagramParseError, match="expected 4"):
            from_planar_diagram([[1, 2, 3]])


class TestRandomDiagrams:
    def test_generated_diagrams_are_valid(self, rng: random.Random) -> None:
        for _ in range(50):
            diagram = random_diagram(rng)
            assert diagram.crossing_count <= 6
            assert validate_diagram(diagram).accepted, serialize_diagram(diagram)

    def test_torus_hopf_round_trip(self) -> None:
        assert parse_diagram(serialize_diagram(TORUS_HOPF)) == TORUS_HOPF.canonical()
