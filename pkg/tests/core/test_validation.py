from tests.diagrams import HOPF, KINK, R2_PAIRS, TORUS_HOPF, TREFOIL
from torus_skein.core.codec import parse_diagram
from torus_skein.core.moves import disjoint_union, parallel_loops
from torus_skein.core.validation import validate_diagram
from torus_skein.models.diagram import Edge, FreeLoop, TorusDiagram


def _codes(diagram: TorusDiagram) -> list[str]:
    return [issue.code for issue in validate_diagram(diagram).errors]


class TestValidateDiagram:
    def test_empty_diagram(self) -> None:
        report = validate_diagram(TorusDiagram())
        assert report.errors == []
        assert report.warnings == []

    def test_non_primitive_loop(self) -> None:
        report = validate_diagram(TorusDiagram(loops=(FreeLoop(winding=(2, 0)),)))
        assert [issue.code for issue in report.errors] == ["loop-class"]
        assert "non-primitive loop class" in report.errors[0].message

    def test_kink_accepted(self) -> None:
        assert validate_diagram(KINK).accepted is True

    def test_torus_hopf_accepted(self) -> None:
        assert validate_diagram(TORUS_HOPF).accepted is True

    def test_disk_knots_accepted(self) -> None:
        assert validate_diagram(HOPF).accepted is True
        assert validate_diagram(TREFOIL).accepted is True

    def test_r2_corpus_accepted(self) -> None:
        for name, (moved, simplified) in R2_PAIRS.items():
            assert validate_diagram(moved).accepted, name
            assert validate_diagram(simplified).accepted, name

    def test_corpus_accepted(self, diagram_corpus: dict[str, TorusDiagram]) -> None:
        for name, diagram in diagram_corpus.items():
            assert validate_diagram(diagram).accepted, name

    def test_missing_slots(self) -> None:
        diagram = TorusDiagram(crossing_count=1, edges=(Edge.between((0, 0), (0, 1)),))
        messages = [issue.message for issue in validate_diagram(diagram).errors]
        assert messages == ["slot 0.2 has no edge", "slot 0.3 has no edge"]

    def test_slot_used_twice(self) -> None:
        diagram = TorusDiagram(
            crossing_count=1,
            edges=(Edge.between((0, 0), (0, 1)), Edge.between((0, 1), (0, 2)), Edge.between((0, 3), (0, 0))),
        )
        assert "slot-coverage" in _codes(diagram)

    def test_slot_beyond_crossing_count(self) -> None:
        diagram = TorusDiagram(crossing_count=0, edges=(Edge.between((0, 0), (0, 1)),))
        assert "slot-range" in _codes(diagram)

    def test_face_with_stray_winding(self) -> None:
        diagram = parse_diagram("crossings 1\nedge 0.1 0.2 w 0 1\nedge 0.3 0.0 w 1 0\n")
        assert _codes(diagram) == ["face-winding"]

    def test_torus_filling_graph_without_windings(self) -> None:
        diagram = parse_diagram("crossings 1\nedge 0.0 0.2 w 0 0\nedge 0.1 0.3 w 0 0\n")
        assert _codes(diagram) == ["cycle-lattice"]

    def test_torus_filling_graph_with_non_spanning_windings(self) -> None:
        diagram = parse_diagram("crossings 1\nedge 0.0 0.2 w 1 0\nedge 0.1 0.3 w 1 0\n")
        assert _codes(diagram) == ["cycle-lattice"]

    def test_disconnected_warns(self) -> None:
        report = validate_diagram(disjoint_union(HOPF, KINK))
        assert report.accepted is True
        assert [issue.code for issue in report.warnings] == ["disconnected"]

    def test_non_parallel_loops(self) -> None:
        diagram = TorusDiagram(loops=(FreeLoop(winding=(1, 0)), FreeLoop(winding=(0, 1))))
        assert _codes(diagram) == ["non-parallel"]

    def test_parallel_loops_with_opposite_orientation(self) -> None:
        diagram = TorusDiagram(loops=(FreeLoop(winding=(1, 0)), FreeLoop(winding=(-1, 0))))
        assert validate_diagram(diagram).accepted is True

    def test_kink_beside_non_parallel_loop(self) -> None:
        assert _codes(disjoint_union(KINK, parallel_loops((0, 1), 1))) == ["non-parallel"]

    def test_torus_filling_graph_beside_essential_loop(self) -> None:
        assert _codes(disjoint_union(TORUS_HOPF, parallel_loops((1, 0), 1))) == ["non-parallel"]

    def test_torus_filling_graph_beside_disk_knot(self) -> None:
        assert validate_diagram(disjoint_union(TORUS_HOPF, TREFOIL)).accepted is True
