import json
from collections.abc import Callable
from pathlib import Path

from click.testing import CliRunner

from tests.diagrams import HOPF, KINK, KINK_TEXT, TORUS_HOPF_TEXT, TREFOIL
from torus_skein.cli import EXIT_CAP_EXCEEDED, EXIT_INPUT_ERROR, EXIT_MISMATCH, main
from torus_skein.core.codec import diagram_digest, serialize_diagram
from torus_skein.models.report import ComparisonPayload, DetectionPayload, HomologyPayload, ReportDocument
from torus_skein.version import __version__

LOOP_TEXT = "crossings 0\nloop 1 0\n"
# keep engine work on threads
THREADED = {"TORUS_SKEIN_ENGINE__EXECUTOR": "thread"}

WriteDiagram = Callable[[str, str], Path]


class TestCompute:
    def setup_method(self) -> None:
        self.runner = CliRunner(env=THREADED)

    def test_text_table(self, write_diagram: WriteDiagram) -> None:
        result = self.runner.invoke(main, ["compute", str(write_diagram("kink.txt", KINK_TEXT))])
        assert result.exit_code == 0, result.output
        lines = result.stdout.splitlines()
        assert lines[0] == "coefficients: Z/2"
        assert lines[1] == "degree\trank"
        assert "-1[1,0]\t1" in lines
        assert "1[1,0]\t1" in lines
        assert lines[-1] == "total rank: 2"

    def test_json_document(self, write_diagram: WriteDiagram) -> None:
        path = write_diagram("kink.txt", KINK_TEXT)
        result = self.runner.invoke(main, ["compute", str(path), "--json"])
        assert result.exit_code == 0, result.output
        document = ReportDocument.model_validate_json(result.stdout)
        assert document.tool_version == __version__
        assert document.input_digest == diagram_digest(KINK)
        assert document.command == ["compute", "--coeff", "z2"]
        assert isinstance(document.payload, HomologyPayload)
        assert document.payload.total_rank == 2
        assert [row.betti for row in document.payload.rows] == [1, 1]

    def test_integer_coefficients_with_hom_degree(self, write_diagram: WriteDiagram) -> None:
        path = write_diagram("trefoil.txt", serialize_diagram(TREFOIL))
        result = self.runner.invoke(main, ["compute", str(path), "--coeff", "z", "--hom-degree", "--json"])
        assert result.exit_code == 0, result.output
        document = ReportDocument.model_validate_json(result.stdout)
        assert isinstance(document.payload, HomologyPayload)
        assert document.payload.hom_degree_column is True
        assert document.payload.total_rank == 4
        assert sorted(f for row in document.payload.rows for f in row.torsion) == [2]
        assert all(row.hom_degree is not None for row in document.payload.rows)

    def test_c_grading(self, write_diagram: WriteDiagram) -> None:
        path = write_diagram("loop.txt", LOOP_TEXT)
        result = self.runner.invoke(main, ["compute", str(path), "--c", "0,1", "--json"])
        assert result.exit_code == 0, result.output
        document = ReportDocument.model_validate_json(result.stdout)
        assert isinstance(document.payload, HomologyPayload)
        assert document.command == ["compute", "--coeff", "z2", "--c", "0,1"]
        assert document.payload.c_graded is not None
        assert [(e.c_degree, e.rank) for e in document.payload.c_graded] == [(-1, 1), (1, 1)]

    def test_c_grading_text(self, write_diagram: WriteDiagram) -> None:
        path = write_diagram("loop.txt", LOOP_TEXT)
        result = self.runner.invoke(main, ["compute", str(path), "--c", "1,0"])
        assert result.exit_code == 0, result.output
        assert "c-graded ranks (c = 1,0):" in result.stdout
        assert "+0\t2" in result.stdout

    def test_non_primitive_c(self, write_diagram: WriteDiagram) -> None:
        path = write_diagram("loop.txt", LOOP_TEXT)
        result = self.runner.invoke(main, ["compute", str(path), "--c", "2,0"])
        assert result.exit_code == EXIT_INPUT_ERROR

    def test_malformed_c(self, write_diagram: WriteDiagram) -> None:
        path = write_diagram("loop.txt", LOOP_TEXT)
        result = self.runner.invoke(main, ["compute", str(path), "--c", "one"])
        assert result.exit_code == EXIT_INPUT_ERROR

    def test_empty_diagram(self, write_diagram: WriteDiagram) -> None:
        result = self.runner.invoke(main, ["compute", str(write_diagram("empty.txt", "crossings 0\n"))])
        assert result.exit_code == 0, result.output
        assert "0\t1" in result.stdout.splitlines()
        assert "total rank: 1" in result.stdout

    def test_parse_error(self, write_diagram: WriteDiagram) -> None:
        result = self.runner.invoke(main, ["compute", str(write_diagram("bad.txt", "crossings x\n"))])
        assert result.exit_code == EXIT_INPUT_ERROR
        assert "error:" in result.output

    def test_rejected_diagram(self, write_diagram: WriteDiagram) -> None:
        result = self.runner.invoke(main, ["compute", str(write_diagram("bad.txt", "crossings 0\nloop 2 0\n"))])
        assert result.exit_code == EXIT_INPUT_ERROR
        assert "loop-class" in result.output

    def test_crossing_cap(self, write_diagram: WriteDiagram, tmp_path: Path) -> None:
        config = tmp_path / "config.yaml"
        config.write_text("engine:\n  max_crossings: 2\n", encoding="utf-8")
        path = write_diagram("trefoil.txt", serialize_diagram(TREFOIL))
        result = self.runner.invoke(main, ["--config", str(config), "compute", str(path)])
        assert result.exit_code == EXIT_CAP_EXCEEDED
        assert "capped at 2" in result.output

    def test_threads_option(self, write_diagram: WriteDiagram) -> None:
        path = write_diagram("kink.txt", KINK_TEXT)
        result = self.runner.invoke(main, ["--threads", "1", "compute", str(path)])
        assert result.exit_code == 0, result.output


class TestValidate:
    def setup_method(self) -> None:
        self.runner = CliRunner(env=THREADED)

    def test_accepted(self, write_diagram: WriteDiagram) -> None:
        result = self.runner.invoke(main, ["validate", str(write_diagram("kink.txt", KINK_TEXT))])
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "accepted"

    def test_rejected(self, write_diagram: WriteDiagram) -> None:
        result = self.runner.invoke(main, ["validate", str(write_diagram("bad.txt", "crossings 0\nloop 2 4\n"))])
        assert result.exit_code == EXIT_INPUT_ERROR
        lines = result.stdout.splitlines()
        assert lines[0] == "rejected"
        assert lines[1].startswith("error loop-class:")

    def test_json(self, write_diagram: WriteDiagram) -> None:
        result = self.runner.invoke(main, ["validate", str(write_diagram("kink.txt", KINK_TEXT)), "--json"])
        document = json.loads(result.stdout)
        assert document["payload"]["kind"] == "validation"
        assert document["payload"]["accepted"] is True
        assert document["command"] == ["validate"]


class TestDetect:
    def setup_method(self) -> None:
        self.runner = CliRunner(env=THREADED)

    def test_embedded_knot(self, write_diagram: WriteDiagram) -> None:
        result = self.runner.invoke(main, ["detect", str(write_diagram("kink.txt", KINK_TEXT))])
        assert result.exit_code == 0, result.output
        lines = result.stdout.splitlines()
        assert lines[0] == "supported on class (1,0); rank-2 criterion met → link is an embedded (1,0)-knot"
        assert lines[2] == "transverse ranks: -1:1, +1:1"
        assert lines[-1] == "Z/2 rank: 2"

    def test_torus_filling_link(self, write_diagram: WriteDiagram) -> None:
        result = self.runner.invoke(main, ["detect", str(write_diagram("hopf.txt", TORUS_HOPF_TEXT)), "--json"])
        assert result.exit_code == 0, result.output
        document = ReportDocument.model_validate_json(result.stdout)
        assert isinstance(document.payload, DetectionPayload)
        assert document.payload.summary == "not supported on a single class ((1,-1), (1,1)); rank 4 > 2"
        assert document.payload.report.transverse_ranks is None

    def test_disk_hopf_link(self, write_diagram: WriteDiagram) -> None:
        result = self.runner.invoke(main, ["detect", str(write_diagram("hopf.txt", serialize_diagram(HOPF)))])
        assert result.exit_code == 0, result.output
        assert result.stdout.splitlines()[0] == "supported at zero only; rank 4 > 2"

    def test_empty_link(self, write_diagram: WriteDiagram) -> None:
        result = self.runner.invoke(main, ["detect", str(write_diagram("empty.txt", "crossings 0\n"))])
        assert result.stdout.splitlines()[0] == "empty link"


class TestCompare:
    def setup_method(self) -> None:
        self.runner = CliRunner(env=THREADED)

    def test_equal(self, write_diagram: WriteDiagram) -> None:
        first = write_diagram("loop.txt", LOOP_TEXT)
        second = write_diagram("kink.txt", KINK_TEXT)
        result = self.runner.invoke(main, ["compare", str(first), str(second)])
        assert result.exit_code == 0, result.output
        assert result.stdout.strip() == "equal"

    def test_mismatch(self, write_diagram: WriteDiagram) -> None:
        first = write_diagram("loop.txt", LOOP_TEXT)
        second = write_diagram("unknot.txt", "crossings 0\nloop 0 0\n")
        result = self.runner.invoke(main, ["compare", str(first), str(second), "--json"])
        assert result.exit_code == EXIT_MISMATCH
        document = ReportDocument.model_validate_json(result.stdout)
        assert isinstance(document.payload, ComparisonPayload)
        assert document.payload.verdict.first_difference == "degree 0: rank 0 vs 2"
        assert document.command == ["compare", "--coeff", "z2"]


class TestR1:
    def setup_method(self) -> None:
        self.runner = CliRunner(env=THREADED)

    def test_prints_kinked_diagram(self, write_diagram: WriteDiagram) -> None:
        result = self.runner.invoke(main, ["r1", str(write_diagram("loop.txt", LOOP_TEXT)), "--edge", "0"])
        assert result.exit_code == 0, result.output
        assert result.stdout == KINK_TEXT

    def test_writes_output_file(self, write_diagram: WriteDiagram, tmp_path: Path) -> None:
        output = tmp_path / "out.txt"
        path = write_diagram("loop.txt", LOOP_TEXT)
        result = self.runner.invoke(main, ["r1", str(path), "--edge", "0", "-o", str(output)])
        assert result.exit_code == 0, result.output
        assert output.read_text(encoding="utf-8") == KINK_TEXT

    def test_edge_out_of_range(self, write_diagram: WriteDiagram) -> None:
        result = self.runner.invoke(main, ["r1", str(write_diagram("loop.txt", LOOP_TEXT)), "--edge", "3"])
        assert result.exit_code == EXIT_INPUT_ERROR

    def test_rejects_invalid_input(self, write_diagram: WriteDiagram) -> None:
        result = self.runner.invoke(main, ["r1", str(write_diagram("bad.txt", "crossings 0\nloop 2 0\n")), "--edge", "0"])
        assert result.exit_code == EXIT_INPUT_ERROR


class TestMisc:
    def test_schema(self) -> None:
        result = CliRunner(env=THREADED).invoke(main, ["schema"])
        assert result.exit_code == 0
        schema = json.loads(result.stdout)
        assert "payload" in schema["properties"]

    def test_version(self) -> None:
        result = CliRunner(env=THREADED).invoke(main, ["--version"])
        assert __version__ in result.stdout
