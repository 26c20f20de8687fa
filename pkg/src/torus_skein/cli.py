import asyncio
import json
import logging
import math
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import click

from torus_skein.config import AppConfig
from torus_skein.core.codec import diagram_digest, parse_diagram, serialize_diagram
from torus_skein.core.moves import apply_r1
from torus_skein.core.validation import validate_diagram
from torus_skein.engine import HomologyEngine
from torus_skein.exceptions import (
    CrossingCapExceededError,
    DiagramValidationError,
    EngineInvariantError,
    NonPrimitiveClassError,
    TorusSkeinError,
)
from torus_skein.models.diagram import Chirality, TorusDiagram, Winding
from torus_skein.models.grading import Ring
from torus_skein.models.report import Payload, ReportDocument
from torus_skein.models.results import ComparisonVerdict, DetectionReport, HomologyResult
from torus_skein.reporting import (
    build_document,
    combined_digest,
    comparison_payload,
    detection_payload,
    homology_payload,
    render_text,
    validation_payload,
)
from torus_skein.version import __version__

logger = logging.getLogger(__name__)

EXIT_INPUT_ERROR = 1
EXIT_CAP_EXCEEDED = 2
EXIT_MISMATCH = 3

_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)
_COEFF = click.option("--coeff", type=click.Choice([r.value for r in Ring]), default=Ring.Z2.value, show_default=True)
_JSON = click.option("--json", "as_json", is_flag=True, help="Print the report document as JSON.")


def _configure_logging(level: str, verbose: int) -> None:
    if verbose:
        level = "DEBUG" if verbose > 1 else "INFO"
    logging.basicConfig(level=level.upper(), format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr, force=True)


@contextmanager
def _exit_codes() -> Iterator[None]:
    try:
        yield
    except EngineInvariantError:
        raise
    except CrossingCapExceededError as e:
        click.echo(f"error: {e}", err=True)
        raise SystemExit(EXIT_CAP_EXCEEDED) from e
    except DiagramValidationError as e:
        click.echo("error: diagram rejected", err=True)
        for issue in e.report.errors:
            click.echo(f"  {issue.code}: {issue.message}", err=True)
        raise SystemExit(EXIT_INPUT_ERROR) from e
    except TorusSkeinError as e:
        click.echo(f"error: {e}", err=True)
        raise SystemExit(EXIT_INPUT_ERROR) from e


def _load(path: Path) -> TorusDiagram:
    return parse_diagram(path.read_bytes())


def _parse_c(text: str) -> Winding:
    parts = text.split(",")
    try:
        p, q = (int(part) for part in parts)
    except ValueError as e:
        raise TorusSkeinError(f"--c expects 'p,q' with integers p and q, got {text!r}") from e
    if math.gcd(p, q) != 1:
        raise NonPrimitiveClassError(f"--c {text} is not a nonzero primitive class")
    return (p, q)


def _emit(document: ReportDocument, as_json: bool) -> None:
    click.echo(document.model_dump_json(indent=2) if as_json else render_text(document))


def _report(command: list[str], digest: str, payload: Payload, as_json: bool) -> None:
    _emit(build_document(command, digest, payload), as_json)


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None, help="YAML configuration file.")
@click.option("--threads", type=click.IntRange(min=1), default=None, help="Worker threads for block reductions.")
@click.option("-v", "--verbose", count=True, help="-v for info, -vv for debug logging.")
@click.version_option(version=__version__)
@click.pass_context
def main(ctx: click.Context, config_path: str | None, threads: int | None, verbose: int) -> None:
    """Khovanov skein homology of links in the thickened torus."""
    config = AppConfig(yaml_file=config_path) if config_path else AppConfig()
    if threads is not None:
        config = config.model_copy(update={"engine": config.engine.model_copy(update={"threads": threads})})
    _configure_logging(config.logging.level, verbose)
    ctx.obj = config


@main.command()
@click.argument("file", type=_FILE)
@_COEFF
@click.option("--c", "c_text", default=None, metavar="P,Q", help="Also report ranks in the c-grading.")
@click.option("--hom-degree", is_flag=True, help="Split rows by homological degree.")
@_JSON
@click.pass_obj
def compute(config: AppConfig, file: Path, coeff: str, c_text: str | None, hom_degree: bool, as_json: bool) -> None:
    """Graded homology table of a diagram."""
    command = ["compute", "--coeff", coeff]
    with _exit_codes():
        c = _parse_c(c_text) if c_text is not None else None
        if c is not None:
            command += ["--c", f"{c[0]},{c[1]}"]
        if hom_degree:
            command.append("--hom-degree")
        diagram = _load(file)
        result = asyncio.run(_compute(config, diagram, Ring(coeff)))
        logger.info("Computed %s homology: total rank %d", coeff, result.total_rank)
        payload = homology_payload(result, hom_degree_column=hom_degree, c=c)
    _report(command, diagram_digest(diagram), payload, as_json)


async def _compute(config: AppConfig, diagram: TorusDiagram, ring: Ring) -> HomologyResult:
    async with await HomologyEngine.create(config) as engine:
        return await engine.compute(diagram, ring)


@main.command()
@click.argument("file", type=_FILE)
@_JSON
def validate(file: Path, as_json: bool) -> None:
    """Check that a diagram is realizable on the torus."""
    with _exit_codes():
        diagram = _load(file)
    report = validate_diagram(diagram)
    _report(["validate"], diagram_digest(diagram), validation_payload(report), as_json)
    if not report.accepted:
        raise SystemExit(EXIT_INPUT_ERROR)


@main.command()
@click.argument("file", type=_FILE)
@_JSON
@click.pass_obj
def detect(config: AppConfig, file: Path, as_json: bool) -> None:
    """Support and rank certificates over Z/2."""
    with _exit_codes():
        diagram = _load(file)
        report = asyncio.run(_detect(config, diagram))
    _report(["detect"], diagram_digest(diagram), detection_payload(report), as_json)


async def _detect(config: AppConfig, diagram: TorusDiagram) -> DetectionReport:
    async with await HomologyEngine.create(config) as engine:
        return await engine.detect(diagram)


@main.command()
@click.argument("first", type=_FILE)
@click.argument("second", type=_FILE)
@_COEFF
@_JSON
@click.pass_obj
def compare(config: AppConfig, first: Path, second: Path, coeff: str, as_json: bool) -> None:
    """Exit 0 when two diagrams have the same graded ranks, 3 otherwise."""
    with _exit_codes():
        diagrams = (_load(first), _load(second))
        verdict = asyncio.run(_compare(config, *diagrams, Ring(coeff)))
    digest = combined_digest([diagram_digest(d) for d in diagrams])
    _report(["compare", "--coeff", coeff], digest, comparison_payload(verdict), as_json)
    if not verdict.equal:
        raise SystemExit(EXIT_MISMATCH)


async def _compare(config: AppConfig, first: TorusDiagram, second: TorusDiagram, ring: Ring) -> ComparisonVerdict:
    async with await HomologyEngine.create(config) as engine:
        return await engine.compare(first, second, ring)


@main.command()
@click.argument("file", type=_FILE)
@click.option("--edge", type=int, required=True, help="Edge index; loops follow the edges.")
@click.option("--chirality", type=click.Choice([c.value for c in Chirality]), default=Chirality.POSITIVE.value)
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), default=None)
def r1(file: Path, edge: int, chirality: str, output: Path | None) -> None:
    """Insert a Reidemeister I kink and print the new diagram."""
    with _exit_codes():
        diagram = _load(file)
        report = validate_diagram(diagram)
        if not report.accepted:
            raise DiagramValidationError(report)
        text = serialize_diagram(apply_r1(diagram, edge, Chirality(chirality)))
    if output is None:
        click.echo(text, nl=False)
    else:
        output.write_text(text, encoding="utf-8")
        logger.info("Wrote %s", output)


@main.command()
def schema() -> None:
    """Print the JSON schema of report documents."""
    click.echo(json.dumps(ReportDocument.model_json_schema(), indent=2))
