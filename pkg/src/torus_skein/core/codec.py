import hashlib
import logging

from torus_skein.exceptions import DiagramParseError
from torus_skein.models.diagram import Edge, FreeLoop, Slot, TorusDiagram

logger = logging.getLogger(__name__)


def _parse_int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError as e:
        raise DiagramParseError(f"expected integer {what}, got {token!r}", line) from e


def _parse_slot(token: str, crossing_count: int, line: int) -> Slot:
    crossing_text, dot, slot_text = token.partition(".")
    if not dot:
        raise DiagramParseError(f"expected <crossing>.<slot>, got {token!r}", line)
    crossing = _parse_int(crossing_text, line, "crossing index")
    slot = _parse_int(slot_text, line, "slot index")
    if not 0 <= slot <= 3:
        raise DiagramParseError(f"slot index out of 0..3 in {token}", line)
    if not 0 <= crossing < crossing_count:
        raise DiagramParseError(f"crossing index {crossing} >= {crossing_count} in {token}", line)
    return Slot(crossing=crossing, slot=slot)


def parse_diagram(text: str | bytes) -> TorusDiagram:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise DiagramParseError(f"input is not UTF-8: {e}") from e

    crossing_count: int | None = None
    edges: list[Edge] = []
    loops: list[FreeLoop] = []
    used: set[tuple[int, int]] = set()

    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword = tokens[0]

        if crossing_count is None:
            if keyword != "crossings" or len(tokens) != 2:
                raise DiagramParseError("first line must be 'crossings <d>'", number)
            crossing_count = _parse_int(tokens[1], number, "crossing count")
            if crossing_count < 0:
                raise DiagramParseError("crossing count must be non-negative", number)
            continue

        if keyword == "edge":
            if len(tokens) != 6 or tokens[3] != "w":
                raise DiagramParseError("expected 'edge <c1>.<s1> <c2>.<s2> w <a> <b>'", number)
            a = _parse_slot(tokens[1], crossing_count, number)
            b = _parse_slot(tokens[2], crossing_count, number)
            for end in (a, b):
                key = (end.crossing, end.slot)
                if key in used:
                    raise DiagramParseError(f"slot {end} used twice", number)
                used.add(key)
            winding = (_parse_int(tokens[4], number, "winding"), _parse_int(tokens[5], number, "winding"))
            edges.append(Edge(a=a, b=b, winding=winding))
        elif keyword == "loop":
            if len(tokens) != 3:
                raise DiagramParseError("expected 'loop <a> <b>'", number)
            loops.append(FreeLoop(winding=(_parse_int(tokens[1], number, "winding"), _parse_int(tokens[2], number, "winding"))))
        elif keyword == "crossings":
            raise DiagramParseError("duplicate 'crossings' header", number)
        else:
            raise DiagramParseError(f"unknown keyword {keyword!r}", number)

    if crossing_count is None:
        raise DiagramParseError("missing 'crossings <d>' header")

    logger.debug("Parsed diagram: %d crossings, %d edges, %d loops", crossing_count, len(edges), len(loops))
    return TorusDiagram(crossing_count=crossing_count, edges=tuple(edges), loops=tuple(loops))


def serialize_diagram(diagram: TorusDiagram) -> str:
    lines = [f"crossings {diagram.crossing_count}"]
    for edge in diagram.canonical().edges:
        lines.append(f"edge {edge.a} {edge.b} w {edge.winding[0]} {edge.winding[1]}")
    for loop in diagram.loops:
        lines.append(f"loop {loop.winding[0]} {loop.winding[1]}")
    return "\n".join(lines) + "\n"


def diagram_digest(diagram: TorusDiagram) -> str:
    return hashlib.sha256(serialize_diagram(diagram).encode("utf-8")).hexdigest()
