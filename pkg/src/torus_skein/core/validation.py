"""Realizability checks for diagrams on the torus.

The face walks of the rotation system (counterclockwise slot order at every
crossing) are compared with the three ways a connected 4-valent graph can sit
in T^2: cellular (every face a disk, V - E + F = 0), inside a disk, or inside
an annulus. The last two are non-cellular; their walks give V - E + F = 2, and
an annulus shows up as exactly two walks with opposite primitive windings.
The windings of the graph's cycles must then span H1(T^2), vanish, or lie on
the annulus core respectively.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass, field

from torus_skein.models.diagram import TorusDiagram, ValidationReport, Winding

logger = logging.getLogger(__name__)


@dataclass
class _Component:
    crossings: set[int] = field(default_factory=set)
    edges: int = 0
    face_windings: list[Winding] = field(default_factory=list)
    cycle_windings: list[Winding] = field(default_factory=list)

    @property
    def euler_characteristic(self) -> int:
        return len(self.crossings) - self.edges + len(self.face_windings)

    def cycle_lattice_index(self) -> int:
        """gcd of all 2x2 determinants of cycle windings; 1 iff they span Z^2, 0 if rank < 2."""
        index = 0
        for i, (a, b) in enumerate(self.cycle_windings):
            for c, d in self.cycle_windings[i + 1 :]:
                index = math.gcd(index, a * d - b * c)
        return index


def _normalized(w: Winding) -> Winding:
    g = math.gcd(*w)
    p, q = w[0] // g, w[1] // g
    return (p, q) if p > 0 or (p == 0 and q > 0) else (-p, -q)


def _check_coverage(diagram: TorusDiagram, report: ValidationReport) -> None:
    seen: dict[int, int] = {}
    for edge in diagram.edges:
        for end in (edge.a, edge.b):
            if end.crossing >= diagram.crossing_count:
                report.error("slot-range", f"slot {end} refers to crossing {end.crossing} >= {diagram.crossing_count}")
                continue
            seen[end.half_edge] = seen.get(end.half_edge, 0) + 1
    for half_edge in range(4 * diagram.crossing_count):
        count = seen.get(half_edge, 0)
        label = f"{half_edge // 4}.{half_edge % 4}"
        if count == 0:
            report.error("slot-coverage", f"slot {label} has no edge")
        elif count > 1:
            report.error("slot-coverage", f"slot {label} used {count} times")


def _check_loops(diagram: TorusDiagram, report: ValidationReport) -> None:
    for index, loop in enumerate(diagram.loops):
        if loop.winding != (0, 0) and math.gcd(*loop.winding) != 1:
            report.error("loop-class", f"non-primitive loop class {loop.winding} (loop {index})")


def _trace_components(diagram: TorusDiagram) -> list[_Component]:
    d = diagram.crossing_count
    adjacency: list[list[tuple[int, int, int]]] = [[] for _ in range(d)]
    for edge in diagram.edges:
        x, y = edge.winding
        adjacency[edge.a.crossing].append((edge.b.crossing, x, y))
        adjacency[edge.b.crossing].append((edge.a.crossing, -x, -y))

    # positions in the universal cover along a spanning tree; every edge then closes a cycle
    component_of = [-1] * d
    position: list[Winding] = [(0, 0)] * d
    components: list[_Component] = []
    for root in range(d):
        if component_of[root] != -1:
            continue
        component = _Component()
        components.append(component)
        component_of[root] = len(components) - 1
        queue = deque([root])
        while queue:
            c = queue.popleft()
            component.crossings.add(c)
            for other, x, y in adjacency[c]:
                if component_of[other] == -1:
                    component_of[other] = component_of[root]
                    position[other] = (position[c][0] + x, position[c][1] + y)
                    queue.append(other)

    for edge in diagram.edges:
        component = components[component_of[edge.a.crossing]]
        component.edges += 1
        (ax, ay), (bx, by) = position[edge.a.crossing], position[edge.b.crossing]
        cycle = (ax + edge.winding[0] - bx, ay + edge.winding[1] - by)
        if cycle != (0, 0):
            component.cycle_windings.append(cycle)

    # dart 2e runs a -> b along edge e, dart 2e + 1 runs back
    starts: list[int] = []
    ends: list[int] = []
    windings: list[Winding] = []
    for edge in diagram.edges:
        x, y = edge.winding
        starts += [edge.a.half_edge, edge.b.half_edge]
        ends += [edge.b.half_edge, edge.a.half_edge]
        windings += [(x, y), (-x, -y)]
    out_dart = {h: dart for dart, h in enumerate(starts)}

    visited = [False] * len(starts)
    for first in range(len(starts)):
        if visited[first]:
            continue
        total_x = total_y = 0
        dart = first
        while not visited[dart]:
            visited[dart] = True
            total_x += windings[dart][0]
            total_y += windings[dart][1]
            end = ends[dart]
            dart = out_dart[4 * (end // 4) + (end % 4 + 1) % 4]
        components[component_of[starts[first] // 4]].face_windings.append((total_x, total_y))
    return components


def validate_diagram(diagram: TorusDiagram) -> ValidationReport:
    report = ValidationReport()
    _check_coverage(diagram, report)
    _check_loops(diagram, report)
    if report.errors:
        return report

    components = _trace_components(diagram)
    if len(components) > 1:
        report.warn("disconnected", f"diagram graph has {len(components)} components; realizability checked per component")

    cores: set[Winding] = {_normalized(loop.winding) for loop in diagram.loops if loop.winding != (0, 0)}
    cellular = 0
    for index, component in enumerate(components):
        chi = component.euler_characteristic
        nonzero = [w for w in component.face_windings if w != (0, 0)]
        if chi == 0:
            if nonzero:
                report.error("face-winding", f"component {index}: face with nonzero winding {nonzero[0]} in a cellular embedding")
            elif component.cycle_lattice_index() != 1:
                report.error("cycle-lattice", f"component {index}: cycle windings do not span H1 of the torus")
            cellular += 1
        elif chi == 2 and not nonzero:
            if component.cycle_windings:
                report.error("cycle-lattice", f"component {index}: disk component has cycle winding {component.cycle_windings[0]}")
        elif chi == 2:
            w = nonzero[0]
            if len(nonzero) != 2 or nonzero[1] != (-w[0], -w[1]) or math.gcd(*w) != 1:
                report.error(
                    "face-winding",
                    f"component {index}: face windings {nonzero} are neither null-homologous nor one annulus boundary",
                )
                continue
            if not component.cycle_windings or any(a * w[1] - b * w[0] for a, b in component.cycle_windings):
                report.error("cycle-lattice", f"component {index}: cycle windings do not lie along the annulus core {w}")
            cores.add(_normalized(w))
        else:
            report.error("euler-characteristic", f"component {index}: V - E + F = {chi}, expected 0 or 2 on the torus")

    if len(cores) > 1:
        report.error("non-parallel", f"essential components in non-parallel classes {sorted(cores)}")
    if cellular > 1 or (cellular and cores):
        report.error("non-parallel", "a component filling the torus cannot be disjoint from other essential components")

    for issue in report.warnings:
        logger.warning("%s: %s", issue.code, issue.message)
    return report
