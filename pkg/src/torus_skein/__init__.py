from torus_skein.config import AppConfig
from torus_skein.core.codec import diagram_digest, parse_diagram, serialize_diagram
from torus_skein.core.complex import GradedChainComplex, assemble_complex, chain_group, edge_block
from torus_skein.core.cube import dual_class, intersection_number, normalize_class, orient, resolve
from torus_skein.core.homology import (
    c_graded_ranks,
    compare_results,
    detect,
    euler_characteristic,
    graded_euler,
    homology,
    supported_at_c_zero,
)
from torus_skein.core.moves import apply_r1, disjoint_union, from_planar_diagram, parallel_loops, permute_crossings
from torus_skein.core.validation import validate_diagram
from torus_skein.engine import HomologyEngine
from torus_skein.exceptions import (
    CaseAnalysisViolation,
    CrossingCapExceededError,
    DiagramParseError,
    DiagramValidationError,
    EdgeIndexError,
    EngineInvariantError,
    NonPrimitiveClassError,
    TorusSkeinError,
    WrongRingError,
)
from torus_skein.models.diagram import Chirality, Edge, FreeLoop, Slot, TorusDiagram, ValidationReport
from torus_skein.models.grading import CurveClass, Generator, Ring, SkeinDegree
from torus_skein.models.results import AnnulusVerdict, DetectionReport, HomologyResult, KnotVerdict
from torus_skein.version import __version__

__all__ = [
    "AnnulusVerdict",
    "AppConfig",
    "CaseAnalysisViolation",
    "Chirality",
    "CrossingCapExceededError",
    "CurveClass",
    "DetectionReport",
    "DiagramParseError",
    "DiagramValidationError",
    "Edge",
    "EdgeIndexError",
    "EngineInvariantError",
    "FreeLoop",
    "Generator",
    "GradedChainComplex",
    "HomologyEngine",
    "HomologyResult",
    "KnotVerdict",
    "NonPrimitiveClassError",
    "Ring",
    "SkeinDegree",
    "Slot",
    "TorusDiagram",
    "TorusSkeinError",
    "ValidationReport",
    "WrongRingError",
    "__version__",
    "apply_r1",
    "assemble_complex",
    "c_graded_ranks",
    "chain_group",
    "compare_results",
    "detect",
    "diagram_digest",
    "disjoint_union",
    "dual_class",
    "edge_block",
    "euler_characteristic",
    "from_planar_diagram",
    "graded_euler",
    "homology",
    "intersection_number",
    "normalize_class",
    "orient",
    "parallel_loops",
    "parse_diagram",
    "permute_crossings",
    "resolve",
    "serialize_diagram",
    "supported_at_c_zero",
    "validate_diagram",
]
