"""Dynkin graph transformations and PC sets of singularity classes."""

from .graphs import (
    A,
    BC1,
    Combination,
    ComponentKind,
    D,
    DecoratedGraph,
    E,
    EMPTY,
    G1,
    G2,
    LabelError,
    Norm,
    build_component,
    classify,
    disjoint_union,
    dynkin_subgraph_classes,
    format_label,
    parse_label,
    realization,
    recognize_component,
)
from .transforms import (
    ALL_STEP_PAIRS,
    ELEMENTARY,
    ExtendedComponent,
    InvariantViolation,
    TIE,
    TieChoice,
    elementary_results,
    extend_component,
    gcd_condition,
    step_results,
    tie_results,
    two_step_closure,
)
from .catalog import (
    ClassData,
    Cusp,
    NINE_NAMES,
    RationalDoublePoint,
    SelectorError,
    SimpleElliptic,
    SingularityClass,
    TRIANGLE_NAMES,
    Triangle,
    class_data,
    class_label,
    gabrielov_graph,
    parse_class,
)
from .engine import (
    CacheCorruptionError,
    ConsistencyReport,
    METHOD_CUSP,
    METHOD_ELLIPTIC,
    METHOD_RDP,
    METHOD_THM1,
    METHOD_THM2,
    PcResult,
    SCHEMA_VERSION,
    Verdict,
    Witness,
    check_membership,
    compute_pc,
    find_witness,
    format_witness,
    load_cache,
    pc_cusp,
    pc_nine_thm2,
    pc_rational_double_point,
    pc_simple_elliptic,
    pc_triangle_thm1,
    replay_witness,
    save_cache,
    subgraph_closure_gaps,
    verify_consistency,
)

__version__ = "0.1.0"

__all__ = [
    "A", "BC1", "Combination", "ComponentKind", "D", "DecoratedGraph", "E",
    "EMPTY", "G1", "G2", "LabelError", "Norm", "build_component", "classify",
    "disjoint_union", "dynkin_subgraph_classes", "format_label", "parse_label",
    "realization", "recognize_component",
    "ALL_STEP_PAIRS", "ELEMENTARY", "ExtendedComponent", "InvariantViolation",
    "TIE", "TieChoice", "elementary_results", "extend_component",
    "gcd_condition", "step_results", "tie_results", "two_step_closure",
    "ClassData", "Cusp", "NINE_NAMES", "RationalDoublePoint", "SelectorError",
    "SimpleElliptic", "SingularityClass", "TRIANGLE_NAMES", "Triangle",
    "class_data", "class_label", "gabrielov_graph", "parse_class",
    "CacheCorruptionError", "ConsistencyReport", "METHOD_CUSP",
    "METHOD_ELLIPTIC", "METHOD_RDP", "METHOD_THM1", "METHOD_THM2", "PcResult",
    "SCHEMA_VERSION", "Verdict", "Witness", "check_membership", "compute_pc",
    "find_witness", "format_witness", "load_cache", "pc_cusp", "pc_nine_thm2",
    "pc_rational_double_point", "pc_simple_elliptic", "pc_triangle_thm1",
    "replay_witness", "save_cache", "subgraph_closure_gaps",
    "verify_consistency",
]
