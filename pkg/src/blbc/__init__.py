"""Exact rational geometry for point visibility: blocker-based point-set
construction, invariant verification, and big-line-big-clique analysis.

All computation is exact (stdlib fractions / arbitrary-precision ints);
no floating point touches any predicate, file, or decision.
"""

from .construction import (
    DEFAULT_SEED,
    ConstructionState,
    InsertionRecord,
    OrdinaryPair,
    SeedTriple,
    choose_parameter,
    excluded_parameters,
    farey_order,
    generate,
    generate_states,
    init_state,
    insert_point,
    select_ordinary_pair,
    state_from_points,
)
from .errors import (
    BlbcError,
    ConsistencyError,
    DegenerateSegmentError,
    DuplicatePointError,
    FormatError,
    ImpossibleStateError,
    InputError,
    ParameterRangeError,
    PendingPairError,
    PlacementError,
    RationalFormatError,
    SeedError,
)
from .fileformat import (
    PointFile,
    parse_point_file,
    parse_trace_file,
    serialize_point_file,
    serialize_reports,
    serialize_trace_file,
    serialize_verdict,
)
from .geometry import (
    CanonicalLine,
    NoIntersection,
    Orientation,
    Point,
    intersect,
    line_through,
    on_open_segment,
    orientation,
    segment_param_point,
)
from .rational import Rational, format_rational, parse_rational
from .svgrender import render_svg
from .verifier import (
    VerificationReport,
    verify_construction_run,
    verify_exclusion_bound,
    verify_no_k_collinear,
    verify_ordinary_oracle,
    verify_trace_selections,
    verify_triangle_pending,
    verify_unique_triple_at_insertion,
    verify_visible_pair_lemma,
)
from .visibility import (
    BlbcOutcome,
    BlbcVerdict,
    LineIncidenceMap,
    PointSet,
    VisibilityGraph,
    blocking_parameters,
    build_visibility_graph,
    build_visibility_graph_naive,
    check_blbc_instance,
    is_visible,
    max_collinear,
    max_visible_clique,
)

__version__ = "0.1.0"

__all__ = [
    "BlbcError",
    "BlbcOutcome",
    "BlbcVerdict",
    "CanonicalLine",
    "ConsistencyError",
    "ConstructionState",
    "DEFAULT_SEED",
    "DegenerateSegmentError",
    "DuplicatePointError",
    "FormatError",
    "ImpossibleStateError",
    "InputError",
    "InsertionRecord",
    "LineIncidenceMap",
    "NoIntersection",
    "OrdinaryPair",
    "Orientation",
    "ParameterRangeError",
    "PendingPairError",
    "PlacementError",
    "Point",
    "PointFile",
    "PointSet",
    "Rational",
    "RationalFormatError",
    "SeedError",
    "SeedTriple",
    "VerificationReport",
    "VisibilityGraph",
    "blocking_parameters",
    "build_visibility_graph",
    "build_visibility_graph_naive",
    "check_blbc_instance",
    "choose_parameter",
    "excluded_parameters",
    "farey_order",
    "format_rational",
    "generate",
    "generate_states",
    "init_state",
    "insert_point",
    "intersect",
    "is_visible",
    "line_through",
    "max_collinear",
    "max_visible_clique",
    "on_open_segment",
    "orientation",
    "parse_point_file",
    "parse_rational",
    "parse_trace_file",
    "render_svg",
    "segment_param_point",
    "select_ordinary_pair",
    "serialize_point_file",
    "serialize_reports",
    "serialize_trace_file",
    "serialize_verdict",
    "state_from_points",
    "verify_construction_run",
    "verify_exclusion_bound",
    "verify_no_k_collinear",
    "verify_ordinary_oracle",
    "verify_trace_selections",
    "verify_triangle_pending",
    "verify_unique_triple_at_insertion",
    "verify_visible_pair_lemma",
]
