"""trisect: combinatorics of Heegaard and trisection diagrams.

Surfaces are combinatorial maps (rotation systems), diagrams are maps with
colored curve systems, and the higher layers provide handle slides, bigon
reduction, connected sums, stabilizations, algebraic invariants, bounded
certificate search, file formats, SVG rendering and a CLI.
"""

from .combmap import (
    CombMap,
    MapError,
    NotPermutation,
    FixedPointInTheta,
    OddDartPairing,
    InvalidBoundary,
    NotACurveSystem,
    build_map,
    genus_and_boundary,
    cut_along,
    canonical_code,
    colored_isomorphic,
)
from .diagram import (
    Diagram,
    Curve,
    TrisectionParams,
    DiagramError,
    ParamOutOfRange,
    CountMismatch,
    NonStandardScaffold,
    ALPHA,
    BETA,
    GAMMA,
    SCAFFOLD,
    TRISECTION_PAIRS,
    scaffold_diagram,
    standard_cut_system,
    standard_heegaard,
    stab_diagram,
    s4_diagram,
    s1s3_diagram,
    cp2_diagram,
    torus_diagram,
    is_cut_system,
    validate_heegaard,
    validate_trisection,
    equivalent_diagrams,
    validate_relative,
)
from .folds import FoldArc, FoldPattern, standard_fold_pattern, validate_fold_pattern
from .invariants import (
    IntegerMatrix,
    AbelianInvariants,
    GroupPresentation,
    smith_form,
    homology_class,
    intersection_matrix,
    h1_heegaard,
    pi1_presentation,
    trisection_invariants,
)
from .moves import (
    SlideArc,
    SlideMove,
    Certificate,
    AugmentedDiagram,
    slide,
    reduce_bigons,
    connected_sum,
    stabilize,
    stabilize_heegaard,
    verify_certificate,
    verify_augmented,
    identify_standard_pair,
)
from .search import SearchConfig, SearchOutcome, enumerate_slides, standardize, standardize_all
from .textio import (
    ParseError,
    VersionMismatch,
    ChecksumMismatch,
    SameColorChordsCross,
    IndexGap,
    UnmatchedEdgeCount,
    serialize,
    parse,
    compile_polygon_source,
    render_svg,
)

__version__ = "0.1.0"
