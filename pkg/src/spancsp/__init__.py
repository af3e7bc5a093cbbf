"""Open graphs as cospans, their rewrites as monic spans of cospans, and executable checks of the laws."""
from .cells import (
    CompanionData,
    TwoCell,
    associator,
    cells_equivalent,
    cells_isomorphic,
    companion_conjoint,
    comparison_cell,
    flip_cell,
    globular_interchanger,
    horizontal_compose,
    identity_cell,
    left_unitor,
    mirror_cell,
    right_unitor,
    structural_cell,
    tensor_cells,
    unit_cell,
    vertical_compose,
)
from .compact import DualPairData, counit_cospan, cusp_cells, dual_pair, unit_cospan, verify_fold_pushout
from .cospans import (
    Cospan,
    SwapStructure,
    VerticalSpan,
    align_cospans,
    companion_cospan,
    compose_cospans,
    cospans_isomorphic,
    identity_cospan,
    identity_span,
    spans_isomorphic,
    swap_structure,
    tensor_cospans,
)
from .errors import (
    BoundaryDeletionError,
    BudgetExceeded,
    CompositionError,
    DanglingError,
    DocumentError,
    DocumentInvariantError,
    InvariantError,
    MalformedDocumentError,
    MalformedGraphError,
    RewriteError,
    SchemaError,
    SpanCspError,
)
from .graph import (
    EMPTY,
    Graph,
    GraphMorphism,
    classify_morphism,
    compose_morphisms,
    enumerate_morphisms,
    generate_random_graph,
    identity,
    inverse,
)
from .isomorphism import are_isomorphic, find_commuting_isomorphism
from .lawcheck import LAWS, LawReport, SuiteConfig, check_law, run_law_suite
from .limits import (
    CoconeResult,
    ConeResult,
    codiagonal,
    copair,
    coproduct,
    pair,
    pullback,
    pushout,
    verify_universal_property,
)
from .rewrite import (
    ComplementResult,
    MatchResult,
    OpenGraphRule,
    RewriteResult,
    apply_rule,
    dualize_rule,
    find_matches,
    invert_rule,
    is_open_graph,
    make_rule,
    open_graph,
    pushout_complement,
)
from .serialize import Document, canonicalize, export_dot, parse, serialize

__version__ = "0.1.0"
