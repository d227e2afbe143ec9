"""Widths of link diagrams from coloring sequences.

Compute the lexicographic width multiset, the sum width, and the trunk of a
link diagram, with replayable certificates, exactness classification from
table metadata, and derived tube and double-branched-cover bounds.
"""

from .codec import (
    CodecError,
    DtCode,
    GaussCode,
    Passage,
    Visit,
    canonical_dt,
    dt_equivalent,
    dt_to_gauss,
    gauss_to_dt,
    parse_dt,
    parse_gauss,
    serialize_dt,
    serialize_gauss,
)
from .coloring import (
    Certificate,
    ColoringError,
    ColoringState,
    Event,
    MaskTables,
    SpecialKind,
    WidthMultiset,
    add_seed,
    closure,
    coloring_move,
    count_chains,
    detect_special,
    enabled_moves,
    evaluate_seed_order,
    initial_state,
    is_completed,
    lex_compare,
    parse_certificate,
    serialize_certificate,
    verify_certificate,
    widths_of_sequence,
)
from .derive import (
    DeriveError,
    DerivedReport,
    LinkMetadata,
    TrunkStatus,
    classify_trunk,
    cut_split_reduce,
    dbc_bound,
    derive_report,
    thick_thin,
    tube_fits,
)
from .diagram import (
    Crossing,
    CutSplitKind,
    CutSplitWitness,
    DiagramError,
    LinkDiagram,
    Strand,
    build_diagram,
    detect_cut_split,
    is_split_shadow,
    remove_component,
)
from .search import (
    Objective,
    SearchBudget,
    SearchError,
    Status,
    WidthResult,
    canonical_rearrangement,
    exact_widths,
    naive_enumerate,
    naive_minima,
    sample_naive_sequences,
    staged_trunk6,
    wirtinger_upper,
)

__version__ = "0.1.0"
