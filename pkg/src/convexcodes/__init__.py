"""Convexity analysis and verified convex realizations of neural codes."""

from .codes import (
    AbstractCover,
    Code,
    CodeParseError,
    CompletenessReport,
    SimplicialComplex,
    abstract_code,
    classify_completeness,
    code_from_text,
    code_to_text,
    covers,
    finite_realization,
    intersection_completion,
    link,
    maximal_codewords,
    restrict,
    simplicial_complex,
    simplicial_violators,
    word_label,
    word_mask,
    word_neurons,
)
from .geometry import (
    AMBIENT_UNION,
    AMBIENT_WHOLE,
    Ball,
    BallConstraintError,
    Cell,
    CellComplex,
    ConvexRegion,
    CoverParseError,
    HalfSpace,
    PolyhedralCover,
    SampleReport,
    arrangement_cells,
    boundary_cells,
    check_nondegeneracy,
    closed_interval,
    closure_cells,
    code_of_cover,
    cover_from_text,
    cover_to_text,
    enumerate_cells,
    feasible,
    interior_cells,
    is_face,
    open_interval,
    region_cell_sets,
    sample_code,
    transform_cover,
    verify_closure_interior_invariance,
)
from .realization import (
    ChamberRealization,
    ChordCutError,
    MonotoneExtendError,
    NotApplicable,
    PotentialCoverRealization,
    RealizationCertificate,
    abstract_from_cover,
    chord_cut,
    max_int_realization,
    monotone_extend,
    potential_cover,
    realize,
    replay_certificate,
)
from .topology import (
    BettiProfile,
    Contractible,
    LocalObstruction,
    NonlocalObstruction,
    NotContractible,
    Unknown,
    contractibility,
    cone_complex,
    covering_sets,
    local_obstructions,
    nonlocal_obstructions,
    reduced_betti,
    replay_collapse,
    survey_nonlocal_vs_local,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
