"""Rank calculus for Lefschetz decompositions, categorical joins, duality
shapes, section decompositions, and projected joins."""

from .core import (
    Atom,
    Block,
    CategoryExpr,
    IdentityRecord,
    InvalidLadderError,
    LadderError,
    LadderSuffix,
    LefschetzLadder,
    RankExpr,
    SodComponent,
    SodPresentation,
    Tensor,
    TwistVector,
    Unknown,
    UnresolvedReferenceError,
    ZERO,
    component_ranks,
    rank_of,
    shape_rows,
    sod_tensor,
    tensor,
    total_rank,
    validate_ladder,
)
from .join import (
    JoinResult,
    PrimitiveGrid,
    categorical_join,
    iterated_join,
    ji_alternate_check,
    join_primitives,
    resolved_join_presentation,
)
from .hpd import (
    HpdResult,
    check_hpd_involution,
    check_hpd_join_commute,
    embed,
    hpd_length,
    hpd_rank,
    hpd_shape,
)
from .sections import (
    SectionPair,
    hpd_section_pair,
    iterated_nonlinear,
    linear_section,
    nonlinear_pair,
)
from .projection import (
    ProjectedHpdStatement,
    ProjectedLadder,
    blowup_lefschetz,
    projected_join,
    projected_join_hpd,
)
from .catalog import CatalogEntry, CatalogError, catalog_get, catalog_names, catalog_verify
from .jsonio import LadderFormatError, dumps_ladder, ladder_to_document, parse_ladder
from .render import render_grid

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
