"""Truncated Reeb complexes, levelset zigzags and mapping telescopes in exact arithmetic."""

from .cech import build_cover, first_page, nerve_row, second_page_two_column
from .complex import (
    CutComplex,
    CutVertex,
    Filtration,
    SimplicialComplex,
    TelescopeVertex,
    cut_at_levels,
    fiber,
    interlevel,
    telescope,
)
from .errors import (
    CoverInvalid,
    FaceClosureError,
    IntervalContainsCritical,
    InternalInconsistency,
    InvertedInterval,
    LevelNotCut,
    MissingCriticalLevel,
    NotAFiltration,
    NotASubcomplex,
    NotInvertible,
    ParseError,
    ReebError,
    UncoveredSimplex,
)
from .homology import HomologySpace, LinearMap, betti_numbers, homology, induced_map
from .linalg import GF, QQ, Matrix, cokernel_dim, kernel_basis, rank, solve
from .persistence import PersistenceModule, persistence_direct, persistence_via_telescope, verify_ladder
from .reeb import TruncatedReebComplex, face_map, homology_of_base, sect_homology, truncated_reeb, verify_diamond
from .zigzag import Barcode, IntervalCover, ZigzagModule, barcode, levelset_zigzag, to_persistence

__version__ = "0.1.0"
