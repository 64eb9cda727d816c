"""Persistence of a filtration, directly and through its mapping telescope.

In the telescope the fiber over ``i_k`` is a copy of ``X_k`` and the slab
``[i_k, i_{k+1}]`` is the mapping cylinder of ``X_k ⊆ X_{k+1}``, which
retracts onto its top.  The fiber/slab zigzag therefore has invertible
backward arrows, and inverting them recovers the persistence module.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .complex import CutComplex, Filtration, cut_at_levels, fiber, interlevel, telescope
from .errors import NotInvertible
from .homology import HomologySpace, LinearMap, homology, induced_map
from .linalg import QQ, Matrix, inverse, rank
from .reeb import face_map, sect_homology
from .zigzag import Barcode, ZigzagModule, barcode, to_persistence


@dataclass(frozen=True)
class PersistenceModule:
    degree: int
    spaces: tuple     # HomologySpace per stage (may be empty when built from matrices)
    maps: tuple       # Matrix X_k -> X_{k+1}
    dims: tuple
    field: object = QQ

    def __post_init__(self):
        if len(self.maps) != max(len(self.dims) - 1, 0):
            raise ValueError(f"{len(self.dims)} spaces need {max(len(self.dims) - 1, 0)} maps")
        for k, M in enumerate(self.maps):
            if M.shape != (self.dims[k + 1], self.dims[k]):
                raise ValueError(f"map {k} has shape {M.shape}, expected {(self.dims[k + 1], self.dims[k])}")

    def ranks(self) -> list[int]:
        return [rank(M) for M in self.maps]

    def zigzag(self) -> ZigzagModule:
        return ZigzagModule(self.dims, self.maps, ("f",) * len(self.maps), self.degree, field=self.field)

    def barcode(self) -> Barcode:
        return barcode(self.zigzag())


def persistence_direct(F: Filtration, q: int, field=QQ) -> PersistenceModule:
    """H_q X_0 -> H_q X_1 -> ... induced by the inclusions."""
    spaces = [homology(X, q, field) for X in F.stages]
    maps = [induced_map(spaces[k], spaces[k + 1]).matrix for k in range(len(spaces) - 1)]
    return PersistenceModule(q, tuple(spaces), tuple(maps), tuple(H.dim for H in spaces), field)


def telescope_levels(F: Filtration) -> list:
    idx = list(F.indices)
    return sorted(set(idx) | {(a + b) / 2 for a, b in zip(idx, idx[1:])})


def cut_telescope(F: Filtration) -> CutComplex:
    """The telescope of ``F`` cut at its indices and the midpoints between them."""
    return cut_at_levels(telescope(F), telescope_levels(F))


def telescope_zigzag(C: CutComplex, F: Filtration, q: int, field=QQ) -> ZigzagModule:
    """fiber(i_0) -> slab[i_0, i_1] <- fiber(i_1) -> ... <- fiber(i_n)."""
    idx = F.indices
    spaces, arrows, dirs, labels = [], [], [], []
    fibers = [homology(fiber(C, t), q, field) for t in idx]
    for k, Hf in enumerate(fibers):
        spaces.append(Hf)
        labels.append(("fiber", idx[k]))
        if k + 1 < len(idx):
            Hs = homology(interlevel(C, idx[k], idx[k + 1]), q, field)
            spaces.append(Hs)
            labels.append(("slab", idx[k], idx[k + 1]))
            arrows += [induced_map(Hf, Hs), induced_map(fibers[k + 1], Hs)]
            dirs += ["f", "b"]
    return ZigzagModule.from_maps(spaces, arrows, dirs, q, labels)


def persistence_via_telescope(F: Filtration, q: int, field=QQ, cut: CutComplex | None = None) -> PersistenceModule:
    """Persistence maps (slab <- fiber_{k+1})^-1 ∘ (fiber_k -> slab) from the telescope."""
    C = cut_telescope(F) if cut is None else cut
    Z = telescope_zigzag(C, F, q, field)
    try:
        P = to_persistence(Z, stride=2)
    except NotInvertible as exc:
        k = (exc.context or {}).get("arrow", 0) // 2
        raise NotInvertible(
            f"telescope slab [{F.indices[k]}, {F.indices[k + 1]}] does not retract onto its top fiber "
            f"in degree {q} (rank {exc.rank}, shape {exc.shape})",
            rank=exc.rank, shape=exc.shape, context={"slab": [str(F.indices[k]), str(F.indices[k + 1])]}) from None
    spaces = tuple(Z.spaces[i] for i in range(0, len(Z.dims), 2))
    return PersistenceModule(q, spaces, tuple(P.maps), tuple(P.dims), field)


@dataclass
class LadderSquare:
    stage: int
    alpha_invertible: bool
    d1_invertible: bool
    commutes: bool | None
    inclusion: Matrix
    composite: Matrix | None
    detail: str = ""


@dataclass
class LadderReport:
    degree: int
    squares: list = dc_field(default_factory=list)
    direct: Barcode | None = None
    via_telescope: Barcode | None = None
    error: str = ""

    @property
    def invertibility(self) -> bool:
        return all(s.alpha_invertible and s.d1_invertible for s in self.squares)

    @property
    def commutes(self) -> bool:
        return all(s.commutes for s in self.squares)

    @property
    def barcodes_equal(self) -> bool:
        return (self.direct is not None and self.via_telescope is not None
                and self.direct.multiset() == self.via_telescope.multiset())

    @property
    def passed(self) -> bool:
        return not self.error and self.invertibility and self.commutes and self.barcodes_equal

    @property
    def verdict(self) -> str:
        if self.passed:
            return "pass"
        if self.invertibility and self.barcodes_equal and not self.commutes:
            # isomorphic modules, squares only commute up to a change of basis
            return "barcodes-only"
        return "fail"


def _is_iso(src: HomologySpace, dst: HomologySpace) -> bool:
    M = induced_map(src, dst).matrix
    return M.nrows == M.ncols and rank(M) == M.nrows


def verify_ladder(F: Filtration, q: int, field=QQ, cut: CutComplex | None = None) -> LadderReport:
    """Check the telescope ladder against the filtration in degree ``q``.

    Per stage: the slab retracts onto its top fiber (α), bottom evaluation
    of sections d_1 is invertible, and the inclusion X_k ⊆ X_{k+1} equals
    d_0 ∘ d_1^-1 as a matrix.  Globally: both barcodes coincide.
    """
    report = LadderReport(q)
    C = cut_telescope(F) if cut is None else cut
    direct = persistence_direct(F, q, field)
    report.direct = direct.barcode()
    idx = F.indices
    fibers = [homology(fiber(C, t), q, field) for t in idx]
    for k in range(len(idx) - 1):
        a, b = idx[k], idx[k + 1]
        slab = homology(interlevel(C, a, b), q, field)
        alpha = _is_iso(fibers[k + 1], slab)
        S = sect_homology(C, a, b, q, field)
        incl = direct.maps[k]
        sq = LadderSquare(k, alpha, False, None, incl, None)
        try:
            d1 = face_map(C, (a, b), "bottom", q, field, sect=S, end_space=fibers[k])
            d0 = face_map(C, (a, b), "top", q, field, sect=S, end_space=fibers[k + 1])
        except NotInvertible as exc:
            sq.detail = str(exc)
            report.squares.append(sq)
            continue
        d1_inv = _inverse_or_none(d1)
        sq.d1_invertible = d1_inv is not None
        if d1_inv is not None:
            sq.composite = d0.matrix @ d1_inv
            sq.commutes = sq.composite == incl
        report.squares.append(sq)
    try:
        report.via_telescope = persistence_via_telescope(F, q, field, cut=C).barcode()
    except NotInvertible as exc:
        report.error = str(exc)
    return report


def _inverse_or_none(m: LinearMap):
    M = m.matrix
    return inverse(M) if M.nrows == M.ncols else None
