"""Truncated Reeb complexes of PL functions and the diamond check.

Section spaces between adjacent critical levels a < b are modelled by the
fiber over the midpoint (a+b)/2.  The two face maps evaluate a section at
its bottom (d_1) and top (d_0) end; on homology they are computed through
the half-slabs [a, mid] and [mid, b], into which both the mid fiber and the
end fiber include, the latter by an isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complex import CutComplex, as_rational, cut_at_levels, fiber, interlevel
from .errors import IntervalContainsCritical, MissingCriticalLevel, NotInvertible
from .homology import HomologySpace, LinearMap, compose, homology, induced_map, invert
from .linalg import QQ, Matrix, block_matrix, cokernel_dim, nullity, rank


def reeb_levels(K) -> list[Fraction]:
    """All cut levels needed by :func:`truncated_reeb`: vertex heights and slab midpoints."""
    hs = K.height_levels()
    mids = [(a + b) / 2 for a, b in zip(hs, hs[1:])]
    return sorted(set(hs) | set(mids))


def prepare(K) -> CutComplex:
    """Cut ``K`` at every vertex height and every midpoint between adjacent heights."""
    return cut_at_levels(K, reeb_levels(K))


@dataclass(frozen=True)
class SectModel:
    slab: tuple
    mid: Fraction
    space: HomologySpace


def _check_slab(C: CutComplex, a, b):
    a, b = as_rational(a), as_rational(b)
    if not a < b:
        raise ValueError(f"slab needs a < b, got [{a}, {b}]")
    for t in (a, b):
        if t not in C.cut_levels:
            raise MissingCriticalLevel(t)
    for h in C.critical_values:
        if a < h < b:
            raise IntervalContainsCritical(a, b, h)
    mid = (a + b) / 2
    if mid not in C.cut_levels:
        raise MissingCriticalLevel(mid, f"slab midpoint {mid} of [{a}, {b}] is not a cut level")
    return a, b, mid


def sect_homology(C: CutComplex, a, b, q: int, field=QQ) -> SectModel:
    a, b, mid = _check_slab(C, a, b)
    return SectModel((a, b), mid, homology(fiber(C, mid), q, field))


def face_map(C: CutComplex, slab, end: str, q: int, field=QQ, sect: SectModel | None = None,
             end_space: HomologySpace | None = None) -> LinearMap:
    """Evaluation of sections at one end, ``end`` in ``{"bottom", "top"}``."""
    a, b = slab
    if sect is None:
        sect = sect_homology(C, a, b, q, field)
    a, b = sect.slab
    mid = sect.mid
    if end == "bottom":
        t, half = a, interlevel(C, a, mid)
    elif end == "top":
        t, half = b, interlevel(C, mid, b)
    else:
        raise ValueError(f"end must be 'bottom' or 'top', got {end!r}")
    if end_space is None:
        end_space = homology(fiber(C, t), q, field)
    H_half = homology(half, q, field)
    from_mid = induced_map(sect.space, H_half)
    from_end = induced_map(end_space, H_half)
    ctx = {"slab": [str(a), str(b)], "end": end, "degree": q}
    try:
        back = invert(from_end, context=ctx)
    except NotInvertible as exc:
        raise NotInvertible(
            f"fiber at {t} does not include isomorphically into the half-slab of [{a}, {b}] "
            f"in degree {q} (rank {exc.rank}, shape {exc.shape}); the function is not Reeb-like here",
            rank=exc.rank, shape=exc.shape, context=ctx) from None
    return compose(back, from_mid)


@dataclass(frozen=True)
class TruncatedReebComplex:
    degree: int
    critical_levels: tuple
    fiber_spaces: tuple
    sect_spaces: tuple
    face_bottom: tuple
    face_top: tuple
    differential: Matrix

    @property
    def fiber_dims(self) -> list[int]:
        return [H.dim for H in self.fiber_spaces]

    @property
    def sect_dims(self) -> list[int]:
        return [S.space.dim for S in self.sect_spaces]

    def rank(self) -> int:
        return rank(self.differential)

    def cokernel_dim(self) -> int:
        return cokernel_dim(self.differential)

    def kernel_dim(self) -> int:
        return nullity(self.differential)

    def assemble(self) -> Matrix:
        """Recompute ∂¹ = ⊕(d_0 - d_1) from the stored face maps."""
        return _assemble(self.fiber_dims, self.sect_dims, self.face_bottom, self.face_top,
                         self.differential.field)


def _assemble(fdims, sdims, bottoms, tops, field) -> Matrix:
    n, m = len(fdims), len(sdims)
    blocks = [[None] * m for _ in range(n)]
    for i in range(m):
        blocks[i][i] = -bottoms[i].matrix
        blocks[i + 1][i] = tops[i].matrix
    return block_matrix(blocks, fdims, sdims, field)


def truncated_reeb(C: CutComplex, q: int, field=QQ) -> TruncatedReebComplex:
    """T_q: ⊕ H_q(fibers at critical levels) <- ⊕ H_q(Sect between adjacent ones)."""
    crit = C.critical_values
    for c in crit:
        if c not in C.cut_levels:
            raise MissingCriticalLevel(c)
    fibers = tuple(homology(fiber(C, c), q, field) for c in crit)
    sects, bottoms, tops = [], [], []
    for i in range(len(crit) - 1):
        S = sect_homology(C, crit[i], crit[i + 1], q, field)
        sects.append(S)
        bottoms.append(face_map(C, S.slab, "bottom", q, field, sect=S, end_space=fibers[i]))
        tops.append(face_map(C, S.slab, "top", q, field, sect=S, end_space=fibers[i + 1]))
    D = _assemble([H.dim for H in fibers], [S.space.dim for S in sects], bottoms, tops, field)
    return TruncatedReebComplex(q, tuple(crit), fibers, tuple(sects), tuple(bottoms), tuple(tops), D)


def homology_of_base(complexes) -> list[int]:
    """dim H_n(X) = coker ∂¹ of T_n + ker ∂¹ of T_{n-1}, for the given degrees 0..Q."""
    ts = sorted(complexes, key=lambda T: T.degree)
    out = []
    for n, T in enumerate(ts):
        if T.degree != n:
            raise ValueError("truncated Reeb complexes must cover degrees 0..Q without gaps")
        prev = ts[n - 1].kernel_dim() if n > 0 else 0
        out.append(T.cokernel_dim() + prev)
    return out


def reeb_betti(K, max_degree: int | None = None, field=QQ) -> list[int]:
    """Betti numbers of ``K`` recovered from its truncated Reeb complexes."""
    C = K if isinstance(K, CutComplex) else prepare(K)
    top = C.origin.dim if max_degree is None else max_degree
    return homology_of_base([truncated_reeb(C, q, field) for q in range(top + 1)])


@dataclass(frozen=True)
class DiamondReport:
    slab: tuple
    degree: int
    first: Matrix          # H Sect -> H f^-1 a ⊕ H f^-1 b, bottom block negated
    second: Matrix         # H f^-1 a ⊕ H f^-1 b -> H f^-1 [a, b]
    composite_zero: bool
    rank_first: int
    rank_second: int
    kernel_second: int

    @property
    def exact(self) -> bool:
        return self.kernel_second == self.rank_first

    @property
    def passed(self) -> bool:
        return self.composite_zero and self.exact

    def dims(self) -> tuple[int, int, int]:
        return (self.first.ncols, self.first.nrows, self.second.nrows)


def verify_diamond(C: CutComplex, slab, q: int, field=QQ) -> DiamondReport:
    """Check exactness of H Sect[a,b] -> H f^-1 a ⊕ H f^-1 b -> H f^-1[a,b] at the middle."""
    a, b = slab
    S = sect_homology(C, a, b, q, field)
    a, b = S.slab
    Ha = homology(fiber(C, a), q, field)
    Hb = homology(fiber(C, b), q, field)
    d1 = face_map(C, S.slab, "bottom", q, field, sect=S, end_space=Ha)
    d0 = face_map(C, S.slab, "top", q, field, sect=S, end_space=Hb)
    first = (-d1.matrix).vstack(d0.matrix)
    Hab = homology(interlevel(C, a, b), q, field)
    second = induced_map(Ha, Hab).matrix.hstack(induced_map(Hb, Hab).matrix)
    comp = second @ first
    r1, r2 = rank(first), rank(second)
    return DiamondReport((a, b), q, first, second, comp.is_zero(), r1, r2, second.ncols - r2)


def adjacent_slabs(C: CutComplex) -> list[tuple]:
    crit = C.critical_values
    return list(zip(crit, crit[1:]))
