"""Čech first page of a pulled-back interval cover and its two-column collapse.

Open intervals are modelled by the full subcomplexes over their closures,
after cutting at the interval endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complex import CutComplex, SimplicialComplex, cut_at_levels, interlevel
from .errors import UncoveredSimplex
from .homology import betti_numbers, homology, induced_map
from .linalg import QQ, Matrix, block_matrix, cokernel_dim, nullity, rank
from .zigzag import IntervalCover


def cover_levels(K: SimplicialComplex, cover: IntervalCover) -> list:
    """Interval endpoints strictly inside the height range of ``K``."""
    hs = K.heights.values()
    if not hs:
        return []
    lo, hi = min(hs), max(hs)
    return sorted({t for iv in cover.intervals for t in iv if lo < t < hi})


def prepare_cover(K, cover: IntervalCover) -> CutComplex:
    """Cut ``K`` (or add cuts to a :class:`CutComplex`) at the endpoints of ``cover``."""
    base = K.complex if isinstance(K, CutComplex) else K
    return cut_at_levels(K, cover_levels(base, cover))


def intersection(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    """Common subcomplex of two subcomplexes of one ambient complex (order taken from ``A``)."""
    vs = [v for v in A.vertices if v in B.order]
    return SimplicialComplex(vs, {v: A.heights[v] for v in vs}, A.simplices & B.simplices, check=False)


@dataclass(frozen=True)
class PullbackCover:
    cut: CutComplex
    cover: IntervalCover
    pieces: tuple
    overlaps: tuple


def build_cover(C: CutComplex, cover: IntervalCover) -> PullbackCover:
    pieces = tuple(interlevel(C, a, b) for a, b in cover.intervals)
    overlaps = tuple(interlevel(C, a, b) for a, b in cover.overlaps())
    covered = set().union(*(P.simplices for P in pieces))
    missing = [s for s in C.complex.simplices if s not in covered]
    if missing:
        order = C.complex.order
        raise UncoveredSimplex(min(missing, key=lambda s: (len(s), [order[v] for v in s])))
    return PullbackCover(C, cover, pieces, overlaps)


@dataclass(frozen=True)
class FirstPage:
    max_degree: int
    piece_spaces: tuple      # [q][k] -> H_q(U_k)
    overlap_spaces: tuple    # [q][k] -> H_q(U_k ∩ U_{k+1})
    differentials: tuple     # [q] -> ∂¹_{1,q}
    blocks: tuple            # [q][k] -> (into U_k, into U_{k+1}) matrices

    def dims(self, q: int) -> tuple[int, int]:
        """(dim E¹_{0,q}, dim E¹_{1,q})."""
        return (sum(H.dim for H in self.piece_spaces[q]), sum(H.dim for H in self.overlap_spaces[q]))

    def ranks(self) -> list[int]:
        return [rank(D) for D in self.differentials]

    def assemble(self, q: int) -> Matrix:
        pdims = [H.dim for H in self.piece_spaces[q]]
        odims = [H.dim for H in self.overlap_spaces[q]]
        return _assemble(pdims, odims, self.blocks[q], self.differentials[q].field)


def _assemble(pdims, odims, blocks, field) -> Matrix:
    grid = [[None] * len(odims) for _ in pdims]
    for k, (low, high) in enumerate(blocks):
        grid[k][k] = -low
        grid[k + 1][k] = high
    return block_matrix(grid, pdims, odims, field)


def first_page(PC: PullbackCover, max_degree: int, field=QQ) -> FirstPage:
    """E¹ with ∂¹_{1,q} = H_q d_0 - H_q d_1 on each overlap."""
    pspaces, ospaces, diffs, blocks = [], [], [], []
    for q in range(max_degree + 1):
        P = tuple(homology(U, q, field) for U in PC.pieces)
        O = tuple(homology(V, q, field) for V in PC.overlaps)
        bl = tuple((induced_map(O[k], P[k]).matrix, induced_map(O[k], P[k + 1]).matrix)
                   for k in range(len(O)))
        pspaces.append(P)
        ospaces.append(O)
        blocks.append(bl)
        diffs.append(_assemble([H.dim for H in P], [H.dim for H in O], bl, field))
    return FirstPage(max_degree, tuple(pspaces), tuple(ospaces), tuple(diffs), tuple(blocks))


def second_page_two_column(FP: FirstPage) -> list[int]:
    """dim H_n = dim coker ∂¹_{1,n} + dim ker ∂¹_{1,n-1}."""
    out = []
    for n, D in enumerate(FP.differentials):
        out.append(cokernel_dim(D) + (nullity(FP.differentials[n - 1]) if n > 0 else 0))
    return out


@dataclass(frozen=True)
class NerveReport:
    simplices: tuple          # index tuples with nonempty common intersection
    betti: tuple              # homology of the nerve
    checks: tuple             # (index tuple, betti numbers, homologically point-like)

    @property
    def good(self) -> bool:
        return all(ok for _, _, ok in self.checks)

    def complex(self) -> SimplicialComplex:
        vs = sorted(s[0] for s in self.simplices if len(s) == 1)
        return SimplicialComplex(vs, {i: 0 for i in vs}, self.simplices, check=False)

    def homology_estimate(self):
        """Nerve homology when every cover element is homologically a point, else ``None``."""
        return list(self.betti) if self.good else None


def nerve_row(cover, max_degree: int | None = None, field=QQ) -> NerveReport:
    """Nerve of a cover and a homological goodness check of every nonempty intersection.

    ``cover`` is a :class:`PullbackCover` or any list of subcomplexes of one
    ambient complex.
    """
    pieces = list(cover.pieces) if isinstance(cover, PullbackCover) else list(cover)
    top = max((U.dim for U in pieces), default=0) if max_degree is None else max_degree
    nerve: list[tuple] = []
    checks = []
    level = [((k,), U) for k, U in enumerate(pieces) if U.vertices]
    while level:
        nxt = []
        for idx, U in level:
            nerve.append(idx)
            b = betti_numbers(U, top, field) if U.vertices else []
            ok = bool(b) and b[0] == 1 and not any(b[1:])
            checks.append((idx, tuple(b), ok))
        for (i1, U1), (i2, _) in combinations(level, 2):
            if i1[:-1] == i2[:-1]:
                W = intersection(U1, pieces[i2[-1]])
                if W.vertices:
                    nxt.append((i1 + (i2[-1],), W))
        level = nxt
    report = NerveReport(tuple(nerve), (), tuple(checks))
    betti = tuple(betti_numbers(report.complex(), top, field)) if nerve else ()
    return NerveReport(tuple(nerve), betti, tuple(checks))


def spectral_betti(K, cover: IntervalCover, max_degree: int | None = None, field=QQ) -> list[int]:
    """Betti numbers of ``K`` read off the two-column second page of ``cover``."""
    C = prepare_cover(K, cover)
    top = C.origin.dim if max_degree is None else max_degree
    return second_page_two_column(first_page(build_cover(C, cover), max(top, 0), field))

