"""Zigzag modules, their interval decomposition, and levelset zigzags.

A zigzag module of length m+1 has spaces V_0..V_m and one arrow between each
pair of neighbours; ``directions[i]`` is ``"f"`` for V_i -> V_{i+1} and
``"b"`` for V_i <- V_{i+1}.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complex import CutComplex, as_rational, fiber, interlevel
from .errors import CoverInvalid, MissingCriticalLevel, NotInvertible
from .homology import LinearMap, homology, induced_map
from .linalg import QQ, Matrix, echelon_columns, inverse, rank


@dataclass(frozen=True)
class ZigzagModule:
    dims: tuple
    maps: tuple
    directions: tuple
    degree: int | None = None
    labels: tuple = ()
    spaces: tuple = ()
    field: object = QQ

    def __post_init__(self):
        dims = tuple(self.dims)
        maps = tuple(self.maps)
        dirs = tuple(self.directions)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "directions", dirs)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "spaces", tuple(self.spaces))
        if len(maps) != max(len(dims) - 1, 0) or len(dirs) != len(maps):
            raise ValueError(f"{len(dims)} spaces need {max(len(dims) - 1, 0)} arrows, "
                             f"got {len(maps)} maps and {len(dirs)} directions")
        for i, (M, d) in enumerate(zip(maps, dirs)):
            if d == "f":
                want = (dims[i + 1], dims[i])
            elif d == "b":
                want = (dims[i], dims[i + 1])
            else:
                raise ValueError(f"direction must be 'f' or 'b', got {d!r}")
            if M.shape != want:
                raise ValueError(f"arrow {i} ({d}) has shape {M.shape}, expected {want}")

    @classmethod
    def from_maps(cls, spaces: Sequence, arrows: Sequence[LinearMap], directions, degree=None, labels=()):
        """Build from homology spaces and inclusion-induced maps."""
        field_ = spaces[0].field if spaces else QQ
        return cls(tuple(H.dim for H in spaces), tuple(a.matrix for a in arrows), tuple(directions),
                   degree, labels, tuple(spaces), field_)

    def __len__(self):
        return len(self.dims)

    def arrow_ranks(self) -> list[int]:
        return [rank(M) for M in self.maps]

    def restrict(self, lo: int, hi: int) -> "ZigzagModule":
        """Sub-zigzag on positions ``lo..hi`` inclusive."""
        if not 0 <= lo <= hi < len(self.dims):
            raise IndexError(f"bad range [{lo}, {hi}] for a module of length {len(self.dims)}")
        return ZigzagModule(self.dims[lo:hi + 1], self.maps[lo:hi], self.directions[lo:hi], self.degree,
                            self.labels[lo:hi + 1] if self.labels else (),
                            self.spaces[lo:hi + 1] if self.spaces else (), self.field)

    def interior(self) -> "ZigzagModule":
        """Drop the two end positions (the unbounded end-slabs of a levelset zigzag)."""
        if len(self.dims) < 3:
            return self
        return self.restrict(1, len(self.dims) - 2)

    def conjugate(self, changes: Sequence[Matrix]) -> "ZigzagModule":
        """Apply the basis change ``changes[i]`` (invertible) at every position."""
        invs = [inverse(P) for P in changes]
        if any(P is None for P in invs):
            raise ValueError("basis change is not invertible")
        maps = []
        for i, (M, d) in enumerate(zip(self.maps, self.directions)):
            if d == "f":
                maps.append(changes[i + 1] @ M @ invs[i])
            else:
                maps.append(changes[i] @ M @ invs[i + 1])
        return ZigzagModule(self.dims, maps, self.directions, self.degree, self.labels, (), self.field)


@dataclass(frozen=True)
class Barcode:
    """Interval decomposition; ``bars`` holds ``(birth, death, multiplicity)``."""

    bars: tuple
    degree: int | None = None
    length: int = 0

    def multiset(self) -> Counter:
        return Counter({(b, d): m for b, d, m in self.bars})

    def dims(self) -> list[int]:
        out = [0] * self.length
        for b, d, m in self.bars:
            for i in range(b, d + 1):
                out[i] += m
        return out

    def spanning(self, i: int, j: int) -> int:
        """Number of bars (with multiplicity) containing both ``i`` and ``j``."""
        lo, hi = min(i, j), max(i, j)
        return sum(m for b, d, m in self.bars if b <= lo and hi <= d)

    def records(self) -> list[dict]:
        return [{"degree": self.degree, "birth_index": b, "death_index": d, "multiplicity": m}
                for b, d, m in self.bars]

    def __len__(self):
        return sum(m for _, _, m in self.bars)


def _sort_key(birth: int, kind: str):
    # admissible basis changes add a smaller item to a larger one: bars born
    # through a backward arrow come first (youngest first), then the rest
    # (oldest first)
    return (0, -birth) if kind == "b" else (1, birth)


def _axpy(F, v: dict, c, w: dict):
    """v -= c * w in place."""
    norm = F.norm
    for i, x in w.items():
        y = norm(v.get(i, 0) - c * x)
        if y:
            v[i] = y
        else:
            v.pop(i, None)


def barcode(Z: ZigzagModule) -> Barcode:
    """Interval decomposition by a single left-to-right sweep.

    The sweep keeps, at position i, a basis of V_i in which every vector is
    the i-th component of an interval summand of the prefix module.  Forward
    arrows kill the summands whose (suitably reduced) images vanish; backward
    arrows kill the summands that cannot be moved into the image.
    """
    F = Z.field
    m = len(Z.dims)
    if m == 0:
        return Barcode((), Z.degree, 0)
    div = F.div
    items = [({r: F.one}, 0, "f") for r in range(Z.dims[0])]
    ended: list[tuple[int, int]] = []
    for i, (M, d) in enumerate(zip(Z.maps, Z.directions)):
        items.sort(key=lambda it: _sort_key(it[1], it[2]))
        nxt = []
        if d == "f":
            pivots: dict[int, dict] = {}
            for vec, birth, kind in items:
                img = M.apply(vec)
                while img:
                    low = max(img)
                    p = pivots.get(low)
                    if p is None:
                        break
                    _axpy(F, img, div(img[low], p[low]), p)
                if img:
                    pivots[max(img)] = img
                    nxt.append((img, birth, kind))
                else:
                    ended.append((birth, i))
            for r in range(Z.dims[i + 1]):
                if r not in pivots:
                    nxt.append(({r: F.one}, i + 1, "f"))
        else:
            reduced, gpiv, ops = echelon_columns(M, track=True)
            images = {low: (reduced[j], ops[j]) for low, j in gpiv.items()}
            dying: dict[int, tuple[dict, dict]] = {}
            for vec, birth, kind in items:
                r = dict(vec)
                lift: dict = {}
                while r:
                    low = max(r)
                    if low in images:
                        g, pre = images[low]
                        c = div(r[low], g[low])
                        _axpy(F, r, c, g)
                        _axpy(F, lift, -c, pre)
                    elif low in dying:
                        rk, lk = dying[low]
                        c = div(r[low], rk[low])
                        _axpy(F, r, c, rk)
                        _axpy(F, lift, c, lk)
                    else:
                        break
                if r:
                    dying[max(r)] = (r, lift)
                    ended.append((birth, i))
                else:
                    nxt.append((lift, birth, kind))
            for j, v in enumerate(reduced):
                if not v:
                    nxt.append((ops[j], i + 1, "b"))
        items = nxt
    ended.extend((birth, m - 1) for _, birth, _ in items)
    counts = Counter(ended)
    bars = tuple(sorted((b, e, k) for (b, e), k in counts.items()))
    return Barcode(bars, Z.degree, m)


def to_persistence(Z: ZigzagModule, stride: int = 2) -> ZigzagModule:
    """Rewrite a zigzag with invertible backward arrows as a forward module.

    Backward arrows are inverted and every ``stride`` consecutive arrows are
    composed, so the result lives on positions ``0, stride, 2*stride, ...``
    (for a fiber/slab zigzag: the maps β∘α⁻¹ between fibers).
    """
    if stride < 1 or len(Z.maps) % stride:
        raise ValueError(f"{len(Z.maps)} arrows cannot be grouped in runs of {stride}")
    fwd = []
    for i, (M, d) in enumerate(zip(Z.maps, Z.directions)):
        if d == "f":
            fwd.append(M)
            continue
        inv = inverse(M) if M.nrows == M.ncols else None
        if inv is None:
            raise NotInvertible(f"backward arrow {i} ({M.ncols}->{M.nrows}, rank {rank(M)}) is not invertible",
                                rank=rank(M), shape=M.shape, context={"arrow": i})
        fwd.append(inv)
    keep = list(range(0, len(Z.dims), stride))
    maps = []
    for k in range(len(keep) - 1):
        acc = fwd[keep[k]]
        for j in range(keep[k] + 1, keep[k + 1]):
            acc = fwd[j] @ acc
        maps.append(acc)
    return ZigzagModule(tuple(Z.dims[i] for i in keep), maps, ("f",) * len(maps), Z.degree,
                        tuple(Z.labels[i] for i in keep) if Z.labels else (),
                        tuple(Z.spaces[i] for i in keep) if Z.spaces else (), Z.field)


@dataclass(frozen=True)
class IntervalCover:
    """Sorted open intervals where only consecutive members meet.

    Closures are used as the model of each piece, so non-consecutive
    intervals must have disjoint closures.
    """

    intervals: tuple

    def __post_init__(self):
        ivs = tuple((as_rational(a), as_rational(b)) for a, b in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        if not ivs:
            raise CoverInvalid("empty cover", ivs)
        for a, b in ivs:
            if not a < b:
                raise CoverInvalid(f"interval ({a}, {b}) is empty", ivs)
        for k in range(len(ivs) - 1):
            (a0, b0), (a1, b1) = ivs[k], ivs[k + 1]
            if not (a0 < a1 and b0 < b1):
                raise CoverInvalid(f"intervals {k} and {k + 1} are not sorted or one contains the other", ivs)
            if not a1 < b0:
                raise CoverInvalid(f"consecutive intervals ({a0}, {b0}) and ({a1}, {b1}) do not overlap", ivs)
        for k in range(len(ivs) - 2):
            if not ivs[k][1] < ivs[k + 2][0]:
                raise CoverInvalid(f"non-consecutive intervals {k} and {k + 2} meet", ivs)

    def __len__(self):
        return len(self.intervals)

    def overlaps(self) -> list[tuple]:
        return [(self.intervals[k + 1][0], self.intervals[k][1]) for k in range(len(self.intervals) - 1)]

    def str_intervals(self) -> list[list[str]]:
        return [[str(a), str(b)] for a, b in self.intervals]


def critical_cover(levels: Sequence, margin=1) -> IntervalCover:
    """A cover with one overlap around each level (levels sorted, distinct).

    Each overlap extends a quarter of the gap to the neighbouring levels;
    the end intervals extend ``margin`` beyond the extreme levels.
    """
    cs = [as_rational(c) for c in levels]
    margin = as_rational(margin)
    if not cs:
        return IntervalCover(((Fraction(-1), Fraction(1)),))
    gaps = [b - a for a, b in zip(cs, cs[1:])]
    delta = []
    for k in range(len(cs)):
        near = [g for g in (gaps[k - 1] if k > 0 else None, gaps[k] if k < len(gaps) else None) if g is not None]
        delta.append(min(near) / 4 if near else margin / 2)
    ivs = [(cs[0] - margin, cs[0] + delta[0])]
    for k in range(1, len(cs)):
        ivs.append((cs[k - 1] - delta[k - 1], cs[k] + delta[k]))
    ivs.append((cs[-1] - delta[-1], cs[-1] + margin))
    return IntervalCover(tuple(ivs))


def cover_critical_levels(C: CutComplex, cover: IntervalCover) -> list[Fraction]:
    """The critical value inside each overlap, validating the arrangement."""
    crit = C.critical_values
    if len(cover) == 1:
        a, b = cover.intervals[0]
        if crit and not (a < crit[0] and crit[-1] < b):
            raise CoverInvalid("the single interval does not contain the range of the function", cover.intervals)
        return []
    out = []
    for k, (lo, hi) in enumerate(cover.overlaps()):
        inside = [c for c in crit if lo < c < hi]
        if len(inside) != 1:
            raise CoverInvalid(f"overlap {k} = ({lo}, {hi}) contains {len(inside)} critical values "
                               f"({', '.join(map(str, inside)) or 'none'}); exactly one is required",
                               cover.intervals)
        out.append(inside[0])
    stray = [c for c in crit if c not in out]
    if stray:
        raise CoverInvalid(f"critical values {', '.join(map(str, stray))} lie outside every overlap",
                           cover.intervals)
    return out


def levelset_zigzag(C: CutComplex, cover: IntervalCover, q: int, field=QQ) -> ZigzagModule:
    """Critical-value form of the levelset zigzag.

    Positions: 0 is the lower end-slab f^-1(-inf, c_1], odd positions are
    the fibers f^-1(c_i), interior even positions the slabs f^-1[c_i, c_{i+1}],
    and the last position the upper end-slab.  All arrows point from fibers
    into slabs.  :meth:`ZigzagModule.interior` drops the end-slabs.
    """
    if not C.complex.vertices:
        return ZigzagModule((), (), (), q, (), (), field)
    cs = cover_critical_levels(C, cover)
    if not cs:
        H = homology(C.complex, q, field)
        return ZigzagModule.from_maps([H], [], [], q, [("slab", None, None)])
    for c in cs:
        if c not in C.cut_levels:
            raise MissingCriticalLevel(c)
    hs = C.complex.heights.values()
    lo, hi = min(hs), max(hs)
    spaces, labels = [], []
    spaces.append(homology(interlevel(C, lo, cs[0]), q, field))
    labels.append(("slab", None, cs[0]))
    for k, c in enumerate(cs):
        spaces.append(homology(fiber(C, c), q, field))
        labels.append(("fiber", c))
        if k + 1 < len(cs):
            spaces.append(homology(interlevel(C, c, cs[k + 1]), q, field))
            labels.append(("slab", c, cs[k + 1]))
    spaces.append(homology(interlevel(C, cs[-1], hi), q, field))
    labels.append(("slab", cs[-1], None))
    arrows, dirs = [], []
    for i in range(len(spaces) - 1):
        if i % 2 == 0:
            arrows.append(induced_map(spaces[i + 1], spaces[i]))
            dirs.append("b")
        else:
            arrows.append(induced_map(spaces[i], spaces[i + 1]))
            dirs.append("f")
    return ZigzagModule.from_maps(spaces, arrows, dirs, q, labels)
