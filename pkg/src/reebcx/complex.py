"""Finite simplicial complexes carrying a PL height function.

Simplices are tuples of vertex ids sorted by the complex's vertex order (the
position of the vertex in ``SimplicialComplex.vertices``).  Vertex ids may be
any hashable; they are never compared with each other, only looked up.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import FaceClosureError, InvertedInterval, LevelNotCut, NotAFiltration


def as_rational(x) -> Fraction:
    """Exact conversion of ints, Fractions and ``"p/q"`` / decimal strings."""
    if isinstance(x, bool):
        raise TypeError("booleans are not heights")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError(f"floating point height {x!r} rejected; pass a Fraction or a string")
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


class _Vertex(tuple):
    # tuple subclass with a cached hash: these ids nest (a cut vertex may sit
    # on an edge between cut vertices) and are hashed constantly

    def __hash__(self):
        try:
            return self._h
        except AttributeError:
            self._h = tuple.__hash__(self)
            return self._h

    def __eq__(self, other):
        return type(self) is type(other) and tuple.__eq__(self, other)

    def __ne__(self, other):
        return not self == other

    def __reduce__(self):
        return (type(self), tuple(self))


class CutVertex(_Vertex):
    """Vertex inserted on edge ``(lo, hi)`` where the edge crosses ``level``."""

    __slots__ = ()

    def __new__(cls, lo: Hashable, hi: Hashable, level: Fraction):
        return tuple.__new__(cls, (lo, hi, level))

    lo = property(lambda self: self[0])
    hi = property(lambda self: self[1])
    level = property(lambda self: self[2])

    def __repr__(self):
        return f"CutVertex({self[0]!r}, {self[1]!r}, {self[2]!r})"

    def __str__(self):
        return f"({self[0]}~{self[1]}@{self[2]})"


class TelescopeVertex(_Vertex):
    __slots__ = ()

    def __new__(cls, vertex: Hashable, copy: int):
        return tuple.__new__(cls, (vertex, copy))

    vertex = property(lambda self: self[0])
    copy = property(lambda self: self[1])

    def __repr__(self):
        return f"TelescopeVertex({self[0]!r}, {self[1]!r})"

    def __str__(self):
        return f"{self[0]}#{self[1]}"


class SimplicialComplex:
    """Abstract simplicial complex with rational vertex heights."""

    __slots__ = ("vertices", "heights", "simplices", "order", "_by_dim")

    def __init__(self, vertices: Sequence, heights: Mapping, simplices: Iterable, check: bool = True):
        vertices = tuple(vertices)
        order = {v: i for i, v in enumerate(vertices)}
        if len(order) != len(vertices):
            raise FaceClosureError("duplicate vertex ids")
        hs = {}
        for v in vertices:
            if v not in heights:
                raise FaceClosureError(f"vertex {v!r} has no height")
            hs[v] = as_rational(heights[v])
        simps = set()
        for s in simplices:
            try:
                t = tuple(sorted(s, key=order.__getitem__))
            except KeyError as exc:
                raise FaceClosureError(f"simplex {tuple(s)!r} uses unknown vertex {exc.args[0]!r}") from None
            if len(set(t)) != len(t) or not t:
                raise FaceClosureError(f"simplex {tuple(s)!r} is empty or repeats a vertex")
            simps.add(t)
        for v in vertices:
            simps.add((v,))
        self.vertices = vertices
        self.order = order
        self.heights = hs
        self.simplices = frozenset(simps)
        by_dim: dict[int, list] = {}
        for s in simps:
            by_dim.setdefault(len(s) - 1, []).append(s)
        for q in by_dim:
            by_dim[q].sort(key=lambda s: tuple(order[v] for v in s))
        self._by_dim = by_dim
        if check:
            for s in simps:
                if len(s) > 1:
                    for i in range(len(s)):
                        face = s[:i] + s[i + 1:]
                        if face not in simps:
                            raise FaceClosureError(f"face {face!r} of {s!r} is missing")

    @classmethod
    def from_maximal(cls, maximal: Iterable, heights: Mapping | None = None, vertices: Sequence | None = None):
        """Build the face closure of ``maximal``.

        Without ``heights`` every vertex sits at height 0.  Without
        ``vertices`` the order is that of ``heights`` (if given) followed by
        first appearance in ``maximal``.
        """
        maximal = [tuple(s) for s in maximal]
        if vertices is None:
            seen = dict.fromkeys(heights or ())
            for s in maximal:
                for v in s:
                    seen.setdefault(v, None)
            vertices = list(seen)
        if heights is None:
            heights = {v: 0 for v in vertices}
        for s in maximal:
            for v in s:
                if v not in heights:
                    raise FaceClosureError(f"vertex {v!r} in simplex {s!r} has no height")
        order = {v: i for i, v in enumerate(vertices)}
        simps = set()
        for s in maximal:
            if len(set(s)) != len(s):
                raise FaceClosureError(f"simplex {s!r} repeats a vertex")
            try:
                t = tuple(sorted(s, key=order.__getitem__))
            except KeyError as exc:
                raise FaceClosureError(f"simplex {s!r} uses unlisted vertex {exc.args[0]!r}") from None
            for k in range(1, len(t) + 1):
                simps.update(combinations(t, k))
        return cls(vertices, heights, simps, check=False)

    # inspection

    @property
    def dim(self) -> int:
        return max(self._by_dim) if self._by_dim else -1

    def simplices_of_dim(self, q: int) -> list:
        return list(self._by_dim.get(q, ()))

    def count(self, q: int) -> int:
        return len(self._by_dim.get(q, ()))

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * len(s) for q, s in self._by_dim.items())

    def height_levels(self) -> list[Fraction]:
        return sorted(set(self.heights.values()))

    def maximal_simplices(self) -> list:
        simps = self.simplices
        out = []
        for q in sorted(self._by_dim, reverse=True):
            for s in self._by_dim[q]:
                sset = set(s)
                if not any(len(t) > len(s) and sset.issubset(t) for t in out):
                    out.append(s)
        return out

    def __len__(self):
        return len(self.simplices)

    def __contains__(self, simplex):
        try:
            return tuple(sorted(simplex, key=self.order.__getitem__)) in self.simplices
        except KeyError:
            return False

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (self.vertices == other.vertices and self.heights == other.heights
                and self.simplices == other.simplices)

    def __hash__(self):
        return hash((self.vertices, self.simplices))

    def __repr__(self):
        counts = ", ".join(str(self.count(q)) for q in range(self.dim + 1))
        return f"SimplicialComplex(f-vector=({counts}))"

    # derived complexes

    def normalize(self, simplex) -> tuple:
        return tuple(sorted(simplex, key=self.order.__getitem__))

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        if any(v not in other.order for v in self.vertices):
            return False
        return all(other.normalize(s) in other.simplices for s in self.simplices)

    def full_subcomplex(self, keep) -> "SimplicialComplex":
        """Full subcomplex on the vertices in ``keep`` (a set or a predicate)."""
        if callable(keep):
            vs = [v for v in self.vertices if keep(v)]
        else:
            keep = set(keep)
            vs = [v for v in self.vertices if v in keep]
        vset = set(vs)
        simps = [s for s in self.simplices if all(v in vset for v in s)]
        return SimplicialComplex(vs, {v: self.heights[v] for v in vs}, simps, check=False)

    def with_heights(self, heights: Mapping) -> "SimplicialComplex":
        return SimplicialComplex(self.vertices, heights, self.simplices, check=False)

    def relabel(self, mapping: Mapping, order: Sequence | None = None) -> "SimplicialComplex":
        """Rename vertices via ``mapping``; ``order`` optionally gives the new vertex order."""
        new_vs = list(order) if order is not None else [mapping[v] for v in self.vertices]
        hs = {mapping[v]: h for v, h in self.heights.items()}
        simps = [tuple(mapping[v] for v in s) for s in self.simplices]
        return SimplicialComplex(new_vs, hs, simps, check=False)

    def disjoint_union(self, other: "SimplicialComplex", tags=(0, 1)) -> "SimplicialComplex":
        a, b = tags
        ma = {v: (a, v) for v in self.vertices}
        mb = {v: (b, v) for v in other.vertices}
        vs = [ma[v] for v in self.vertices] + [mb[v] for v in other.vertices]
        hs = {ma[v]: h for v, h in self.heights.items()}
        hs.update({mb[v]: h for v, h in other.heights.items()})
        simps = [tuple(ma[v] for v in s) for s in self.simplices]
        simps += [tuple(mb[v] for v in s) for s in other.simplices]
        return SimplicialComplex(vs, hs, simps, check=False)


EMPTY = SimplicialComplex((), {}, ())


@dataclass(frozen=True)
class CutComplex:
    """Subdivision of ``origin`` in which every simplex lies on one side of each cut level."""

    complex: SimplicialComplex
    origin: SimplicialComplex
    cut_levels: tuple
    provenance: Mapping = field(default_factory=dict)

    @property
    def critical_values(self) -> list[Fraction]:
        return self.origin.height_levels()

    def has_level(self, t) -> bool:
        return as_rational(t) in self.cut_levels


def _check_levels(levels) -> list[Fraction]:
    out = [as_rational(t) for t in levels]
    for a, b in zip(out, out[1:]):
        if not a < b:
            raise ValueError(f"cut levels must be sorted and distinct, got {a} before {b}")
    return out


def _cut_once(K: SimplicialComplex, t: Fraction):
    h = K.heights
    order = K.order

    def side(v):
        x = h[v]
        return -1 if x < t else (1 if x > t else 0)

    new_vertex: dict[tuple, CutVertex] = {}
    for e in K.simplices_of_dim(1):
        u, v = e
        su, sv = side(u), side(v)
        if su * sv < 0:
            new_vertex[e] = CutVertex(u, v, t)
    if not new_vertex:
        return K, {}

    new_vs = list(K.vertices) + list(new_vertex.values())
    gorder = {v: i for i, v in enumerate(new_vs)}
    heights = dict(h)
    for w in new_vertex.values():
        heights[w] = t

    def nv(b, a):
        e = (b, a) if order[b] < order[a] else (a, b)
        return new_vertex[e]

    def parts(tau):
        B = [v for v in tau if side(v) < 0]
        O = [v for v in tau if side(v) == 0]
        A = [v for v in tau if side(v) > 0]
        return B, O, A

    def cell_vertices(tau, kind):
        B, O, A = parts(tau)
        cut = [nv(b, a) for b in B for a in A]
        if kind == "le":
            return B + O + cut
        if kind == "ge":
            return A + O + cut
        return O + cut

    memo: dict = {}

    def triangulate(tau, kind) -> list[frozenset]:
        # pulling triangulation of the cell tau ∩ {f <= t} / {f >= t} / {f = t};
        # tau must have vertices strictly on both sides
        key = (tau, kind)
        if key in memo:
            return memo[key]
        verts = cell_vertices(tau, kind)
        dim = len(tau) - (2 if kind == "eq" else 1)
        if len(verts) == dim + 1:
            memo[key] = [frozenset(verts)]
            return memo[key]
        apex = min(verts, key=gorder.__getitem__)
        out = []
        for fac in _facets(tau, kind):
            if fac[0] == "simplex":
                fverts, pieces = fac[1], [fac[1]]
            else:
                fverts = frozenset(cell_vertices(fac[1], fac[2]))
                pieces = None
            if apex in fverts:
                continue
            if pieces is None:
                pieces = triangulate(fac[1], fac[2])
            out.extend(p | {apex} for p in pieces)
        memo[key] = out
        return out

    def _facets(tau, kind):
        B, O, A = parts(tau)
        if kind == "eq":
            for i in range(len(tau)):
                rest = tau[:i] + tau[i + 1:]
                rb, _, ra = parts(rest)
                if rb and ra:
                    yield ("cell", rest, "eq")
            return
        same = (lambda s: s < 0) if kind == "le" else (lambda s: s > 0)
        other = (lambda s: s > 0) if kind == "le" else (lambda s: s < 0)
        for i in range(len(tau)):
            rest = tau[:i] + tau[i + 1:]
            sides = [side(v) for v in rest]
            if not any(same(s) for s in sides):
                continue
            if any(other(s) for s in sides):
                yield ("cell", rest, kind)
            else:
                yield ("simplex", frozenset(rest))
        yield ("cell", tau, "eq")

    tops: set = set()
    for s in K.simplices:
        sides = [side(v) for v in s]
        if min(sides) < 0 < max(sides):
            for kind in ("le", "ge"):
                tops.update(triangulate(s, kind))
        else:
            tops.add(frozenset(s))

    simps = set()
    for s in tops:
        t_ = tuple(sorted(s, key=gorder.__getitem__))
        for k in range(1, len(t_) + 1):
            simps.update(combinations(t_, k))
    out = SimplicialComplex(new_vs, heights, simps, check=False)
    prov = {w: (e, t) for e, w in new_vertex.items()}
    return out, prov


def cut_at_levels(K, levels: Sequence = ()) -> CutComplex:
    """Subdivide ``K`` so that every simplex lies weakly on one side of each level.

    Levels are processed in increasing order.  Each cell ``σ ∩ {f <= t}`` and
    ``σ ∩ {f >= t}`` is triangulated by pulling from its least vertex in the
    global vertex order; new vertices are appended after the existing ones.
    ``K`` may itself be a :class:`CutComplex`, in which case the cuts are added.
    """
    levels = _check_levels(levels)
    if isinstance(K, CutComplex):
        origin, base, prev, prov = K.origin, K.complex, set(K.cut_levels), dict(K.provenance)
    else:
        origin, base, prev, prov = K, K, set(), {}
    cx = base
    for t in levels:
        if t in prev:
            continue
        cx, p = _cut_once(cx, t)
        prov.update(p)
    return CutComplex(cx, origin, tuple(sorted(prev | set(levels))), prov)


def _known_level(C: CutComplex, t: Fraction) -> bool:
    return t in C.cut_levels or t in set(C.origin.heights.values())


def fiber(C: CutComplex, t) -> SimplicialComplex:
    """The level set ``f^-1(t)`` as the full subcomplex on vertices of height ``t``."""
    t = as_rational(t)
    if not _known_level(C, t):
        raise LevelNotCut(t, C.cut_levels)
    h = C.complex.heights
    return C.complex.full_subcomplex(lambda v: h[v] == t)


def interlevel(C: CutComplex, a, b) -> SimplicialComplex:
    """The slab ``f^-1[a, b]`` as a full subcomplex.

    Endpoints must be cut levels, vertex heights, or lie at/beyond the range
    of the height function.
    """
    a, b = as_rational(a), as_rational(b)
    if a > b:
        raise InvertedInterval(a, b)
    hs = C.complex.heights.values()
    lo, hi = (min(hs), max(hs)) if hs else (Fraction(0), Fraction(0))
    for t in (a, b):
        if not (_known_level(C, t) or t <= lo or t >= hi):
            raise LevelNotCut(t, C.cut_levels)
    h = C.complex.heights
    return C.complex.full_subcomplex(lambda v: a <= h[v] <= b)


@dataclass(frozen=True)
class Filtration:
    """Nested complexes ``X_0 ⊆ ... ⊆ X_n`` indexed by increasing rationals.

    Stages are re-ordered to follow the vertex order of the last stage, so
    that all stages (and the telescope built from them) orient simplices
    consistently.
    """

    stages: tuple
    indices: tuple

    def __post_init__(self):
        stages = tuple(self.stages)
        indices = tuple(as_rational(i) for i in self.indices)
        if not stages:
            raise NotAFiltration("a filtration needs at least one stage")
        if len(stages) != len(indices):
            raise NotAFiltration(f"{len(stages)} stages but {len(indices)} indices")
        for k, (a, b) in enumerate(zip(indices, indices[1:])):
            if not a < b:
                raise NotAFiltration(f"indices must increase strictly: i_{k}={a}, i_{k + 1}={b}")
        last = stages[-1]
        for k in range(len(stages) - 1):
            if not stages[k].is_subcomplex_of(stages[k + 1]):
                bad = next((s for s in stages[k].simplices if s not in stages[k + 1]), None)
                raise NotAFiltration(f"stage {k} is not contained in stage {k + 1} (e.g. simplex {bad})")
        gorder = last.order
        normed = []
        for X in stages:
            vs = sorted(X.vertices, key=gorder.__getitem__)
            normed.append(SimplicialComplex(vs, X.heights, X.simplices, check=False))
        object.__setattr__(self, "stages", tuple(normed))
        object.__setattr__(self, "indices", indices)

    def __len__(self):
        return len(self.stages)


def telescope(F: Filtration) -> SimplicialComplex:
    """Triangulated mapping telescope of ``F`` with its height function.

    Copy ``k`` of stage ``k`` sits at height ``i_k``; the prism
    ``X_k × [i_k, i_{k+1}]`` uses the staircase triangulation and its top is
    glued to copy ``k+1`` by vertex identification.
    """
    if not isinstance(F, Filtration):
        raise NotAFiltration("telescope expects a Filtration")
    n = len(F.stages) - 1
    vertices = []
    heights = {}
    for k, X in enumerate(F.stages):
        for v in X.vertices:
            w = TelescopeVertex(v, k)
            vertices.append(w)
            heights[w] = F.indices[k]
    simps = set()
    for k, X in enumerate(F.stages):
        for s in X.simplices:
            simps.add(tuple(TelescopeVertex(v, k) for v in s))
        if k == n:
            continue
        for s in X.simplices:
            for j in range(len(s)):
                top = [TelescopeVertex(v, k) for v in s[: j + 1]] + [TelescopeVertex(v, k + 1) for v in s[j:]]
                for m in range(1, len(top) + 1):
                    simps.update(combinations(top, m))
    return SimplicialComplex(vertices, heights, simps, check=False)
