"""Simplicial homology over a field, with cycle bases and induced maps."""

from __future__ import annotations

from dataclasses import dataclass

from .complex import SimplicialComplex
from .errors import InternalInconsistency, NotASubcomplex, NotInvertible
from .linalg import QQ, Matrix, inverse, rank


def boundary_matrix(K: SimplicialComplex, q: int, field=QQ) -> Matrix:
    """Matrix of ∂_q : C_q -> C_{q-1} in the sorted simplex bases of ``K``."""
    cols_s = K.simplices_of_dim(q)
    rows_s = K.simplices_of_dim(q - 1)
    if q <= 0 or not cols_s:
        return Matrix.zeros(len(rows_s), len(cols_s), field)
    index = {s: i for i, s in enumerate(rows_s)}
    one, mone = field.coerce(1), field.coerce(-1)
    cols = []
    for s in cols_s:
        col = {}
        for i in range(len(s)):
            col[index[s[:i] + s[i + 1:]]] = one if i % 2 == 0 else mone
        cols.append(col)
    return Matrix(len(rows_s), len(cols_s), cols, field)


def _reduce(M: Matrix, skip=frozenset(), track=False):
    # column reduction with lowest-row pivots; columns listed in ``skip`` are
    # known to reduce to zero (clearing) and are left empty
    F = M.field
    norm, div, one = F.norm, F.div, F.one
    reduced, ops = [], []
    pivots: dict[int, int] = {}
    for j, col in enumerate(M.columns):
        if j in skip:
            reduced.append({})
            ops.append(None)
            continue
        v = dict(col)
        t = {j: one} if track else None
        while v:
            low = max(v)
            k = pivots.get(low)
            if k is None:
                pivots[low] = j
                break
            w = reduced[k]
            c = div(v[low], w[low])
            for i, x in w.items():
                y = norm(v.get(i, 0) - c * x)
                if y:
                    v[i] = y
                else:
                    del v[i]
            if track:
                for i, x in ops[k].items():
                    y = norm(t.get(i, 0) - c * x)
                    if y:
                        t[i] = y
                    else:
                        t.pop(i, None)
        reduced.append(v)
        ops.append(t)
    return reduced, pivots, ops


class HomologySpace:
    """H_q(K) with a fixed basis of cycle representatives.

    The basis extends an echelon basis of the boundaries B_q to one of the
    cycles Z_q by greedy pivoting in simplex order, so it is reproducible.
    """

    def __init__(self, K: SimplicialComplex, q: int, field=QQ):
        self.complex = K
        self.degree = q
        self.field = field
        self.simplices = K.simplices_of_dim(q) if q >= 0 else []
        self.index = {s: i for i, s in enumerate(self.simplices)}
        self._pivots: dict[int, tuple[dict, dict]] = {}
        basis: list[dict] = []
        if q >= 0 and self.simplices:
            up = boundary_matrix(K, q + 1, field)
            red_up, piv_up, _ = _reduce(up)
            for low, j in piv_up.items():
                self._pivots[low] = (red_up[j], {})
            down = boundary_matrix(K, q, field)
            red, _, ops = _reduce(down, skip=frozenset(piv_up), track=True)
            for j, v in enumerate(red):
                if not v and j not in piv_up:
                    h = len(basis)
                    basis.append(ops[j])
                    self._pivots[j] = (ops[j], {h: field.one})
        self.basis = tuple(basis)
        self.dim = len(basis)

    def __repr__(self):
        return f"HomologySpace(q={self.degree}, dim={self.dim}, field={self.field!r})"

    def coordinates(self, cycle: dict) -> dict:
        """Coordinates of the class of ``cycle`` (keyed by simplex index) in the basis."""
        F = self.field
        norm, div = F.norm, F.div
        v = {i: x for i, x in cycle.items() if x}
        out: dict = {}
        while v:
            low = max(v)
            entry = self._pivots.get(low)
            if entry is None:
                raise InternalInconsistency(
                    f"chain is not a cycle in degree {self.degree}: stuck at simplex {self.simplices[low]}")
            w, hc = entry
            c = div(v[low], w[low])
            for i, x in w.items():
                y = norm(v.get(i, 0) - c * x)
                if y:
                    v[i] = y
                else:
                    del v[i]
            for h, x in hc.items():
                y = norm(out.get(h, 0) + c * x)
                if y:
                    out[h] = y
                else:
                    out.pop(h, None)
        return out

    def representative(self, h: int) -> dict:
        """Basis cycle ``h`` as ``{simplex: coefficient}``."""
        return {self.simplices[i]: x for i, x in self.basis[h].items()}


def homology(K: SimplicialComplex, q: int, field=QQ) -> HomologySpace:
    return HomologySpace(K, q, field)


def betti_numbers(K: SimplicialComplex, max_degree: int | None = None, field=QQ) -> list[int]:
    """Betti numbers in degrees ``0..max_degree`` (default: the dimension of ``K``)."""
    top = K.dim if max_degree is None else max_degree
    return [homology(K, q, field).dim for q in range(top + 1)]


def betti_by_rank(K: SimplicialComplex, max_degree: int | None = None, field=QQ) -> list[int]:
    """Betti numbers from boundary-matrix ranks alone (no cycle bases)."""
    top = K.dim if max_degree is None else max_degree
    ranks = {q: rank(boundary_matrix(K, q, field)) for q in range(0, top + 2)}
    return [K.count(q) - ranks[q] - ranks[q + 1] for q in range(top + 1)]


@dataclass(frozen=True)
class LinearMap:
    source: HomologySpace
    target: HomologySpace
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match "
                             f"{self.target.dim}x{self.source.dim}")

    @property
    def rank(self) -> int:
        return rank(self.matrix)

    def __repr__(self):
        return f"LinearMap({self.source.dim}->{self.target.dim}, rank={self.rank})"


def _permutation_sign(seq, key) -> int:
    # parity by counting inversions; simplices are tiny
    ks = [key[v] for v in seq]
    inv = sum(1 for i in range(len(ks)) for j in range(i + 1, len(ks)) if ks[i] > ks[j])
    return -1 if inv % 2 else 1


def induced_map(source: HomologySpace, target: HomologySpace) -> LinearMap:
    """Map H_q(A) -> H_q(B) induced by the inclusion of ``A`` into ``B``."""
    if source.degree != target.degree:
        raise ValueError(f"degree mismatch: {source.degree} vs {target.degree}")
    if source.field != target.field:
        raise ValueError("field mismatch")
    A, B = source.complex, target.complex
    F = source.field
    border = B.order
    cache: dict[int, tuple[int, int]] = {}

    def translate(i):
        if i not in cache:
            s = source.simplices[i]
            if any(v not in border for v in s):
                raise NotASubcomplex(f"simplex {s} is not in the target complex")
            t = tuple(sorted(s, key=border.__getitem__))
            j = target.index.get(t)
            if j is None:
                raise NotASubcomplex(f"simplex {s} is not in the target complex")
            cache[i] = (j, _permutation_sign(s, border))
        return cache[i]

    if A is not B and not A.is_subcomplex_of(B):
        raise NotASubcomplex("source complex is not a subcomplex of the target")
    cols = []
    for z in source.basis:
        w: dict = {}
        for i, x in z.items():
            j, sgn = translate(i)
            w[j] = F.norm(w.get(j, 0) + (x if sgn > 0 else -x))
        cols.append(target.coordinates(w))
    return LinearMap(source, target, Matrix(target.dim, source.dim, cols, F))


def identity_map(H: HomologySpace) -> LinearMap:
    return LinearMap(H, H, Matrix.identity(H.dim, H.field))


def compose(g: LinearMap, f: LinearMap) -> LinearMap:
    """``g ∘ f``."""
    if f.target is not g.source and (f.target.dim != g.source.dim
                                     or f.target.complex != g.source.complex
                                     or f.target.degree != g.source.degree):
        raise ValueError("compose: target of f is not the source of g")
    return LinearMap(f.source, g.target, g.matrix @ f.matrix)


def invert(m: LinearMap, context=None) -> LinearMap:
    M = m.matrix
    if M.nrows != M.ncols:
        raise NotInvertible(f"map {M.ncols}->{M.nrows} is not square", rank=rank(M), shape=M.shape,
                            context=context)
    inv = inverse(M)
    if inv is None:
        raise NotInvertible(f"map of size {M.nrows} has rank {rank(M)}", rank=rank(M), shape=M.shape,
                            context=context)
    return LinearMap(m.target, m.source, inv)
