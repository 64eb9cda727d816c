"""Exact linear algebra over the rationals and prime fields.

Matrices are stored column-sparse: each column is a ``dict`` mapping a row
index to a nonzero field element.  Rational elements are kept as ``int``
whenever they are integral and only promoted to :class:`fractions.Fraction`
when a division does not come out even; this keeps boundary-matrix
reductions (entries almost always +-1) on the fast integer path.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class RationalField:
    """The field of rational numbers."""

    characteristic = 0
    zero = 0
    one = 1

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def coerce(self, x):
        if isinstance(x, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted; use Fraction or 'p/q' strings")
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x

    @staticmethod
    def norm(x):
        return x

    @staticmethod
    def div(a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in QQ")
        if isinstance(a, int) and isinstance(b, int):
            q, r = divmod(a, b)
            if r == 0:
                return q
            return Fraction(a, b)
        x = Fraction(a) / Fraction(b)
        return x.numerator if x.denominator == 1 else x

    def render(self, x) -> str:
        return str(x)


class PrimeField:
    """The prime field F_p; elements are ints in ``range(p)``."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"field characteristic must be prime, got {p!r}")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def coerce(self, x):
        if isinstance(x, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        x = Fraction(x)
        return (x.numerator * pow(x.denominator, -1, self.p)) % self.p

    def norm(self, x):
        return x % self.p

    def div(self, a, b):
        b %= self.p
        if b == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return (a * pow(b, -1, self.p)) % self.p

    def render(self, x) -> str:
        return str(x)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(value) -> RationalField | PrimeField:
    """Parse ``"QQ"``/``"rational"`` or a prime (``7``, ``"7"``, ``"GF(7)"``)."""
    if isinstance(value, (RationalField, PrimeField)):
        return value
    if value is None:
        return QQ
    s = str(value).strip()
    if s.lower() in ("qq", "q", "rational", "rationals"):
        return QQ
    if s.upper().startswith("GF(") and s.endswith(")"):
        s = s[3:-1]
    if s.lower().startswith("p="):
        s = s[2:]
    try:
        p = int(s)
    except ValueError:
        raise ValueError(f"unknown field {value!r}") from None
    return PrimeField(p)


class Matrix:
    """Immutable column-sparse matrix over an exact field.

    ``columns[j]`` is a dict ``{row: value}`` without zero entries.  Callers
    must not mutate the dicts they get back.
    """

    __slots__ = ("nrows", "ncols", "columns", "field")

    def __init__(self, nrows: int, ncols: int, columns=None, field=QQ):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimension")
        if columns is None:
            columns = tuple({} for _ in range(ncols))
        else:
            columns = tuple(columns)
        if len(columns) != ncols:
            raise ValueError(f"expected {ncols} columns, got {len(columns)}")
        for col in columns:
            for r in col:
                if not 0 <= r < nrows:
                    raise ValueError(f"row index {r} out of range for {nrows} rows")
        self.nrows = nrows
        self.ncols = ncols
        self.columns = columns
        self.field = field

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field=QQ, ncols: int | None = None) -> "Matrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, x in enumerate(row):
                x = field.coerce(x)
                if x != 0:
                    cols[j][i] = x
        return cls(nrows, ncols, cols, field)

    @classmethod
    def from_columns(cls, nrows: int, vectors: Iterable, field=QQ) -> "Matrix":
        """Columns given as dicts or dense sequences."""
        cols = []
        for v in vectors:
            if isinstance(v, dict):
                col = {r: field.coerce(x) for r, x in v.items()}
                col = {r: x for r, x in col.items() if x != 0}
            else:
                if len(v) != nrows:
                    raise ValueError("column length mismatch")
                col = {}
                for r, x in enumerate(v):
                    x = field.coerce(x)
                    if x != 0:
                        col[r] = x
            cols.append(col)
        return cls(nrows, len(cols), cols, field)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field=QQ) -> "Matrix":
        return cls(nrows, ncols, None, field)

    @classmethod
    def identity(cls, n: int, field=QQ) -> "Matrix":
        return cls(n, n, [{j: field.one} for j in range(n)], field)

    # inspection

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, key):
        i, j = key
        return self.columns[j].get(i, self.field.zero)

    def column(self, j: int) -> list:
        col = self.columns[j]
        return [col.get(i, self.field.zero) for i in range(self.nrows)]

    def to_rows(self) -> list[list]:
        rows = [[self.field.zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                rows[i][j] = x
        return rows

    def is_zero(self) -> bool:
        return all(not col for col in self.columns)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.columns, other.columns))

    def __hash__(self):
        return hash((self.shape, tuple(tuple(sorted(c.items())) for c in self.columns)))

    def __repr__(self):
        if self.nrows * self.ncols <= 64:
            return f"Matrix({self.to_rows()!r}, field={self.field!r})"
        nnz = sum(len(c) for c in self.columns)
        return f"Matrix({self.nrows}x{self.ncols}, nnz={nnz}, field={self.field!r})"

    # algebra

    def transpose(self) -> "Matrix":
        cols = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                cols[i][j] = x
        return Matrix(self.ncols, self.nrows, cols, self.field)

    @property
    def T(self):
        return self.transpose()

    def __neg__(self):
        F = self.field
        return Matrix(self.nrows, self.ncols, [{i: F.norm(-x) for i, x in c.items()} for c in self.columns], F)

    def __add__(self, other: "Matrix") -> "Matrix":
        _check_same_shape(self, other)
        F = self.field
        cols = []
        for a, b in zip(self.columns, other.columns):
            c = dict(a)
            for i, x in b.items():
                y = F.norm(c.get(i, 0) + x)
                if y == 0:
                    c.pop(i, None)
                else:
                    c[i] = y
            cols.append(c)
        return Matrix(self.nrows, self.ncols, cols, F)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        F = self.field
        c = F.coerce(c)
        if c == 0:
            return Matrix.zeros(self.nrows, self.ncols, F)
        return Matrix(self.nrows, self.ncols, [{i: F.norm(c * x) for i, x in col.items()} for col in self.columns], F)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix(self.nrows, other.ncols, [self.apply(col) for col in other.columns], self.field)

    def apply(self, vec) -> dict:
        """Multiply by a sparse (dict) or dense vector; returns a sparse dict."""
        F = self.field
        if not isinstance(vec, dict):
            if len(vec) != self.ncols:
                raise ValueError("vector length mismatch")
            vec = {j: F.coerce(x) for j, x in enumerate(vec) if x != 0}
        out: dict = {}
        for j, x in vec.items():
            for i, y in self.columns[j].items():
                out[i] = out.get(i, 0) + x * y
        return {i: v for i, v in ((i, F.norm(v)) for i, v in out.items()) if v != 0}

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in hstack")
        return Matrix(self.nrows, self.ncols + other.ncols, self.columns + other.columns, self.field)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch in vstack")
        off = self.nrows
        cols = []
        for a, b in zip(self.columns, other.columns):
            c = dict(a)
            c.update({i + off: x for i, x in b.items()})
            cols.append(c)
        return Matrix(self.nrows + other.nrows, self.ncols, cols, self.field)


def _check_same_shape(a: Matrix, b: Matrix):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def block_matrix(blocks: Sequence[Sequence[Matrix | None]], row_sizes, col_sizes, field=QQ) -> Matrix:
    """Assemble a matrix from a grid of blocks; ``None`` blocks are zero."""
    row_off = [0]
    for r in row_sizes:
        row_off.append(row_off[-1] + r)
    cols = []
    for bj, w in enumerate(col_sizes):
        for j in range(w):
            col = {}
            for bi, h in enumerate(row_sizes):
                blk = blocks[bi][bj]
                if blk is None:
                    continue
                if blk.shape != (h, w):
                    raise ValueError(f"block ({bi},{bj}) has shape {blk.shape}, expected {(h, w)}")
                for i, x in blk.columns[j].items():
                    col[row_off[bi] + i] = x
            cols.append(col)
    return Matrix(row_off[-1], len(cols), cols, field)


def _low(col: dict) -> int:
    return max(col) if col else -1


def echelon_columns(M: Matrix, track: bool = False):
    """Left-to-right column reduction with pivots at the lowest nonzero row.

    Returns ``(reduced, pivots, ops)`` where ``reduced[j]`` is the reduced
    column j, ``pivots`` maps a pivot row to the column owning it and
    ``ops[j]`` (if ``track``) expresses ``reduced[j]`` as a combination of
    the original columns.
    """
    F = M.field
    norm, div = F.norm, F.div
    reduced: list[dict] = []
    ops: list[dict] = []
    pivots: dict[int, int] = {}
    for j, col in enumerate(M.columns):
        v = dict(col)
        t = {j: F.one} if track else None
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
                if y == 0:
                    v.pop(i, None)
                else:
                    v[i] = y
            if track:
                for i, x in ops[k].items():
                    y = norm(t.get(i, 0) - c * x)
                    if y == 0:
                        t.pop(i, None)
                    else:
                        t[i] = y
        reduced.append(v)
        ops.append(t)
    return reduced, pivots, ops


def rank(M: Matrix) -> int:
    """Rank over the matrix's field."""
    # reduce along the shorter side
    if M.nrows < M.ncols:
        M = M.transpose()
    _, pivots, _ = echelon_columns(M)
    return len(pivots)


def kernel_basis(M: Matrix) -> Matrix:
    """Columns form a basis of the null space of ``M``."""
    reduced, _, ops = echelon_columns(M, track=True)
    vecs = [ops[j] for j, v in enumerate(reduced) if not v]
    return Matrix(M.ncols, len(vecs), vecs, M.field)


def nullity(M: Matrix) -> int:
    return M.ncols - rank(M)


def cokernel_dim(M: Matrix) -> int:
    return M.nrows - rank(M)


def solve(M: Matrix, b) -> list | None:
    """Return ``x`` with ``M x = b``, or ``None`` when the system is inconsistent.

    Free variables are set to zero (echelon particular solution).
    """
    F = M.field
    if isinstance(b, dict):
        bvec = {i: F.coerce(x) for i, x in b.items()}
        if any(not 0 <= i < M.nrows for i in bvec):
            raise ValueError("right-hand side index out of range")
    else:
        if len(b) != M.nrows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {M.nrows}")
        bvec = {i: F.coerce(x) for i, x in enumerate(b)}
    bvec = {i: x for i, x in bvec.items() if x != 0}
    reduced, pivots, ops = echelon_columns(M, track=True)
    x = _back_solve(F, reduced, pivots, ops, bvec)
    if x is None:
        return None
    return [x.get(j, F.zero) for j in range(M.ncols)]


def _back_solve(F, reduced, pivots, ops, v: dict) -> dict | None:
    norm, div = F.norm, F.div
    v = dict(v)
    x: dict = {}
    while v:
        low = max(v)
        k = pivots.get(low)
        if k is None:
            return None
        w = reduced[k]
        c = div(v[low], w[low])
        for i, y in w.items():
            z = norm(v.get(i, 0) - c * y)
            if z == 0:
                v.pop(i, None)
            else:
                v[i] = z
        for i, y in ops[k].items():
            z = norm(x.get(i, 0) + c * y)
            if z == 0:
                x.pop(i, None)
            else:
                x[i] = z
    return x


def inverse(M: Matrix) -> Matrix | None:
    """Inverse of a square matrix, or ``None`` if singular."""
    if M.nrows != M.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = M.nrows
    reduced, pivots, ops = echelon_columns(M, track=True)
    if len(pivots) < n:
        return None
    cols = [_back_solve(M.field, reduced, pivots, ops, {j: M.field.one}) for j in range(n)]
    return Matrix(n, n, cols, M.field)
