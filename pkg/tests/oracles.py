"""Independent oracles used by the test-suite (sympy-backed, no package linear algebra)."""

from __future__ import annotations

from itertools import combinations

import sympy


def sym(M):
    """Package Matrix -> sympy Matrix."""
    return sympy.Matrix(M.nrows, M.ncols, lambda i, j: sympy.Rational(M[i, j]))


def sym_rank(M) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    return sym(M).rank()


def _zz_rank(dims, maps, dirs, s, t) -> int:
    """Rank of lim -> colim on positions s..t: the number of bars containing [s, t]."""
    offs = [0]
    for i in range(s, t + 1):
        offs.append(offs[-1] + dims[i])
    total = offs[-1]
    if dims[s] == 0:
        return 0
    pos = lambda i, r: offs[i - s] + r
    cons_rows = []   # lim: A w_x - w_y = 0
    rels = []        # colim relations as columns
    for i in range(s, t):
        A = sympy.Matrix(maps[i].nrows, maps[i].ncols, lambda a, b: sympy.Rational(maps[i][a, b]))
        x, y = (i, i + 1) if dirs[i] == "f" else (i + 1, i)
        for a in range(dims[y]):
            row = [0] * total
            for b in range(dims[x]):
                row[pos(x, b)] += A[a, b]
            row[pos(y, a)] -= 1
            cons_rows.append(row)
        for b in range(dims[x]):
            col = [0] * total
            for a in range(dims[y]):
                col[pos(y, a)] += A[a, b]
            col[pos(x, b)] -= 1
            rels.append(col)
    if cons_rows:
        lim = sympy.Matrix(cons_rows).nullspace()
    else:
        lim = [sympy.eye(total)[:, j] for j in range(total)]
    proj = []
    for w in lim:
        col = [0] * total
        for r in range(dims[s]):
            col[pos(s, r)] = w[pos(s, r)]
        proj.append(col)
    R = sympy.Matrix.hstack(*[sympy.Matrix(c) for c in rels]) if rels else sympy.zeros(total, 0)
    P = sympy.Matrix.hstack(*[sympy.Matrix(c) for c in proj]) if proj else sympy.zeros(total, 0)
    rR = R.rank() if R.cols else 0
    both = sympy.Matrix.hstack(R, P)
    return (both.rank() if both.cols else 0) - rR


def zigzag_bars_oracle(Z) -> dict:
    """Bar multiplicities by inclusion-exclusion over generalized ranks."""
    n = len(Z.dims)
    rk = {}

    def r(s, t):
        if s < 0 or t >= n:
            return 0
        if (s, t) not in rk:
            rk[(s, t)] = _zz_rank(Z.dims, Z.maps, Z.directions, s, t)
        return rk[(s, t)]

    out = {}
    for s in range(n):
        for t in range(s, n):
            m = r(s, t) - r(s - 1, t) - r(s, t + 1) + r(s - 1, t + 1)
            if m:
                out[(s, t)] = m
    return out


def brute_force_interval_sums(dims, ranks):
    """All interval multisets matching ``dims`` and, per arrow, the number of bars spanning it."""
    n = len(dims)
    intervals = [(b, d) for b in range(n) for d in range(b, n)]
    sols = []

    def rec(k, remaining, chosen):
        if k == len(intervals):
            if all(x == 0 for x in remaining):
                span = [sum(m for (b, d), m in chosen.items() if b <= i and i + 1 <= d) for i in range(n - 1)]
                if span == list(ranks):
                    sols.append({iv: m for iv, m in chosen.items() if m})
            return
        b, d = intervals[k]
        cap = min(remaining[b:d + 1])
        for m in range(cap + 1):
            rem = list(remaining)
            for i in range(b, d + 1):
                rem[i] -= m
            chosen[(b, d)] = m
            rec(k + 1, rem, chosen)
        chosen.pop((b, d), None)

    rec(0, list(dims), {})
    return sols


def betti_oracle(K, max_degree=None):
    """Betti numbers from sympy ranks of boundary matrices built here from scratch."""
    top = K.dim if max_degree is None else max_degree
    simp = {q: K.simplices_of_dim(q) for q in range(-1, top + 2)}

    def bd(q):
        rows, cols = simp.get(q - 1, []), simp.get(q, [])
        if q <= 0 or not rows or not cols:
            return 0
        idx = {s: i for i, s in enumerate(rows)}
        M = sympy.zeros(len(rows), len(cols))
        for j, s in enumerate(cols):
            for i in range(len(s)):
                M[idx[s[:i] + s[i + 1:]], j] = (-1) ** i
        return M.rank()

    ranks = {q: bd(q) for q in range(0, top + 2)}
    return [len(simp.get(q, [])) - ranks[q] - ranks[q + 1] for q in range(top + 1)]
