"""Test complexes, height functions and random generators."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .complex import Filtration, SimplicialComplex


def point() -> SimplicialComplex:
    return SimplicialComplex.from_maximal([(0,)], {0: 0})


def circle() -> SimplicialComplex:
    """Boundary of a triangle; min 0 at one vertex, the opposite edge at height 1."""
    return SimplicialComplex.from_maximal([(0, 1), (1, 2), (0, 2)], {0: 0, 1: 1, 2: 1})


def polygon(n: int, heights=None) -> SimplicialComplex:
    """``n``-cycle; default heights make vertex 0 the minimum and climb both ways."""
    if n < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    if heights is None:
        heights = {i: min(i, n - i) for i in range(n)}
    return SimplicialComplex.from_maximal([(i, (i + 1) % n) for i in range(n)], heights,
                                          vertices=list(range(n)))


def octahedron() -> SimplicialComplex:
    """Suspension of a square: poles at ±1, equator at height 0."""
    eq = ["e0", "e1", "e2", "e3"]
    heights = {"s": -1, "n": 1, **{e: 0 for e in eq}}
    tris = []
    for i in range(4):
        a, b = eq[i], eq[(i + 1) % 4]
        tris += [("s", a, b), ("n", a, b)]
    return SimplicialComplex.from_maximal(tris, heights, vertices=["s", *eq, "n"])


def torus(n: int = 3, m: int = 3, heights=None) -> SimplicialComplex:
    """``n × m`` grid torus.  Default heights ``i + j/(m+1)`` are all distinct."""
    vs = [(i, j) for i in range(n) for j in range(m)]
    if heights is None:
        heights = {(i, j): Fraction(i) + Fraction(j, m + 1) for i, j in vs}
    tris = []
    for i in range(n):
        for j in range(m):
            a, b = (i, j), ((i + 1) % n, j)
            c, d = (i, (j + 1) % m), ((i + 1) % n, (j + 1) % m)
            tris += [(a, b, d), (a, c, d)]
    return SimplicialComplex.from_maximal(tris, heights, vertices=vs)


def pinched_cylinder(n: int = 8) -> SimplicialComplex:
    """Cylinder over an ``n``-cycle with each boundary circle pinched to a figure eight.

    Projection to the axis is the height.  The bottom circle identifies
    ``b0 ~ b(n/2)`` and the top circle ``t(n/4) ~ t(3n/4)``, so the pinch
    points do not lie on a common vertical segment.
    """
    if n < 8 or n % 4:
        raise ValueError("need n >= 8 divisible by 4")
    h2, q1, q3 = n // 2, n // 4, 3 * n // 4

    def b(i):
        i %= n
        return f"b{0 if i == h2 else i}"

    def t(i):
        i %= n
        return f"t{q1 if i == q3 else i}"

    tris = []
    for i in range(n):
        tris += [(b(i), b(i + 1), t(i + 1)), (b(i), t(i), t(i + 1))]
    heights = {b(i): 0 for i in range(n)} | {t(i): 1 for i in range(n)}
    order = [b(i) for i in range(n) if i != h2] + [t(i) for i in range(n) if i != q3]
    return SimplicialComplex.from_maximal(tris, heights, vertices=order)


def named_complexes() -> dict[str, SimplicialComplex]:
    return {
        "pinched_cylinder": pinched_cylinder(),
        "circle": circle(),
        "hexagon": polygon(6),
        "sphere": octahedron(),
        "torus": torus(),
    }


# random generators


def random_complex(rng: random.Random, n_vertices: int = 12, n_triangles: int = 14,
                   n_edges: int = 4, height_range: int = 4, denominators=(1, 2)) -> SimplicialComplex:
    """Random 2-complex: triangles and loose edges on ``n_vertices`` vertices.

    Heights are drawn from a small rational grid so that ties (several
    vertices on one level) are common.
    """
    vs = list(range(n_vertices))
    pool_t = list(combinations(vs, 3))
    pool_e = list(combinations(vs, 2))
    maximal = rng.sample(pool_t, min(n_triangles, len(pool_t)))
    maximal += rng.sample(pool_e, min(n_edges, len(pool_e)))
    used = {v for s in maximal for v in s}
    maximal += [(v,) for v in vs if v not in used and rng.random() < 0.3]
    heights = {v: Fraction(rng.randint(0, height_range * d), d)
               for v in vs for d in [rng.choice(denominators)]}
    keep = [v for v in vs if any(v in s for s in maximal)] or [0]
    order = keep[:]
    rng.shuffle(order)
    if not maximal:
        maximal = [(keep[0],)]
    return SimplicialComplex.from_maximal(maximal, {v: heights[v] for v in keep}, vertices=order)


def random_filtration(rng: random.Random, n_vertices: int = 10, n_triangles: int = 10,
                      n_edges: int = 4, max_stages: int = 5) -> Filtration:
    """Random nested chain obtained by cutting a face-respecting simplex order into stages."""
    K = random_complex(rng, n_vertices, n_triangles, n_edges)
    simps = sorted(K.simplices, key=lambda s: (len(s), rng.random()))
    # random face-respecting order: repeatedly add a random addable simplex
    added: set = set()
    order = []
    pending = set(simps)
    while pending:
        ready = [s for s in pending
                 if len(s) == 1 or all(s[:i] + s[i + 1:] in added for i in range(len(s)))]
        s = rng.choice(sorted(ready, key=lambda s: tuple(K.order[v] for v in s)))
        pending.discard(s)
        added.add(s)
        order.append(s)
    k = rng.randint(1, max_stages)
    cuts = sorted(rng.sample(range(1, len(order) + 1), k - 1)) + [len(order)]
    stages = []
    for c in cuts:
        part = order[:c]
        vs = [v for v in K.vertices if (v,) in set(part)]
        stages.append(SimplicialComplex(vs, {v: 0 for v in vs}, part, check=False))
    idx = sorted(rng.sample(range(0, 4 * k), k))
    return Filtration(tuple(stages), tuple(Fraction(i, 2) for i in idx))
