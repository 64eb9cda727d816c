import random
from fractions import Fraction

import pytest

from reebcx.cech import (
    build_cover,
    first_page,
    intersection,
    nerve_row,
    prepare_cover,
    second_page_two_column,
    spectral_betti,
)
from reebcx.complex import SimplicialComplex
from reebcx.corpus import named_complexes, octahedron, pinched_cylinder, polygon, random_complex
from reebcx.errors import UncoveredSimplex
from reebcx.homology import betti_numbers
from reebcx.linalg import GF
from reebcx.zigzag import IntervalCover, critical_cover

F = Fraction


def arc(K, vs):
    vs = set(vs)
    return K.full_subcomplex(lambda v: v in vs)


def test_circle_two_arcs():
    K = polygon(4)                      # heights 0, 1, 2, 1
    cover = IntervalCover(((-1, F(3, 2)), (F(1, 2), 3)))
    PC = build_cover(prepare_cover(K, cover), cover)
    E1 = first_page(PC, 1)
    assert E1.dims(0) == (2, 2) and E1.dims(1) == (0, 0)
    assert E1.ranks() == [1, 0]
    assert second_page_two_column(E1) == [1, 1] == spectral_betti(K, cover)
    # the overlap is two arcs, so the cover is not good
    nerve = nerve_row(PC)
    assert not nerve.good and nerve.homology_estimate() is None
    assert dict((idx, b) for idx, b, _ in nerve.checks)[(0, 1)] == (2, 0)


def test_single_interval_is_trivial_page():
    K = octahedron()
    cover = IntervalCover(((-2, 2),))
    E1 = first_page(build_cover(prepare_cover(K, cover), cover), 2)
    assert all(E1.dims(q)[1] == 0 for q in range(3))
    assert second_page_two_column(E1) == betti_numbers(K) == [1, 0, 1]


def test_pinched_cylinder_cover():
    cover = IntervalCover(((-1, F(3, 4)), (F(1, 4), 2)))
    E1 = first_page(build_cover(prepare_cover(pinched_cylinder(), cover), cover), 2)
    assert [E1.dims(q) for q in range(2)] == [(2, 1), (4, 1)]
    assert E1.ranks()[:2] == [1, 1]
    assert second_page_two_column(E1) == [1, 3, 0]


def test_two_contractible_components():
    a = SimplicialComplex.from_maximal([("a0", "a1")], {"a0": 0, "a1": 2})
    b = SimplicialComplex.from_maximal([("b0", "b1", "b2")], {"b0": 0, "b1": 1, "b2": 2})
    K = a.disjoint_union(b)
    for cover in (IntervalCover(((-1, 3),)), IntervalCover(((-1, F(3, 2)), (F(1, 2), 3)))):
        assert spectral_betti(K, cover, 1) == [2, 0]


def test_uncovered_simplex():
    cover = IntervalCover(((-1, F(1, 2)),))
    with pytest.raises(UncoveredSimplex) as exc:
        spectral_betti(pinched_cylinder(), cover)
    assert len(exc.value.simplex) == 1


def test_assembled_page_matches_blocks():
    cover = IntervalCover(((-1, F(3, 4)), (F(1, 4), 2)))
    E1 = first_page(build_cover(prepare_cover(pinched_cylinder(), cover), cover), 2)
    for q in range(3):
        D = E1.assemble(q)
        assert D == E1.differentials[q]
        for k, (low, high) in enumerate(E1.blocks[q]):
            assert low.ncols == high.ncols == E1.overlap_spaces[q][k].dim


def test_nerve_of_three_arcs_is_good():
    K = polygon(6)
    arcs = [arc(K, (0, 1, 2)), arc(K, (2, 3, 4)), arc(K, (4, 5, 0))]
    report = nerve_row(arcs, 1)
    assert sorted(report.simplices) == [(0,), (0, 1), (0, 2), (1,), (1, 2), (2,)]
    assert report.good and report.homology_estimate() == [1, 1] == betti_numbers(K)


def test_nerve_detects_bad_two_arc_cover():
    K = polygon(4)
    report = nerve_row([arc(K, (0, 1, 2)), arc(K, (2, 3, 0))], 1)
    assert report.betti == (1, 0) and not report.good


def test_intersection_is_common_subcomplex():
    K = polygon(6)
    W = intersection(arc(K, (0, 1, 2, 3)), arc(K, (2, 3, 4)))
    assert W == arc(K, (2, 3))


@pytest.mark.parametrize("name", sorted(named_complexes()))
def test_critical_covers_recover_named(name):
    K = named_complexes()[name]
    hs = sorted(set(K.heights.values()))
    assert spectral_betti(K, critical_cover(hs), 2) == betti_numbers(K, 2)


def random_cover(rng, lo, hi):
    """Consecutive open intervals with breakpoints strictly inside (lo, hi)."""
    n = rng.randint(1, 4)
    cuts = sorted({F(rng.randint(1, 4 * (hi - lo) - 1), 4) + lo for _ in range(n - 1)})
    eps = F(1, 16)
    ends = [lo - 1] + cuts + [hi + 1]
    return IntervalCover(tuple(
        (ends[k] - (eps if k else 0), ends[k + 1] + (eps if k + 2 < len(ends) else 0))
        for k in range(len(ends) - 1)))


@pytest.mark.parametrize("seed", range(15))
def test_random_covers_collapse(seed):
    rng = random.Random(900 + seed)
    K = random_complex(rng, n_vertices=rng.randint(3, 12), n_triangles=rng.randint(0, 12), n_edges=rng.randint(0, 4))
    hs = K.heights.values()
    lo, hi = int(min(hs)), int(max(hs)) + 1
    cover = random_cover(rng, lo, hi)
    assert spectral_betti(K, cover, 2) == betti_numbers(K, 2)
    assert spectral_betti(K, cover, 2, field=GF(2)) == betti_numbers(K, 2, GF(2))
