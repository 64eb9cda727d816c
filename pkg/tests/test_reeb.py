import random
from fractions import Fraction

import pytest

from reebcx.complex import CutComplex, Filtration, SimplicialComplex, cut_at_levels, telescope
from reebcx.corpus import circle, named_complexes, octahedron, pinched_cylinder, polygon, random_complex
from reebcx.errors import IntervalContainsCritical, MissingCriticalLevel, NotInvertible
from reebcx.homology import betti_numbers
from reebcx.linalg import GF, rank
from reebcx.reeb import (
    adjacent_slabs,
    face_map,
    homology_of_base,
    prepare,
    reeb_betti,
    sect_homology,
    truncated_reeb,
    verify_diamond,
)

half = Fraction(1, 2)


@pytest.fixture(scope="module")
def pinched():
    return prepare(pinched_cylinder())


def product(X):
    """X × [0, 1] with the projection as height."""
    return prepare(telescope(Filtration((X, X), (0, 1))))


def test_sect_homology_pinched(pinched):
    S1 = sect_homology(pinched, 0, 1, 1)
    assert S1.space.dim == 1 and S1.mid == half and S1.slab == (0, 1)
    assert sect_homology(pinched, 0, 1, 0).space.dim == 1


def test_face_maps_pinched(pinched):
    b0 = face_map(pinched, (0, 1), "bottom", 0)
    assert b0.matrix.shape == (1, 1) and rank(b0.matrix) == 1
    b1 = face_map(pinched, (0, 1), "bottom", 1)
    assert b1.matrix.shape == (2, 1) and rank(b1.matrix) == 1
    t1 = face_map(pinched, (0, 1), "top", 1)
    assert t1.matrix.shape == (2, 1) and rank(t1.matrix) == 1
    with pytest.raises(ValueError):
        face_map(pinched, (0, 1), "middle", 1)


def test_truncated_reeb_pinched(pinched):
    T0 = truncated_reeb(pinched, 0)
    assert (T0.fiber_dims, T0.sect_dims) == ([1, 1], [1])
    assert T0.differential.shape == (2, 1)
    assert (T0.rank(), T0.cokernel_dim(), T0.kernel_dim()) == (1, 1, 0)
    T1 = truncated_reeb(pinched, 1)
    assert (T1.fiber_dims, T1.sect_dims) == ([2, 2], [1])
    assert T1.differential.shape == (4, 1)
    assert (T1.rank(), T1.cokernel_dim(), T1.kernel_dim()) == (1, 3, 0)
    assert homology_of_base([T0, T1, truncated_reeb(pinched, 2)]) == [1, 3, 0]


def test_truncated_reeb_circle():
    T = truncated_reeb(prepare(circle()), 0)
    assert T.fiber_dims == [1, 1] and T.sect_dims == [2]
    assert (T.rank(), T.cokernel_dim(), T.kernel_dim()) == (1, 1, 1)
    assert reeb_betti(circle()) == [1, 1]


def test_homology_of_base_sphere():
    assert reeb_betti(octahedron()) == [1, 0, 1]


def test_homology_of_base_needs_consecutive_degrees(pinched):
    with pytest.raises(ValueError):
        homology_of_base([truncated_reeb(pinched, 1)])


def test_diamond_pinched(pinched):
    d0 = verify_diamond(pinched, (0, 1), 0)
    assert d0.dims() == (1, 2, 1) and (d0.rank_first, d0.rank_second) == (1, 1) and d0.passed
    d1 = verify_diamond(pinched, (0, 1), 1)
    assert d1.dims() == (1, 4, 3) and (d1.rank_first, d1.rank_second) == (1, 3) and d1.passed
    assert d1.composite_zero and d1.kernel_second == d1.rank_first


@pytest.mark.parametrize("X", [circle(), octahedron(), polygon(5), SimplicialComplex.from_maximal([(0,)])])
def test_product_slab(X):
    C = product(X)
    for q in range(X.dim + 1):
        S = sect_homology(C, 0, 1, q)
        assert S.space.dim == betti_numbers(X, q)[q]
        for end in ("bottom", "top"):
            m = face_map(C, (0, 1), end, q)
            assert m.matrix.nrows == m.matrix.ncols == S.space.dim == rank(m.matrix)
        d = verify_diamond(C, (0, 1), q)
        assert d.passed and d.rank_first == S.space.dim


def test_sect_errors():
    K = SimplicialComplex.from_maximal([("a", "b"), ("b", "c")], {"a": 0, "b": 1, "c": 2})
    only_heights = cut_at_levels(K, [0, 1, 2])
    with pytest.raises(MissingCriticalLevel):
        sect_homology(only_heights, 0, 1, 0)
    C = prepare(K)
    with pytest.raises(IntervalContainsCritical) as exc:
        sect_homology(C, 0, 2, 0)
    assert exc.value.level == 1
    with pytest.raises(MissingCriticalLevel):
        sect_homology(C, 0, Fraction(1, 3), 0)
    with pytest.raises(MissingCriticalLevel):
        truncated_reeb(cut_at_levels(K, [half]), 0)


def test_face_map_reports_non_reeb_slab():
    # two points at height 0 joined through an unrecorded vertex at 1/2:
    # the bottom fiber does not include isomorphically into the half-slab
    X = SimplicialComplex.from_maximal(
        [("u", "y"), ("y", "u2"), ("u", "w"), ("w", "v")],
        {"u": 0, "u2": 0, "y": half, "w": 1, "v": 2})
    origin = SimplicialComplex.from_maximal([("u", "v"), ("u2",)], {"u": 0, "u2": 0, "v": 2})
    C = CutComplex(X, origin, (Fraction(0), Fraction(1), Fraction(2)))
    with pytest.raises(NotInvertible) as exc:
        face_map(C, (0, 2), "bottom", 0)
    assert exc.value.context["slab"] == ["0", "2"] and exc.value.rank == 1


def test_assembled_differential_matches_blocks(pinched):
    for q in range(3):
        T = truncated_reeb(pinched, q)
        assert T.assemble() == T.differential
        assert T.differential.nrows == sum(T.fiber_dims) and T.differential.ncols == sum(T.sect_dims)


def test_prime_field_recovery():
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
            (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    RP2 = SimplicialComplex.from_maximal(tris, {i: i % 3 for i in range(6)})
    assert reeb_betti(RP2, field=GF(2)) == betti_numbers(RP2, field=GF(2)) == [1, 1, 1]
    assert reeb_betti(RP2) == [1, 0, 0]


@pytest.mark.parametrize("name", sorted(named_complexes()))
def test_named_corpus(name):
    K = named_complexes()[name]
    C = prepare(K)
    assert reeb_betti(C, 2) == betti_numbers(K, 2)
    for slab in adjacent_slabs(C):
        for q in range(3):
            assert verify_diamond(C, slab, q).passed


@pytest.mark.parametrize("seed", range(12))
def test_random_complexes_and_relabeling(seed):
    rng = random.Random(500 + seed)
    K = random_complex(rng, n_vertices=rng.randint(3, 14), n_triangles=rng.randint(0, 14), n_edges=rng.randint(0, 5))
    C = prepare(K)
    assert reeb_betti(C, 2) == betti_numbers(K, 2)
    for slab in adjacent_slabs(C):
        for q in range(3):
            assert verify_diamond(C, slab, q).passed
    names = {v: f"v{i}" for i, v in enumerate(K.vertices)}
    order = list(names.values())
    rng.shuffle(order)
    C2 = prepare(K.relabel(names, order))
    for q in range(3):
        T, T2 = truncated_reeb(C, q), truncated_reeb(C2, q)
        assert (T.fiber_dims, T.sect_dims, T.rank()) == (T2.fiber_dims, T2.sect_dims, T2.rank())
