"""Persistence of a small filtration, computed directly and through the mapping telescope."""

from reebcx.complex import Filtration, SimplicialComplex
from reebcx.persistence import persistence_direct, persistence_via_telescope, verify_ladder


def stage(*maximal):
    return SimplicialComplex.from_maximal(list(maximal))


def main():
    # two points, then an edge between them, then a triangle boundary, then the filled triangle
    F = Filtration((
        stage((0,), (1,)),
        stage((0, 1)),
        stage((0, 1), (1, 2), (0, 2)),
        stage((0, 1, 2)),
    ), (0, 1, 2, 3))
    for q in range(2):
        direct = persistence_direct(F, q)
        via = persistence_via_telescope(F, q)
        report = verify_ladder(F, q)
        print(f"degree {q}: dims {direct.dims}, ranks {direct.ranks()}")
        print(f"  direct   {sorted(direct.barcode().multiset().items())}")
        print(f"  telescope {sorted(via.barcode().multiset().items())}")
        print(f"  ladder verdict: {report.verdict}")


if __name__ == "__main__":
    main()
