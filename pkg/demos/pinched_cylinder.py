"""Walk through the pinched cylinder: fibers, sections, the truncated Reeb complex and the diamond."""

from reebcx import io
from reebcx.homology import betti_numbers
from reebcx.reeb import adjacent_slabs, homology_of_base, prepare, truncated_reeb, verify_diamond
from reebcx.zigzag import barcode, critical_cover, levelset_zigzag


def show(M):
    return "\n".join("    " + " ".join(f"{x:>3}" for x in row) for row in io.matrix_entries(M))


def main():
    K = io.bundled("pinched_cylinder")
    print(f"{len(K.vertices)} vertices, {K.count(2)} triangles, Betti numbers {betti_numbers(K)}")
    C = prepare(K)
    print("critical levels:", ", ".join(map(str, C.critical_values)))

    complexes = []
    for q in range(3):
        T = truncated_reeb(C, q)
        complexes.append(T)
        print(f"\nT_{q}: fibers {T.fiber_dims}, sections {T.sect_dims}, "
              f"rank {T.rank()}, coker {T.cokernel_dim()}, ker {T.kernel_dim()}")
        if T.differential.nrows and T.differential.ncols:
            print(show(T.differential))
    print("\nhomology read off the Reeb complexes:", homology_of_base(complexes))

    for slab in adjacent_slabs(C):
        for q in range(2):
            d = verify_diamond(C, slab, q)
            print(f"diamond on [{slab[0]}, {slab[1]}] in degree {q}: dims {d.dims()}, "
                  f"ranks ({d.rank_first}, {d.rank_second}), exact={d.exact}")

    Z = levelset_zigzag(C, critical_cover(C.critical_values), 1).interior()
    print(f"\ninterior levelset zigzag in degree 1: dims {Z.dims}, ranks {Z.arrow_ranks()}")
    for b, e, m in barcode(Z).bars:
        print(f"  bar [{b}, {e}] x{m}")


if __name__ == "__main__":
    main()
