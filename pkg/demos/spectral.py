"""Čech first page of interval covers and what the nerve does or does not see."""

from fractions import Fraction

from reebcx.cech import build_cover, first_page, nerve_row, prepare_cover, second_page_two_column
from reebcx.corpus import pinched_cylinder, polygon
from reebcx.zigzag import IntervalCover


def report(name, K, cover, top):
    PC = build_cover(prepare_cover(K, cover), cover)
    E1 = first_page(PC, top)
    nerve = nerve_row(PC, top)
    print(f"{name}, cover {cover.str_intervals()}")
    for q in range(top + 1):
        print(f"  q={q}: E1 dims {E1.dims(q)}, rank {E1.ranks()[q]}")
    print(f"  second page: {second_page_two_column(E1)}")
    print(f"  nerve homology {list(nerve.betti)}, homologically good: {nerve.good}")


def main():
    half = Fraction(1, 2)
    report("square", polygon(4), IntervalCover(((-1, 1 + half), (half, 3))), 1)
    report("pinched cylinder", pinched_cylinder(),
           IntervalCover(((-1, Fraction(3, 4)), (Fraction(1, 4), 2))), 2)


if __name__ == "__main__":
    main()
