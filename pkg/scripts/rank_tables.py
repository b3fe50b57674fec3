#!/usr/bin/env python3
"""Regenerate the closed-form rank tables for a range of alphabet sizes."""

import argparse

from lietrace.cyclic import cyclic_rank
from lietrace.freelie import witt_rank
from lietrace.johnson import section7_rows
from lietrace.tangent import p_rank


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=6)
    ap.add_argument("--kmax", type=int, default=4)
    args = ap.parse_args()

    print("n  k  lie  necklaces  necklaces_bar  tangential")
    for n in range(3, args.nmax + 1):
        for k in range(1, args.kmax + 1):
            print(
                f"{n}  {k}  {witt_rank(n, k):4d}  {cyclic_rank(n, k, 'full'):9d}"
                f"  {cyclic_rank(n, k, 'bar'):13d}  {p_rank(n, k):10d}"
            )
    print()
    for n in range(3, args.nmax + 1):
        print(f"degree 1..4 summary, n={n}")
        for row in section7_rows(n):
            print("  ", row)


if __name__ == "__main__":
    main()
