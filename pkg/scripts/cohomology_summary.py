#!/usr/bin/env python3
"""Twisted H^1, the degree-2 relation-lattice rank, and abelianizations."""

import argparse

from lietrace.grouppres import (
    abelianization,
    builtin,
    h1_twisted,
    h2_psigma_rank,
    standard_action,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=8)
    args = ap.parse_args()

    for n in range(3, args.nmax + 1):
        print(f"n = {n}")
        for kind in ("bp", "braid", "symmetric"):
            q = h1_twisted(builtin(kind, n), standard_action(kind, n))
            print(f"  H1({kind:9s}, standard lattice) = {q}")
        print(f"  abelianization(bp)     = {abelianization(builtin('bp', n))}")
        print(f"  abelianization(mccool) = {abelianization(builtin('mccool', n))}")
        print(f"  h2 rank                = {h2_psigma_rank(n)}")


if __name__ == "__main__":
    main()
