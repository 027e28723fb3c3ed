#!/usr/bin/env python3
"""Check every pencil member (a, b) on a rational grid over EX2."""

import argparse
import itertools
from fractions import Fraction

from qsjacobi.constructions import PencilParams, pencil
from qsjacobi.cotangent import canonical_poisson
from qsjacobi.fileformat import print_expression
from qsjacobi.fixtures import ex2
from qsjacobi.structures import check_odd_jacobi


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--range", type=int, default=3, help="a, b run over -R..R in steps of 1/2")
    args = ap.parse_args()
    grid = [Fraction(k, 2) for k in range(-2 * args.range, 2 * args.range + 1)]
    ex = ex2()
    failed = 0
    for a, b in itertools.product(grid, grid):
        oj = pencil(ex, PencilParams(a, b))
        ok = check_odd_jacobi(oj).passed
        failed += not ok
        if a == 1 or not ok:
            ss = print_expression(canonical_poisson(oj.S, oj.S))
            print(f"a={a!s:>5} b={b!s:>5}  {'PASS' if ok else 'FAIL'}  {{S,S}} = {ss}")
    print(f"{len(grid) ** 2} members checked, {failed} failures")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
