#!/usr/bin/env python3
"""Sweep the pipeline over whole families of nilpotent orbits.

For sl(n), so(2n+1) and sp(2n) every orbit satisfies the spanning
hypothesis and the index comes out zero.  so(2n) is genuinely different:
some orbits fail the hypothesis, and among those that satisfy it the index
can be positive.
"""

from nilab import sweep

print("sl(5), all nilpotent partitions:")
print(f"  {'partition':<12} {'dim z':>5} {'dim delta':>9} {'s':>3} {'ind':>4}")
for rep in sweep("A", 5):
    if rep.skipped:
        print(f"  {rep.partition:<12} (zero orbit, skipped)")
        continue
    print(
        f"  {rep.partition:<12} {rep.dims['z']:>5} {rep.dims['delta']:>9} "
        f"{rep.s:>3} {rep.ind:>4}"
    )

print("\nso(5) and sp(4):")
for family, n in [("B", 5), ("C", 4)]:
    for rep in sweep(family, n):
        if rep.skipped:
            continue
        print(
            f"  {family} {rep.partition:<10} hypothesis={rep.hypothesis_ok} "
            f"ind={rep.ind}"
        )

print("\nso(8), where the hypothesis can fail and the index can be positive:")
for rep in sweep("D", 8):
    if rep.skipped:
        continue
    status = f"ind={rep.ind}" if rep.hypothesis_ok else "hypothesis violated"
    print(f"  {rep.partition:<14} delta dim {rep.dims['delta']}, s={rep.s}: {status}")
