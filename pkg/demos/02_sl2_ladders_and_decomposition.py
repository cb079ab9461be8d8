#!/usr/bin/env python3
"""sl(2)-triples, eigenvector ladders, and the triangular decomposition.

A principal triple (h, e, f) turns each gradient field P_j into a ladder
of ad(h)-eigenvectors v_{j,k} = d^k P_j(h).e^(k); together with their
f-side mirrors they give a basis of the whole algebra and recover the
triangular decomposition g = n_- + h + n_+.
"""

from nilab import (
    build_algebra,
    centralizer,
    h_graduation,
    mf_shift_rank,
    principal_triplet,
    sl2_vectors,
    triangular_decomposition,
)

for family, rank in [("A", 2), ("C", 2)]:
    alg = build_algebra(family, rank)
    triple = principal_triplet(alg)
    print(f"\n== {alg.name}: dim {alg.dim}, rank {alg.rank_r}")
    print("dim z(e) =", centralizer(triple.e).dim, "(regular: equals the rank)")

    # the ladders; sl2_vectors verifies every bracket relation exactly
    fam = sl2_vectors(alg, triple)
    for j, row in enumerate(fam.v, start=1):
        weights = [f"[h,v]={2 * k}v" for k in range(len(row))]
        print(f"  ladder {j}: {len(row)} vectors, weights {weights}")

    d = triangular_decomposition(alg, triple)
    print(
        "  decomposition dims:",
        (d.h_space.dim, d.n_plus.dim, d.n_minus.dim),
        "sum =", alg.dim,
    )

    # the ad(h) graduation tells the same story
    pieces = h_graduation(triple.h, alg.full_space())
    print("  ad(h) spectrum:", [(int(lam), sp.dim) for lam, sp in pieces])

    # shifting the gradients along h sweeps out half the orbit dimension
    shifts = list(range(1, max(alg.exponents) + 2))
    rank_span = mf_shift_rank(alg, triple, shifts)
    print(
        "  span of [e, P_j(e + t h)]:",
        rank_span,
        "= (dim g - dim z)/2 =",
        (alg.dim - alg.rank_r) // 2,
    )
