"""Generator values, gradients, derivative extraction, identity suites."""

import random

import pytest

from nilab import (
    Partition,
    Rat,
    bracket,
    build_algebra,
    eval_generator,
    generators,
    gradient,
    make_samples,
    mixed_term,
    mf_shift_rank,
    nilpotent_from_partition,
    kostant_independence,
    pfaffian,
    principal_triplet,
    sl2_vectors,
    taylor_terms,
    triangular_decomposition,
    verify_field_identities,
)
from nilab.invariants import bivariate_terms, directional_scalar_derivative


def E(n, i, j):
    rows = [[0] * n for _ in range(n)]
    rows[i][j] = 1
    return rows


def test_generator_metadata():
    alg = build_algebra("D", 3)
    gens = generators(alg)
    assert [(g.degree, g.kind) for g in gens] == [
        (2, "trace"),
        (3, "pfaffian"),
        (4, "trace"),
    ]
    for g in gens:
        assert g.exponent == g.degree - 1


def test_eval_generator_values():
    a1 = build_algebra("A", 1)
    h = a1.from_matrix([[1, 0], [0, -1]])
    assert eval_generator(a1, 1, h) == 2
    a2 = build_algebra("A", 2)
    e = nilpotent_from_partition(a2, Partition((3,)))
    assert eval_generator(a2, 2, e) == 0  # strictly upper triangular cube
    assert eval_generator(a2, 1, a2.zero()) == 0


def test_pfaffian_small_cases():
    assert pfaffian([[Rat(0), Rat(3)], [Rat(-3), Rat(0)]]) == 3
    a = [
        [0, 1, 2, 3],
        [-1, 0, 4, 5],
        [-2, -4, 0, 6],
        [-3, -5, -6, 0],
    ]
    rows = [[Rat(v) for v in r] for r in a]
    # pf = a01 a23 - a02 a13 + a03 a12
    assert pfaffian(rows) == 1 * 6 - 2 * 5 + 3 * 4


def test_pfaffian_squares_to_determinant():
    from nilab import Mat, det

    rng = random.Random(19)
    for _ in range(10):
        upper = [[Rat(rng.randint(-3, 3)) for _ in range(6)] for _ in range(6)]
        rows = [
            [
                upper[i][j] if i < j else (-upper[j][i] if i > j else Rat(0))
                for j in range(6)
            ]
            for i in range(6)
        ]
        assert pfaffian(rows) ** 2 == det(Mat.from_rows(rows))


def test_gradient_sl2_is_twice_identity_field():
    alg = build_algebra("A", 1)
    rng = random.Random(2)
    for _ in range(5):
        x = alg.random_element(rng)
        assert gradient(alg, 1, x) == x.scale(2)


def test_gradient_sl3_regular_and_degenerate():
    alg = build_algebra("A", 2)
    e = nilpotent_from_partition(alg, Partition((3,)))
    e13 = alg.from_matrix(E(3, 0, 2))
    assert gradient(alg, 2, e) == e13.scale(3)
    e12 = alg.from_matrix(E(3, 0, 1))
    assert gradient(alg, 2, e12).is_zero()  # E12 squares to zero


def test_gradient_matches_scalar_derivative_all_families():
    rng = random.Random(23)
    for family, rank in [("A", 2), ("B", 2), ("C", 2), ("D", 3)]:
        alg = build_algebra(family, rank)
        x = alg.random_element(rng)
        for gen in generators(alg):
            p = gradient(alg, gen.index_j, x, check=False)
            for _ in range(3):
                y = alg.random_element(rng)
                from nilab import trace_form

                assert trace_form(p, y) == directional_scalar_derivative(
                    alg, gen.index_j, x, y
                )


def test_gradient_homogeneity():
    rng = random.Random(29)
    for family, rank in [("A", 2), ("C", 2), ("D", 3)]:
        alg = build_algebra(family, rank)
        for gen in generators(alg):
            x = alg.random_element(rng)
            c = Rat(rng.randint(1, 5), rng.randint(1, 5))
            scaled = gradient(alg, gen.index_j, x.scale(c), check=False)
            assert scaled == gradient(alg, gen.index_j, x, check=False).scale(
                c**gen.exponent
            )


def test_taylor_terms_sl2():
    alg = build_algebra("A", 1)
    t = principal_triplet(alg)
    terms = taylor_terms(alg, 1, t.h, t.e).terms
    assert terms == (t.h.scale(2), t.e.scale(2))


def test_taylor_terms_endpoints_sl3():
    alg = build_algebra("A", 2)
    t = principal_triplet(alg)
    e13 = alg.from_matrix(E(3, 0, 2))
    tt = taylor_terms(alg, 2, t.h, t.e)
    assert tt.terms[0] == gradient(alg, 2, t.h, check=False)
    assert tt.terms[2] == e13.scale(3)


def test_taylor_terms_zero_direction():
    alg = build_algebra("A", 2)
    rng = random.Random(31)
    x = alg.random_element(rng)
    tt = taylor_terms(alg, 2, x, alg.zero())
    assert tt.terms[0] == gradient(alg, 2, x, check=False)
    assert all(term.is_zero() for term in tt.terms[1:])


def test_mixed_term_order_zero_is_gradient():
    alg = build_algebra("A", 2)
    rng = random.Random(37)
    x, u, y = (alg.random_element(rng) for _ in range(3))
    assert mixed_term(alg, 2, x, u, 0, y, 0) == gradient(alg, 2, x, check=False)


def test_mixed_term_frozen_sl3_value():
    # dP_2(e).h = 3(eh + he) = 6 E12 - 6 E23 for the regular triple
    alg = build_algebra("A", 2)
    t = principal_triplet(alg)
    e12 = alg.from_matrix(E(3, 0, 1))
    e23 = alg.from_matrix(E(3, 1, 2))
    got = mixed_term(alg, 2, t.e, t.h, 1, alg.zero(), 0)
    assert got == e12.scale(6) - e23.scale(6)


def test_mixed_term_linearity_sl2():
    alg = build_algebra("A", 1)
    t = principal_triplet(alg)
    assert mixed_term(alg, 1, t.h, t.e, 1, t.f, 0) == t.e.scale(2)


def test_mixed_term_beyond_degree_is_zero():
    alg = build_algebra("A", 1)
    t = principal_triplet(alg)
    assert mixed_term(alg, 1, t.h, t.e, 1, t.f, 1).is_zero()


def test_mixed_term_matches_univariate_slices():
    # c[a][0] of the bivariate table must agree with the univariate Taylor
    # coefficients along u
    alg = build_algebra("A", 2)
    rng = random.Random(41)
    x, u = alg.random_element(rng), alg.random_element(rng)
    table = bivariate_terms(alg, 2, x, u, alg.zero())
    tt = taylor_terms(alg, 2, x, u)
    for a in range(3):
        assert table[a][0] == tt.terms[a]


def test_exchange_specific_pair_sl3():
    # dP_2(h).e and dP_2(e).h agree (second derivative of p_2 is symmetric)
    alg = build_algebra("A", 2)
    t = principal_triplet(alg)
    lhs = taylor_terms(alg, 2, t.h, t.e).terms[1]
    rhs = taylor_terms(alg, 2, t.e, t.h).terms[1]
    assert lhs == rhs
    e12 = alg.from_matrix(E(3, 0, 1))
    e23 = alg.from_matrix(E(3, 1, 2))
    assert lhs == e12.scale(6) - e23.scale(6)


@pytest.mark.parametrize("family,rank", [("A", 1), ("A", 2), ("B", 2), ("C", 2)])
def test_field_identity_suite_passes(family, rank):
    alg = build_algebra(family, rank)
    samples = make_samples(alg, 8, 0)
    for gen in generators(alg):
        report = verify_field_identities(alg, gen.index_j, samples)
        assert report.passed, report.summary()


def test_field_identity_suite_zero_sample():
    alg = build_algebra("A", 1)
    from nilab.invariants import IdentitySample

    z = alg.zero()
    sample = IdentitySample(x=z, y=z, z=z, n=z)
    report = verify_field_identities(alg, 1, [sample])
    assert report.passed


def test_sl2_vectors_values():
    alg = build_algebra("A", 1)
    t = principal_triplet(alg)
    fam = sl2_vectors(alg, t)
    assert fam.v[0][0] == t.h.scale(2)
    assert fam.v[0][1] == t.e.scale(2)
    assert fam.w[0][1] == t.f.scale(2)
    assert bracket(t.h, fam.v[0][1]) == fam.v[0][1].scale(2)


@pytest.mark.parametrize("family,rank", [("A", 2), ("A", 3), ("B", 2), ("C", 2), ("D", 3)])
def test_sl2_vector_relations_all_families(family, rank):
    alg = build_algebra(family, rank)
    t = principal_triplet(alg)
    sl2_vectors(alg, t)  # raises IdentityError on any broken relation


def test_kostant_independence_sl3():
    alg = build_algebra("A", 2)
    t = principal_triplet(alg)
    report = kostant_independence(alg, t)
    assert report.passed


def test_kostant_independence_weights_sp4():
    # exponents 1 and 3: h-weights of the P_j(e) are 2 and 6
    alg = build_algebra("C", 2)
    t = principal_triplet(alg)
    grads = [gradient(alg, g.index_j, t.e, check=False) for g in generators(alg)]
    assert bracket(t.h, grads[0]) == grads[0].scale(2)
    assert bracket(t.h, grads[1]) == grads[1].scale(6)
    kostant_independence(alg, t)


@pytest.mark.parametrize(
    "family,rank,dims",
    [
        ("A", 1, (1, 1, 1)),
        ("A", 2, (2, 3, 3)),
        ("A", 3, (3, 6, 6)),
        ("A", 4, (4, 10, 10)),
        ("B", 2, (2, 4, 4)),
        ("C", 2, (2, 4, 4)),
    ],
)
def test_triangular_decomposition_dims(family, rank, dims):
    alg = build_algebra(family, rank)
    d = triangular_decomposition(alg)
    assert (d.h_space.dim, d.n_plus.dim, d.n_minus.dim) == dims
    assert sum(dims) == alg.dim


@pytest.mark.parametrize("family,rank,want", [("A", 1, 1), ("A", 2, 3), ("A", 3, 6)])
def test_mf_shift_rank_half_orbit(family, rank, want):
    alg = build_algebra(family, rank)
    t = principal_triplet(alg)
    shifts = list(range(1, max(alg.exponents) + 2))
    assert mf_shift_rank(alg, t, shifts) == want == (alg.dim - alg.rank_r) // 2


def test_mf_shift_rank_sampled_span_oracle():
    # oracle: brute span over a much denser shift set cannot exceed the
    # sampled one once enough nodes are used
    alg = build_algebra("A", 2)
    t = principal_triplet(alg)
    small = mf_shift_rank(alg, t, [1, 2, 3])
    dense = mf_shift_rank(alg, t, [Rat(k, 7) for k in range(1, 12)])
    assert small == dense == 3


def test_mf_shift_rank_degenerate_zero_sample():
    alg = build_algebra("A", 2)
    t = principal_triplet(alg)
    with pytest.warns(UserWarning):
        got = mf_shift_rank(alg, t, [0])
    assert got <= alg.rank_r  # [e, P_j(e)] = 0


def test_scaled_form_rescales_gradients():
    plain = build_algebra("A", 2)
    scaled = build_algebra("A", 2, form_scale=5)
    e_plain = nilpotent_from_partition(plain, Partition((3,)))
    e_scaled = nilpotent_from_partition(scaled, Partition((3,)))
    g_plain = gradient(plain, 2, e_plain)
    g_scaled = gradient(scaled, 2, e_scaled)
    assert list(g_scaled.coords) == [c / 5 for c in g_plain.coords]
