"""Algebra realizations: brackets, trace form, subspace calculus."""

import random

import pytest

from nilab import (
    ContractError,
    Element,
    GraduationError,
    Mat,
    Rat,
    Subspace,
    UnsupportedAlgebraError,
    bracket,
    build_algebra,
    center_of,
    centralizer,
    h_graduation,
    normalizer_of,
    principal_triplet,
    trace_form,
    unipotent_ad,
)

EXPECTED_DIMS = {
    ("A", 1): 3,
    ("A", 2): 8,
    ("A", 3): 15,
    ("B", 2): 10,
    ("B", 3): 21,
    ("C", 2): 10,
    ("C", 3): 21,
    ("D", 2): 6,
    ("D", 3): 15,
}


def E(n, i, j):
    rows = [[0] * n for _ in range(n)]
    rows[i][j] = 1
    return rows


@pytest.mark.parametrize("family,rank", sorted(EXPECTED_DIMS))
def test_dimensions_and_degrees(family, rank):
    alg = build_algebra(family, rank)
    assert alg.dim == EXPECTED_DIMS[(family, rank)]
    assert len(alg.generator_degrees) == rank
    assert list(alg.generator_degrees) == sorted(alg.generator_degrees)


def test_generator_degree_tables():
    assert build_algebra("A", 1).generator_degrees == (2,)
    assert build_algebra("A", 2).generator_degrees == (2, 3)
    assert build_algebra("A", 3).generator_degrees == (2, 3, 4)
    assert build_algebra("B", 3).generator_degrees == (2, 4, 6)
    assert build_algebra("C", 2).generator_degrees == (2, 4)
    assert build_algebra("D", 3).generator_degrees == (2, 3, 4)
    assert build_algebra("D", 4).generator_degrees == (2, 4, 4, 6)
    assert not build_algebra("D", 4).distinct_exponents


def test_unsupported_families():
    with pytest.raises(UnsupportedAlgebraError):
        build_algebra("D", 1)
    with pytest.raises(UnsupportedAlgebraError):
        build_algebra("E", 6)
    with pytest.raises(UnsupportedAlgebraError):
        build_algebra("A", 0)


@pytest.mark.parametrize("family,rank", sorted(EXPECTED_DIMS))
def test_basis_satisfies_defining_equations(family, rank):
    alg = build_algebra(family, rank)
    if alg.form is None:
        for b in alg.basis:
            assert b.trace() == 0
    else:
        s = alg.form
        for b in alg.basis:
            assert (b.transpose() * s + s * b).is_zero()


@pytest.mark.parametrize(
    "family,rank", [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 3)]
)
def test_jacobi_identity_on_basis_triples(family, rank):
    alg = build_algebra(family, rank)
    struct = alg.structure_constants

    def br(a, b):
        return struct[a][b]

    def combine(terms):
        out = {}
        for k, c in terms:
            out[k] = out.get(k, Rat(0)) + c
        return {k: c for k, c in out.items() if c != 0}

    dim = alg.dim
    rng = random.Random(1)
    triples = [(a, b, c) for a in range(dim) for b in range(dim) for c in range(dim)]
    if len(triples) > 4000:
        triples = rng.sample(triples, 4000)
    for a, b, c in triples:
        acc = []
        for k, v in br(a, b).items():
            acc.extend((t, v * w) for t, w in br(k, c).items())
        for k, v in br(b, c).items():
            acc.extend((t, v * w) for t, w in br(k, a).items())
        for k, v in br(c, a).items():
            acc.extend((t, v * w) for t, w in br(k, b).items())
        assert combine(acc) == {}


def test_structure_constants_antisymmetric():
    alg = build_algebra("B", 2)
    struct = alg.structure_constants
    for a in range(alg.dim):
        for b in range(alg.dim):
            neg = {k: -c for k, c in struct[b][a].items()}
            assert struct[a][b] == neg


def test_bracket_defining_relations_sl2():
    alg = build_algebra("A", 1)
    e = alg.from_matrix(E(2, 0, 1))
    f = alg.from_matrix(E(2, 1, 0))
    h = alg.from_matrix([[1, 0], [0, -1]])
    assert bracket(e, f) == h
    assert bracket(h, e) == e.scale(2)
    assert bracket(h, f) == f.scale(-2)


def test_bracket_sl3_root_vectors():
    alg = build_algebra("A", 2)
    e12 = alg.from_matrix(E(3, 0, 1))
    e23 = alg.from_matrix(E(3, 1, 2))
    e13 = alg.from_matrix(E(3, 0, 2))
    assert bracket(e12, e23) == e13


def test_bracket_rejects_mixed_algebras():
    a1 = build_algebra("A", 1)
    a2 = build_algebra("A", 2)
    with pytest.raises(ContractError):
        bracket(a1.zero(), a2.zero())


def test_trace_form_values_sl2():
    alg = build_algebra("A", 1)
    e = alg.from_matrix(E(2, 0, 1))
    f = alg.from_matrix(E(2, 1, 0))
    h = alg.from_matrix([[1, 0], [0, -1]])
    assert trace_form(e, f) == 1
    assert trace_form(h, h) == 2
    assert trace_form(e, e) == 0


@pytest.mark.parametrize("family,rank", [("A", 2), ("B", 2), ("C", 2), ("D", 3)])
def test_trace_form_invariance(family, rank):
    alg = build_algebra(family, rank)
    rng = random.Random(9)
    for _ in range(20):
        x, y, z = (alg.random_element(rng) for _ in range(3))
        assert trace_form(bracket(z, x), y) + trace_form(x, bracket(z, y)) == 0


@pytest.mark.parametrize("family,rank", [("A", 2), ("A", 3), ("B", 2), ("C", 2)])
def test_gram_nondegenerate(family, rank):
    from nilab import det

    alg = build_algebra(family, rank)
    assert det(alg.gram) != 0


def test_centralizer_regular_sl2():
    alg = build_algebra("A", 1)
    e = alg.from_matrix(E(2, 0, 1))
    z = centralizer(e)
    assert z.dim == 1 and z.contains(e)


def test_centralizer_regular_sl3():
    alg = build_algebra("A", 2)
    e = alg.from_matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    e13 = alg.from_matrix(E(3, 0, 2))
    z = centralizer(e)
    assert z.dim == 2 and z.contains(e) and z.contains(e13)


def test_centralizer_subregular_sl3():
    alg = build_algebra("A", 2)
    z = centralizer(alg.from_matrix(E(3, 0, 1)))
    assert z.dim == 4


@pytest.mark.parametrize("family,rank", [("A", 2), ("B", 2), ("C", 2)])
def test_centralizer_dim_at_least_rank(family, rank):
    alg = build_algebra(family, rank)
    rng = random.Random(13)
    for _ in range(20):
        z = centralizer(alg.random_element(rng))
        assert z.dim >= alg.rank_r


def test_random_elements_are_regular():
    # a random element from a wide integer box is regular: the non-regular
    # locus is a proper subvariety, so hits are vanishingly rare
    alg = build_algebra("A", 2)
    rng = random.Random(29)
    hits = sum(1 for _ in range(20) if centralizer(alg.random_element(rng, 10)).dim == 2)
    assert hits == 20


def test_center_of_regular_centralizer_is_everything():
    alg = build_algebra("A", 2)
    e = alg.from_matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    z = centralizer(e)
    assert center_of(z).same_space(z)  # regular centralizers are abelian


def test_center_of_subregular_centralizer():
    # brute-force oracle: z(E12) = span{E12, E13, E32, diag(1,1,-2)}; the
    # bracket conditions kill everything except the E12 line.
    alg = build_algebra("A", 2)
    e12 = alg.from_matrix(E(3, 0, 1))
    z = centralizer(e12)
    for rows in (E(3, 0, 1), E(3, 0, 2), E(3, 2, 1), [[1, 0, 0], [0, 1, 0], [0, 0, -2]]):
        assert z.contains(alg.from_matrix(rows))
    c = center_of(z)
    assert c.dim == 1 and c.contains(e12)


def test_center_of_whole_simple_algebra_is_zero():
    alg = build_algebra("A", 1)
    assert center_of(alg.full_space()).dim == 0


def test_center_of_rejects_non_subalgebra():
    alg = build_algebra("A", 1)
    e = alg.from_matrix(E(2, 0, 1))
    f = alg.from_matrix(E(2, 1, 0))
    span_ef = Subspace.from_elements(alg, [e, f])  # [e,f] = h escapes
    with pytest.raises(ContractError):
        center_of(span_ef)


def test_normalizer_of_root_line_is_borel_sl2():
    alg = build_algebra("A", 1)
    e = alg.from_matrix(E(2, 0, 1))
    h = alg.from_matrix([[1, 0], [0, -1]])
    nor = normalizer_of(Subspace.from_elements(alg, [e]))
    assert nor.dim == 2 and nor.contains(e) and nor.contains(h)


def test_normalizer_dim_is_z_plus_center():
    alg = build_algebra("A", 2)
    for rows in ([[0, 1, 0], [0, 0, 1], [0, 0, 0]], E(3, 0, 1)):
        z = centralizer(alg.from_matrix(rows))
        eta = normalizer_of(z)
        assert eta.dim == z.dim + center_of(z).dim


def test_normalizer_of_whole_algebra():
    alg = build_algebra("A", 1)
    assert normalizer_of(alg.full_space()).dim == alg.dim


def test_h_graduation_adjoint_sl2():
    alg = build_algebra("A", 1)
    t = principal_triplet(alg)
    pieces = h_graduation(t.h, alg.full_space())
    assert [(lam, sp.dim) for lam, sp in pieces] == [(-2, 1), (0, 1), (2, 1)]


def test_h_graduation_adjoint_sl3():
    alg = build_algebra("A", 2)
    t = principal_triplet(alg)
    pieces = h_graduation(t.h, alg.full_space())
    assert [(lam, sp.dim) for lam, sp in pieces] == [
        (-4, 1),
        (-2, 2),
        (0, 2),
        (2, 2),
        (4, 1),
    ]


def test_h_graduation_of_regular_centralizer():
    alg = build_algebra("A", 2)
    t = principal_triplet(alg)
    pieces = h_graduation(t.h, centralizer(t.e))
    assert [(lam, sp.dim) for lam, sp in pieces] == [(2, 1), (4, 1)]


def test_h_graduation_rejects_unstable_subspace():
    alg = build_algebra("A", 1)
    t = principal_triplet(alg)
    line_f = Subspace.from_elements(alg, [t.f + t.e])
    with pytest.raises(GraduationError):
        h_graduation(t.h, line_f)


def test_unipotent_ad_of_zero_is_identity():
    alg = build_algebra("A", 1)
    assert unipotent_ad(alg.zero()) == Mat.identity(alg.dim)


def test_unipotent_ad_moves_f():
    alg = build_algebra("A", 1)
    t = principal_triplet(alg)
    ad = unipotent_ad(t.e)
    moved = Element(alg, ad.mul_vec(list(t.f.coords)))
    assert moved == t.f + t.h - t.e


def test_unipotent_ad_preserves_gram():
    alg = build_algebra("A", 2)
    rng = random.Random(41)
    for _ in range(5):
        ad = unipotent_ad(alg.random_upper_nilpotent(rng))
        assert ad.transpose() * alg.gram * ad == alg.gram


def test_unipotent_ad_inverse_and_automorphism():
    alg = build_algebra("B", 2)
    rng = random.Random(43)
    n = alg.random_upper_nilpotent(rng)
    ad = unipotent_ad(n)
    assert ad * unipotent_ad(-n) == Mat.identity(alg.dim)
    for _ in range(10):
        x, y = alg.random_element(rng), alg.random_element(rng)
        ax = Element(alg, ad.mul_vec(list(x.coords)))
        ay = Element(alg, ad.mul_vec(list(y.coords)))
        moved = Element(alg, ad.mul_vec(list(bracket(x, y).coords)))
        assert bracket(ax, ay) == moved


def test_unipotent_ad_rejects_non_nilpotent():
    alg = build_algebra("A", 1)
    h = alg.from_matrix([[1, 0], [0, -1]])
    with pytest.raises(ContractError):
        unipotent_ad(h)


def test_coordinate_round_trip():
    alg = build_algebra("C", 2)
    rng = random.Random(3)
    for _ in range(10):
        x = alg.random_element(rng)
        assert alg.from_matrix(x.matrix()) == x


def test_from_matrix_rejects_outsiders():
    alg = build_algebra("A", 1)
    with pytest.raises(ContractError):
        alg.from_matrix([[1, 0], [0, 1]])  # identity is not traceless


def test_serializable_description():
    import json

    alg = build_algebra("D", 2)
    desc = alg.describe()
    assert not desc["simple"]
    assert not desc["distinct_exponents"]
    json.dumps(desc)  # must be plain JSON data
