"""Partitions, nilpotent constructions, and sl(2)-triple completion."""

import pytest

from nilab import (
    ContractError,
    Partition,
    PartitionError,
    bracket,
    build_algebra,
    centralizer,
    nilpotent_from_partition,
    principal_partition,
    principal_triplet,
    rank_kernel,
    sl2_complete,
    unipotent_ad,
)
from nilab.algebras import Element


def E(n, i, j):
    rows = [[0] * n for _ in range(n)]
    rows[i][j] = 1
    return rows


def jordan_type(e):
    """Independent Jordan-type oracle: the increments of dim ker(e^k) are
    the conjugate partition, so conjugate them back."""
    n = e.algebra.matrix_size_N
    m = e.matrix()
    nullities = [0]
    power = m
    for _ in range(n):
        rank, _ = rank_kernel(power)
        nullities.append(n - rank)
        if n - rank == n:
            break
        power = power * m
    increments = [
        nullities[k] - nullities[k - 1] for k in range(1, len(nullities))
    ]
    parts = []
    for j in range(1, n + 1):
        count = sum(1 for inc in increments if inc >= j)
        if count:
            parts.append(count)
    # parts currently lists lambda'_j conjugated; conjugate of increments
    return tuple(sorted(parts, reverse=True))


def test_partition_validation():
    with pytest.raises(PartitionError):
        Partition((1, 2))
    with pytest.raises(PartitionError):
        Partition((0,))
    with pytest.raises(PartitionError):
        Partition(())
    assert Partition.parse("3,2,2").parts == (3, 2, 2)
    with pytest.raises(PartitionError):
        Partition.parse("3,x")


def test_partition_family_constraints():
    b2 = build_algebra("B", 2)
    with pytest.raises(PartitionError):
        nilpotent_from_partition(b2, Partition((4, 1)))  # even part, odd multiplicity
    c2 = build_algebra("C", 2)
    with pytest.raises(PartitionError):
        nilpotent_from_partition(c2, Partition((3, 1)))  # odd parts, odd multiplicity
    a2 = build_algebra("A", 2)
    with pytest.raises(PartitionError):
        nilpotent_from_partition(a2, Partition((2, 2)))  # wrong total


def test_sl_jordan_nilpotents():
    a1 = build_algebra("A", 1)
    assert nilpotent_from_partition(a1, Partition((2,))) == a1.from_matrix(E(2, 0, 1))
    a2 = build_algebra("A", 2)
    e3 = nilpotent_from_partition(a2, Partition((3,)))
    assert e3 == a2.from_matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    e21 = nilpotent_from_partition(a2, Partition((2, 1)))
    assert e21 == a2.from_matrix(E(3, 0, 1))


@pytest.mark.parametrize(
    "family,rank,parts",
    [
        ("B", 2, (5,)),
        ("B", 2, (3, 1, 1)),
        ("B", 2, (2, 2, 1)),
        ("B", 3, (7,)),
        ("B", 3, (3, 3, 1)),
        ("B", 3, (5, 1, 1)),
        ("C", 2, (4,)),
        ("C", 2, (2, 2)),
        ("C", 2, (2, 1, 1)),
        ("C", 3, (6,)),
        ("C", 3, (3, 3)),
        ("C", 3, (4, 1, 1)),
        ("D", 2, (3, 1)),
        ("D", 2, (2, 2)),
        ("D", 3, (5, 1)),
        ("D", 3, (3, 3)),
        ("D", 3, (3, 1, 1, 1)),
        ("D", 3, (2, 2, 1, 1)),
    ],
)
def test_bcd_nilpotents_intrinsic(family, rank, parts):
    """Intrinsic correctness: lies in the algebra, nilpotent, right Jordan
    type, and the triple completes."""
    alg = build_algebra(family, rank)
    p = Partition(parts)
    e = nilpotent_from_partition(alg, p)  # membership enforced by from_matrix
    assert e.is_nilpotent()
    assert jordan_type(e) == p.parts
    if not e.is_zero():
        t = sl2_complete(alg, e)
        assert t.e == e


def test_sl2_complete_closed_form_sl2():
    alg = build_algebra("A", 1)
    t = sl2_complete(alg, alg.from_matrix(E(2, 0, 1)))
    assert t.h == alg.from_matrix([[1, 0], [0, -1]])
    assert t.f == alg.from_matrix(E(2, 1, 0))


def test_sl2_complete_closed_form_sl3_regular():
    # block formula with d = 3: f has subdiagonal entries 1*(3-1), 2*(3-2)
    alg = build_algebra("A", 2)
    t = sl2_complete(alg, nilpotent_from_partition(alg, Partition((3,))))
    assert t.h == alg.from_matrix([[2, 0, 0], [0, 0, 0], [0, 0, -2]])
    assert t.f == alg.from_matrix([[0, 0, 0], [2, 0, 0], [0, 2, 0]])


def test_sl2_complete_closed_form_sl3_subregular():
    alg = build_algebra("A", 2)
    t = sl2_complete(alg, alg.from_matrix(E(3, 0, 1)))
    assert t.h == alg.from_matrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]])
    assert t.f == alg.from_matrix(E(3, 1, 0))


def test_sl2_complete_general_fallback():
    # conjugated nilpotent: not Jordan-shaped, so the linear-system path runs
    alg = build_algebra("A", 2)
    e = nilpotent_from_partition(alg, Partition((3,)))
    e21 = alg.from_matrix(E(3, 1, 0))
    ad = unipotent_ad(e21.scale(2))
    moved = Element(alg, ad.mul_vec(list(e.coords)))
    assert moved != e
    t = sl2_complete(alg, moved)
    assert t.e == moved
    assert bracket(t.h, t.e) == t.e.scale(2)


def test_sl2_complete_contract_errors():
    alg = build_algebra("A", 1)
    with pytest.raises(ContractError):
        sl2_complete(alg, alg.zero())
    h = alg.from_matrix([[1, 0], [0, -1]])
    with pytest.raises(ContractError):
        sl2_complete(alg, h)


def test_triplet_relations_always_hold():
    for family, rank in [("A", 3), ("B", 2), ("C", 2), ("D", 3)]:
        alg = build_algebra(family, rank)
        t = principal_triplet(alg)
        assert bracket(t.h, t.e) == t.e.scale(2)
        assert bracket(t.h, t.f) == t.f.scale(-2)
        assert bracket(t.e, t.f) == t.h


def test_h_has_integer_spectrum():
    # ad(h) eigenvalues are integers; for principal triples they are even
    from nilab import h_graduation

    for family, rank in [("A", 2), ("B", 2), ("C", 2)]:
        alg = build_algebra(family, rank)
        t = principal_triplet(alg)
        pieces = h_graduation(t.h, alg.full_space())
        for lam, _ in pieces:
            assert lam.denominator == 1
            assert int(lam) % 2 == 0


def test_h_integer_diagonal():
    # closed-form path (sl) and the linear-system path (so/sp) both land on
    # a weighted-diagonal grading element with integer entries
    cases = [
        ("A", 3, [(4,), (3, 1), (2, 2), (2, 1, 1)]),
        ("B", 2, [(5,), (3, 1, 1), (2, 2, 1)]),
        ("C", 2, [(4,), (2, 2), (2, 1, 1)]),
        ("D", 3, [(5, 1), (3, 3)]),
    ]
    for family, rank, parts_list in cases:
        alg = build_algebra(family, rank)
        for parts in parts_list:
            t = sl2_complete(alg, nilpotent_from_partition(alg, Partition(parts)))
            for i in range(alg.matrix_size_N):
                assert t.h.matrix_rows()[i][i].denominator == 1


@pytest.mark.parametrize(
    "family,rank,zdim",
    [("A", 1, 1), ("A", 2, 2), ("A", 3, 3), ("B", 2, 2), ("C", 2, 2), ("D", 3, 3)],
)
def test_principal_triplet_regularity(family, rank, zdim):
    alg = build_algebra(family, rank)
    t = principal_triplet(alg)
    assert centralizer(t.e).dim == zdim == alg.rank_r


def test_principal_partitions():
    assert principal_partition(build_algebra("A", 2)).parts == (3,)
    assert principal_partition(build_algebra("B", 2)).parts == (5,)
    assert principal_partition(build_algebra("C", 2)).parts == (4,)
    assert principal_partition(build_algebra("D", 3)).parts == (5, 1)


def test_regular_centralizer_graduation():
    # eigenvalues of ad(h) on z(e) are twice the exponents
    from nilab import h_graduation

    for family, rank in [("A", 2), ("A", 3), ("B", 2), ("C", 2)]:
        alg = build_algebra(family, rank)
        t = principal_triplet(alg)
        pieces = h_graduation(t.h, centralizer(t.e))
        got = sorted(int(lam) for lam, sp in pieces for _ in range(sp.dim))
        assert got == sorted(2 * m for m in alg.exponents)
