import json
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import k_strict_tuples, typed_partitions
from ogschubert.partitions import (
    GrassParams,
    KStrictPartition,
    PartitionError,
    TypedPartition,
    conjugate,
    derived_shapes,
    enumerate_typed,
    index_functions,
    is_k_strict,
    k_strict_in_rectangle,
    k_strict_partitions,
    parse_text,
    typed,
)


def test_k_strict_rejects_repeats_above_k():
    assert KStrictPartition((3, 2, 2), 2).parts == (3, 2, 2)
    with pytest.raises(PartitionError):
        KStrictPartition((3, 3), 2)
    with pytest.raises(PartitionError):
        KStrictPartition((1, 2), 2)


def test_trailing_zeros_trimmed():
    assert KStrictPartition((4, 1, 0, 0), 1).parts == (4, 1)


def test_type_must_match_part_k():
    with pytest.raises(PartitionError):
        TypedPartition((3, 1), 2, 1)
    with pytest.raises(PartitionError):
        TypedPartition((3, 2), 2, 0)
    assert typed((3, 2), 2).type == 1
    assert typed((3, 1), 2).type == 0


def test_grass_params():
    p = GrassParams.from_mN(4, 12)
    assert (p.K, p.k, p.n, p.width) == (4, 2, 5, 7)
    assert p == GrassParams.even(2, 5)
    assert GrassParams.odd(2, 5) == GrassParams.from_mN(3, 11)
    assert p.odd_partner() == GrassParams.from_mN(3, 11)
    with pytest.raises(PartitionError):
        GrassParams.from_mN(3, 6)


def test_index_functions_example():
    # (3,2,2) type 2 in OG(4,12); the sets differ only where the type matters
    params = GrassParams.from_mN(4, 12)
    pbar, p = index_functions(TypedPartition((3, 2, 2), 2, 2), params)
    assert len(p) == 4
    assert all(1 <= x <= 12 for x in p)
    assert all(a + b != 13 for a in p for b in p)


@pytest.mark.parametrize("k,n", [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (2, 4), (3, 4)])
def test_cell_count_matches_isotropic_sets(k, n):
    # cells of OG(m, 2n+2) are the 2^m C(n+1, m) index sets
    m = n + 1 - k
    assert len(enumerate_typed(k, n)) == 2 ** m * comb(n + 1, m)


@pytest.mark.parametrize("k,n", [(1, 2), (2, 3), (2, 4)])
def test_odd_cell_count(k, n):
    m = n - k
    assert len(k_strict_in_rectangle(k, m, n + k)) == 2 ** m * comb(n, m)


def test_k_strict_partitions_of_small_sizes():
    # k = 0 gives strict partitions
    assert [len(k_strict_partitions(d, 0)) for d in range(8)] == [1, 1, 1, 2, 2, 3, 4, 5]
    assert k_strict_partitions(3, 1) == [(3,), (2, 1), (1, 1, 1)]


def test_derived_shapes():
    d = derived_shapes(TypedPartition((7, 4, 3, 2), 3, 2))
    assert d.lambda1 == (4, 1)
    assert d.lambda2 == (3, 3, 3, 2)
    assert d.lambda_star == (4, 3, 2)
    assert d.lambda_minus_k == (7, 4, 2)
    assert d.conjugate == conjugate((7, 4, 3, 2))


@given(k_strict_tuples())
def test_conjugate_is_involution(data):
    _, parts = data
    assert conjugate(conjugate(parts)) == parts


@given(k_strict_tuples())
def test_generated_tuples_are_k_strict(data):
    k, parts = data
    assert is_k_strict(parts, k)
    assert KStrictPartition(parts, k).parts == parts


@given(typed_partitions())
def test_text_round_trip(lam):
    assert parse_text(lam.to_text()) == lam


@given(typed_partitions())
def test_json_round_trip(lam):
    assert TypedPartition.from_json(json.dumps(lam.to_json())) == lam


@given(typed_partitions(), st.integers(0, 4))
def test_index_functions_are_increasing(lam, extra):
    n = max(lam.k, len(lam.parts) + lam.k - 1, (lam.parts[0] - lam.k) if lam.parts else 0) + extra
    params = GrassParams.even(lam.k, n)
    pbar, p = index_functions(lam, params)
    assert all(a < b for a, b in zip(p, p[1:]))
    assert all(a <= b for a, b in zip(p, pbar))


def test_validation_examples():
    assert KStrictPartition((5, 5, 2), 5).parts == (5, 5, 2)
    with pytest.raises(PartitionError):
        KStrictPartition((3, 3, 1), 2)


def test_ell_k_examples():
    from ogschubert.partitions import ell_k

    assert ell_k((3, 2, 2), 2) == 1
    assert ell_k((), 2) == 0
    assert ell_k((4, 3, 1), 2) == 2


def test_small_enumerations():
    got = {(lam.parts, lam.type) for lam in enumerate_typed(1, 1)}
    assert got == {((), 0), ((1,), 1), ((1,), 2), ((2,), 0)}
    got = {(lam.parts, lam.type) for lam in enumerate_typed(2, 2)}
    assert got == {((), 0), ((1,), 0), ((2,), 1), ((2,), 2), ((3,), 0), ((4,), 0)}


@pytest.mark.parametrize("m,N", [(2, 8), (3, 9), (1, 6)])
def test_index_function_of_empty_partition(m, N):
    params = GrassParams.from_mN(m, N)
    pbar, _ = index_functions(TypedPartition((), params.k, 0), params)
    assert pbar == [N - m + j for j in range(1, m + 1)]


@pytest.mark.parametrize("k,n", [(1, 2), (1, 4), (2, 4), (1, 3), (2, 3)])
def test_index_function_of_part_k(k, n):
    params = GrassParams.even(k, n)
    pbar, p = index_functions(TypedPartition((k,), k, 1), params)
    assert pbar[0] == n + 2
    if n % 2 == 0:
        assert p[0] == n + 1


@given(typed_partitions())
def test_plus_minus_k(lam):
    base = lam.base
    assert base.plus_k().minus_k() == base
    d = derived_shapes(lam)
    assert sum(d.lambda1) + sum(d.lambda2) == lam.size
