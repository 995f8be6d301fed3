from collections import Counter

import pytest

from reference_tables import COUNTS_W4, LISTS_W4
from uwm.blocks import block_b2, block_e2m, block_uw33, block_uw43, block_w5
from uwm.compose import (
    Existence,
    PartMultiset,
    compose_from_parts,
    count_decompositions,
    decomposition_table,
    direct_sum,
    enumerate_part_multisets,
    exists_uw,
    exists_w_real,
)
from uwm.cyclotomic import X
from uwm.matrix import gram_check, standardize

SIZES = {
    (3, False): [3, 4],
    (3, True): [4],
    (4, False): [5, 6, 7, 8] + list(range(4, 21, 2)),
    (4, True): [7, 8] + list(range(4, 21, 2)),
}


def brute_counts(sizes, limit=20):
    """Multisets of labels (one entry per label, equal sizes kept distinct) by total size."""
    totals = Counter()

    def walk(i, total):
        if i == len(sizes):
            totals[total] += 1
            return
        k = 0
        while total + k * sizes[i] <= limit:
            walk(i + 1, total + k * sizes[i])
            k += 1

    walk(0, 0)
    return totals


@pytest.mark.parametrize("key", list(SIZES))
def test_counts_match_brute_force(key):
    w, real = key
    totals = brute_counts(SIZES[key])
    for n in range(1, 21):
        assert count_decompositions(n, w, real) == totals[n]


def test_count_examples():
    assert count_decompositions(12, 4) == 8
    assert count_decompositions(100, 4) == 502179
    assert count_decompositions(12, 3) == 2
    with pytest.raises(ValueError):
        count_decompositions(0, 4)


def test_count_table():
    table = decomposition_table(100, 4)
    assert {n: table[n] for n in range(1, 101)} == COUNTS_W4


def test_big_counts_are_exact():
    assert count_decompositions(2000, 4) > 2**64


@pytest.mark.parametrize("n", sorted(LISTS_W4))
def test_enumeration_matches_reference_lists(n):
    got = enumerate_part_multisets(n, 4)
    reference = [PartMultiset(4, parts).parts for parts in LISTS_W4[n]]
    assert len(got) == len(reference)
    assert sorted(p.parts for p in got) == sorted(reference)


def test_enumeration_order():
    assert [p.parts for p in enumerate_part_multisets(8, 4)] == [("8*",), ("4", "4"), ("8",)]
    assert enumerate_part_multisets(5, 3) == []
    with pytest.raises(ValueError):
        enumerate_part_multisets(61, 4)


@pytest.mark.parametrize("w", [3, 4])
@pytest.mark.parametrize("real", [False, True])
def test_enumeration_length_equals_count(w, real):
    for n in range(1, 61):
        assert len(enumerate_part_multisets(n, w, real)) == count_decompositions(n, w, real)


@pytest.mark.parametrize("w", [3, 4])
@pytest.mark.parametrize("real", [False, True])
def test_compositions_pass_gram(w, real):
    for n in range(1, 21):
        for p in enumerate_part_multisets(n, w, real):
            W = compose_from_parts(p)
            assert W.n == n and gram_check(W)
            if real:
                assert all(e.root in (None, 0, 6) for r in W.entries for e in r)


def test_part_multiset_validation():
    assert PartMultiset.parse("4, 5*", 4).parts == ("5*", "4")
    with pytest.raises(ValueError):
        PartMultiset(4, ("5*",), real_only=True)
    with pytest.raises(ValueError):
        PartMultiset(3, ("3",), real_only=True)
    with pytest.raises(ValueError):
        PartMultiset(4, ("3",))
    with pytest.raises(ValueError):
        PartMultiset(4, ("9",))
    with pytest.raises(ValueError):
        PartMultiset(5, ("5",))


def test_compose_examples():
    W = compose_from_parts(PartMultiset(4, ("5*", "4")))
    assert W.n == 9 and gram_check(W)
    W = compose_from_parts(PartMultiset(3, ("4", "4", "4")))
    assert (W.n, W.w) == (12, 3) and all(e.root in (None, 0, 6) for r in W.entries for e in r)
    W = compose_from_parts(PartMultiset(4, ("14",)))
    assert W == block_e2m(7)
    W = compose_from_parts(PartMultiset(4, ("5*", "8")), X)
    assert W.v == 1 and gram_check(W)
    # one formal variable per matrix, so only one 2m part may carry it
    with pytest.raises(ValueError):
        compose_from_parts(PartMultiset(4, ("6", "8")), X)
    assert gram_check(compose_from_parts(PartMultiset(4, ("6", "8")), 3))


def test_direct_sum():
    W = direct_sum([block_b2(), block_b2()])
    assert standardize(W) == W and gram_check(W)
    assert gram_check(direct_sum([block_uw33(), block_uw43()]))
    W = direct_sum([block_w5(), block_e2m(2, X)])
    assert (W.n, W.v) == (9, 1) and gram_check(W)
    with pytest.raises(ValueError):
        direct_sum([block_b2(), block_uw33()])
    with pytest.raises(ValueError):
        direct_sum([block_e2m(2, X), block_e2m(2, X)])
    with pytest.raises(ValueError):
        direct_sum([])


def test_exists_examples():
    assert exists_uw(5, 3) is Existence.NOT_EXISTS
    assert exists_uw(6, 2) is Existence.EXISTS
    assert exists_uw(7, 5) is Existence.NOT_EXISTS
    assert exists_uw(6, 5) is Existence.EXISTS
    assert exists_uw(8, 5) is Existence.UNKNOWN
    assert exists_uw(3, 2) is Existence.NOT_EXISTS
    assert exists_uw(9, 4) is Existence.EXISTS
    assert exists_w_real(12, 3) is Existence.EXISTS
    assert exists_w_real(9, 4) is Existence.NOT_EXISTS
    assert exists_w_real(10, 3) is Existence.NOT_EXISTS
    assert exists_w_real(10, 6) is Existence.UNKNOWN


def test_weight_three_characterisations_agree():
    table = decomposition_table(10_000, 3)
    for n in range(1, 10_001):
        assert (exists_uw(n, 3) is Existence.EXISTS) == (table[n] > 0)
    real = decomposition_table(10_000, 3, True)
    for n in range(1, 10_001):
        assert (exists_w_real(n, 3) is Existence.EXISTS) == (real[n] > 0)


def test_weight_four_existence_matches_counts():
    table = decomposition_table(200, 4)
    real = decomposition_table(200, 4, True)
    for n in range(1, 201):
        assert (exists_uw(n, 4) is Existence.EXISTS) == (table[n] > 0)
        assert (exists_w_real(n, 4) is Existence.EXISTS) == (real[n] > 0)
