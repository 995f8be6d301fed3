import time

import pytest

from uwm.blocks import (
    LABELS,
    BlockId,
    block_b2,
    block_e2m,
    block_f5,
    block_identity,
    block_uw33,
    block_uw43,
    block_uw65,
    block_w5,
    block_w6,
    block_w7,
    block_w8,
    build_block,
    e2m_sign_swap_equivalence,
)
from uwm.compose import direct_sum
from uwm.cyclotomic import ONE, ZERO, X, UnitEntry
from uwm.matrix import UnitMatrix, gram_check, is_standard_form, standardize

# Reference E_4, E_6, E_8: '+', '-', '0', 'x' and 'X' (for -x)
E_REFERENCE = {
    2: ["++++", "++--", "+-xX", "+-Xx"],
    3: ["++++00", "++--00", "+-00++", "+-00--", "00+-xX", "00+-Xx"],
    4: [
        "++++0000",
        "++--0000",
        "+-00++00",
        "+-00--00",
        "00+-00++",
        "00+-00--",
        "0000+-xX",
        "0000+-Xx",
    ],
}
_SYM = {"+": ONE, "-": UnitEntry(6), "0": ZERO, "x": X, "X": UnitEntry(6, 1)}


def from_signs(rows):
    return UnitMatrix.from_rows([[_SYM[c] for c in r] for r in rows], 12)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_e2m_matches_reference(m):
    assert block_e2m(m, X) == from_signs(E_REFERENCE[m])


def test_e2m_symbolic_up_to_100():
    t = time.perf_counter()
    for m in range(2, 101):
        E = block_e2m(m, X)
        assert E.n == 2 * m and E.w == 4 and E.v == 1
        assert gram_check(E)
    assert time.perf_counter() - t < 10


@pytest.mark.parametrize("k", range(12))
def test_e2m_numeric_x(k):
    assert gram_check(block_e2m(5, k))


def test_e2m_rejects_small_m():
    with pytest.raises(ValueError):
        block_e2m(1)


@pytest.mark.parametrize(
    "make, n, w",
    [
        (block_b2, 2, 2),
        (block_uw33, 3, 3),
        (block_uw43, 4, 3),
        (block_w5, 5, 4),
        (block_w6, 6, 4),
        (block_w7, 7, 4),
        (block_w8, 8, 4),
        (block_f5, 5, 5),
        (lambda: block_uw65(X), 6, 5),
        (lambda: block_identity(3), 3, 1),
    ],
)
def test_blocks_pass_gram(make, n, w):
    W = make()
    assert (W.n, W.w) == (n, w)
    assert gram_check(W)


def test_real_blocks_are_real():
    for W in (block_uw43(), block_w7(), block_w8(), block_b2()):
        assert all(e.root in (None, 0, 6) for r in W.entries for e in r)


def test_uw65_specialisations():
    for k in range(12):
        assert gram_check(block_uw65(k))
    assert block_uw65(X).v == 1


def test_f5_misprint_is_not_unitary():
    # swapping w and w^2 in the third row (and w^3, w^4 alike) breaks orthogonality
    misprint = [[0] * 5, [0, 1, 2, 3, 4], [0, 2, 1, 4, 3], [0, 3, 4, 1, 2], [0, 4, 3, 2, 1]]
    assert not gram_check(UnitMatrix.from_ints(misprint, 5))
    assert block_f5().to_ints()[2] == (0, 2, 4, 1, 3)


def test_blocks_are_standard():
    for W in (block_b2(), block_uw33(), block_uw43(), block_w5(), block_w6(), block_w7(), block_w8()):
        assert is_standard_form(W)
    assert is_standard_form(standardize(block_w8()))


def test_b2_sum_is_uw62():
    W = direct_sum([block_b2()] * 3)
    assert (W.n, W.w) == (6, 2) and gram_check(W)


@pytest.mark.parametrize("m", [2, 3, 10, 25])
def test_sign_swap(m):
    wit = e2m_sign_swap_equivalence(m)
    assert wit.holds and wit.columns == (2 * m - 2, 2 * m - 1)


def test_block_ids():
    assert set(LABELS) >= {"B2", "E2m", "UW65"}
    assert build_block(BlockId("E2m", 3, X)) == block_e2m(3, X)
    assert build_block(BlockId("W7")) == block_w7()
    assert build_block(BlockId("I1")).n == 1
    with pytest.raises(ValueError):
        BlockId("E2m")
    with pytest.raises(ValueError):
        BlockId("W5", 3)
    with pytest.raises(ValueError):
        BlockId("W5", None, X)
    with pytest.raises(ValueError):
        BlockId("Q9")
