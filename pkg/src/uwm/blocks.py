"""Exact constructors for the named unit weighing matrices of small weight.

Weight <= 4 blocks live over L = 12 so that a = e^{2 pi i/3} is zeta_12^4 and
-1 is zeta_12^6. F5 lives over L = 5.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import ONE, ZERO, UnitEntry
from .errors import InvariantError
from .matrix import UnitMatrix, gram_check, permute_cols

L12 = 12
A = 4  # e^{2 pi i/3}
ABAR = 8
MINUS = 6

_SIGNS = {"+": 0, "-": MINUS, "0": None}


def _from_signs(text: str) -> UnitMatrix:
    rows = [[_SIGNS[ch] for ch in line] for line in text.split()]
    return UnitMatrix.from_ints(rows, L12)


def _verified(W: UnitMatrix, label: str) -> UnitMatrix:
    if not gram_check(W):
        raise InvariantError(f"{label} fails the Gram check")
    return W


def block_identity(n: int = 1) -> UnitMatrix:
    return UnitMatrix.from_ints([[0 if i == j else None for j in range(n)] for i in range(n)], L12)


def block_b2() -> UnitMatrix:
    return _verified(UnitMatrix.from_ints([[0, 0], [0, MINUS]], L12), "B2")


def block_uw33() -> UnitMatrix:
    return _verified(UnitMatrix.from_ints([[0, 0, 0], [0, A, ABAR], [0, ABAR, A]], L12), "UW(3,3)")


def block_uw43() -> UnitMatrix:
    return _verified(_from_signs("+++0 +-0+ +0-- 0+-+"), "UW(4,3)")


def block_w5() -> UnitMatrix:
    Z = None
    rows = [
        [0, 0, 0, 0, Z],
        [0, A, ABAR, Z, 0],
        [0, ABAR, Z, A, ABAR],
        [0, Z, A, ABAR, A],
        [Z, 0, ABAR, A, A],
    ]
    return _verified(UnitMatrix.from_ints(rows, L12), "W5")


def block_w6() -> UnitMatrix:
    Z = None
    neg_a, neg_abar = (A + MINUS) % L12, (ABAR + MINUS) % L12
    rows = [
        [0, 0, 0, 0, Z, Z],
        [0, A, ABAR, Z, 0, Z],
        [0, ABAR, A, Z, Z, 0],
        [0, Z, Z, MINUS, MINUS, MINUS],
        [Z, 0, Z, MINUS, neg_abar, neg_a],
        [Z, Z, 0, MINUS, neg_a, neg_abar],
    ]
    return _verified(UnitMatrix.from_ints(rows, L12), "W6")


def block_w7() -> UnitMatrix:
    return _verified(
        _from_signs("1111000 1-00110 10-0-01 100-0-- 01-001- 010-101 001--10".replace("1", "+")),
        "W7",
    )


def block_w8() -> UnitMatrix:
    return _verified(
        _from_signs(
            "11110000 1-001100 10-0-010 100-0--0 01-01001 010-010- 001-0011 00001-1-".replace("1", "+")
        ),
        "W8",
    )


def _coerce_x(x: UnitEntry | int | None) -> UnitEntry:
    if x is None:
        return ONE
    if isinstance(x, int):
        return UnitEntry(x % L12)
    if x.is_zero:
        raise ValueError("x must be unimodular")
    return x


def block_e2m(m: int, x: UnitEntry | int | None = None) -> UnitMatrix:
    """The 2m x 2m weight-4 block E_2m(x); ``x`` is a root index, a UnitEntry, or the formal X."""
    if m < 2:
        raise ValueError(f"E_2m needs m >= 2, got {m}")
    x = _coerce_x(x)
    neg = UnitEntry(MINUS)
    one, minus = ONE, neg
    xe, mx = x, x.mul(neg, L12)
    n = 2 * m
    g = [[ZERO] * n for _ in range(n)]

    def put(pair: int, col: int, top: tuple, bottom: tuple):
        # pair and col are 1-based, matching the usual drawings of E_2m
        r = 2 * pair - 2
        g[r][col - 1], g[r][col] = top
        g[r + 1][col - 1], g[r + 1][col] = bottom

    put(1, 1, (one, one), (one, one))
    put(1, 3, (one, one), (minus, minus))
    for j in range(2, m):
        put(j, 2 * j - 3, (one, minus), (one, minus))
        put(j, 2 * j + 1, (one, one), (minus, minus))
    put(m, 2 * m - 3, (one, minus), (one, minus))
    put(m, 2 * m - 1, (xe, mx), (mx, xe))
    return _verified(UnitMatrix.from_rows(g, L12, 4), f"E_{n}")


def block_f5() -> UnitMatrix:
    """The Fourier matrix of order 5, entry (i, j) = zeta_5^(i*j)."""
    return _verified(UnitMatrix.from_ints([[(i * j) % 5 for j in range(5)] for i in range(5)], 5), "F5")


def block_uw65(x: UnitEntry | int | None = None) -> UnitMatrix:
    """The UW(6,5) with one free unimodular parameter."""
    x = _coerce_x(x)
    neg = UnitEntry(MINUS)
    o, z = ONE, ZERO
    xb = x.conj(L12)
    mx, mxb = x.mul(neg, L12), xb.mul(neg, L12)
    rows = [
        [o, o, o, o, o, z],
        [o, neg, x, mx, z, o],
        [o, mxb, neg, z, xb, neg],
        [o, xb, z, neg, mxb, neg],
        [o, z, mx, x, neg, o],
        [z, o, neg, neg, o, o],
    ]
    return _verified(UnitMatrix.from_rows(rows, L12, 5), "UW(6,5)")


# ---------------------------------------------------------------------------

LABELS = ("I1", "B2", "UW33", "UW43", "W5", "W6", "W7", "W8", "E2m", "F5", "UW65")


@dataclass(frozen=True)
class BlockId:
    label: str
    param: int | None = None
    x: UnitEntry | None = None

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown block label {self.label!r}; expected one of {', '.join(LABELS)}")
        if self.label == "E2m":
            if self.param is None or self.param < 2:
                raise ValueError("E2m requires m >= 2")
        elif self.param is not None:
            raise ValueError(f"{self.label} takes no m parameter")
        if self.x is not None and self.label not in ("E2m", "UW65"):
            raise ValueError(f"{self.label} takes no x parameter")


def build_block(bid: BlockId) -> UnitMatrix:
    label = bid.label
    if label == "I1":
        return block_identity(1)
    if label == "E2m":
        return block_e2m(bid.param, bid.x)
    if label == "UW65":
        return block_uw65(bid.x)
    return {
        "B2": block_b2,
        "UW33": block_uw33,
        "UW43": block_uw43,
        "W5": block_w5,
        "W6": block_w6,
        "W7": block_w7,
        "W8": block_w8,
        "F5": block_f5,
    }[label]()


@dataclass(frozen=True)
class SwapWitness:
    m: int
    columns: tuple[int, int]  # 0-based columns exchanged
    holds: bool


def e2m_sign_swap_equivalence(m: int) -> SwapWitness:
    """Check that exchanging the last two columns of E_2m(1) gives E_2m(-1)."""
    n = 2 * m
    perm = list(range(n))
    perm[n - 2], perm[n - 1] = perm[n - 1], perm[n - 2]
    swapped = permute_cols(block_e2m(m, 0), perm)
    return SwapWitness(m, (n - 2, n - 1), swapped == block_e2m(m, MINUS))
