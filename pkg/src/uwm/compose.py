"""Direct sums, existence predicates and decomposition counting for small weights."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .blocks import block_e2m, block_uw33, block_uw43, block_w5, block_w6, block_w7, block_w8
from .cyclotomic import UnitEntry
from .matrix import UnitMatrix

STARRED = {"5*": 5, "6*": 6, "7*": 7, "8*": 8}
_STAR_BLOCKS = {"5*": block_w5, "6*": block_w6, "7*": block_w7, "8*": block_w8}
DEFAULT_ENUM_BOUND = 60


class Existence(str, Enum):
    EXISTS = "exists"
    NOT_EXISTS = "not_exists"
    UNKNOWN = "unknown"


# ---------------------------------------------------------------------------
# direct sums

def direct_sum(blocks: Sequence[UnitMatrix]) -> UnitMatrix:
    """Block-diagonal composition; blocks are lifted to a common root order."""
    if not blocks:
        raise ValueError("direct sum of no blocks")
    weights = {B.w for B in blocks}
    if len(weights) != 1:
        raise ValueError(f"blocks of different weights: {sorted(weights)}")
    if sum(B.v for B in blocks) > 1:
        raise ValueError("at most one block may carry the formal variable x")
    L = math.lcm(*(B.L for B in blocks))
    blocks = [B.lift(L) for B in blocks]
    n = sum(B.n for B in blocks)
    zero = UnitEntry()
    rows = []
    offset = 0
    for B in blocks:
        for r in B.entries:
            rows.append((zero,) * offset + r + (zero,) * (n - offset - B.n))
        offset += B.n
    return UnitMatrix.from_rows(rows, L, blocks[0].w)


# ---------------------------------------------------------------------------
# part multisets

def label_size(label: str) -> int:
    return STARRED.get(label) or int(label)


def _label_key(label: str) -> tuple[int, int]:
    # starred labels first, then plain sizes ascending
    return (0, STARRED[label]) if label in STARRED else (1, int(label))


def _valid_labels(weight: int, real_only: bool, n: int) -> list[str]:
    if weight == 3:
        return ["4"] if real_only else ["3", "4"]
    if weight == 4:
        stars = ["7*", "8*"] if real_only else ["5*", "6*", "7*", "8*"]
        return stars + [str(s) for s in range(4, max(n, 4) + 1, 2)]
    raise ValueError(f"decompositions are defined for weight 3 or 4, not {weight}")


def _check_label(label: str, weight: int, real_only: bool) -> None:
    if weight == 3:
        ok = label in (("4",) if real_only else ("3", "4"))
    elif weight == 4:
        if label in STARRED:
            ok = not (real_only and label in ("5*", "6*"))
        else:
            ok = label.isdigit() and int(label) >= 4 and int(label) % 2 == 0
    else:
        raise ValueError(f"decompositions are defined for weight 3 or 4, not {weight}")
    if not ok:
        kind = "real " if real_only else ""
        raise ValueError(f"label {label!r} is not a valid {kind}part for weight {weight}")


@dataclass(frozen=True)
class PartMultiset:
    weight: int
    parts: tuple[str, ...]
    real_only: bool = False

    def __post_init__(self):
        for p in self.parts:
            _check_label(p, self.weight, self.real_only)
        object.__setattr__(self, "parts", tuple(sorted(self.parts, key=_label_key)))

    @property
    def n(self) -> int:
        return sum(label_size(p) for p in self.parts)

    def __str__(self) -> str:
        return " ".join(self.parts)

    @classmethod
    def parse(cls, text: str, weight: int, real_only: bool = False) -> PartMultiset:
        parts = [p for p in text.replace(",", " ").split() if p]
        if not parts:
            raise ValueError("empty part list")
        return cls(weight, tuple(parts), real_only)


def compose_from_parts(p: PartMultiset, x: UnitEntry | int | None = None) -> UnitMatrix:
    """Direct sum of the blocks named by ``p``; every 2m part uses the same x (default 1)."""
    blocks = []
    for label in p.parts:
        if p.weight == 3:
            blocks.append(block_uw33() if label == "3" else block_uw43())
        elif label in _STAR_BLOCKS:
            blocks.append(_STAR_BLOCKS[label]())
        else:
            blocks.append(block_e2m(int(label) // 2, x))
    return direct_sum(blocks)


# ---------------------------------------------------------------------------
# counting and enumeration

def decomposition_table(max_n: int, w: int, real_only: bool = False) -> list[int]:
    """Counts for every order 0..max_n in one coin-change pass over the labels."""
    if max_n < 0:
        raise ValueError("max_n must be non-negative")
    table = [1] + [0] * max_n
    for label in _valid_labels(w, real_only, max_n):
        s = label_size(label)
        for total in range(s, max_n + 1):
            table[total] += table[total - s]
    return table


def count_decompositions(n: int, w: int, real_only: bool = False) -> int:
    """Number of part multisets of total size n."""
    if n < 1:
        raise ValueError("n must be positive")
    return decomposition_table(n, w, real_only)[n]


def enumerate_part_multisets(
    n: int, w: int, real_only: bool = False, bound: int = DEFAULT_ENUM_BOUND
) -> list[PartMultiset]:
    """All part multisets of size n, each listed starred-first, sorted by label sequence."""
    if n > bound:
        raise ValueError(f"n={n} exceeds the enumeration bound {bound}")
    labels = sorted(_valid_labels(w, real_only, n), key=_label_key)
    out: list[tuple[str, ...]] = []

    def rec(start: int, left: int, acc: list[str]):
        if left == 0:
            out.append(tuple(acc))
            return
        for k in range(start, len(labels)):
            s = label_size(labels[k])
            if s <= left:
                acc.append(labels[k])
                rec(k, left - s, acc)
                acc.pop()

    rec(0, n, [])
    out.sort(key=lambda parts: [_label_key(p) for p in parts])
    return [PartMultiset(w, parts, real_only) for parts in out]


# ---------------------------------------------------------------------------
# existence

def exists_uw(n: int, w: int) -> Existence:
    """Existence of a UW(n, w) as settled for weights up to 5 (orders up to 7 for weight 5)."""
    if n < 1 or w < 1:
        raise ValueError("n and w must be positive")
    if n < w:
        return Existence.NOT_EXISTS
    if n == w:
        return Existence.EXISTS  # Fourier matrix of order n
    if w == 1:
        return Existence.EXISTS
    if w == 2:
        return Existence.EXISTS if n % 2 == 0 else Existence.NOT_EXISTS
    if w == 3:
        return Existence.NOT_EXISTS if n == 5 else Existence.EXISTS
    if w == 4:
        return Existence.EXISTS
    if w == 5:
        if n == 6:
            return Existence.EXISTS
        if n == 7:
            return Existence.NOT_EXISTS
    return Existence.UNKNOWN


def exists_w_real(n: int, w: int) -> Existence:
    """Existence of a real (0, +-1) weighing matrix W(n, w) for w <= 4."""
    if n < 1 or w < 1:
        raise ValueError("n and w must be positive")
    if n < w:
        return Existence.NOT_EXISTS
    if w == 1:
        return Existence.EXISTS
    if w == 2:
        return Existence.EXISTS if n % 2 == 0 else Existence.NOT_EXISTS
    if w == 3:
        return Existence.EXISTS if n % 4 == 0 else Existence.NOT_EXISTS
    if w == 4:
        return Existence.NOT_EXISTS if n in (5, 9) else Existence.EXISTS
    return Existence.UNKNOWN
