"""Unit weighing matrices: Gram verification, equivalence moves and standard forms."""
from __future__ import annotations

import itertools
import math
import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cyclotomic import ZERO, CycloNumber, LaurentCyclo, UnitEntry
from .errors import InvariantError

# A recorded equivalence move, e.g. ("scale_row", 2, 4) or ("permute_cols", (1, 0, 2)).
Op = tuple


@dataclass(frozen=True)
class UnitMatrix:
    """An n x n matrix over {0} and zeta_L^k x^e with exactly w nonzeros per row and column.

    ``v`` is 1 when some entry carries the formal variable x, else 0.
    """

    n: int
    w: int
    L: int
    v: int
    entries: tuple[tuple[UnitEntry, ...], ...]

    def __post_init__(self):
        n, w, L = self.n, self.w, self.L
        if n < 1 or not 1 <= w <= n:
            raise InvariantError(f"need 1 <= w <= n, got n={n} w={w}")
        if L < 1:
            raise InvariantError(f"root order must be positive, got {L}")
        if self.v not in (0, 1):
            raise InvariantError("variable count must be 0 or 1")
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise InvariantError(f"entries must form a {n}x{n} grid")
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e.root is not None and not 0 <= e.root < L:
                    raise InvariantError(f"root index {e.root} at ({i},{j}) outside [0,{L})")
                if e.var and not self.v:
                    raise InvariantError(f"entry ({i},{j}) uses x but the matrix declares vars=0")
        for i, row in enumerate(self.entries):
            k = sum(not e.is_zero for e in row)
            if k != w:
                raise InvariantError(f"row {i} has {k} nonzero entries, expected {w}")
        for j in range(n):
            k = sum(not self.entries[i][j].is_zero for i in range(n))
            if k != w:
                raise InvariantError(f"column {j} has {k} nonzero entries, expected {w}")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[UnitEntry]], L: int, w: int | None = None) -> UnitMatrix:
        grid = tuple(tuple(r) for r in rows)
        if w is None:
            w = sum(not e.is_zero for e in grid[0]) if grid else 0
        v = int(any(e.var for r in grid for e in r))
        return cls(len(grid), w, L, v, grid)

    @classmethod
    def from_ints(cls, grid: Iterable[Iterable[int | None]], L: int, w: int | None = None) -> UnitMatrix:
        """Build a ground matrix from root indices; ``None`` or a negative value means zero."""
        rows = [[ZERO if k is None or k < 0 else UnitEntry(k % L) for k in r] for r in grid]
        return cls.from_rows(rows, L, w)

    def to_ints(self) -> tuple[tuple[int, ...], ...]:
        """Root indices with -1 for zero; ground matrices only."""
        if self.v:
            raise ValueError("matrix carries the formal variable x")
        return tuple(tuple(-1 if e.root is None else e.root for e in r) for r in self.entries)

    def lift(self, L: int) -> UnitMatrix:
        if L == self.L:
            return self
        if L % self.L:
            raise ValueError(f"cannot lift root order {self.L} to {L}")
        f = L // self.L
        return UnitMatrix(self.n, self.w, L, self.v, tuple(tuple(e.lift(f) for e in r) for r in self.entries))

    def to_complex(self, x: complex = 1.0):
        """Numerical matrix (numpy), substituting ``x`` for the formal variable."""
        import cmath

        import numpy as np

        z = cmath.exp(2j * math.pi / self.L)
        out = np.zeros((self.n, self.n), dtype=complex)
        for i, r in enumerate(self.entries):
            for j, e in enumerate(r):
                if e.root is not None:
                    out[i, j] = z**e.root * x**e.var
        return out

    def __str__(self) -> str:
        def tok(e: UnitEntry) -> str:
            if e.root is None:
                return "0"
            return f"z{e.root}" + (f"x{e.var}" if e.var else "")

        return "\n".join(" ".join(tok(e) for e in r) for r in self.entries)


# ---------------------------------------------------------------------------
# Gram verification

def row_inner_products(W: UnitMatrix) -> dict[tuple[int, int], LaurentCyclo]:
    """Hermitian inner products <row i, row j> for i < j that share a nonzero column.

    Pairs absent from the result have disjoint supports and inner product 0.
    """
    L = W.L
    acc: dict[tuple[int, int], dict[int, list[int]]] = defaultdict(dict)
    for j in range(W.n):
        col = [(i, W.entries[i][j]) for i in range(W.n) if not W.entries[i][j].is_zero]
        for a in range(len(col)):
            i1, e1 = col[a]
            for b in range(a + 1, len(col)):
                i2, e2 = col[b]
                terms = acc[(i1, i2)]
                exp = e1.var - e2.var
                vec = terms.get(exp)
                if vec is None:
                    vec = terms[exp] = [0] * L
                vec[(e1.root - e2.root) % L] += 1
    return {
        pair: LaurentCyclo(L, {e: CycloNumber(L, vec) for e, vec in terms.items()})
        for pair, terms in acc.items()
    }


def gram_check(W: UnitMatrix) -> bool:
    """True iff W W* = w I exactly (for every unimodular x when W is symbolic)."""
    for i, row in enumerate(W.entries):
        if sum(not e.is_zero for e in row) != W.w:
            return False
    return all(p.is_zero() for p in row_inner_products(W).values())


# ---------------------------------------------------------------------------
# equivalence moves (T1-T6); permutations are 0-based, new[i] = old[perm[i]]

def _check_perm(perm: Sequence[int], n: int) -> tuple[int, ...]:
    perm = tuple(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {perm}")
    return perm


def _rebuild(W: UnitMatrix, grid, v: int | None = None) -> UnitMatrix:
    grid = tuple(tuple(r) for r in grid)
    if v is None:
        v = int(any(e.var for r in grid for e in r))
    return UnitMatrix(W.n, W.w, W.L, v, grid)


def permute_rows(W: UnitMatrix, perm: Sequence[int]) -> UnitMatrix:
    perm = _check_perm(perm, W.n)
    return _rebuild(W, (W.entries[p] for p in perm), W.v)


def permute_cols(W: UnitMatrix, perm: Sequence[int]) -> UnitMatrix:
    perm = _check_perm(perm, W.n)
    return _rebuild(W, (tuple(r[p] for p in perm) for r in W.entries), W.v)


def _as_unit(u: UnitEntry | int) -> UnitEntry:
    if isinstance(u, int):
        u = UnitEntry(u)
    if u.is_zero:
        raise ValueError("scaling by zero is not an equivalence")
    return u


def scale_row(W: UnitMatrix, i: int, u: UnitEntry | int) -> UnitMatrix:
    u = _as_unit(u)
    grid = [list(r) for r in W.entries]
    grid[i] = [e.mul(u, W.L) for e in grid[i]]
    return _rebuild(W, grid)


def scale_col(W: UnitMatrix, j: int, u: UnitEntry | int) -> UnitMatrix:
    u = _as_unit(u)
    grid = [list(r) for r in W.entries]
    for r in grid:
        r[j] = r[j].mul(u, W.L)
    return _rebuild(W, grid)


def hermitian_transpose(W: UnitMatrix) -> UnitMatrix:
    n, L = W.n, W.L
    return _rebuild(W, ((W.entries[j][i].conj(L) for j in range(n)) for i in range(n)), W.v)


def conjugate(W: UnitMatrix) -> UnitMatrix:
    return _rebuild(W, ((e.conj(W.L) for e in r) for r in W.entries), W.v)


def transpose(W: UnitMatrix) -> UnitMatrix:
    return conjugate(hermitian_transpose(W))


def apply_op(W: UnitMatrix, op: Op) -> UnitMatrix:
    kind = op[0]
    if kind == "permute_rows":
        return permute_rows(W, op[1])
    if kind == "permute_cols":
        return permute_cols(W, op[1])
    if kind == "scale_row":
        return scale_row(W, op[1], op[2])
    if kind == "scale_col":
        return scale_col(W, op[1], op[2])
    if kind == "hermitian_transpose":
        return hermitian_transpose(W)
    if kind == "conjugate":
        return conjugate(W)
    raise ValueError(f"unknown operation {kind!r}")


def replay(W: UnitMatrix, ops: Iterable[Op]) -> UnitMatrix:
    for op in ops:
        W = apply_op(W, op)
    return W


def random_equivalence_ops(W: UnitMatrix, seed: int) -> list[Op]:
    """A reproducible random sequence of T1-T4 moves (root-of-unity scalars only)."""
    rng = random.Random(seed)
    n, L = W.n, W.L
    ops: list[Op] = []
    rows = list(range(n))
    rng.shuffle(rows)
    ops.append(("permute_rows", tuple(rows)))
    cols = list(range(n))
    rng.shuffle(cols)
    ops.append(("permute_cols", tuple(cols)))
    for i in range(n):
        ops.append(("scale_row", i, rng.randrange(L)))
    for j in range(n):
        ops.append(("scale_col", j, rng.randrange(L)))
    return ops


def random_equivalence_scramble(W: UnitMatrix, seed: int) -> UnitMatrix:
    return replay(W, random_equivalence_ops(W, seed))


# ---------------------------------------------------------------------------
# ordering and standard form

def entry_key(e: UnitEntry, L: int) -> int:
    """Sort key realising the order: unimodulars by angle, then zero last."""
    if e.var:
        raise ValueError("the angle order is undefined for entries carrying x")
    return L if e.root is None else e.root


def entry_less(a: UnitEntry, b: UnitEntry, L: int = 12) -> bool:
    return entry_key(a, L) < entry_key(b, L)


def _require_ground(W: UnitMatrix) -> None:
    if W.v:
        raise ValueError("standard forms are only defined for matrices without the variable x")


def is_standard_form(W: UnitMatrix) -> bool:
    _require_ground(W)
    g = W.to_ints()
    n, w = W.n, W.w
    for row in g:  # S1
        if next(k for k in row if k >= 0) != 0:
            return False
    for j in range(n):  # S2
        if next(g[i][j] for i in range(n) if g[i][j] >= 0) != 0:
            return False
    if g[0] != (0,) * w + (-1,) * (n - w):  # S3
        return False
    keys = [tuple(W.L if k < 0 else k for k in row) for row in g]
    return all(keys[i] < keys[i + 1] for i in range(n - 1))  # S4


def _four_steps(g, n: int, L: int) -> tuple[list[list[int]], list[Op]]:
    """Row scaling, column scaling, packing of row 1, row sort; ops recorded."""
    g = [list(r) for r in g]
    ops: list[Op] = []
    for i in range(n):
        r = next(k for k in g[i] if k >= 0)
        if r:
            ops.append(("scale_row", i, -r % L))
            g[i] = [k if k < 0 else (k - r) % L for k in g[i]]
    for j in range(n):
        c = next(g[i][j] for i in range(n) if g[i][j] >= 0)
        if c:
            ops.append(("scale_col", j, -c % L))
            for i in range(n):
                if g[i][j] >= 0:
                    g[i][j] = (g[i][j] - c) % L
    perm = [j for j in range(n) if g[0][j] >= 0] + [j for j in range(n) if g[0][j] < 0]
    if perm != list(range(n)):
        ops.append(("permute_cols", tuple(perm)))
        g = [[r[j] for j in perm] for r in g]
    order = sorted(range(n), key=lambda i: tuple(L if k < 0 else k for k in g[i]))
    if order != list(range(n)):
        ops.append(("permute_rows", tuple(order)))
        g = [g[i] for i in order]
    return g, ops


def _refine_search(g, n: int, L: int, greedy: bool):
    """Row-by-row construction of the row-major least equivalent matrix.

    Columns whose entries agree in all rows placed so far form a block and are
    still interchangeable, so each new row is sorted inside every block.
    Placed rows and the columns they touch split into connected components;
    each component keeps one free phase, which the next row spends to make its
    first entry in that component equal to 1. ``greedy`` follows a single tie
    and yields some standard form; otherwise every tie is explored and the
    least result depends only on the T1-T4 class of the input.
    """
    best: list = [None]

    def candidates(i, blocks, base, group):
        row = g[i]
        choices: dict[int, list[int]] = {}
        order: list[int] = []
        for B in blocks:
            G = group[B[0]]
            if G is None or G in choices:
                continue
            found = {(-(row[c] + base[c])) % L for c in B if row[c] >= 0}
            if found:
                choices[G] = sorted(found)
                order.append(G)
        out = []
        for pick in itertools.product(*(choices[G] for G in order)):
            t = dict(zip(order, pick))
            form = []
            groups = []
            for B in blocks:
                G = group[B[0]]
                if G is None:
                    vals = [(0 if row[c] >= 0 else L, c) for c in B]
                else:
                    tg = t.get(G, 0)
                    vals = [((tg + row[c] + base[c]) % L if row[c] >= 0 else L, c) for c in B]
                vals.sort()
                form.extend(v for v, _ in vals)
                groups.append(vals)
            out.append((tuple(form), t, groups))
        return out

    def rec(remaining, blocks, base, group, placed, rows):
        if not remaining:
            cand = tuple(rows)
            if best[0] is None or cand < best[0][0]:
                best[0] = (cand, list(placed), list(base), [c for B in blocks for c in B])
            return
        depth = len(rows)
        options = []
        for i in remaining:
            for form, t, groups in candidates(i, blocks, base, group):
                options.append((form, i, t, groups))
        top = min(o[0] for o in options)
        if best[0] is not None and tuple(rows) == best[0][0][:depth] and top > best[0][0][depth]:
            return
        ties = [o for o in options if o[0] == top]
        if greedy:
            ties = ties[:1]
        for form, i, t, groups in ties:
            gid = depth
            new_base = list(base)
            new_group = list(group)
            merged = set(t)
            for c in range(n):
                G = group[c]
                if G is not None and G in merged:
                    new_base[c] = (base[c] + t[G]) % L
                    new_group[c] = gid
                elif G is None and g[i][c] >= 0:
                    new_base[c] = -g[i][c] % L
                    new_group[c] = gid
            new_blocks = []
            for vals in groups:
                cur: list[int] = []
                last = None
                for v, c in vals:
                    if v != last and cur:
                        new_blocks.append(tuple(cur))
                        cur = []
                    cur.append(c)
                    last = v
                new_blocks.append(tuple(cur))
            rest = [k for k in remaining if k != i]
            rec(rest, new_blocks, new_base, new_group, placed + [i], rows + [form])

    rec(list(range(n)), [tuple(range(n))], [None] * n, [None] * n, [], [])
    rows, placed, base, col_order = best[0]
    ops: list[Op] = []
    for a, i in enumerate(placed):
        b = next(b for b, c in enumerate(col_order) if g[i][c] >= 0)
        c = col_order[b]
        r = (rows[a][b] - g[i][c] - base[c]) % L
        if r:
            ops.append(("scale_row", i, r))
    for c in range(n):
        if base[c]:
            ops.append(("scale_col", c, base[c]))
    ops.append(("permute_rows", tuple(placed)))
    ops.append(("permute_cols", tuple(col_order)))
    return [[-1 if v == L else v for v in row] for row in rows], ops


def standardize_with_ops(W: UnitMatrix) -> tuple[UnitMatrix, list[Op]]:
    """A standard form of W together with the T1-T4 moves producing it from W."""
    _require_ground(W)
    if not gram_check(W):
        raise ValueError("matrix fails the Gram check")
    g = W.to_ints()
    out, ops = _four_steps(g, W.n, W.L)
    S = UnitMatrix.from_ints(out, W.L, W.w)
    if is_standard_form(S):
        return S, ops
    # column scaling can undo row normalisation; fall back to block refinement
    out, ops = _refine_search(g, W.n, W.L, greedy=True)
    S = UnitMatrix.from_ints(out, W.L, W.w)
    assert is_standard_form(S)
    return S, ops


def standardize(W: UnitMatrix) -> UnitMatrix:
    return standardize_with_ops(W)[0]


def canonical_form_with_ops(W: UnitMatrix) -> tuple[UnitMatrix, list[Op]]:
    _require_ground(W)
    out, ops = _refine_search(W.to_ints(), W.n, W.L, greedy=False)
    return UnitMatrix.from_ints(out, W.L, W.w), ops


def canonical_form(W: UnitMatrix) -> UnitMatrix:
    """The least standard form in the T1-T4 class of W (row-major order).

    Two ground matrices are equivalent iff their canonical forms agree. The
    search branches on ties, so it is meant for small orders.
    """
    return canonical_form_with_ops(W)[0]


def equivalent(A: UnitMatrix, B: UnitMatrix) -> bool:
    if (A.n, A.w) != (B.n, B.w):
        return False
    L = math.lcm(A.L, B.L)
    return canonical_form(A.lift(L)) == canonical_form(B.lift(L))
