"""Orthogonality solvers, the zero-pattern necessary condition and the exhaustive classifier.

The classifier works over a fixed alphabet {0} U {zeta_L^k}. Its answers are
therefore statements about matrices with entries in that alphabet only.
"""
from __future__ import annotations

import itertools
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .cyclotomic import root_vectors
from .errors import BudgetExceeded
from .matrix import UnitMatrix, canonical_form

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9


# ---------------------------------------------------------------------------
# packed exact sums: an element of Z[zeta_L] in the power basis, folded into one int

class _Packer:
    """Linear map zeta_L^k -> int such that a sum of at most ``terms`` roots packs to 0 iff it is 0."""

    def __init__(self, L: int, terms: int):
        vecs = root_vectors(L)
        cmax = max((abs(c) for v in vecs for c in v), default=1) or 1
        bits = (2 * terms * cmax + 1).bit_length() + 1
        self.L = L
        self.base = 1 << bits
        self.roots = [sum(c << (bits * i) for i, c in enumerate(v)) for v in vecs]

    def total(self, ks) -> int:
        return sum(self.roots[k % self.L] for k in ks)


@dataclass(frozen=True)
class OrthTuple:
    """Root indices k_1..k_m (c_i = zeta_L^k_i) with sum c_i = 0."""

    L: int
    values: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.values)


def _exact_zero(L: int, ks: Sequence[int]) -> bool:
    return _Packer(L, max(len(ks), 1)).total(ks) == 0


def m_orth_solutions(m: int, L: int) -> list[OrthTuple]:
    """All ordered m-tuples of L-th roots summing to zero, from the closed forms for m <= 4.

    m=2: c1 = -c2.  m=3: a rotated triple of cube roots.  m=4: two antipodal pairs.
    """
    if L < 1:
        raise ValueError("L must be positive")
    if m < 0:
        raise ValueError("m must be non-negative")
    if m > 4:
        raise ValueError("closed forms cover m <= 4; use orth_brute for larger m")
    out: set[tuple[int, ...]] = set()
    if m == 0:
        out.add(())
    elif m == 2 and L % 2 == 0:
        h = L // 2
        out.update((k, (k + h) % L) for k in range(L))
    elif m == 3 and L % 3 == 0:
        t = L // 3
        for q in range(L):
            out.update(itertools.permutations((q, (q + t) % L, (q + 2 * t) % L)))
    elif m == 4 and L % 2 == 0:
        h = L // 2
        for a in range(L):
            for b in range(L):
                out.update(itertools.permutations((a, (a + h) % L, b, (b + h) % L)))
    return [OrthTuple(L, t) for t in sorted(out)]


def orth_brute(m: int, L: int, budget: int = 10**7) -> list[OrthTuple]:
    """Exhaustive enumeration of ordered m-tuples with an exact zero test."""
    if L**m > budget:
        raise BudgetExceeded(L**m, budget)
    P = _Packer(L, max(m, 1))
    roots = P.roots
    out = []
    for t in itertools.product(range(L), repeat=m):
        if sum(roots[k] for k in t) == 0:
            out.append(OrthTuple(L, t))
    return out


def reachable_sums(L: int, t_max: int, cap: int = 2_000_000, packer: _Packer | None = None) -> list[set[int]]:
    """Packed values of all sums of exactly t L-th roots, t = 0..t_max (stops early past ``cap``)."""
    P = packer or _Packer(L, max(t_max, 1))
    levels = [{0}]
    for _ in range(t_max):
        nxt = {s + r for s in levels[-1] for r in P.roots}
        if len(nxt) > cap:
            break
        levels.append(nxt)
    return levels


def has_m_orthogonality(m: int, L: int) -> bool:
    """Whether some m L-th roots of unity sum to zero."""
    if m <= 4:
        return bool(m_orth_solutions(m, L))
    levels = reachable_sums(L, m)
    if len(levels) <= m:
        raise BudgetExceeded(len(levels[-1]), 2_000_000)
    return 0 in levels[m]


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"


def zero_pattern_necessary(n: int, w: int, L: int) -> Verdict:
    """FAIL proves no UW(n, w) with entries in {0} U {zeta_L^k} exists.

    With z = n - w zeros per row, n > z^2 - z + 1 forces two rows whose product
    has n - 2z unimodular terms summing to zero.
    """
    z = n - w
    if n > z * z - z + 1 and not has_m_orthogonality(n - 2 * z, L):
        return Verdict.FAIL
    return Verdict.PASS


# ---------------------------------------------------------------------------
# disjoint zero rows

def _zero_sets(rows) -> list[frozenset[int]]:
    out = []
    for r in rows:
        if isinstance(r, (set, frozenset)):
            out.append(frozenset(r))
        else:
            out.append(frozenset(j for j, e in enumerate(r) if e is None or (isinstance(e, int) and e < 0)
                                 or getattr(e, "is_zero", False)))
    return out


def disjoint_zero_triple(rows) -> tuple[int, int, int] | None:
    """Three rows whose zero columns are pairwise disjoint.

    ``rows`` is a UnitMatrix, a sequence of rows (entries, or -1/None for zero),
    or a sequence of zero-column sets. Two disjoint rows are found first; their
    zeros occupy four columns, and a third row avoiding all four completes the
    triple. For a UW(7,5) such a row always exists (each of those columns has
    one zero left and five rows remain); on partial input None is returned.
    """
    if isinstance(rows, UnitMatrix):
        rows = rows.entries
    Z = _zero_sets(rows)
    k = len(Z)
    for a in range(k):
        for b in range(a + 1, k):
            if Z[a] & Z[b]:
                continue
            blocked = Z[a] | Z[b]
            for c in range(k):
                if c not in (a, b) and not Z[c] & blocked:
                    return tuple(sorted((a, b, c)))
    return None


# ---------------------------------------------------------------------------
# exhaustive row-by-row search

@dataclass(frozen=True)
class SearchConfig:
    n: int
    w: int
    L: int = 12
    row_limit: int | None = None  # stop after this many rows (prefix counting)
    budget: int = DEFAULT_BUDGET
    parallel: bool = False
    symmetry: bool = True  # sort entries inside column blocks with equal history

    def __post_init__(self):
        if not 1 <= self.w <= self.n:
            raise ValueError(f"need 1 <= w <= n, got n={self.n} w={self.w}")
        if self.L < 1:
            raise ValueError("L must be positive")
        if self.row_limit is not None and not 1 <= self.row_limit <= self.n:
            raise ValueError("row_limit must lie in [1, n]")


@dataclass
class SearchResult:
    config: SearchConfig
    matrices: list[UnitMatrix] = field(default_factory=list)
    raw_solutions: int = 0
    prefixes: int = 0
    nodes: int = 0


class _Search:
    """Depth-first construction of standard-form matrices, one entry at a time.

    Row 1 is w ones then zeros. Each later row keeps: first nonzero equal to 1,
    first nonzero of every column equal to 1, the row strictly after the
    previous one, column nonzero/zero quotas, and for every earlier row an exact
    test that the partial inner product can still be cancelled by the number
    of common nonzero positions left.
    """

    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        n, w, L = cfg.n, cfg.w, cfg.L
        self.n, self.w, self.L = n, w, L
        self.depth = cfg.row_limit or n
        P = _Packer(L, n)
        self.P = P.roots
        levels = reachable_sums(L, w, packer=P)
        self.full_from = len(levels)  # t >= full_from: not tabulated, assume feasible
        mask: dict[int, int] = {}
        for t, level in enumerate(levels):
            for s in level:
                mask[-s] = mask.get(-s, 0) | (1 << t)
        self.mask = mask
        self.nodes = 0
        self.solutions: list[tuple[tuple[int, ...], ...]] = []
        self.prefixes = 0

    # state -----------------------------------------------------------------

    def _reset(self, prefix: list[tuple[int, ...]]):
        n = self.n
        self.rows = [list(r) for r in prefix]
        self.col_nz = [0] * n
        self.col_z = [0] * n
        for r in self.rows:
            for c, v in enumerate(r):
                if v >= 0:
                    self.col_nz[c] += 1
                else:
                    self.col_z[c] += 1
        self.nzafter = [self._suffix(r) for r in self.rows]

    def _suffix(self, r) -> list[int]:
        n = self.n
        out = [0] * n
        acc = 0
        for c in range(n - 1, -1, -1):
            out[c] = acc
            if r[c] >= 0:
                acc += 1
        return out

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.cfg.budget:
            raise BudgetExceeded(self.nodes, self.cfg.budget)

    # search ----------------------------------------------------------------

    def first_row(self) -> tuple[int, ...]:
        return (0,) * self.w + (-1,) * (self.n - self.w)

    def run(self, prefix: list[tuple[int, ...]], collect_rows: bool = False):
        """Search below ``prefix``; with ``collect_rows`` only the next rows are returned."""
        self._reset(prefix)
        self._collect = [] if collect_rows else None
        self._rows_from(len(self.rows))
        return self._collect

    def _rows_from(self, i: int):
        if i == self.depth:
            if self.depth < self.n:
                self.prefixes += 1
                return
            g = tuple(tuple(r) for r in self.rows)
            if (self.n, self.w) == (7, 5) and disjoint_zero_triple(g) is None:
                raise AssertionError("UW(7,5) candidate without three zero-disjoint rows")
            self.solutions.append(g)
            return
        n, w, L = self.n, self.w, self.L
        rows = self.rows
        tie = [False] * n
        if self.cfg.symmetry:
            for c in range(1, n):
                tie[c] = all(r[c - 1] == r[c] for r in rows)
        prev = rows[-1]
        prev_key = [L if v < 0 else v for v in prev]
        rows_left = n - 1 - i
        nz_cap_z = n - w
        mask, P, full_from = self.mask, self.P, self.full_from
        nzafter = self.nzafter
        k_prev = len(rows)
        col_nz, col_z = self.col_nz, self.col_z
        cur = [0] * n

        def cell(c: int, nz: int, zc: int, tight: bool, sums: tuple, last_key: int):
            if c == n:
                if tight:
                    return
                if self._collect is not None:
                    self._collect.append(tuple(cur))
                    return
                self._commit(cur, i)
                return
            left = n - 1 - c
            lower = prev_key[c] if tight else 0
            if tie[c] and last_key > lower:
                lower = last_key
            options = []
            if nz < w and col_nz[c] < w and nz_cap_z - col_z[c] <= rows_left:
                if nz == 0 or col_nz[c] == 0:
                    if lower == 0:
                        options.append(0)
                else:
                    options.extend(range(lower, L))
            if zc < nz_cap_z and col_z[c] < nz_cap_z and w - col_nz[c] <= rows_left:
                options.append(-1)
            for v in options:
                key = L if v < 0 else v
                nz2 = nz + (v >= 0)
                zc2 = zc + (v < 0)
                if nz2 + left < w or zc2 + left < nz_cap_z:
                    continue
                self._tick()
                need = w - nz2
                new = list(sums)
                ok = True
                for p in range(k_prev):
                    rp = rows[p]
                    if v >= 0 and rp[c] >= 0:
                        new[p] += P[(v - rp[c]) % L]
                    na = nzafter[p][c]
                    lo = need - (left - na)
                    if lo < 0:
                        lo = 0
                    hi = need if need < na else na
                    if hi >= full_from:
                        continue
                    m = mask.get(new[p], 0) >> lo
                    if not m & ((1 << (hi - lo + 1)) - 1):
                        ok = False
                        break
                if not ok:
                    continue
                cur[c] = v
                cell(c + 1, nz2, zc2, tight and key == prev_key[c], tuple(new), key)

        cell(0, 0, 0, True, (0,) * k_prev, 0)

    def _commit(self, cur: list[int], i: int):
        row = tuple(cur)
        for c, v in enumerate(row):
            if v >= 0:
                self.col_nz[c] += 1
            else:
                self.col_z[c] += 1
        self.rows.append(list(row))
        self.nzafter.append(self._suffix(row))
        try:
            self._rows_from(i + 1)
        finally:
            self.rows.pop()
            self.nzafter.pop()
            for c, v in enumerate(row):
                if v >= 0:
                    self.col_nz[c] -= 1
                else:
                    self.col_z[c] -= 1


def _subtree(args):
    cfg, prefix = args
    s = _Search(cfg)
    s.run(prefix)
    return s.solutions, s.prefixes, s.nodes


def dfs_search(cfg: SearchConfig) -> SearchResult:
    """Run the classifier and keep statistics; see :func:`dfs_classify`."""
    if cfg.w == cfg.n == 1:
        res = SearchResult(cfg, [UnitMatrix.from_ints([[0]], cfg.L)], 1, 1, 1)
        return res
    s = _Search(cfg)
    first = s.first_row()
    result = SearchResult(cfg)
    if s.depth == 1:
        result.prefixes = 1
        return result
    if cfg.parallel:
        seconds = s.run([first], collect_rows=True)
        nodes = s.nodes
        workers = min(len(seconds), os.cpu_count() or 1) or 1
        solutions, prefixes = [], 0
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for sols, pre, nd in pool.map(_subtree, [(cfg, [first, r]) for r in seconds]):
                solutions.extend(sols)
                prefixes += pre
                nodes += nd
        if nodes > cfg.budget:
            raise BudgetExceeded(nodes, cfg.budget)
    else:
        s.run([first])
        solutions, prefixes, nodes = s.solutions, s.prefixes, s.nodes
    result.nodes = nodes
    result.prefixes = prefixes
    result.raw_solutions = len(solutions)
    classes = {}
    for g in solutions:
        C = canonical_form(UnitMatrix.from_ints(g, cfg.L, cfg.w))
        classes[C.to_ints()] = C
    result.matrices = [classes[k] for k in sorted(classes)]
    log.info("search n=%d w=%d L=%d: %d nodes, %d raw, %d classes",
             cfg.n, cfg.w, cfg.L, nodes, len(solutions), len(classes))
    return result


def dfs_classify(cfg: SearchConfig) -> list[UnitMatrix]:
    """Every UW(n, w) over {0} U {zeta_L^k}, one canonical standard form per class.

    Raises BudgetExceeded when the node budget runs out, which is never
    reported as an empty result.
    """
    if cfg.row_limit is not None and cfg.row_limit != cfg.n:
        raise ValueError("dfs_classify needs full depth; use count_row_prefixes for partial searches")
    return dfs_search(cfg).matrices


def count_row_prefixes(cfg: SearchConfig) -> int:
    """Number of admissible standard-form row prefixes of length ``cfg.row_limit``."""
    return dfs_search(cfg).prefixes
