"""A re-checkable case analysis showing that no UW(7,5) exists.

Four rows can always be brought into the shape

    1 1 1 1 1 0 0
    1 a b 0 0 1 1
    1 0 0 c d f g
    0 0 1 h k m n

(three rows with pairwise disjoint zeros, plus a row carrying a zero in the
column that those three leave free). Over the 12th roots of unity the five
short inner products pin every symbol down to a handful of values, and each
surviving assignment makes rows 3 and 4 non-orthogonal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .cyclotomic import CycloNumber

L = 12
TEMPLATE = (
    ("1", "1", "1", "1", "1", "0", "0"),
    ("1", "a", "b", "0", "0", "1", "1"),
    ("1", "0", "0", "c", "d", "f", "g"),
    ("0", "0", "1", "h", "k", "m", "n"),
)
SYMBOLS = ("a", "b", "c", "d", "f", "g", "h", "k", "m", "n")


def _value(token: str, assignment: dict[str, int]) -> int | None:
    if token == "0":
        return None
    if token == "1":
        return 0
    return assignment[token]


def row_product(r1, r2, assignment: dict[str, int]) -> CycloNumber:
    """<r1, r2> = sum_j r1_j conj(r2_j) over Z[zeta_12]."""
    vec = [0] * L
    for t1, t2 in zip(r1, r2):
        a, b = _value(t1, assignment), _value(t2, assignment)
        if a is not None and b is not None:
            vec[(a - b) % L] += 1
    return CycloNumber(L, vec)


@dataclass(frozen=True)
class Equation:
    rows: tuple[int, int]  # 0-based template rows
    symbols: tuple[str, ...]


@dataclass
class Violation:
    assignment: dict[str, int]
    rows: tuple[int, int]
    value: CycloNumber

    @property
    def third_root_terms(self) -> bool:
        """Whether the nonzero product is a sum of third roots of unity only."""
        return all(c == 0 or k % 4 == 0 for k, c in enumerate(self.value.coeffs))


@dataclass
class RefutationCertificate:
    template: tuple[tuple[str, ...], ...]
    derivations: list[tuple[Equation, list[tuple[int, ...]]]]
    violations: list[Violation] = field(default_factory=list)
    verdict: str = "UNSAT"

    def verify(self) -> bool:
        return verify_certificate(self)


# Each pair of template rows gives one equation; the first five involve two or
# three unknowns and are solved by enumeration, the sixth is checked last.
_EQUATIONS = (
    Equation((0, 1), ("a", "b")),
    Equation((0, 2), ("c", "d")),
    Equation((0, 3), ("h", "k")),
    Equation((1, 2), ("f", "g")),
)


def _solve_pair(eq: Equation, fixed: dict[str, int]) -> list[tuple[int, ...]]:
    out = []
    free = [s for s in eq.symbols if s not in fixed]
    for vals in itertools.product(range(L), repeat=len(free)):
        asg = dict(fixed)
        asg.update(zip(free, vals))
        full = {s: asg.get(s, 0) for s in SYMBOLS}
        if row_product(TEMPLATE[eq.rows[0]], TEMPLATE[eq.rows[1]], full).is_zero():
            out.append(tuple(asg[s] for s in eq.symbols))
    return out


def uw75_refute() -> RefutationCertificate:
    derivations: list[tuple[Equation, list[tuple[int, ...]]]] = []
    # rows 1-2, 1-3, 1-4, 2-3: 1 + u + v = 0
    for eq in _EQUATIONS:
        derivations.append((eq, _solve_pair(eq, {})))
    # rows 2-4: conj(b) + m + n = 0, solved for each admissible (a, b)
    mn_eq = Equation((1, 3), ("a", "b", "m", "n"))
    mn_solutions: list[tuple[int, ...]] = []
    for a, b in derivations[0][1]:
        for m, n in _solve_pair(Equation((1, 3), ("m", "n")), {"a": a, "b": b}):
            mn_solutions.append((a, b, m, n))
    derivations.append((mn_eq, mn_solutions))

    cert = RefutationCertificate(TEMPLATE, derivations)
    ab = {s[0]: s for s in derivations[0][1]}
    for (c, d), (h, k), (f, g) in itertools.product(
        derivations[1][1], derivations[2][1], derivations[3][1]
    ):
        for a, b, m, n in mn_solutions:
            assert (a, b) in ab.values()
            asg = dict(a=a, b=b, c=c, d=d, f=f, g=g, h=h, k=k, m=m, n=n)
            val = row_product(TEMPLATE[2], TEMPLATE[3], asg)
            if val.is_zero():
                cert.verdict = "SAT"
            cert.violations.append(Violation(asg, (2, 3), val))
    return cert


def verify_certificate(cert: RefutationCertificate) -> bool:
    """Re-derive every step independently of how the certificate was built."""
    if tuple(map(tuple, cert.template)) != TEMPLATE or cert.verdict != "UNSAT":
        return False
    # each solution list must be exactly the set of solutions over all of Z_12
    for eq, sols in cert.derivations[:4]:
        expect = set()
        for u, v in itertools.product(range(L), repeat=2):
            asg = {s: 0 for s in SYMBOLS}
            asg.update(zip(eq.symbols, (u, v)))
            if row_product(TEMPLATE[eq.rows[0]], TEMPLATE[eq.rows[1]], asg).is_zero():
                expect.add((u, v))
        if set(sols) != expect:
            return False
    ab = set(cert.derivations[0][1])
    expect_mn = set()
    for a, b in ab:
        for m, n in itertools.product(range(L), repeat=2):
            asg = {s: 0 for s in SYMBOLS}
            asg.update(a=a, b=b, m=m, n=n)
            if row_product(TEMPLATE[1], TEMPLATE[3], asg).is_zero():
                expect_mn.add((a, b, m, n))
    if set(cert.derivations[4][1]) != expect_mn:
        return False
    # the violations must cover the product of the solution sets, each one nonzero
    space = {
        (a, b, c, d, f, g, h, k, m, n)
        for (c, d) in cert.derivations[1][1]
        for (h, k) in cert.derivations[2][1]
        for (f, g) in cert.derivations[3][1]
        for (a, b, m, n) in cert.derivations[4][1]
    }
    seen = set()
    for v in cert.violations:
        key = tuple(v.assignment[s] for s in SYMBOLS)
        seen.add(key)
        recomputed = row_product(TEMPLATE[v.rows[0]], TEMPLATE[v.rows[1]], v.assignment)
        if recomputed.is_zero() or recomputed != v.value:
            return False
    return seen == space and len(cert.violations) == len(space)


def format_certificate(cert: RefutationCertificate) -> str:
    names = {0: "1"}
    names.update({k: f"z{k}" for k in range(1, L)})
    lines = ["forced rows (after row and column moves):"]
    lines += ["  " + " ".join(r) for r in cert.template]
    lines.append("inner-product equations solved over the 12th roots of unity:")
    for eq, sols in cert.derivations:
        i, j = eq.rows
        shown = ", ".join("(" + ",".join(names[v] for v in s) + ")" for s in sols)
        lines.append(f"  rows {i + 1},{j + 1} -> ({','.join(eq.symbols)}) in {{{shown}}}")
    lines.append(f"remaining assignments checked: {len(cert.violations)}")
    for v in cert.violations:
        asg = " ".join(f"{s}={names[v.assignment[s]]}" for s in SYMBOLS)
        lines.append(f"  {asg}  <row3,row4> != 0")
    lines.append(f"verdict: {cert.verdict}")
    return "\n".join(lines)
