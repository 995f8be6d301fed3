"""Exact arithmetic over roots of unity with one formal unimodular variable.

Elements of Z[zeta_L] are stored in the redundant basis zeta^0 .. zeta^(L-1)
and compared by reducing modulo the L-th cyclotomic polynomial, so every
orthogonality decision made elsewhere in the package is exact.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping


# ---------------------------------------------------------------------------
# integer polynomials (coefficient tuples, lowest degree first)

def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a: Iterable[int], b: Iterable[int]) -> tuple[int, ...]:
    a, b = list(a), list(b)
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(_trim(out))


def poly_divmod(num: Iterable[int], den: Iterable[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Long division by a monic integer polynomial; returns (quotient, remainder)."""
    num = _trim(list(num))
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    d = len(den) - 1
    if len(num) <= d:
        return (), tuple(num)
    quot = [0] * (len(num) - d)
    rem = num[:]
    for i in range(len(num) - 1, d - 1, -1):
        c = rem[i]
        if c:
            quot[i - d] = c
            for j in range(d + 1):
                rem[i - d + j] -= c * den[j]
    return tuple(_trim(quot)), tuple(_trim(rem[:d]))


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple[int, ...]:
    """Phi_L as a coefficient tuple (constant term first).

    Computed as (X^L - 1) divided by Phi_d for every proper divisor d of L.
    """
    if not isinstance(L, int) or L < 1:
        raise ValueError(f"cyclotomic order must be a positive integer, got {L!r}")
    p: tuple[int, ...] = (-1,) + (0,) * (L - 1) + (1,)
    for d in range(1, L):
        if L % d == 0:
            p, r = poly_divmod(p, cyclotomic_polynomial(d))
            assert not r
    return p


def totient(L: int) -> int:
    return len(cyclotomic_polynomial(L)) - 1


@lru_cache(maxsize=None)
def root_vectors(L: int) -> tuple[tuple[int, ...], ...]:
    """Power-basis coordinates of zeta_L^k for k in [0, L), each of length phi(L)."""
    phi = cyclotomic_polynomial(L)
    deg = len(phi) - 1
    out = []
    for k in range(L):
        _, r = poly_divmod((0,) * k + (1,), phi)
        out.append(tuple(r) + (0,) * (deg - len(r)))
    return tuple(out)


# ---------------------------------------------------------------------------
# Z[zeta_L]

class CycloNumber:
    """An element sum_k coeffs[k] * zeta_L^k of the cyclotomic integers of order L."""

    __slots__ = ("order", "coeffs", "_reduced")

    def __init__(self, order: int, coeffs: Iterable[int]):
        coeffs = tuple(int(c) for c in coeffs)
        if order < 1:
            raise ValueError("order must be positive")
        if len(coeffs) != order:
            raise ValueError(f"expected {order} coefficients, got {len(coeffs)}")
        self.order = order
        self.coeffs = coeffs
        self._reduced: tuple[int, ...] | None = None

    @classmethod
    def zero(cls, L: int) -> CycloNumber:
        return cls(L, (0,) * L)

    @classmethod
    def from_int(cls, L: int, value: int) -> CycloNumber:
        return cls(L, (value,) + (0,) * (L - 1))

    @classmethod
    def root(cls, L: int, k: int, mult: int = 1) -> CycloNumber:
        c = [0] * L
        c[k % L] = mult
        return cls(L, c)

    def _check(self, other: CycloNumber) -> None:
        if not isinstance(other, CycloNumber):
            raise TypeError(f"expected CycloNumber, got {type(other).__name__}")
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: CycloNumber) -> CycloNumber:
        self._check(other)
        return CycloNumber(self.order, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: CycloNumber) -> CycloNumber:
        self._check(other)
        return CycloNumber(self.order, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> CycloNumber:
        return CycloNumber(self.order, (-a for a in self.coeffs))

    def __mul__(self, other: CycloNumber | int) -> CycloNumber:
        if isinstance(other, int):
            return CycloNumber(self.order, (a * other for a in self.coeffs))
        self._check(other)
        L = self.order
        out = [0] * L
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % L] += a * b
        return CycloNumber(L, out)

    __rmul__ = __mul__

    def conj(self) -> CycloNumber:
        L = self.order
        out = [0] * L
        for k, a in enumerate(self.coeffs):
            out[-k % L] = a
        return CycloNumber(L, out)

    def lift(self, order: int) -> CycloNumber:
        """Re-express in Z[zeta_M] for a multiple M of the current order."""
        if order % self.order:
            raise ValueError(f"{order} is not a multiple of {self.order}")
        f = order // self.order
        out = [0] * order
        for k, a in enumerate(self.coeffs):
            out[k * f] = a
        return CycloNumber(order, out)

    def reduced(self) -> tuple[int, ...]:
        """Coordinates in the power basis 1, zeta, ..., zeta^(phi(L)-1)."""
        if self._reduced is None:
            phi = cyclotomic_polynomial(self.order)
            _, r = poly_divmod(self.coeffs, phi)
            self._reduced = tuple(r) + (0,) * (len(phi) - 1 - len(r))
        return self._reduced

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = CycloNumber.from_int(self.order, other)
        if not isinstance(other, CycloNumber) or other.order != self.order:
            return NotImplemented
        return self.reduced() == other.reduced()

    def __hash__(self) -> int:
        return hash((self.order, self.reduced()))

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.order)
        return sum(a * z**k for k, a in enumerate(self.coeffs) if a)

    def __repr__(self) -> str:
        terms = [f"{a}*z{k}" for k, a in enumerate(self.coeffs) if a]
        return f"CycloNumber(L={self.order}: {' + '.join(terms) or '0'})"


def cyc_is_zero(a: CycloNumber) -> bool:
    return a.is_zero()


def cyc_add(a: CycloNumber, b: CycloNumber) -> CycloNumber:
    return a + b


def cyc_mul(a: CycloNumber, b: CycloNumber) -> CycloNumber:
    return a * b


def cyc_conj(a: CycloNumber) -> CycloNumber:
    return a.conj()


# ---------------------------------------------------------------------------
# matrix entries

@dataclass(frozen=True)
class UnitEntry:
    """Zero, or zeta_L^root * x^var for the enclosing matrix's root order L.

    ``root is None`` encodes the zero entry.
    """

    root: int | None = None
    var: int = 0

    def __post_init__(self):
        if self.root is None and self.var:
            raise ValueError("the zero entry carries no variable exponent")

    @property
    def is_zero(self) -> bool:
        return self.root is None

    def mul(self, other: UnitEntry, L: int) -> UnitEntry:
        if self.root is None or other.root is None:
            return ZERO
        return UnitEntry((self.root + other.root) % L, self.var + other.var)

    def conj(self, L: int) -> UnitEntry:
        if self.root is None:
            return self
        return UnitEntry(-self.root % L, -self.var)

    def lift(self, factor: int) -> UnitEntry:
        if self.root is None:
            return self
        return UnitEntry(self.root * factor, self.var)


ZERO = UnitEntry()
ONE = UnitEntry(0)
X = UnitEntry(0, 1)


def unit(k: int, var: int = 0) -> UnitEntry:
    return UnitEntry(k, var)


# ---------------------------------------------------------------------------
# Laurent polynomials in x over Z[zeta_L]

class LaurentCyclo:
    """Finite sum of CycloNumber * x^e; zero coefficients are never stored."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: Mapping[int, CycloNumber] | None = None):
        self.order = order
        clean = {}
        for e, c in (terms or {}).items():
            if c.order != order:
                raise ValueError(f"order mismatch: {c.order} vs {order}")
            if not c.is_zero():
                clean[e] = c
        self.terms = clean

    @classmethod
    def constant(cls, L: int, value: int) -> LaurentCyclo:
        return cls(L, {0: CycloNumber.from_int(L, value)})

    @classmethod
    def monomial(cls, L: int, root: int, exp: int = 0) -> LaurentCyclo:
        return cls(L, {exp: CycloNumber.root(L, root)})

    def _check(self, other: LaurentCyclo) -> None:
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: LaurentCyclo) -> LaurentCyclo:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentCyclo(self.order, out)

    def __neg__(self) -> LaurentCyclo:
        return LaurentCyclo(self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: LaurentCyclo) -> LaurentCyclo:
        return self + (-other)

    def __mul__(self, other: LaurentCyclo) -> LaurentCyclo:
        self._check(other)
        out: dict[int, CycloNumber] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                c = c1 * c2
                e = e1 + e2
                out[e] = out[e] + c if e in out else c
        return LaurentCyclo(self.order, out)

    def conj(self) -> LaurentCyclo:
        return LaurentCyclo(self.order, {-e: c.conj() for e, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self, value: int) -> bool:
        """True iff the polynomial is the integer ``value`` (no x-dependence)."""
        return (self - LaurentCyclo.constant(self.order, value)).is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentCyclo) or other.order != self.order:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self.order, frozenset((e, c.reduced()) for e, c in self.terms.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"({c!r})*x^{e}" for e, c in sorted(self.terms.items()))
        return f"LaurentCyclo(L={self.order}: {body or '0'})"


def entry_mul_conj(a: UnitEntry, b: UnitEntry, L: int) -> LaurentCyclo:
    """a * conj(b) as a one-term Laurent polynomial (empty if either entry is zero)."""
    if a.root is None or b.root is None:
        return LaurentCyclo(L)
    return LaurentCyclo.monomial(L, (a.root - b.root) % L, a.var - b.var)


def lc_add(p: LaurentCyclo, q: LaurentCyclo) -> LaurentCyclo:
    return p + q


def lc_is_zero(p: LaurentCyclo) -> bool:
    return p.is_zero()


def float_probe(p: LaurentCyclo, angle: float) -> float:
    """|p| evaluated numerically at x = exp(i*angle); a sanity cross-check only."""
    x = cmath.exp(1j * angle)
    return abs(sum(c.to_complex() * x**e for e, c in p.terms.items()))
