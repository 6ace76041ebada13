"""Connection coefficients between graded polynomial bases.

One exact basis-change engine produces every triangle in this package:
generalized (Comtet) Stirling numbers of both kinds for an arbitrary rational
parameter sequence, their signless variant, the classical Stirling and signed
Lah triangles, and the non-central tables. Named recurrences and closed forms
exist only as cross-checks; the engine itself expands basis elements into
monomials and back-substitutes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .algebra import (
    Polynomial,
    PreconditionError,
    Rat,
    RatLike,
    as_rat_tuple,
    poly_from_roots,
)

__all__ = [
    "Basis",
    "CoeffTable",
    "InversionCheck",
    "comtet_first",
    "comtet_second",
    "comtet_second_explicit",
    "connection_coeffs",
    "identity_table",
    "inversion_check",
    "lah_closed_form",
    "lah_signed",
    "noncentral_first",
    "noncentral_second",
    "signless_comtet_first",
    "stirling_first",
    "stirling_second",
    "table_product",
]

_MONOMIAL = "monomial"
_FALLING = "falling"
_NEGATED_FALLING = "negated-falling"
_MULTIPARAM = "multiparam"


@dataclass(frozen=True)
class Basis:
    """A graded polynomial basis b_0, b_1, ... with deg b_m = m and b_0 = 1.

    Kinds:
      monomial          b_m = X^m
      falling           b_m = X(X-1)...(X-m+1)
      negated-falling   b_m = (-X)(-X-1)...(-X-m+1)
      multiparam        b_m = (X-a_0)(X-a_1)...(X-a_{m-1}) for the stored
                        parameter sequence a
    """

    kind: str
    alpha: tuple[Rat, ...] = ()

    @classmethod
    def monomial(cls) -> "Basis":
        return cls(_MONOMIAL)

    @classmethod
    def falling(cls) -> "Basis":
        return cls(_FALLING)

    @classmethod
    def negated_falling(cls) -> "Basis":
        return cls(_NEGATED_FALLING)

    @classmethod
    def multiparam(cls, alpha: Iterable[RatLike]) -> "Basis":
        return cls(_MULTIPARAM, as_rat_tuple(alpha))

    def element(self, m: int) -> Polynomial:
        """The degree-m basis polynomial."""
        return _basis_element(self, m)

    def trimmed(self, size: int) -> "Basis":
        """Drop parameters a size-`size` table can never read (cache key hygiene)."""
        if self.kind == _MULTIPARAM and len(self.alpha) > size:
            return Basis(_MULTIPARAM, self.alpha[:size])
        return self


@lru_cache(maxsize=None)
def _basis_element(basis: Basis, m: int) -> Polynomial:
    if m < 0:
        raise PreconditionError("basis degree must be nonnegative")
    if basis.kind == _MONOMIAL:
        return Polynomial([Fraction(0)] * m + [Fraction(1)])
    if basis.kind == _FALLING:
        return poly_from_roots(range(m))
    if basis.kind == _NEGATED_FALLING:
        acc = Polynomial((1,))
        for i in range(m):
            acc = acc * Polynomial((-i, -1))
        return acc
    if basis.kind == _MULTIPARAM:
        if m > len(basis.alpha):
            raise PreconditionError(
                f"parameter sequence of length {len(basis.alpha)} cannot "
                f"form a degree-{m} basis element"
            )
        return poly_from_roots(basis.alpha[:m])
    raise PreconditionError(f"unknown basis kind {basis.kind!r}")


@dataclass(frozen=True)
class CoeffTable:
    """Lower-triangular connection table; entry (n, m) is the coefficient of
    the target basis element of degree m in the expansion of the source
    element of degree n. Indexing outside the triangle yields zero.
    """

    rows: tuple[tuple[Rat, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows) - 1

    def row(self, n: int) -> tuple[Rat, ...]:
        return self.rows[n]

    def __getitem__(self, nm: tuple[int, int]) -> Rat:
        n, m = nm
        if 0 <= n < len(self.rows) and 0 <= m < len(self.rows[n]):
            return self.rows[n][m]
        return Fraction(0)

    def entrywise_abs(self) -> "CoeffTable":
        return CoeffTable(tuple(tuple(abs(c) for c in row) for row in self.rows))

    def is_identity(self) -> bool:
        return all(
            c == (1 if n == m else 0)
            for n, row in enumerate(self.rows)
            for m, c in enumerate(row)
        )


def identity_table(size: int) -> CoeffTable:
    return CoeffTable(
        tuple(
            tuple(Fraction(1 if n == m else 0) for m in range(n + 1))
            for n in range(size + 1)
        )
    )


def table_product(a: CoeffTable, b: CoeffTable) -> CoeffTable:
    """Triangular matrix product (a b)(n, j) = sum_m a(n, m) b(m, j)."""
    if a.size != b.size:
        raise PreconditionError("table sizes must match for a product")
    rows = []
    for n in range(a.size + 1):
        rows.append(
            tuple(
                sum((a[n, m] * b[m, j] for m in range(j, n + 1)), Fraction(0))
                for j in range(n + 1)
            )
        )
    return CoeffTable(tuple(rows))


@lru_cache(maxsize=None)
def _connection(source: Basis, target: Basis, size: int) -> CoeffTable:
    rows: list[tuple[Rat, ...]] = []
    for n in range(size + 1):
        residual = list(source.element(n).coeffs)
        residual.extend([Fraction(0)] * (n + 1 - len(residual)))
        out = [Fraction(0)] * (n + 1)
        for m in range(n, -1, -1):
            c = residual[m] / target.element(m).leading_coefficient
            out[m] = c
            if c != 0:
                for i, b in enumerate(target.element(m).coeffs):
                    residual[i] -= c * b
        rows.append(tuple(out))
    return CoeffTable(tuple(rows))


def connection_coeffs(source: Basis, target: Basis, size: int) -> CoeffTable:
    """Exact table T with source_n(X) = sum_{m<=n} T(n, m) target_m(X).

    Works for any pair of the supported bases; rows 0..size. Raises
    PreconditionError when a multiparam basis holds fewer than `size`
    parameters.
    """
    if size < 0:
        raise PreconditionError("table size must be nonnegative")
    return _connection(source.trimmed(size), target.trimmed(size), size)


def comtet_first(alpha: Iterable[RatLike], size: int) -> CoeffTable:
    """Generalized Stirling numbers of the first kind: the expansion of
    (X-a_0)...(X-a_{n-1}) in monomials."""
    return connection_coeffs(Basis.multiparam(alpha), Basis.monomial(), size)


def comtet_second(alpha: Iterable[RatLike], size: int) -> CoeffTable:
    """Generalized Stirling numbers of the second kind: the expansion of X^n
    in the products (X-a_0)...(X-a_{m-1})."""
    return connection_coeffs(Basis.monomial(), Basis.multiparam(alpha), size)


def signless_comtet_first(alpha: Iterable[RatLike], size: int) -> CoeffTable:
    """Coefficients of X^m in prod_i (X + a_i).

    Equals (-1)^(n-m) times the first-kind table for every parameter
    sequence, and agrees with its entrywise absolute values exactly when all
    parameters are nonnegative.
    """
    negated = tuple(-a for a in as_rat_tuple(alpha))
    return connection_coeffs(Basis.multiparam(negated), Basis.monomial(), size)


def stirling_first(size: int) -> CoeffTable:
    """Classical signed Stirling numbers of the first kind."""
    return comtet_first(tuple(Fraction(i) for i in range(size)), size)


def stirling_second(size: int) -> CoeffTable:
    """Classical Stirling numbers of the second kind."""
    return comtet_second(tuple(Fraction(i) for i in range(size)), size)


def lah_signed(size: int) -> CoeffTable:
    """Signed Lah numbers L(m, l) defined by the exact expansion of the
    negated falling factorial in the falling-factorial basis."""
    return connection_coeffs(Basis.negated_falling(), Basis.falling(), size)


def lah_closed_form(m: int, l: int) -> Rat:
    """(-1)^m (m!/l!) C(m-1, l-1) for m, l >= 1; 1 at (0, 0); else 0."""
    if m == 0 and l == 0:
        return Fraction(1)
    if l < 1 or l > m:
        return Fraction(0)
    return (
        Fraction((-1) ** m)
        * Fraction(math.factorial(m), math.factorial(l))
        * math.comb(m - 1, l - 1)
    )


def noncentral_second(alpha: Iterable[RatLike], size: int) -> CoeffTable:
    """Non-central Stirling numbers: the expansion of
    (X-a_0)...(X-a_{n-1}) in the falling-factorial basis."""
    return connection_coeffs(Basis.multiparam(alpha), Basis.falling(), size)


def noncentral_first(alpha: Iterable[RatLike], size: int) -> CoeffTable:
    """Alias of noncentral_second: both conventional names denote the same
    connection family (products of shifted factors expanded in falling
    factorials), so the tables coincide entry by entry."""
    return noncentral_second(alpha, size)


def comtet_second_explicit(alpha: Iterable[RatLike], n: int, m: int) -> Rat:
    """Closed form sum_{j<=m} a_j^n / prod_{i<=m, i!=j} (a_j - a_i).

    Requires a_0..a_m pairwise distinct; agrees with the second-kind table.
    """
    a = as_rat_tuple(alpha)
    if n < 0 or m < 0:
        raise PreconditionError("indices must be nonnegative")
    if len(a) < m + 1:
        raise PreconditionError(
            f"need {m + 1} parameters for the explicit form, got {len(a)}"
        )
    a = a[: m + 1]
    if len(set(a)) != len(a):
        raise PreconditionError(
            "explicit second-kind form needs pairwise distinct parameters"
        )
    total = Fraction(0)
    for j in range(m + 1):
        denom = Fraction(1)
        for i in range(m + 1):
            if i != j:
                denom *= a[j] - a[i]
        total += a[j] ** n / denom
    return total


@dataclass(frozen=True)
class InversionCheck:
    """Outcome of multiplying the two generalized triangles both ways.

    `unsigned` is the plain two-sided matrix inversion; `signed` is the
    variant with an alternating (-1)^(j-i) factor inserted, reported for
    reference (it fails for sizes >= 2).
    """

    unsigned: bool
    signed: bool

    def __bool__(self) -> bool:
        return self.unsigned


def inversion_check(alpha: Iterable[RatLike], size: int) -> InversionCheck:
    a = as_rat_tuple(alpha)
    first = comtet_first(a, size)
    second = comtet_second(a, size)
    unsigned = (
        table_product(first, second).is_identity()
        and table_product(second, first).is_identity()
    )
    signed = True
    for n in range(size + 1):
        for i in range(n + 1):
            acc = Fraction(0)
            for j in range(i, n + 1):
                acc += Fraction((-1) ** (j - i)) * first[n, j] * second[j, i]
            if acc != (1 if n == i else 0):
                signed = False
                break
        if not signed:
            break
    return InversionCheck(unsigned=unsigned, signed=signed)
