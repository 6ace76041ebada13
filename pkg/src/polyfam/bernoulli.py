"""Bernoulli-type families: classical polylogarithm Bernoulli numbers and
their multiparameter generalization, with exact truncated generating-function
checks.

The multiparameter values are weighted sums of second-kind triangle rows. Two
summation conventions exist for them: the 'corrected' single-factorial
convention (the default, and the unique one that reduces to the classical
values at integer parameters) and a 'verbatim' convention with a duplicated
factorial that is kept computable for the errata report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (
    PreconditionError,
    Polynomial,
    Rat,
    RatLike,
    TruncatedSeries,
    as_rat,
    as_rat_tuple,
    exp_series,
)
from .cauchy import FamilyPoint, _length_product
from .stirling import comtet_second, stirling_second

__all__ = [
    "CONVENTIONS",
    "SeriesCheck",
    "classic_poly_bernoulli",
    "li_gf_check",
    "mp_bernoulli",
    "mp_bernoulli_gf_check",
    "mp_bernoulli_poly",
    "mp_bernoulli_poly_gf_check",
]

CONVENTIONS = ("corrected", "verbatim")


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise PreconditionError(f"unknown summation convention {convention!r}")


def classic_poly_bernoulli(n: int, k: int) -> Rat:
    """Classical value (-1)^n sum_m S(n, m) (-1)^m m! / (m+1)^k."""
    if n < 0:
        raise PreconditionError("index must be nonnegative")
    table = stirling_second(n)
    total = Fraction(0)
    for m in range(n + 1):
        total += (
            table[n, m]
            * Fraction((-1) ** m)
            * math.factorial(m)
            / Fraction((m + 1) ** k)
        )
    return Fraction((-1) ** n) * total


def li_gf_check(k: int, order: int) -> bool:
    """True iff sum_{m>=1} (1 - e^{-t})^{m-1} / m^k matches the exponential
    generating function of the classical values through the given order."""
    u = 1 - exp_series(order, rate=-1)
    lhs = TruncatedSeries.constant(0, order)
    for m in range(1, order + 2):
        lhs = lhs + u ** (m - 1) / Fraction(m**k)
    rhs = TruncatedSeries(
        order,
        [classic_poly_bernoulli(n, k) / math.factorial(n) for n in range(order + 1)],
    )
    return lhs == rhs


def mp_bernoulli(p: FamilyPoint, convention: str = "corrected") -> Rat:
    """Multiparameter value
    sum_m (-1)^(n-m) m! S_a(n, m) (l_1...l_k)^(m+1) / (m+1)^k.

    The 'verbatim' convention multiplies each summand by a second m!.
    """
    _check_convention(convention)
    table = comtet_second(p.alpha[: p.n], p.n)
    prod = _length_product(p)
    total = Fraction(0)
    for m in range(p.n + 1):
        term = (
            Fraction((-1) ** (p.n - m))
            * math.factorial(m)
            * table[p.n, m]
            * prod ** (m + 1)
            / Fraction((m + 1) ** p.k)
        )
        if convention == "verbatim":
            term *= math.factorial(m)
        total += term
    return total


@dataclass(frozen=True)
class SeriesCheck:
    """Comparison of a family generating function against a closed form.

    lhs holds the family side, rhs the reconstructed closed form, and
    verbatim_rhs the closed form with its summation ranges read exactly as
    stated (see `note`). All three share the same truncation order.
    """

    lhs: TruncatedSeries
    rhs: TruncatedSeries
    verbatim_rhs: TruncatedSeries
    note: str = ""

    @property
    def order(self) -> int:
        return self.lhs.order

    @property
    def per_coefficient(self) -> tuple[bool, ...]:
        return tuple(a == b for a, b in zip(self.lhs.coeffs, self.rhs.coeffs))

    @property
    def all_match(self) -> bool:
        return all(self.per_coefficient)

    @property
    def verbatim_matches(self) -> bool:
        return self.lhs == self.verbatim_rhs


def _distinct_head(alpha: tuple[Rat, ...], count: int) -> tuple[Rat, ...]:
    if len(alpha) < count:
        raise PreconditionError(
            f"need {count} parameters for the generating function, got {len(alpha)}"
        )
    head = alpha[:count]
    if len(set(head)) != len(head):
        raise PreconditionError(
            "generating-function closed form needs pairwise distinct parameters"
        )
    return head


def _second_kind_column_egf(
    alpha: Sequence[Rat], m: int, order: int
) -> TruncatedSeries:
    """sum_{j<=m} e^{-a_j t} / prod_{i<=m, i!=j} (a_j - a_i): the exponential
    generating function (in -t) of column m of the second-kind triangle."""
    acc = TruncatedSeries.constant(0, order)
    for j in range(m + 1):
        denom = Fraction(1)
        for i in range(m + 1):
            if i != j:
                denom *= alpha[j] - alpha[i]
        acc = acc + exp_series(order, rate=-alpha[j]) / denom
    return acc


def mp_bernoulli_gf_check(
    alpha: Iterable[RatLike],
    lengths: Iterable[RatLike],
    k: int,
    order: int,
) -> SeriesCheck:
    """Compare sum_n B_n t^n/n! with the closed form
    sum_m (-1)^m m! (l...)^(m+1)/(m+1)^k sum_{j<=m} e^{-a_j t}/prod(a_j - a_i),
    truncated at `order`. Needs order+1 pairwise distinct parameters."""
    a = as_rat_tuple(alpha)
    ls = as_rat_tuple(lengths)
    head = _distinct_head(a, order + 1)
    lhs = TruncatedSeries(
        order,
        [
            mp_bernoulli(FamilyPoint(n, k, a, ls)) / math.factorial(n)
            for n in range(order + 1)
        ],
    )
    prod = Fraction(1)
    for l in ls:
        prod *= l

    def weight(m: int) -> Rat:
        return (
            Fraction((-1) ** m)
            * math.factorial(m)
            * prod ** (m + 1)
            / Fraction((m + 1) ** k)
        )

    rhs = TruncatedSeries.constant(0, order)
    for m in range(order + 1):
        rhs = rhs + weight(m) * _second_kind_column_egf(head, m, order)
    # Stated ranges: outer sum over j with the inner sum running m = j..order;
    # the same (j, m) pairs in the other order.
    verbatim = TruncatedSeries.constant(0, order)
    for j in range(order + 1):
        for m in range(j, order + 1):
            denom = Fraction(1)
            for i in range(m + 1):
                if i != j:
                    denom *= head[j] - head[i]
            verbatim = verbatim + weight(m) * exp_series(order, rate=-head[j]) / denom
    return SeriesCheck(
        lhs=lhs,
        rhs=rhs,
        verbatim_rhs=verbatim,
        note=(
            "stated outer bound is unbound; read as the truncation order, "
            "which reorders the reconstructed double sum"
        ),
    )


def mp_bernoulli_poly(p: FamilyPoint, convention: str = "corrected") -> Polynomial:
    """Polynomial family in z:
    (-1)^n sum_i sum_{m>=i} (-1)^m m! C(m,i) S_a(n,m)
    (l...)^(m-i+1)/(m-i+1)^k (-z)^i.

    At z = 0 this reduces to mp_bernoulli under the same convention; the
    'verbatim' convention mirrors the duplicated factorial of the number
    family so that the reduction holds in both conventions."""
    _check_convention(convention)
    table = comtet_second(p.alpha[: p.n], p.n)
    prod = _length_product(p)
    coeffs = [Fraction(0)] * (p.n + 1)
    for m in range(p.n + 1):
        entry = table[p.n, m]
        if entry == 0:
            continue
        base = Fraction((-1) ** m) * math.factorial(m) * entry
        if convention == "verbatim":
            base *= math.factorial(m)
        for i in range(m + 1):
            # (-z)^i contributes another (-1)^i to the z^i coefficient.
            coeffs[i] += (
                base
                * math.comb(m, i)
                * prod ** (m - i + 1)
                / Fraction((m - i + 1) ** p.k)
                * Fraction((-1) ** i)
            )
    return Polynomial([Fraction((-1) ** p.n) * c for c in coeffs])


def mp_bernoulli_poly_gf_check(
    alpha: Iterable[RatLike],
    lengths: Iterable[RatLike],
    k: int,
    z0: RatLike,
    order: int,
) -> SeriesCheck:
    """Compare sum_n B_n(z0) t^n/n! with the closed form
    sum_m (-1)^m m! w_m(z0) sum_{j<=m} e^{-a_j t}/prod(a_j - a_i)
    where w_m(z) = sum_i C(m,i) (l...)^(m-i+1) (-z)^i / (m-i+1)^k.
    The stated form omits the factorial; verbatim_rhs evaluates it as stated.
    """
    a = as_rat_tuple(alpha)
    ls = as_rat_tuple(lengths)
    z = as_rat(z0)
    head = _distinct_head(a, order + 1)
    lhs = TruncatedSeries(
        order,
        [
            mp_bernoulli_poly(FamilyPoint(n, k, a, ls))(z) / math.factorial(n)
            for n in range(order + 1)
        ],
    )
    prod = Fraction(1)
    for l in ls:
        prod *= l

    def z_weight(m: int) -> Rat:
        return sum(
            (
                math.comb(m, i)
                * prod ** (m - i + 1)
                * (-z) ** i
                / Fraction((m - i + 1) ** k)
                for i in range(m + 1)
            ),
            Fraction(0),
        )

    rhs = TruncatedSeries.constant(0, order)
    verbatim = TruncatedSeries.constant(0, order)
    for m in range(order + 1):
        column = _second_kind_column_egf(head, m, order)
        w = z_weight(m)
        rhs = rhs + Fraction((-1) ** m) * math.factorial(m) * w * column
        verbatim = verbatim + Fraction((-1) ** m) * w * column
    return SeriesCheck(
        lhs=lhs,
        rhs=rhs,
        verbatim_rhs=verbatim,
        note=(
            "stated form omits the factorial weight m! and leaves the "
            "exponential-sum bounds implicit; verbatim reading keeps the "
            "stated weights with the reconstructed bounds"
        ),
    )
