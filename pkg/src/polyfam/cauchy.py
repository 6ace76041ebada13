"""Cauchy-type number and polynomial families.

The central objects are k-fold box integrals of products of shifted factors:
the first kind integrates prod_i (x_1...x_k - a_i) over
[0,l_1] x ... x [0,l_k], the second kind integrates prod_i (-x_1...x_k - a_i).
Each family value is computed by several independent routes (direct
expansion, triangle closed forms, non-central and Lah expansions, a modified
Bell polynomial formula) that must agree exactly; the polynomial families
replace the parameter sequence by shifted copies of itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .algebra import (
    Polynomial,
    PreconditionError,
    Rat,
    RatLike,
    TruncatedSeries,
    as_rat,
    as_rat_tuple,
    box_integral_monomial,
    log1p_series,
    poly_from_roots,
)
from .stirling import (
    comtet_first,
    lah_signed,
    noncentral_second,
    signless_comtet_first,
    stirling_first,
)

__all__ = [
    "FamilyPoint",
    "classic_first_with_lengths",
    "family_point",
    "generalized_cauchy_poly",
    "generalized_harmonic",
    "lif_gf_check",
    "lif_series",
    "modified_bell",
    "mp_first_bell",
    "mp_first_closed",
    "mp_first_def",
    "mp_first_noncentral",
    "mp_first_via_polycauchy",
    "mp_poly_first",
    "mp_poly_first_oracle",
    "mp_poly_second",
    "mp_poly_second_oracle",
    "mp_second_closed",
    "mp_second_def",
    "mp_second_lah",
    "specialize",
]

SPECIAL_FAMILIES = ("classic", "poly", "q-poly", "q-classic", "extended-q")


@dataclass(frozen=True)
class FamilyPoint:
    """Evaluation point for the multiparameter families.

    n: product length (number of shifted factors), n >= 0.
    k: number of integration variables, k >= 1.
    alpha: parameter sequence; at least n entries (extras are ignored).
    lengths: the k box edge lengths, all nonzero.
    """

    n: int
    k: int
    alpha: tuple[Rat, ...]
    lengths: tuple[Rat, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", as_rat_tuple(self.alpha))
        object.__setattr__(self, "lengths", as_rat_tuple(self.lengths))
        if self.n < 0:
            raise PreconditionError("family index n must be nonnegative")
        if self.k < 1:
            raise PreconditionError("need at least one integration variable")
        if len(self.alpha) < self.n:
            raise PreconditionError(
                f"need at least {self.n} parameters, got {len(self.alpha)}"
            )
        if len(self.lengths) != self.k:
            raise PreconditionError(
                f"expected {self.k} box lengths, got {len(self.lengths)}"
            )
        if any(l == 0 for l in self.lengths):
            raise PreconditionError("box lengths must be nonzero")

    def with_alpha(self, alpha: Iterable[RatLike]) -> "FamilyPoint":
        return FamilyPoint(self.n, self.k, as_rat_tuple(alpha), self.lengths)


def family_point(
    n: int,
    k: int = 1,
    alpha: Optional[Iterable[RatLike]] = None,
    lengths: Optional[Iterable[RatLike]] = None,
) -> FamilyPoint:
    """Convenience constructor: alpha defaults to (0, 1, ..., n-1) and
    lengths to the unit box."""
    if alpha is None:
        alpha = tuple(Fraction(i) for i in range(n))
    if lengths is None:
        lengths = (Fraction(1),) * k
    return FamilyPoint(n, k, as_rat_tuple(alpha), as_rat_tuple(lengths))


def _length_product(p: FamilyPoint) -> Rat:
    prod = Fraction(1)
    for l in p.lengths:
        prod *= l
    return prod


def _integrate_in_product_variable(p: FamilyPoint, poly: Polynomial) -> Rat:
    """Box integral of poly(x_1 ... x_k), term by term."""
    return sum(
        (
            c * box_integral_monomial(m, p.lengths, p.k)
            for m, c in enumerate(poly.coeffs)
            if c != 0
        ),
        Fraction(0),
    )


def mp_first_def(p: FamilyPoint) -> Rat:
    """First kind by definition: expand prod_i (T - a_i) with T = x_1...x_k
    and integrate each monomial over the box."""
    return _integrate_in_product_variable(p, poly_from_roots(p.alpha[: p.n]))


def mp_first_closed(p: FamilyPoint) -> Rat:
    """First kind from the first-kind triangle row n."""
    table = comtet_first(p.alpha[: p.n], p.n)
    prod = _length_product(p)
    return sum(
        (
            table[p.n, m] * prod ** (m + 1) / Fraction((m + 1) ** p.k)
            for m in range(p.n + 1)
        ),
        Fraction(0),
    )


def classic_first_with_lengths(
    m: int, k: int, lengths: Sequence[RatLike]
) -> Rat:
    """First-kind value at the classical parameters (0, 1, ..., m-1) with a
    general box: sum_j s(m, j) (l_1...l_k)^(j+1) / (j+1)^k."""
    ls = as_rat_tuple(lengths)
    if len(ls) != k:
        raise PreconditionError(f"expected {k} box lengths, got {len(ls)}")
    s = stirling_first(m)
    prod = Fraction(1)
    for l in ls:
        prod *= l
    return sum(
        (s[m, j] * prod ** (j + 1) / Fraction((j + 1) ** k) for j in range(m + 1)),
        Fraction(0),
    )


def mp_first_noncentral(p: FamilyPoint) -> Rat:
    """First kind through the non-central table and the classical first-kind
    triangle: sum_j sum_{m>=j} S(n, m; a) s(m, j) (l_1...l_k)^(j+1)/(j+1)^k."""
    nc = noncentral_second(p.alpha[: p.n], p.n)
    s = stirling_first(p.n)
    prod = _length_product(p)
    total = Fraction(0)
    for j in range(p.n + 1):
        weight = prod ** (j + 1) / Fraction((j + 1) ** p.k)
        for m in range(j, p.n + 1):
            total += nc[p.n, m] * s[m, j] * weight
    return total


def mp_first_via_polycauchy(p: FamilyPoint) -> Rat:
    """First kind as a non-central combination of classical-parameter values
    carrying the same box lengths: sum_m S(n, m; a) C_m(lengths)."""
    nc = noncentral_second(p.alpha[: p.n], p.n)
    return sum(
        (
            nc[p.n, m] * classic_first_with_lengths(m, p.k, p.lengths)
            for m in range(p.n + 1)
        ),
        Fraction(0),
    )


def generalized_harmonic(
    alpha: Iterable[RatLike], n: int, max_order: int
) -> tuple[Rat, ...]:
    """Power sums of reciprocals (H^(1), ..., H^(max_order)) with
    H^(j) = sum_{i<n} a_i^(-j). Requires the first n parameters nonzero."""
    a = as_rat_tuple(alpha)
    if len(a) < n:
        raise PreconditionError(f"need at least {n} parameters, got {len(a)}")
    head = a[:n]
    if any(x == 0 for x in head):
        raise PreconditionError(
            "reciprocal power sums need nonzero parameters"
        )
    out = []
    for j in range(1, max_order + 1):
        out.append(sum((x ** (-j) for x in head), Fraction(0)))
    return tuple(out)


def modified_bell(m: int, xs: Sequence[RatLike]) -> Rat:
    """The weighted Bell polynomial P_m(x_1, ..., x_m): the coefficient of
    t^m in exp(sum_{j>=1} x_j t^j / j)."""
    if m < 0:
        raise PreconditionError("index must be nonnegative")
    vals = as_rat_tuple(xs)
    if len(vals) < m:
        raise PreconditionError(f"need {m} arguments, got {len(vals)}")
    if m == 0:
        return Fraction(1)
    inner = TruncatedSeries(
        m, [Fraction(0)] + [vals[j - 1] / j for j in range(1, m + 1)]
    )
    return inner.exp().coefficient(m)


def mp_first_bell(p: FamilyPoint) -> Rat:
    """First kind via the explicit Bell-polynomial formula
    (-1)^n (prod a_i) sum_m P_m(-H^(1), ..., -H^(m)) (l_1...l_k)^(m+1)/(m+1)^k.
    Requires nonzero parameters."""
    harmonics = generalized_harmonic(p.alpha, p.n, p.n)
    prod_alpha = Fraction(1)
    for a in p.alpha[: p.n]:
        prod_alpha *= a
    prod = _length_product(p)
    total = Fraction(0)
    for m in range(p.n + 1):
        pm = modified_bell(m, tuple(-h for h in harmonics[:m]))
        total += pm * prod ** (m + 1) / Fraction((m + 1) ** p.k)
    return Fraction((-1) ** p.n) * prod_alpha * total


def mp_second_def(p: FamilyPoint) -> Rat:
    """Second kind by definition: expand prod_i (-T - a_i), which equals
    (-1)^n prod_i (T + a_i), and integrate each monomial over the box."""
    expanded = poly_from_roots(tuple(-a for a in p.alpha[: p.n]))
    return Fraction((-1) ** p.n) * _integrate_in_product_variable(p, expanded)


def mp_second_closed(p: FamilyPoint) -> Rat:
    """Second kind from the signless triangle (read as the expansion of
    prod_i (X + a_i), valid for every parameter sequence)."""
    table = signless_comtet_first(p.alpha[: p.n], p.n)
    prod = _length_product(p)
    return Fraction((-1) ** p.n) * sum(
        (
            table[p.n, m] * prod ** (m + 1) / Fraction((m + 1) ** p.k)
            for m in range(p.n + 1)
        ),
        Fraction(0),
    )


def mp_second_lah(p: FamilyPoint) -> Rat:
    """Second kind through non-central and signed Lah expansions:
    sum_l sum_{m>=l} S(n, m; a) L(m, l) C_l(lengths)."""
    nc = noncentral_second(p.alpha[: p.n], p.n)
    lah = lah_signed(p.n)
    total = Fraction(0)
    for l in range(p.n + 1):
        classic = classic_first_with_lengths(l, p.k, p.lengths)
        for m in range(l, p.n + 1):
            total += nc[p.n, m] * lah[m, l] * classic
    return total


def specialize(
    family: str,
    kind: str,
    n: int,
    k: int = 1,
    q: Optional[RatLike] = None,
    lengths: Optional[Iterable[RatLike]] = None,
) -> Rat:
    """Classical and q-parameter members of the families, as sugar over the
    multiparameter definitions.

    family: 'classic'    k = 1, parameters 0..n-1, one box length
            'poly'       parameters 0..n-1, unit box in k variables
            'q-poly'     parameters 0, q, ..., (n-1)q, unit box
            'q-classic'  k = 1, parameters 0, q, ..., (n-1)q, one box length
            'extended-q' parameters 0, q, ..., (n-1)q, general box
    kind:   'first' or 'second'
    """
    if family not in SPECIAL_FAMILIES:
        raise PreconditionError(f"unknown specialization family {family!r}")
    if kind not in ("first", "second"):
        raise PreconditionError(f"unknown family kind {kind!r}")
    if family in ("q-poly", "q-classic", "extended-q"):
        if q is None:
            raise PreconditionError(f"family {family!r} needs the q parameter")
        alpha = tuple(Fraction(i) * as_rat(q) for i in range(n))
    else:
        alpha = tuple(Fraction(i) for i in range(n))
    if family in ("classic", "q-classic"):
        k = 1
        ls = as_rat_tuple(lengths) if lengths is not None else (Fraction(1),)
        if len(ls) != 1:
            raise PreconditionError(f"family {family!r} takes one box length")
    elif family in ("poly", "q-poly"):
        ls = (Fraction(1),) * k
    else:
        if lengths is None:
            raise PreconditionError("family 'extended-q' needs box lengths")
        ls = as_rat_tuple(lengths)
    point = FamilyPoint(n, k, alpha, ls)
    if kind == "first":
        return mp_first_def(point)
    return mp_second_def(point)


def lif_series(k: int, order: int) -> TruncatedSeries:
    """Prefix of the factorial polylogarithm sum_m t^m / (m! (m+1)^k)."""
    return TruncatedSeries(
        order,
        [
            Fraction(1, math.factorial(m) * (m + 1) ** k)
            for m in range(order + 1)
        ],
    )


def lif_gf_check(k: int, order: int) -> bool:
    """True iff the factorial polylogarithm composed with log(1+t) matches
    the exponential generating function of the classical first-kind values
    through the requested order."""
    lhs = lif_series(k, order).compose(log1p_series(order))
    rhs = TruncatedSeries(
        order,
        [
            specialize("poly", "first", n, k) / math.factorial(n)
            for n in range(order + 1)
        ],
    )
    return lhs == rhs


def _binomial_length_weights(
    p: FamilyPoint, m: int
) -> tuple[Rat, ...]:
    """Row of weights w(m, i) = C(m, i) (l_1...l_k)^(m-i+1) / (m-i+1)^k."""
    prod = _length_product(p)
    return tuple(
        math.comb(m, i) * prod ** (m - i + 1) / Fraction((m - i + 1) ** p.k)
        for i in range(m + 1)
    )


def mp_poly_first(p: FamilyPoint) -> Polynomial:
    """First-kind polynomial in z: the box integral of
    prod_i (x_1...x_k - a_i - z), expanded as
    sum_i sum_{m>=i} (-1)^i C(m, i) s_a(n, m) (l...)^(m-i+1)/(m-i+1)^k z^i."""
    table = comtet_first(p.alpha[: p.n], p.n)
    coeffs = [Fraction(0)] * (p.n + 1)
    for m in range(p.n + 1):
        weights = _binomial_length_weights(p, m)
        entry = table[p.n, m]
        if entry == 0:
            continue
        for i in range(m + 1):
            coeffs[i] += Fraction((-1) ** i) * entry * weights[i]
    return Polynomial(coeffs)


def mp_poly_second(p: FamilyPoint) -> Polynomial:
    """Second-kind polynomial in z: the box integral of
    prod_i (-x_1...x_k - a_i + z), expanded through the signless triangle."""
    table = signless_comtet_first(p.alpha[: p.n], p.n)
    coeffs = [Fraction(0)] * (p.n + 1)
    for m in range(p.n + 1):
        weights = _binomial_length_weights(p, m)
        entry = table[p.n, m]
        if entry == 0:
            continue
        for i in range(m + 1):
            coeffs[i] += Fraction((-1) ** (i + p.n)) * entry * weights[i]
    return Polynomial(coeffs)


def mp_poly_first_oracle(p: FamilyPoint, z0: RatLike) -> Rat:
    """Definitional value of the first-kind polynomial at z = z0: every
    parameter is shifted by z0 and the plain definition is integrated."""
    z = as_rat(z0)
    return mp_first_def(p.with_alpha(tuple(a + z for a in p.alpha[: p.n])))


def mp_poly_second_oracle(p: FamilyPoint, z0: RatLike) -> Rat:
    """Definitional value of the second-kind polynomial at z = z0 (parameters
    shifted by -z0 in the negated-variable expansion)."""
    z = as_rat(z0)
    return mp_second_def(p.with_alpha(tuple(a - z for a in p.alpha[: p.n])))


def generalized_cauchy_poly(
    kind: str,
    n: int,
    alpha: Iterable[RatLike],
    length: RatLike = 1,
) -> Polynomial:
    """Single-integral (k = 1) polynomial families."""
    point = FamilyPoint(n, 1, as_rat_tuple(alpha), (as_rat(length),))
    if kind == "first":
        return mp_poly_first(point)
    if kind == "second":
        return mp_poly_second(point)
    raise PreconditionError(f"unknown family kind {kind!r}")
