"""Exact arithmetic foundations: rational scalars, dense polynomials, and
truncated formal power series.

Every scalar in this package is a `fractions.Fraction`; nothing is ever
rounded. `Polynomial` is an immutable dense univariate polynomial and
`TruncatedSeries` an order-N prefix of a formal power series, both with
exact ring operations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Rat = Fraction
RatLike = Union[Fraction, int, str]

__all__ = [
    "Polynomial",
    "PreconditionError",
    "Rat",
    "RatLike",
    "TruncatedSeries",
    "X",
    "as_rat",
    "as_rat_tuple",
    "box_integral_monomial",
    "exp_series",
    "integer_samples",
    "log1p_series",
    "poly_definite_integral",
    "poly_from_roots",
    "series_compose",
    "series_exp",
    "series_log",
]


class PreconditionError(ValueError):
    """An operation was invoked outside its stated domain."""


def as_rat(value: RatLike) -> Rat:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def as_rat_tuple(values: Iterable[RatLike]) -> tuple[Rat, ...]:
    return tuple(as_rat(v) for v in values)


def integer_samples(count: int) -> tuple[Rat, ...]:
    """The first `count` members of 0, 1, -1, 2, -2, ... as exact rationals.

    Used as deterministic evaluation points when two polynomials are compared
    by sampling.
    """
    out: list[Rat] = []
    step = 1
    if count > 0:
        out.append(Fraction(0))
    while len(out) < count:
        out.append(Fraction(step))
        if len(out) < count:
            out.append(Fraction(-step))
        step += 1
    return tuple(out)


class Polynomial:
    """Dense univariate polynomial with exact rational coefficients.

    Coefficients are stored lowest power first with trailing zeros stripped,
    so equal polynomials compare equal structurally. The zero polynomial has
    an empty coefficient tuple and degree -infinity (float("-inf")), which
    keeps degree(p * q) == degree(p) + degree(q) true without exceptions.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: tuple[Rat, ...] = tuple(cs)

    @classmethod
    def constant(cls, value: RatLike) -> "Polynomial":
        return cls((as_rat(value),))

    @classmethod
    def from_roots(cls, roots: Iterable[RatLike]) -> "Polynomial":
        """The monic polynomial prod_i (X - r_i); the empty product is 1."""
        acc = cls((1,))
        for r in roots:
            acc = acc * cls((-as_rat(r), 1))
        return acc

    @property
    def coeffs(self) -> tuple[Rat, ...]:
        return self._coeffs

    @property
    def degree(self) -> Union[int, float]:
        if not self._coeffs:
            return float("-inf")
        return len(self._coeffs) - 1

    @property
    def leading_coefficient(self) -> Rat:
        if not self._coeffs:
            return Fraction(0)
        return self._coeffs[-1]

    def coefficient(self, i: int) -> Rat:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(("Polynomial", self._coeffs))

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self._coeffs]})"

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self._coeffs))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", RatLike]) -> "Polynomial":
        if isinstance(other, Polynomial):
            if not self._coeffs or not other._coeffs:
                return Polynomial()
            out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
            for i, a in enumerate(self._coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
            return Polynomial(out)
        scale = as_rat(other)
        return Polynomial(tuple(c * scale for c in self._coeffs))

    def __rmul__(self, other: RatLike) -> "Polynomial":
        return self * other

    def __call__(self, point: RatLike) -> Rat:
        x = as_rat(point)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def shifted(self, offset: RatLike) -> "Polynomial":
        """The polynomial q with q(X) = p(X + offset)."""
        shift = Polynomial((as_rat(offset), 1))
        acc = Polynomial()
        for c in reversed(self._coeffs):
            acc = acc * shift + Polynomial.constant(c)
        return acc

    def antiderivative(self) -> "Polynomial":
        """The antiderivative with zero constant term."""
        return Polynomial(
            [Fraction(0)] + [c / (i + 1) for i, c in enumerate(self._coeffs)]
        )

    def integral_to(self, upper: RatLike) -> Rat:
        """Exact definite integral over [0, upper]."""
        return self.antiderivative()(upper)


X = Polynomial((0, 1))


def poly_from_roots(shifts: Iterable[RatLike]) -> Polynomial:
    return Polynomial.from_roots(shifts)


def poly_definite_integral(p: Polynomial, upper: RatLike) -> Rat:
    return p.integral_to(upper)


def box_integral_monomial(m: int, lengths: Sequence[RatLike], k: int) -> Rat:
    """Integral of (x_1 * ... * x_k)^m over the box [0,l_1] x ... x [0,l_k].

    Equals (l_1 ... l_k)^(m+1) / (m+1)^k by separating the variables.
    """
    if m < 0:
        raise PreconditionError("monomial exponent must be nonnegative")
    if k < 1:
        raise PreconditionError("need at least one integration variable")
    ls = as_rat_tuple(lengths)
    if len(ls) != k:
        raise PreconditionError(
            f"expected {k} box lengths, got {len(ls)}"
        )
    prod = Fraction(1)
    for l in ls:
        prod *= l
    return prod ** (m + 1) / Fraction((m + 1) ** k)


class TruncatedSeries:
    """An order-N prefix of a formal power series in one variable t.

    Holds exactly the coefficients of t^0 .. t^N. Binary operations between
    series of different orders truncate to the smaller order, which is the
    largest prefix both operands determine.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, order: int, coeffs: Iterable[RatLike] = ()):
        if order < 0:
            raise PreconditionError("series order must be nonnegative")
        cs = [as_rat(c) for c in coeffs][: order + 1]
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self._coeffs: tuple[Rat, ...] = tuple(cs)

    @classmethod
    def constant(cls, value: RatLike, order: int) -> "TruncatedSeries":
        return cls(order, (as_rat(value),))

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[Rat, ...]:
        return self._coeffs

    def coefficient(self, i: int) -> Rat:
        if not 0 <= i <= self.order:
            raise PreconditionError(
                f"coefficient index {i} outside truncation order {self.order}"
            )
        return self._coeffs[i]

    def truncated(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise PreconditionError(
                "cannot extend a truncated series to a higher order"
            )
        return TruncatedSeries(order, self._coeffs[: order + 1])

    def __iter__(self) -> Iterator[Rat]:
        return iter(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(("TruncatedSeries", self._coeffs))

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, {[str(c) for c in self._coeffs]})"

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, tuple(-c for c in self._coeffs))

    def _common_order(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: Union["TruncatedSeries", RatLike]) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            n = self._common_order(other)
            return TruncatedSeries(
                n, tuple(self._coeffs[i] + other._coeffs[i] for i in range(n + 1))
            )
        c = as_rat(other)
        out = list(self._coeffs)
        out[0] += c
        return TruncatedSeries(self.order, out)

    def __radd__(self, other: RatLike) -> "TruncatedSeries":
        return self + other

    def __sub__(self, other: Union["TruncatedSeries", RatLike]) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return self + (-other)
        return self + (-as_rat(other))

    def __rsub__(self, other: RatLike) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other: Union["TruncatedSeries", RatLike]) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            n = self._common_order(other)
            out = [Fraction(0)] * (n + 1)
            for i in range(n + 1):
                a = self._coeffs[i]
                if a == 0:
                    continue
                for j in range(n + 1 - i):
                    out[i + j] += a * other._coeffs[j]
            return TruncatedSeries(n, out)
        scale = as_rat(other)
        return TruncatedSeries(self.order, tuple(c * scale for c in self._coeffs))

    def __rmul__(self, other: RatLike) -> "TruncatedSeries":
        return self * other

    def __truediv__(self, other: RatLike) -> "TruncatedSeries":
        return self * (Fraction(1) / as_rat(other))

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if exponent < 0:
            raise PreconditionError("negative series powers are not supported")
        acc = TruncatedSeries.constant(1, self.order)
        for _ in range(exponent):
            acc = acc * self
        return acc

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """The prefix of self(inner(t)); inner must have zero constant term."""
        if inner._coeffs[0] != 0:
            raise PreconditionError(
                "series composition needs an inner series with zero constant term"
            )
        n = self._common_order(inner)
        inner = inner.truncated(n)
        acc = TruncatedSeries.constant(0, n)
        for c in reversed(self._coeffs[: n + 1]):
            acc = acc * inner + c
        return acc

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term, to the same order."""
        if self._coeffs[0] != 0:
            raise PreconditionError("series exp needs a zero constant term")
        n = self.order
        out = [Fraction(1)] + [Fraction(0)] * n
        for i in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, i + 1):
                acc += j * self._coeffs[j] * out[i - j]
            out[i] = acc / i
        return TruncatedSeries(n, out)

    def log(self) -> "TruncatedSeries":
        """log of a series with constant term one, to the same order."""
        if self._coeffs[0] != 1:
            raise PreconditionError("series log needs constant term one")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, i):
                acc += j * out[j] * self._coeffs[i - j]
            out[i] = self._coeffs[i] - acc / i
        return TruncatedSeries(n, out)


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    return outer.compose(inner)


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    return s.exp()


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    return s.log()


def exp_series(order: int, rate: RatLike = 1) -> TruncatedSeries:
    """Prefix of exp(rate * t): coefficient of t^m is rate^m / m!."""
    r = as_rat(rate)
    coeffs = [Fraction(1)]
    for m in range(1, order + 1):
        coeffs.append(coeffs[-1] * r / m)
    return TruncatedSeries(order, coeffs)


def log1p_series(order: int) -> TruncatedSeries:
    """Prefix of log(1 + t): coefficient of t^m is (-1)^(m+1)/m for m >= 1."""
    coeffs = [Fraction(0)]
    for m in range(1, order + 1):
        coeffs.append(Fraction((-1) ** (m + 1), m))
    return TruncatedSeries(order, coeffs)
