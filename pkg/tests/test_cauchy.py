from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from polyfam.algebra import PreconditionError
from polyfam.cauchy import (
    FamilyPoint,
    classic_first_with_lengths,
    family_point,
    generalized_cauchy_poly,
    generalized_harmonic,
    lif_gf_check,
    lif_series,
    modified_bell,
    mp_first_bell,
    mp_first_closed,
    mp_first_def,
    mp_first_noncentral,
    mp_first_via_polycauchy,
    mp_poly_first,
    mp_poly_first_oracle,
    mp_poly_second,
    mp_poly_second_oracle,
    mp_second_closed,
    mp_second_def,
    mp_second_lah,
    specialize,
)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=8)
nonzero_rationals = rationals.filter(lambda v: v != 0)


def sympy_first_kind(n, k, alpha, lengths):
    """Independent route: expand the product symbolically and integrate
    variable by variable over the box."""
    xs = sympy.symbols(f"x0:{k}")
    prod_var = sympy.prod(xs) if k else sympy.Integer(1)
    integrand = sympy.prod(
        [prod_var - sympy.Rational(a) for a in alpha[:n]], sympy.Integer(1)
    )
    for x, l in zip(xs, lengths):
        integrand = sympy.integrate(integrand, (x, 0, sympy.Rational(l)))
    return Fraction(str(sympy.nsimplify(integrand)))


def test_first_kind_matches_symbolic_integration():
    points = [
        (0, 1, (), (Fraction(1),)),
        (3, 1, (0, 1, 2), (Fraction(1),)),
        (3, 1, (Fraction(1, 2), -2, 3), (Fraction(5, 3),)),
        (2, 2, (-1, Fraction(2, 7)), (Fraction(1), Fraction(1, 2))),
    ]
    for n, k, alpha, lengths in points:
        p = FamilyPoint(n, k, tuple(Fraction(a) for a in alpha), lengths)
        assert mp_first_def(p) == sympy_first_kind(n, k, p.alpha, p.lengths)


@settings(max_examples=30)
@given(
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=1, max_value=2),
    st.lists(rationals, min_size=4, max_size=4),
    st.lists(nonzero_rationals, min_size=2, max_size=2),
)
def test_first_kind_routes_agree(n, k, alpha, lengths):
    p = FamilyPoint(n, k, tuple(alpha), tuple(lengths[:k]))
    value = mp_first_def(p)
    assert mp_first_closed(p) == value
    assert mp_first_noncentral(p) == value
    assert mp_first_via_polycauchy(p) == value


@settings(max_examples=30)
@given(
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=1, max_value=2),
    st.lists(rationals, min_size=4, max_size=4),
    st.lists(nonzero_rationals, min_size=2, max_size=2),
)
def test_second_kind_routes_agree(n, k, alpha, lengths):
    p = FamilyPoint(n, k, tuple(alpha), tuple(lengths[:k]))
    value = mp_second_def(p)
    assert mp_second_closed(p) == value
    assert mp_second_lah(p) == value


def test_second_kind_def_negates_every_factor():
    # prod(-T - a) = (-1)^n prod(T + a), so at n = 1, alpha = (2), the
    # integrand is -(x + 2) and the unit interval gives -5/2.
    p = FamilyPoint(1, 1, (Fraction(2),), (Fraction(1),))
    assert mp_second_def(p) == Fraction(-5, 2)


def test_classical_number_anchors():
    first = [mp_first_def(family_point(n)) for n in range(5)]
    assert first == [
        Fraction(1),
        Fraction(1, 2),
        Fraction(-1, 6),
        Fraction(1, 4),
        Fraction(-19, 30),
    ]
    assert mp_second_def(family_point(2)) == Fraction(5, 6)


def test_classic_first_with_lengths():
    assert classic_first_with_lengths(2, 1, (1,)) == Fraction(-1, 6)
    assert classic_first_with_lengths(2, 2, (1, 1)) == Fraction(
        mp_first_def(family_point(2, 2))
    )
    with pytest.raises(PreconditionError):
        classic_first_with_lengths(2, 2, (1,))


def test_family_point_validation():
    with pytest.raises(PreconditionError):
        FamilyPoint(-1, 1, (), (Fraction(1),))
    with pytest.raises(PreconditionError):
        FamilyPoint(0, 0, (), ())
    with pytest.raises(PreconditionError):
        FamilyPoint(2, 1, (Fraction(1),), (Fraction(1),))
    with pytest.raises(PreconditionError):
        FamilyPoint(0, 1, (), (Fraction(0),))


def test_family_point_ignores_extra_parameters():
    base = FamilyPoint(1, 1, (Fraction(3),), (Fraction(1),))
    padded = FamilyPoint(1, 1, (Fraction(3), Fraction(9)), (Fraction(1),))
    assert mp_first_def(base) == mp_first_def(padded)


def test_generalized_harmonic_values():
    h = generalized_harmonic((1, 2, 3), 3, 2)
    assert h == (Fraction(11, 6), Fraction(49, 36))
    assert generalized_harmonic((5,), 0, 3) == (
        Fraction(0),
        Fraction(0),
        Fraction(0),
    )


def test_generalized_harmonic_preconditions():
    with pytest.raises(PreconditionError):
        generalized_harmonic((0, 1), 2, 1)
    with pytest.raises(PreconditionError):
        generalized_harmonic((1,), 2, 1)


def test_modified_bell_small_cases():
    assert modified_bell(0, ()) == 1
    x1, x2 = Fraction(3, 2), Fraction(-5)
    assert modified_bell(1, (x1,)) == x1
    assert modified_bell(2, (x1, x2)) == x1 ** 2 / 2 + x2 / 2
    with pytest.raises(PreconditionError):
        modified_bell(2, (x1,))


@settings(max_examples=25)
@given(
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=1, max_value=2),
    st.lists(nonzero_rationals, min_size=4, max_size=4),
)
def test_bell_route_agrees_on_nonzero_parameters(n, k, alpha):
    p = FamilyPoint(n, k, tuple(alpha), (Fraction(1),) * k)
    assert mp_first_bell(p) == mp_first_def(p)


@given(st.lists(nonzero_rationals, min_size=3, max_size=3))
def test_bell_polynomials_vanish_past_the_parameter_count(alpha):
    # exp(sum_j -H^(j) t^j / j) = prod_i (1 - t/a_i) has degree len(alpha).
    n = len(alpha)
    top = n + 4
    h = generalized_harmonic(alpha, n, top)
    args = tuple(-v for v in h)
    for m in range(n + 1, top + 1):
        assert modified_bell(m, args) == 0


def test_lif_series_prefix():
    s = lif_series(2, 3)
    assert s.coeffs == (
        Fraction(1),
        Fraction(1, 4),
        Fraction(1, 18),
        Fraction(1, 96),
    )


def test_lif_generating_function_check():
    for k in (1, 2, 3):
        assert lif_gf_check(k, 6)


def test_specialize_families():
    assert specialize("classic", "first", 3) == mp_first_def(family_point(3))
    assert specialize("poly", "second", 2, k=3) == mp_second_def(
        family_point(2, 3)
    )
    assert specialize("q-poly", "first", 3, k=2, q=1) == specialize(
        "poly", "first", 3, k=2
    )
    assert specialize(
        "extended-q", "first", 2, k=2, q=Fraction(1, 2), lengths=(1, 1)
    ) == specialize("q-poly", "first", 2, k=2, q=Fraction(1, 2))
    got = specialize("q-classic", "second", 2, q=2, lengths=(Fraction(3),))
    want = mp_second_def(
        FamilyPoint(2, 1, (Fraction(0), Fraction(2)), (Fraction(3),))
    )
    assert got == want


def test_specialize_preconditions():
    with pytest.raises(PreconditionError):
        specialize("nope", "first", 2)
    with pytest.raises(PreconditionError):
        specialize("classic", "third", 2)
    with pytest.raises(PreconditionError):
        specialize("q-poly", "first", 2)
    with pytest.raises(PreconditionError):
        specialize("extended-q", "first", 2, q=1)
    with pytest.raises(PreconditionError):
        specialize("classic", "first", 2, lengths=(1, 2))


@settings(max_examples=20)
@given(
    st.integers(min_value=0, max_value=4),
    st.lists(rationals, min_size=4, max_size=4),
    nonzero_rationals,
)
def test_polynomials_evaluate_to_the_shifted_integrals(n, alpha, length):
    p = FamilyPoint(n, 1, tuple(alpha), (length,))
    first = mp_poly_first(p)
    second = mp_poly_second(p)
    assert first(0) == mp_first_def(p)
    assert second(0) == mp_second_def(p)
    for z in (Fraction(1), Fraction(-1, 2)):
        assert first(z) == mp_poly_first_oracle(p, z)
        assert second(z) == mp_poly_second_oracle(p, z)


def test_polynomial_degree_and_leading_coefficient():
    alpha = (Fraction(1, 3), Fraction(-2), Fraction(4))
    lengths = (Fraction(1, 2), Fraction(-3))
    prod = Fraction(1, 2) * Fraction(-3)
    for n in range(4):
        p = FamilyPoint(n, 2, alpha, lengths)
        first = mp_poly_first(p)
        second = mp_poly_second(p)
        assert first.degree == n
        assert second.degree == n
        assert first.leading_coefficient == (-1) ** n * prod
        assert second.leading_coefficient == prod


def test_generalized_cauchy_poly_dispatch():
    alpha = (Fraction(2), Fraction(-1))
    p = FamilyPoint(2, 1, alpha, (Fraction(1),))
    assert generalized_cauchy_poly("first", 2, alpha) == mp_poly_first(p)
    assert generalized_cauchy_poly("second", 2, alpha) == mp_poly_second(p)
    with pytest.raises(PreconditionError):
        generalized_cauchy_poly("third", 2, alpha)
