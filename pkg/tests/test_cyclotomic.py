import cmath
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from exotic7.cyclotomic import (
    RationalPolynomial,
    cyclotomic_field,
    cyclotomic_polynomial,
    euler_phi,
    extract_rational,
    format_rational,
    invert,
    numeric_value,
    parse_rational,
    root_power,
)
from exotic7.errors import FieldMismatch, NotRational, ZeroInverse


def phi_by_roots(n):
    """Phi_n as the product of (x - w) over primitive n-th roots, rounded."""
    coeffs = [complex(1)]
    for k in range(1, n + 1):
        if math.gcd(k, n) != 1:
            continue
        w = cmath.exp(2j * math.pi * k / n)
        shifted = [0j] + coeffs
        coeffs = [s - w * c for s, c in zip(shifted, coeffs + [0j])]
    return [round(c.real) for c in coeffs]


def poly(*coeffs):
    return RationalPolynomial(coeffs)


# -- rationals --------------------------------------------------------------

@pytest.mark.parametrize("value, text", [
    (Fraction(3, 2), "3/2"),
    (Fraction(-1, 28), "-1/28"),
    (Fraction(6, 3), "2"),
    (Fraction(0), "0"),
])
def test_format_rational(value, text):
    assert format_rational(value) == text
    assert parse_rational(text) == value


@given(st.fractions())
def test_rational_roundtrip(x):
    assert parse_rational(format_rational(x)) == x


@pytest.mark.parametrize("bad", ["", "1/0", "a/b", "1.5", "1/-2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


# -- polynomials ------------------------------------------------------------

def test_polynomial_divmod_and_xgcd():
    a = poly(-1, 0, 0, 1)          # x^3 - 1
    b = poly(-1, 1)                # x - 1
    q, r = divmod(a, b)
    assert q == poly(1, 1, 1) and r.is_zero()
    g, s, t = poly(1, 1).xgcd(poly(1, 1, 1))
    assert g == poly(1)
    assert s * poly(1, 1) + t * poly(1, 1, 1) == g


def test_polynomial_str():
    assert str(cyclotomic_polynomial(6)) == "x^2 - x + 1"
    assert str(RationalPolynomial()) == "0"


# -- cyclotomic polynomials -------------------------------------------------

@pytest.mark.parametrize("n, coeffs", [
    (1, (-1, 1)),
    (2, (1, 1)),
    (6, (1, -1, 1)),
])
def test_cyclotomic_polynomial_small(n, coeffs):
    assert cyclotomic_polynomial(n) == RationalPolynomial(coeffs)


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_polynomial_matches_root_product(n):
    phi = cyclotomic_polynomial(n)
    assert phi.is_integral() and phi.leading == 1
    assert phi.degree == euler_phi(n) == sum(math.gcd(k, n) == 1 for k in range(1, n + 1))
    assert [int(c) for c in phi.coefficients] == phi_by_roots(n)
    assert (RationalPolynomial.monomial(n) - 1) % phi == 0


def test_cyclotomic_polynomial_rejects_zero():
    with pytest.raises(ValueError):
        cyclotomic_polynomial(0)


# -- field arithmetic -------------------------------------------------------

def test_root_power_examples():
    f5 = cyclotomic_field(5)
    assert root_power(f5, 0) == 1
    assert root_power(f5, 5) == 1
    assert root_power(cyclotomic_field(4), 2) == -1


def test_ring_examples():
    f3 = cyclotomic_field(3)
    z = f3.root_power(1)
    assert (1 + z) * (1 + z * z) == 1
    assert invert(1 + z) == -z
    for n in (3, 7, 12, 30):
        f = cyclotomic_field(n)
        e = f.element([Fraction(1, 3), 2, -5])
        assert f.one() * e == e
        assert f.root_power(1) * f.root_power(n - 1) == 1
        assert invert(f.root_power(1)) == f.root_power(n - 1)
        assert invert(f.one()) == 1


def test_extract_rational():
    f7 = cyclotomic_field(7)
    assert extract_rational(f7.rational(Fraction(3, 2))) == Fraction(3, 2)
    assert extract_rational(sum((f7.root_power(k) for k in range(1, 7)), f7.zero())) == -1
    with pytest.raises(NotRational):
        extract_rational(cyclotomic_field(5).root_power(1))


def test_errors():
    with pytest.raises(ZeroInverse):
        invert(cyclotomic_field(9).zero())
    with pytest.raises(FieldMismatch):
        cyclotomic_field(5).one() + cyclotomic_field(7).one()


def test_numeric_value_examples():
    assert abs(complex(numeric_value(cyclotomic_field(3).one())) - 1) < 1e-15
    assert abs(complex(numeric_value(cyclotomic_field(4).root_power(1))) - 1j) < 1e-15
    z6 = complex(numeric_value(cyclotomic_field(6).root_power(1), precision=100))
    assert abs(z6 - complex(0.5, math.sqrt(3) / 2)) < 1e-15


@st.composite
def field_elements(draw, n=None, height=10**3, count=1, max_denominator=50):
    if n is None:
        n = draw(st.integers(min_value=1, max_value=60))
    field = cyclotomic_field(n)
    coeff = st.fractions(min_value=-height, max_value=height, max_denominator=max_denominator)
    elems = [field.element(draw(st.lists(coeff, min_size=field.degree, max_size=field.degree)))
             for _ in range(count)]
    return elems


@given(field_elements(height=5, max_denominator=1))
def test_inverse_roundtrip(elems):
    (a,) = elems
    if a.is_zero():
        return
    assert a * invert(a) == 1


@given(st.integers(1, 60), st.integers(-200, 200), st.integers(-200, 200))
def test_root_power_homomorphism(n, k, m):
    f = cyclotomic_field(n)
    assert f.root_power(k) * f.root_power(m) == f.root_power(k + m)


@pytest.mark.parametrize("n", range(1, 61))
def test_phi_vanishes_at_zeta_and_geometric_sum(n):
    f = cyclotomic_field(n)
    zeta = f.root_power(1)
    value = f.zero()
    for c in reversed(f.modulus.coefficients):
        value = value * zeta + c
    assert value.is_zero()
    if n > 1:
        assert sum((f.root_power(k) for k in range(n)), f.zero()).is_zero()


@given(st.integers(1, 60).flatmap(lambda n: field_elements(n=n, count=2)))
def test_numeric_value_respects_products(elems):
    b, c = elems
    a = b * c
    with mpmath.workprec(120):
        diff = numeric_value(a, precision=120) - numeric_value(b, precision=120) * numeric_value(c, precision=120)
        assert abs(diff) < 1e-9


def test_numeric_value_precision_floor():
    with pytest.raises(ValueError):
        numeric_value(cyclotomic_field(3).one(), precision=32)


def test_from_integer_coefficients_matches_polynomial_reduction():
    f = cyclotomic_field(12)
    coeffs = [3, -1, 4, 1, -5, 9, 2, -6, 5, 3, -5, 8, 9, 7]
    assert f.from_integer_coefficients(coeffs, 7) == f.element([Fraction(c, 7) for c in coeffs])
