"""Exact arithmetic: rationals, polynomials over Q, and cyclotomic fields.

Rationals are :class:`fractions.Fraction`, which already keeps every value
reduced with a positive denominator.  On top of that this module provides

* :class:`RationalPolynomial`, an immutable univariate polynomial over Q
  with coefficients stored lowest degree first;
* :func:`cyclotomic_polynomial`, computing Phi_N by exact division;
* :class:`CyclotomicField` and :class:`CyclotomicElement`, arithmetic in
  Q(zeta_N) = Q[x]/(Phi_N) with zeta_N = exp(2 pi i / N).

Every sine and cosine at a rational multiple of pi is a polynomial in a
suitable root of unity, so trigonometric sums of that kind can be evaluated
here without rounding.
"""

from __future__ import annotations

import re
import threading
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .errors import FieldMismatch, NotRational, ZeroInverse

__all__ = [
    "CyclotomicElement",
    "CyclotomicField",
    "RationalPolynomial",
    "cyclotomic_field",
    "cyclotomic_polynomial",
    "extract_rational",
    "format_rational",
    "invert",
    "numeric_value",
    "parse_rational",
    "root_power",
]


# -- rational serialization -------------------------------------------------

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def format_rational(value) -> str:
    """Serialize as ``"p/q"`` (reduced, q > 0) or ``"p"`` for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; accepts ``"p"`` and ``"p/q"``."""
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not a rational number: {text!r}")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


# -- polynomials ------------------------------------------------------------

def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class RationalPolynomial:
    """Immutable polynomial over Q.

    ``coefficients[k]`` is the coefficient of x**k.  The zero polynomial
    has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        coeffs = _trim([Fraction(c) for c in coefficients])
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolynomial is immutable")

    @classmethod
    def monomial(cls, degree: int, coefficient=1) -> RationalPolynomial:
        return cls([0] * degree + [coefficient])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            return self.coefficients == other.coefficients
        if isinstance(other, (int, Fraction)):
            return self.coefficients == RationalPolynomial([other]).coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"RationalPolynomial({[format_rational(c) for c in self.coefficients]})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            body = "" if (mag == 1 and k > 0) else format_rational(mag)
            if k == 1:
                body += "x"
            elif k > 1:
                body += f"x^{k}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __neg__(self):
        return RationalPolynomial([-c for c in self.coefficients])

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return RationalPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dlen = len(other.coefficients)
        lead = other.leading
        if len(rem) < dlen:
            return RationalPolynomial(), self
        quot = [Fraction(0)] * (len(rem) - dlen + 1)
        for k in range(len(rem) - dlen, -1, -1):
            c = rem[k + dlen - 1] / lead
            quot[k] = c
            if c:
                for j, dj in enumerate(other.coefficients):
                    rem[k + j] -= c * dj
        return RationalPolynomial(quot), RationalPolynomial(rem[: dlen - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> RationalPolynomial:
        if self.is_zero():
            return self
        lead = self.leading
        return RationalPolynomial([c / lead for c in self.coefficients])

    def xgcd(self, other: RationalPolynomial):
        """Return ``(g, s, t)`` with ``s*self + t*other == g`` and g monic."""
        r0, r1 = self, other
        s0, s1 = RationalPolynomial([1]), RationalPolynomial()
        t0, t1 = RationalPolynomial(), RationalPolynomial([1])
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        lead = r0.leading
        return r0.monic(), s0 * (1 / lead), t0 * (1 / lead)


def _as_poly(value):
    if isinstance(value, RationalPolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return RationalPolynomial([value])
    return NotImplemented


# -- cyclotomic polynomials -------------------------------------------------

_PHI_LOCK = threading.Lock()
_PHI_TABLE: dict[int, tuple[int, ...]] = {1: (-1, 1)}


def _int_poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _int_exact_div_monic(num: Sequence[int], den: Sequence[int]) -> list[int]:
    rem = list(num)
    dlen = len(den)
    quot = [0] * (len(rem) - dlen + 1)
    for k in range(len(rem) - dlen, -1, -1):
        c = rem[k + dlen - 1]
        quot[k] = c
        if c:
            for j, dj in enumerate(den):
                rem[k + j] -= c * dj
    if any(rem):
        raise ArithmeticError("inexact division while building a cyclotomic polynomial")
    return quot


def _phi_coefficients(n: int) -> tuple[int, ...]:
    cached = _PHI_TABLE.get(n)
    if cached is not None:
        return cached
    divisor_product = [1]
    for d in range(1, n):
        if n % d == 0:
            divisor_product = _int_poly_mul(divisor_product, _phi_coefficients(d))
    coeffs = tuple(_int_exact_div_monic([-1] + [0] * (n - 1) + [1], divisor_product))
    with _PHI_LOCK:
        return _PHI_TABLE.setdefault(n, coeffs)


def cyclotomic_polynomial(n: int) -> RationalPolynomial:
    """Phi_n, via x**n - 1 divided by Phi_d over the proper divisors d of n."""
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    return RationalPolynomial(_phi_coefficients(n))


# -- cyclotomic fields ------------------------------------------------------

class CyclotomicField:
    """Q(zeta_N), realized as Q[x] modulo Phi_N with x standing for exp(2 pi i/N).

    Use :func:`cyclotomic_field` to obtain shared instances.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"cyclotomic index must be positive, got {n}")
        self.n = n
        self._phi = _phi_coefficients(n)
        self.modulus = RationalPolynomial(self._phi)
        self.degree = len(self._phi) - 1

    def __repr__(self):
        return f"CyclotomicField({self.n})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("CyclotomicField", self.n))

    def element(self, coefficients: Iterable = ()) -> CyclotomicElement:
        """Reduce an arbitrary coefficient sequence modulo Phi_N."""
        return self.from_polynomial(RationalPolynomial(coefficients))

    def from_polynomial(self, poly: RationalPolynomial) -> CyclotomicElement:
        rem = (poly % self.modulus).coefficients
        coeffs = tuple(rem) + (Fraction(0),) * (self.degree - len(rem))
        return CyclotomicElement(self, coeffs)

    def from_integer_coefficients(self, coeffs: Sequence[int], denominator: int = 1) -> CyclotomicElement:
        """Element ``sum(coeffs[k] x**k) / denominator`` for integer data.

        The reduction modulo the monic integer polynomial Phi_N stays in the
        integers, which is much cheaper than Fraction arithmetic on large
        inputs.
        """
        rem = list(coeffs)
        deg = self.degree
        phi = self._phi
        for k in range(len(rem) - 1, deg - 1, -1):
            c = rem[k]
            if c:
                base = k - deg
                for j in range(deg):
                    rem[base + j] -= c * phi[j]
        rem = rem[:deg] + [0] * (deg - len(rem))
        return CyclotomicElement(self, tuple(Fraction(c, denominator) for c in rem))

    def zero(self) -> CyclotomicElement:
        return CyclotomicElement(self, (Fraction(0),) * self.degree)

    def one(self) -> CyclotomicElement:
        return self.rational(1)

    def rational(self, value) -> CyclotomicElement:
        return CyclotomicElement(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))

    def root_power(self, k: int) -> CyclotomicElement:
        """zeta**k, with k taken modulo N."""
        k %= self.n
        if k < self.degree:
            coeffs = [Fraction(0)] * self.degree
            coeffs[k] = Fraction(1)
            return CyclotomicElement(self, tuple(coeffs))
        return self.from_polynomial(RationalPolynomial.monomial(k))


_FIELDS_LOCK = threading.Lock()
_FIELDS: dict[int, CyclotomicField] = {}


def cyclotomic_field(n: int) -> CyclotomicField:
    """Shared :class:`CyclotomicField` instance for index n."""
    field = _FIELDS.get(n)
    if field is None:
        field = CyclotomicField(n)
        with _FIELDS_LOCK:
            field = _FIELDS.setdefault(n, field)
    return field


class CyclotomicElement:
    """An element of Q(zeta_N): a coefficient vector of length phi(N)."""

    __slots__ = ("field", "coefficients")

    def __init__(self, field: CyclotomicField, coefficients: Sequence[Fraction]):
        if len(coefficients) != field.degree:
            raise ValueError(
                f"expected {field.degree} coefficients for Q(zeta_{field.n}), got {len(coefficients)}"
            )
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in coefficients))

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicElement is immutable")

    def __repr__(self):
        return f"CyclotomicElement(N={self.field.n}, {self.polynomial()})"

    def polynomial(self) -> RationalPolynomial:
        return RationalPolynomial(self.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def _coerce(self, other) -> CyclotomicElement:
        if isinstance(other, CyclotomicElement):
            if other.field != self.field:
                raise FieldMismatch(
                    f"cannot combine elements of Q(zeta_{self.field.n}) and Q(zeta_{other.field.n})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, CyclotomicElement):
            return self.field == other.field and self.coefficients == other.coefficients
        if isinstance(other, (int, Fraction)):
            return self.coefficients == self.field.rational(other).coefficients
        return NotImplemented

    def __hash__(self):
        return hash((self.field.n, self.coefficients))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(self.field, [a + b for a, b in zip(self.coefficients, other.coefficients)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.field, [-a for a in self.coefficients])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(self.field, [a - b for a, b in zip(self.coefficients, other.coefficients)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field.from_polynomial(self.polynomial() * other.polynomial())

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicElement:
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_N."""
        if self.is_zero():
            raise ZeroInverse(f"zero has no inverse in Q(zeta_{self.field.n})")
        g, s, _ = self.polynomial().xgcd(self.field.modulus)
        # Phi_N is irreducible, so any nonzero residue is coprime to it
        assert g.degree == 0, "Phi_N shares a factor with a nonzero residue"
        return self.field.from_polynomial(s)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result


def root_power(field: CyclotomicField, k: int) -> CyclotomicElement:
    return field.root_power(k)


def invert(element: CyclotomicElement) -> CyclotomicElement:
    return element.inverse()


def extract_rational(element: CyclotomicElement) -> Fraction:
    """Return the element as a rational; :class:`NotRational` if it is not one."""
    head, *tail = element.coefficients
    if any(tail):
        raise NotRational(f"{element!r} has nonzero coefficients of positive degree")
    return head


def numeric_value(element: CyclotomicElement, precision: int = 53) -> complex:
    """Evaluate the representative at exp(2 pi i / N) with ``precision`` bits.

    Horner evaluation over at most phi(N) terms, so the absolute error is at
    most about 2**(ceil(log2 deg) - precision) times the largest coefficient
    magnitude.  Returns an :class:`mpmath.mpc`.
    """
    if precision < 53:
        raise ValueError("precision must be at least 53 bits")
    n = element.field.n
    with mpmath.workprec(precision + max(element.field.degree, 1).bit_length() + 8):
        zeta = mpmath.expjpi(mpmath.mpf(2) / n)
        acc = mpmath.mpc(0)
        for c in reversed(element.coefficients):
            acc = acc * zeta + mpmath.mpf(c.numerator) / c.denominator
    with mpmath.workprec(precision):
        return +acc


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result

