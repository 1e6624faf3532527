"""Generalized Dedekind sums D(q; p1, p2, p3).

    D(q; p) = 1/(2^6 * 7 * q^2) * sum_{l=1}^{|q|-1} sum_{cyclic (i,j,k)}
              p_i (14 cos(t_i) + cos(t_j) cos(t_k)) / (sin(t_i)^2 sin(t_j) sin(t_k)),

with t_m = p_m * pi * l / q and gcd(q, p_m) = 1.

The exact evaluator works with zeta = exp(i pi / |q|), a primitive root of
unity of order N = 2|q|.  Writing s_m = zeta^(p_m l) - zeta^(-p_m l), the four
sines in each denominator contribute (2i)^4 = 16, so the imaginary unit never
appears and every term lies in Q(zeta_N) even for odd q.  Negative q flips
the sign of all four sines at once and leaves the cosines unchanged, hence
D(q) = D(-q) and evaluation proceeds with |q|.

The fast path does all products in the group ring Z[x]/(x^N - 1) and reduces
modulo Phi_N once at the very end.  This is legitimate because reduction
Q[x]/(x^N - 1) -> Q(zeta_N) is a ring homomorphism, and for y = x^(2e) of
order d > 1 the element (1/d) sum_{k=1}^{d-1} k y^k maps to 1/(y - 1) in the
field.  ``method="field"`` instead inverts each sine product with the
extended Euclidean algorithm in Q(zeta_N); it is slower and serves as a
cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .cyclotomic import cyclotomic_field, extract_rational
from .errors import InternalNotRational, InvalidArgs, NotRational

__all__ = [
    "DedekindArgs",
    "dedekind_sum_exact",
    "dedekind_sum_numeric",
    "paper_D",
    "q3_closed_form",
]

_CYCLIC = ((0, 1, 2), (1, 2, 0), (2, 0, 1))
_PREFACTOR = 2**6 * 7


@dataclass(frozen=True)
class DedekindArgs:
    q: int
    p1: int
    p2: int
    p3: int

    def __post_init__(self):
        if self.q == 0:
            raise InvalidArgs("q must be nonzero")
        for name, p in zip(("p1", "p2", "p3"), self.p):
            g = math.gcd(self.q, p)
            if g != 1:
                raise InvalidArgs(f"gcd(q, {name}) = gcd({self.q}, {p}) = {g}, expected 1")

    @property
    def p(self) -> tuple[int, int, int]:
        return (self.p1, self.p2, self.p3)


def _as_args(args) -> DedekindArgs:
    if isinstance(args, DedekindArgs):
        return args
    q, p1, p2, p3 = args
    return DedekindArgs(q, p1, p2, p3)


# -- group-ring helpers -----------------------------------------------------

def _cyclic_mul(a: list[int], b: list[int], n: int) -> list[int]:
    """Product in Z[x]/(x^n - 1) by Kronecker substitution."""
    bound = max(map(abs, a)) * max(map(abs, b)) * n
    if bound == 0:
        return [0] * n
    width = bound.bit_length() + 2
    packed_a = 0
    for c in reversed(a):
        packed_a = (packed_a << width) + c
    packed_b = 0
    for c in reversed(b):
        packed_b = (packed_b << width) + c
    packed = packed_a * packed_b
    mask = (1 << width) - 1
    half = 1 << (width - 1)
    out = [0] * n
    for k in range(2 * n - 1):
        digit = packed & mask
        if digit >= half:
            digit -= 1 << width
        out[k % n] += digit
        packed = (packed - digit) >> width
    return out


def _scaled_inverse_sine(e: int, n: int) -> list[int]:
    """N times the group-ring preimage of 1/(x^e - x^-e).

    1/(x^e - x^-e) = x^e / (y - 1) with y = x^(2e) of order d, and
    1/(y - 1) = (1/d) sum_{k=1}^{d-1} k y^k.  Scaling by N = d * g keeps
    integer coefficients.
    """
    step = (2 * e) % n
    g = math.gcd(step, n)
    d = n // g
    if d == 1:
        raise InvalidArgs(f"sine factor vanishes: exponent {e} is a multiple of {n // 2}")
    vec = [0] * n
    for k in range(1, d):
        vec[(e + step * k) % n] += g * k
    return vec


def _exact_group_ring(q: int, p: tuple[int, int, int]) -> Fraction:
    n = 2 * q
    total = [0] * n
    for l in range(1, q):
        exps = [(pm * l) % n for pm in p]
        inv = [_scaled_inverse_sine(e, n) for e in exps]
        common = _cyclic_mul(_cyclic_mul(inv[0], inv[1], n), inv[2], n)
        weighted = [0] * n
        for i, j, k in _CYCLIC:
            # 4 * (14 cos_i + cos_j cos_k) as exponents of x with integer weights
            ei, ej, ek = exps[i], exps[j], exps[k]
            numerator = (
                (ei, 28), (-ei, 28),
                (ej + ek, 1), (ej - ek, 1), (-ej + ek, 1), (-ej - ek, 1),
            )
            scale = 4 * p[i]
            vi = inv[i]
            for shift, w in numerator:
                cw = scale * w
                for t, c in enumerate(vi):
                    if c:
                        weighted[(t + shift) % n] += cw * c
        term = _cyclic_mul(weighted, common, n)
        for t in range(n):
            total[t] += term[t]
    # four scaled inverses per term contribute n**4
    denominator = n**4 * _PREFACTOR * q * q
    element = cyclotomic_field(n).from_integer_coefficients(total, denominator)
    try:
        return extract_rational(element)
    except NotRational as exc:
        raise InternalNotRational(f"D({q}; {p}) did not reduce to a rational") from exc


def _exact_field(q: int, p: tuple[int, int, int]) -> Fraction:
    n = 2 * q
    field = cyclotomic_field(n)
    total = field.zero()
    for l in range(1, q):
        zs = [field.root_power(pm * l) for pm in p]
        zinv = [field.root_power(-pm * l) for pm in p]
        sines = [z - w for z, w in zip(zs, zinv)]
        # 2 cos_m
        cos2 = [z + w for z, w in zip(zs, zinv)]
        for i, j, k in _CYCLIC:
            if sines[i].is_zero() or sines[j].is_zero() or sines[k].is_zero():
                raise InvalidArgs(f"sine factor vanishes at l = {l}")
            numerator = (7 * cos2[i] * 4 + cos2[j] * cos2[k]) * (4 * p[i])
            denominator = sines[i] * sines[i] * sines[j] * sines[k]
            total = total + numerator / denominator
    try:
        value = extract_rational(total)
    except NotRational as exc:
        raise InternalNotRational(f"D({q}; {p}) did not reduce to a rational") from exc
    return value / (_PREFACTOR * q * q)


@lru_cache(maxsize=4096)
def _exact_cached(q: int, p: tuple[int, int, int]) -> Fraction:
    return _exact_group_ring(q, p)


def dedekind_sum_exact(args, method: str = "group-ring") -> Fraction:
    """Exact value of D(q; p1, p2, p3) as a reduced rational.

    ``args`` is a :class:`DedekindArgs` or a ``(q, p1, p2, p3)`` tuple.
    ``method`` selects the evaluation route: ``"group-ring"`` (default,
    memoized) or ``"field"`` (Euclidean inverses in Q(zeta_2|q|)).
    """
    args = _as_args(args)
    q = abs(args.q)
    if q == 1:
        return Fraction(0)
    # no reduction of p mod 2q: the leading p_i factor is not periodic
    p = args.p
    if method == "group-ring":
        return _exact_cached(q, p)
    if method == "field":
        return _exact_field(q, p)
    raise ValueError(f"unknown method {method!r}")



def dedekind_sum_numeric(args, precision: int = 80):
    """Floating evaluation of the defining sum, straight from the trig formula.

    Uses the signed q as given, ``precision`` bits of working precision and
    mpmath's error-compensated :func:`mpmath.fsum`.  Returns an
    :class:`mpmath.mpf`.  Meant only as an independent check on
    :func:`dedekind_sum_exact`.
    """
    args = _as_args(args)
    if precision < 64:
        raise ValueError("precision must be at least 64 bits")
    q = args.q
    p = args.p
    with mpmath.workprec(precision):
        terms = []
        for l in range(1, abs(q)):
            cos = [mpmath.cospi(mpmath.mpf(pm * l) / q) for pm in p]
            sin = [mpmath.sinpi(mpmath.mpf(pm * l) / q) for pm in p]
            for i, j, k in _CYCLIC:
                terms.append(p[i] * (14 * cos[i] + cos[j] * cos[k]) / (sin[i] ** 2 * sin[j] * sin[k]))
        return mpmath.fsum(terms) / (_PREFACTOR * q * q)


def q3_closed_form(P1: int, P2: int, P3: int) -> Fraction:
    """Closed form for D(-3; P1, P2, P3) when every P_i is even.

    With p_i = P_i / 2 (not divisible by 3) all cosines equal -1/2 and the
    sine products are +-9/16, giving

        D(-3; 2p) = 1/84 * sum_cyclic (-1)^(p_j p_k mod 3) p_i.
    """
    halves = []
    for P in (P1, P2, P3):
        if P % 2:
            raise InvalidArgs(f"{P} is odd; the q = -3 closed form needs even arguments")
        if (P // 2) % 3 == 0:
            raise InvalidArgs(f"{P}/2 is divisible by 3")
        halves.append(P // 2)
    total = 0
    for i, j, k in _CYCLIC:
        sign = -1 if (halves[j] * halves[k]) % 3 == 1 else 1
        total += sign * halves[i]
    return Fraction(total, 2**2 * 3 * 7)


def paper_D(c) -> Fraction:
    """D(c) = D(c1; 4, c3 + c2, c3 - c2) for a parameter triple c."""
    c1, c2, c3 = c
    return dedekind_sum_exact(DedekindArgs(c1, 4, c3 + c2, c3 - c2))
