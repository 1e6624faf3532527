"""Invariants of the 2-connected 7-manifolds M_{a,b}.

A manifold is given by two integer triples a = (a1, a2, a3), b = (b1, b2, b3)
with every entry congruent to 1 mod 4 and gcd(c1, c2 +- c3) = 1 for c = a, b.
From them we get

* n = det[[a1^2, b1^2], [a2^2 - a3^2, b2^2 - b3^2]] / 8, with H^4 = Z_|n|;
* m = det[[a1^2, b1^2], [a2^2 + a3^2 + 8, b2^2 + b3^2 + 8]] / (8 a1^2 b1^2);
* the Eells-Kuiper invariant, for n != 0,

      mu = (|n| - a1^2 b1^2 m^2) / (2^5 * 7 * n) + D(a) - D(b)  mod 1.

All quantities are exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .dedekind import paper_D
from .errors import (
    InvalidCongruence,
    InvalidGcd,
    NonIntegral,
    NonIntegralMu28,
    NZero,
)

NON_MILNOR_CLASSES = frozenset({2, 5, 9, 12, 16, 19, 23, 26})


@dataclass(frozen=True)
class Violation:
    triple: str
    condition: str  # "congruence" or "gcd"
    message: str


def triple_violations(c, name: str = "c") -> list[Violation]:
    """Every failed validity condition of one triple, in a fixed order."""
    out = []
    for idx, ci in enumerate(c, start=1):
        if ci % 4 != 1:
            out.append(Violation(name, "congruence", f"{name}{idx} = {ci} is not congruent to 1 mod 4"))
    c1, c2, c3 = c
    for sign, value in (("+", c2 + c3), ("-", c2 - c3)):
        g = math.gcd(c1, value)
        if g != 1:
            out.append(Violation(
                name, "gcd",
                f"gcd({name}1, {name}2 {sign} {name}3) = gcd({c1}, {value}) = {g}, expected 1",
            ))
    return out


def _raise_for(violations: list[Violation]) -> None:
    if any(v.condition == "congruence" for v in violations):
        raise InvalidCongruence(violations)
    if violations:
        raise InvalidGcd(violations)


@dataclass(frozen=True)
class ParamTriple:
    c1: int
    c2: int
    c3: int

    def __post_init__(self):
        _raise_for(triple_violations(self))

    def __iter__(self):
        return iter((self.c1, self.c2, self.c3))

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.c1, self.c2, self.c3)


@dataclass(frozen=True)
class ManifoldParams:
    a: ParamTriple
    b: ParamTriple

    def mirror(self) -> ManifoldParams:
        """Parameters of the same manifold with reversed orientation."""
        return ManifoldParams(self.b, self.a)


def validate(a, b) -> ManifoldParams:
    """Check both triples and return :class:`ManifoldParams`.

    Raises :class:`InvalidCongruence` or :class:`InvalidGcd` carrying the
    full list of violated conditions for both triples.
    """
    a, b = tuple(a), tuple(b)
    if len(a) != 3 or len(b) != 3:
        raise ValueError("parameter triples must have exactly three entries")
    _raise_for(triple_violations(a, "a") + triple_violations(b, "b"))
    return ManifoldParams(ParamTriple(*a), ParamTriple(*b))


def _det(a: ManifoldParams, row) -> int:
    x, y = a.a, a.b
    return x.c1**2 * row(y) - y.c1**2 * row(x)


def n_invariant(p: ManifoldParams) -> int:
    det = _det(p, lambda c: c.c2**2 - c.c3**2)
    if det % 8:
        raise NonIntegral(f"n-determinant {det} is not divisible by 8 for {p}")
    return det // 8


def m_invariant(p: ManifoldParams) -> Fraction:
    det = _det(p, lambda c: c.c2**2 + c.c3**2 + 8)
    return Fraction(det, 8 * p.a.c1**2 * p.b.c1**2)


# -- cohomology -------------------------------------------------------------

@dataclass(frozen=True)
class Group:
    """Z^rank + Z/torsion, with torsion 0 meaning no torsion summand."""

    rank: int = 0
    torsion: int = 0

    @classmethod
    def cyclic(cls, order: int) -> Group:
        # Z_1 is the trivial group
        return cls(0, order if order > 1 else 0)

    @property
    def order(self) -> Optional[int]:
        if self.rank:
            return None
        return self.torsion or 1

    def __str__(self):
        if self.rank == 0:
            return f"Z/{self.torsion}" if self.torsion else "0"
        free = "+".join(["Z"] * self.rank)
        return f"{free}+Z/{self.torsion}" if self.torsion else free


Z = Group(1)
TRIVIAL = Group()


@dataclass(frozen=True)
class CohomologyReport:
    groups: tuple[Group, ...]

    def __getitem__(self, degree: int) -> Group:
        return self.groups[degree]

    def labels(self) -> list[str]:
        return [str(g) for g in self.groups]


def cohomology(p: ManifoldParams) -> CohomologyReport:
    n = n_invariant(p)
    if n == 0:
        h3 = h4 = Z
    else:
        h3, h4 = TRIVIAL, Group.cyclic(abs(n))
    return CohomologyReport((Z, TRIVIAL, TRIVIAL, h3, h4, TRIVIAL, TRIVIAL, Z))


# -- orbifold base ----------------------------------------------------------

@dataclass(frozen=True)
class OrbifoldSide:
    isotropy_order: int
    cone_angle_denominator: int
    twisted_sector_count: int
    multiplicity: int
    fiber_action_exponents: tuple[int, int]


@dataclass(frozen=True)
class OrbifoldReport:
    base_smooth: bool
    a: OrbifoldSide
    b: OrbifoldSide


def _side(c: ParamTriple) -> OrbifoldSide:
    order = abs(c.c1)
    return OrbifoldSide(
        isotropy_order=order,
        cone_angle_denominator=order,
        twisted_sector_count=(order - 1) // 2,
        multiplicity=order,
        fiber_action_exponents=(c.c2, c.c3),
    )


def orbifold_report(p: ManifoldParams) -> OrbifoldReport:
    """Singular strata of the 4-dimensional base orbifold B and its inertia orbifold.

    The normal cone angle along the stratum on the a-side is 2 pi / |a1|
    (likewise for b), and that stratum carries (|a1| - 1)/2 twisted sectors,
    each of multiplicity |a1|.
    """
    return OrbifoldReport(
        base_smooth=(p.a.c1, p.b.c1) == (1, 1),
        a=_side(p.a),
        b=_side(p.b),
    )


# -- characteristic numbers -------------------------------------------------

@dataclass(frozen=True)
class CharacteristicNumbers:
    p1_TB: Fraction
    e_TB: Fraction
    e_W: Fraction
    half_p1_W: Fraction
    half_p1_TB_plus_W: Fraction


def characteristic_numbers(p: ManifoldParams) -> CharacteristicNumbers:
    a1, b1 = p.a.c1, p.b.c1
    scale = 8 * a1**2 * b1**2
    p1_TB = Fraction(2, b1**2) - Fraction(2, a1**2)
    half_p1_W = Fraction(_det(p, lambda c: c.c2**2 + c.c3**2), scale)
    return CharacteristicNumbers(
        p1_TB=p1_TB,
        e_TB=Fraction(1, a1) - Fraction(1, b1),
        e_W=Fraction(_det(p, lambda c: c.c2**2 - c.c3**2), scale),
        half_p1_W=half_p1_W,
        half_p1_TB_plus_W=p1_TB / 2 + half_p1_W,
    )


# -- Eells-Kuiper invariant -------------------------------------------------

def _nonzero_n(p: ManifoldParams) -> int:
    n = n_invariant(p)
    if n == 0:
        raise NZero(f"n = 0 for {p}; the Eells-Kuiper formula needs n != 0")
    return n


def eells_kuiper_unreduced(p: ManifoldParams) -> Fraction:
    """The closed-form value before reduction mod 1."""
    n = _nonzero_n(p)
    m = m_invariant(p)
    a1sq_b1sq = p.a.c1**2 * p.b.c1**2
    return (abs(n) - a1sq_b1sq * m * m) / (2**5 * 7 * n) + paper_D(p.a) - paper_D(p.b)


def reduce_mod_one(x: Fraction) -> Fraction:
    return x - math.floor(x)


def eells_kuiper(p: ManifoldParams) -> Fraction:
    """mu(M_{a,b}) as the representative in [0, 1)."""
    return reduce_mod_one(eells_kuiper_unreduced(p))


@dataclass(frozen=True)
class EKDecomposition:
    pontrjagin_term: Fraction
    eta_term: Fraction
    very_small_eigenvalue_term: Fraction

    @property
    def total(self) -> Fraction:
        return self.eta_term + self.very_small_eigenvalue_term - self.pontrjagin_term


def ek_decomposition(p: ManifoldParams) -> EKDecomposition:
    """The three adiabatic-limit contributions whose signed sum is mu."""
    n = _nonzero_n(p)
    m = m_invariant(p)
    a1sq_b1sq = p.a.c1**2 * p.b.c1**2
    return EKDecomposition(
        pontrjagin_term=(4 * a1sq_b1sq * m * m / n - Fraction(n, a1sq_b1sq)) / (2**7 * 7),
        eta_term=-Fraction(n, 2**7 * 7 * a1sq_b1sq) + paper_D(p.a) - paper_D(p.b),
        very_small_eigenvalue_term=Fraction(abs(n), 2**5 * 7 * n),
    )


@dataclass(frozen=True)
class SphereClassification:
    is_homotopy_sphere: bool
    mu: Fraction
    mu28: Optional[int] = None
    oriented_class: Optional[int] = None
    is_standard: Optional[bool] = None
    is_non_milnor_class: Optional[bool] = None
    unoriented_class: Optional[int] = None


def classify(p: ManifoldParams) -> SphereClassification:
    """Oriented diffeomorphism class when M_{a,b} is a homotopy sphere.

    Only |n| = 1 earns a class.  For |n| > 1 the invariants are reported
    without any claim about the diffeomorphism type.
    """
    n = _nonzero_n(p)
    mu = eells_kuiper(p)
    if abs(n) != 1:
        return SphereClassification(is_homotopy_sphere=False, mu=mu)
    mu28 = 28 * mu
    if mu28.denominator != 1:
        raise NonIntegralMu28(f"28 mu = {mu28} is not an integer for homotopy sphere {p}")
    k = int(mu28) % 28
    return SphereClassification(
        is_homotopy_sphere=True,
        mu=mu,
        mu28=k,
        oriented_class=k,
        is_standard=k == 0,
        is_non_milnor_class=k in NON_MILNOR_CLASSES,
        unoriented_class=min(k, 28 - k),
    )


# -- aggregate report -------------------------------------------------------

@dataclass(frozen=True)
class InvariantReport:
    params: ManifoldParams
    n: int
    m: Fraction
    cohomology: CohomologyReport
    orbifold: OrbifoldReport
    characteristic_numbers: CharacteristicNumbers
    D_a: Fraction
    D_b: Fraction
    mu: Optional[Fraction] = None
    mu28: Optional[int] = None
    decomposition: Optional[EKDecomposition] = None
    classification: Optional[SphereClassification] = None


def invariant_report(p: ManifoldParams) -> InvariantReport:
    """Everything computable for p; mu and friends are None when n = 0."""
    n = n_invariant(p)
    mu = mu28 = decomposition = classification = None
    if n != 0:
        classification = classify(p)
        mu = classification.mu
        decomposition = ek_decomposition(p)
        if (28 * mu).denominator == 1:
            mu28 = int(28 * mu)
    return InvariantReport(
        params=p,
        n=n,
        m=m_invariant(p),
        cohomology=cohomology(p),
        orbifold=orbifold_report(p),
        characteristic_numbers=characteristic_numbers(p),
        D_a=paper_D(p.a),
        D_b=paper_D(p.b),
        mu=mu,
        mu28=mu28,
        decomposition=decomposition,
        classification=classification,
    )
