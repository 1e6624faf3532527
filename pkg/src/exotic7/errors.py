"""Exception hierarchy.

Three families, matching the CLI exit codes:

* :class:`InvalidInput` (exit 2): the caller handed us parameters outside
  the domain of a formula.
* :class:`UndefinedInvariant` (exit 3): the parameters are valid but the
  requested quantity is not defined for them.
* :class:`ConsistencyError` (exit 4): an internal certificate failed.  These
  indicate a bug and must never be rounded away.
"""

from __future__ import annotations


class Exotic7Error(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(Exotic7Error, ValueError):
    pass


class UndefinedInvariant(Exotic7Error, ArithmeticError):
    pass


class ConsistencyError(Exotic7Error, AssertionError):
    pass


# exact arithmetic

class FieldMismatch(InvalidInput):
    """Operands live in different cyclotomic fields."""


class ZeroInverse(InvalidInput, ZeroDivisionError):
    pass


class NotRational(Exotic7Error, ValueError):
    """A cyclotomic element has a nonzero coefficient of positive degree."""


# Dedekind sums

class InvalidArgs(InvalidInput):
    pass


class InternalNotRational(ConsistencyError):
    pass


# manifold invariants

class InvalidParams(InvalidInput):
    """Parameter pair violates the congruence or gcd conditions.

    ``violations`` lists every failed condition, not just the first one.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(v.message for v in self.violations))


class InvalidCongruence(InvalidParams):
    pass


class InvalidGcd(InvalidParams):
    pass


class NonIntegral(ConsistencyError):
    pass


class NZero(UndefinedInvariant):
    """n = 0, so the Eells-Kuiper formula does not apply."""


class NonIntegralMu28(ConsistencyError):
    pass
