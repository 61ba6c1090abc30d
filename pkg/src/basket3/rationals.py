"""Exact rationals, continued fractions, and mediant parent splitting.

All values are `fractions.Fraction` over Python's unbounded integers, so
nothing here ever rounds or overflows.  Continued fractions are restricted
to the finite expansions of rationals in (0, 1/2], which is all the slope
calculus needs: a slope b/r with b >= 2 splits into the two Stern-Brocot
parents whose mediant it is, and that split drives every induction in the
inequality machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from .baskets import OrbifoldPoint

__all__ = [
    "AtomError",
    "ContinuedFraction",
    "MediantSplit",
    "cf_expand",
    "cf_value",
    "format_fraction",
    "is_unimodular",
    "make_rational",
    "mediant_parents",
    "parse_fraction",
]

HALF = Fraction(1, 2)


class AtomError(ValueError):
    """Raised when asked to split a unit fraction; b = 1 has no parents."""


def make_rational(num: int, den: int) -> Fraction:
    """Exact num/den, normalized with positive denominator.

    Raises ZeroDivisionError when den == 0.
    """
    return Fraction(num, den)


def format_fraction(q: Fraction | int) -> str:
    """Render as fully reduced "p/q", or a bare integer when q == 1."""
    return str(Fraction(q))


def parse_fraction(text: str | int) -> Fraction:
    """Parse "p/q" or a bare integer; rejects floats and zero denominators."""
    if isinstance(text, float):
        raise ValueError(f"fractions cross I/O as 'p/q' strings, not floats: {text}")
    return Fraction(text)


@dataclass(frozen=True, slots=True)
class ContinuedFraction:
    """Canonical expansion [0; a1, ..., at] of a rational in (0, 1/2].

    a1 >= 2 because the value is at most 1/2, and at >= 2 whenever t > 1,
    which fixes the usual [..., at] vs [..., at - 1, 1] ambiguity.
    """

    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("continued fraction needs at least one term")
        if any(a < 1 for a in self.terms):
            raise ValueError(f"terms must be positive integers, got {self.terms}")
        if self.terms[0] < 2:
            raise ValueError("first term must be >= 2 for a value in (0, 1/2]")
        if len(self.terms) > 1 and self.terms[-1] < 2:
            raise ValueError("canonical form requires the last term >= 2")

    def value(self) -> Fraction:
        return cf_value(self)

    def __str__(self) -> str:
        return "[0; " + ", ".join(str(a) for a in self.terms) + "]"


def cf_expand(q: Fraction) -> ContinuedFraction:
    """Continued fraction expansion of q in (0, 1/2].

    The Euclidean algorithm already yields the canonical form: the last
    quotient is >= 2 because remainders strictly decrease.
    """
    q = Fraction(q)
    if not 0 < q <= HALF:
        raise ValueError(f"value must lie in (0, 1/2], got {q}")
    terms = []
    x, y = q.denominator, q.numerator
    while y:
        a, rem = divmod(x, y)
        terms.append(a)
        x, y = y, rem
    return ContinuedFraction(tuple(terms))


def cf_value(cf: ContinuedFraction) -> Fraction:
    """Exact value of [0; a1, ..., at]."""
    value = Fraction(0)
    for a in reversed(cf.terms):
        value = 1 / (a + value)
    return value


class MediantSplit(NamedTuple):
    """Parents of a slope, in (larger-slope, smaller-slope) order.

    ``cf_det`` is b1*r2 - b2*r1 for the raw continued-fraction parent order
    (truncation parent first); it is +1 when the truncation parent is the
    high one and -1 when the ordering had to be switched.
    """

    high: OrbifoldPoint
    low: OrbifoldPoint
    cf_det: int


def mediant_parents(b: int, n: int) -> MediantSplit:
    """Split slope b/n into the two parents whose mediant it is.

    The truncation parent is the value of [0; a1, ..., a_{t-1}]; the other
    parent is the componentwise complement.  Both slopes are at most 1/2,
    both denominators below n, and the returned (high, low) pair always has
    determinant b_high*r_low - b_low*r_high = +1.
    """
    if n < 2 or not 0 < 2 * b <= n:
        raise ValueError(f"need 0 < b <= n/2 with n >= 2, got (b, n)=({b}, {n})")
    if gcd(b, n) != 1:
        raise ValueError(f"b and n must be coprime, got ({b}, {n})")
    if b == 1:
        raise AtomError(f"1/{n} is an atom; unit fractions have no mediant parents")

    # Convergents of [0; a1, ..., at]; the previous convergent is the parent.
    hm1, km1, h, k = 1, 0, 0, 1
    x, y = n, b
    while y:
        a, rem = divmod(x, y)
        hm1, km1, h, k = h, k, a * h + hm1, a * k + km1
        x, y = y, rem
    assert (h, k) == (b, n)
    b1, r1 = hm1, km1
    b2, r2 = b - b1, n - r1
    cf_det = b1 * r2 - b2 * r1
    assert cf_det in (1, -1)
    if cf_det == 1:
        high, low = OrbifoldPoint(b1, r1), OrbifoldPoint(b2, r2)
    else:
        high, low = OrbifoldPoint(b2, r2), OrbifoldPoint(b1, r1)
    assert high.b + low.b == b and high.r + low.r == n
    return MediantSplit(high, low, cf_det)


def is_unimodular(p1: OrbifoldPoint, p2: OrbifoldPoint) -> bool:
    """True when b1*r2 - b2*r1 is +1 or -1."""
    return abs(p1.b * p2.r - p2.b * p1.r) == 1
