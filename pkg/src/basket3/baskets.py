"""Basket data model and the local terms of the orbifold plurigenus formula.

A basket is a finite multiset of points (b, r) with gcd(b, r) = 1 and
0 < b <= r/2.  Each point contributes a periodized parabola term ``mbar``,
its linear counterpart ``m_lin``, and their gap ``delta``, which is always
a nonnegative integer.  The correction term ``l_correction`` sums mbar
values over the basket.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator

__all__ = [
    "Basket",
    "BasketError",
    "EMPTY_BASKET",
    "LocalIndexError",
    "NonCoprimeError",
    "OrbifoldPoint",
    "SlopeError",
    "delta",
    "delta_pair",
    "l_correction",
    "l_table",
    "m_lin",
    "mbar",
    "sigma",
    "sigma12",
]


class BasketError(ValueError):
    """Invalid basket data."""


class LocalIndexError(BasketError):
    """Local index r is below 2."""


class SlopeError(BasketError):
    """Multiplicity b is outside 0 < b <= r/2."""


class NonCoprimeError(BasketError):
    """b and r share a common factor."""


@dataclass(frozen=True, slots=True)
class OrbifoldPoint:
    """A single basket point (b, r): local multiplicity b, local index r."""

    b: int
    r: int

    def __post_init__(self) -> None:
        if self.r < 2:
            raise LocalIndexError(f"local index must be >= 2, got r={self.r}")
        if not 0 < 2 * self.b <= self.r:
            raise SlopeError(f"need 0 < b <= r/2, got (b, r)=({self.b}, {self.r})")
        if gcd(self.b, self.r) != 1:
            raise NonCoprimeError(f"b and r must be coprime, got ({self.b}, {self.r})")

    @property
    def slope(self) -> Fraction:
        return Fraction(self.b, self.r)

    def key(self) -> tuple[int, int]:
        """Canonical sort key: by index, then multiplicity."""
        return (self.r, self.b)

    def __str__(self) -> str:
        return f"{self.b}/{self.r}"


@dataclass(frozen=True, slots=True)
class Basket:
    """Finite multiset of orbifold points, stored canonically sorted.

    ``items`` holds (point, multiplicity) pairs, ascending by (r, b).
    """

    items: tuple[tuple[OrbifoldPoint, int], ...] = ()

    def __post_init__(self) -> None:
        keys = [p.key() for p, _ in self.items]
        if keys != sorted(keys) or len(set(keys)) != len(keys):
            raise BasketError("basket items must be sorted by (r, b) without repeats")
        if any(mult < 1 for _, mult in self.items):
            raise BasketError("multiplicities must be >= 1")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Basket":
        """Validate raw (b, r) pairs (repeats allowed) into a canonical basket."""
        counts: dict[OrbifoldPoint, int] = {}
        for b, r in pairs:
            p = OrbifoldPoint(int(b), int(r))
            counts[p] = counts.get(p, 0) + 1
        return cls(tuple((p, counts[p]) for p in sorted(counts, key=OrbifoldPoint.key)))

    @classmethod
    def from_points(cls, points: Iterable[OrbifoldPoint]) -> "Basket":
        return cls.from_pairs((p.b, p.r) for p in points)

    def expand(self) -> Iterator[OrbifoldPoint]:
        """Points with multiplicity, in canonical order."""
        for p, mult in self.items:
            for _ in range(mult):
                yield p

    def pairs(self) -> list[tuple[int, int]]:
        return [(p.b, p.r) for p in self.expand()]

    def __add__(self, other: "Basket") -> "Basket":
        return Basket.from_pairs(self.pairs() + other.pairs())

    def __len__(self) -> int:
        return sum(mult for _, mult in self.items)

    def __str__(self) -> str:
        if not self.items:
            return "{}"
        parts = [f"{p}x{m}" if m > 1 else str(p) for p, m in self.items]
        return "{" + ", ".join(parts) + "}"


EMPTY_BASKET = Basket()


def mbar(j: int, p: OrbifoldPoint) -> Fraction:
    """Periodized parabola term s(r - s)/(2r) with s = jb mod r."""
    s = (j * p.b) % p.r
    return Fraction(s * (p.r - s), 2 * p.r)


def m_lin(j: int, p: OrbifoldPoint) -> Fraction:
    """Linear parabola term jb(r - jb)/(2r); goes negative once jb > r."""
    t = j * p.b
    return Fraction(t * (p.r - t), 2 * p.r)


def delta_pair(n: int, b: int, r: int) -> int:
    """Integer gap mbar - m_lin for raw (b, r), n >= 0.

    Equals i*b*n - (i^2 + i)/2 * r with i = floor(bn/r); (i^2 + i) is even,
    so the division is exact.
    """
    i = (b * n) // r
    return i * b * n - ((i * i + i) // 2) * r


def delta(n: int, p: OrbifoldPoint) -> int:
    """Integer gap mbar(n, p) - m_lin(n, p)."""
    return delta_pair(n, p.b, p.r)


def _l_point(p: OrbifoldPoint, m: int) -> Fraction:
    # sum of mbar(j, p) for j = 1 .. m-1, using r-periodicity of mbar.
    r = p.r
    vals = [Fraction(((j * p.b) % r) * (r - (j * p.b) % r), 2 * r) for j in range(r)]
    cycles, rem = divmod(m - 1, r)
    return cycles * sum(vals) + sum(vals[1 : rem + 1])


def l_correction(basket: Basket, m: int) -> Fraction:
    """Correction term l(m): sum of mbar(j, p) over the basket for j < m.

    l(0) = l(1) = 0.
    """
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if m <= 1:
        return Fraction(0)
    return sum((mult * _l_point(p, m) for p, mult in basket.items), Fraction(0))


def l_table(basket: Basket, m_max: int) -> list[Fraction]:
    """l(0) .. l(m_max) in one incremental pass."""
    if m_max < 0:
        raise ValueError(f"m_max must be nonnegative, got {m_max}")
    table = [Fraction(0)] * (m_max + 1)
    acc = Fraction(0)
    for m in range(2, m_max + 1):
        acc += sum(
            (mult * mbar(m - 1, p) for p, mult in basket.items), Fraction(0)
        )
        table[m] = acc
    return table


def sigma(basket: Basket) -> int:
    """Sum of multiplicities b over the basket."""
    return sum(mult * p.b for p, mult in basket.items)


def sigma12(basket: Basket) -> int:
    """Sum of b over points with slope at most 1/12 (inclusive)."""
    return sum(mult * p.b for p, mult in basket.items if 12 * p.b <= p.r)
