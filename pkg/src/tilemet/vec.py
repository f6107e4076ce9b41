"""Exact rational 2-vectors and small rational number helpers.

Everything here is exact: coordinates are `fractions.Fraction` and all
predicates decide by sign, never by epsilon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Union[int, Fraction]


def frac(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True, order=True)
class Vec:
    """A point or translation vector with exact rational coordinates."""

    x: Fraction
    y: Fraction

    def __init__(self, x: Rational, y: Rational) -> None:
        object.__setattr__(self, "x", frac(x))
        object.__setattr__(self, "y", frac(y))

    def __add__(self, other: "Vec") -> "Vec":
        return Vec(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec") -> "Vec":
        return Vec(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec":
        return Vec(-self.x, -self.y)

    def scale(self, k: Rational) -> "Vec":
        k = frac(k)
        return Vec(self.x * k, self.y * k)

    def dot(self, other: "Vec") -> Fraction:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec") -> Fraction:
        return self.x * other.y - self.y * other.x

    def norm2(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def norm_float(self) -> float:
        return math.hypot(float(self.x), float(self.y))

    def as_floats(self) -> tuple[float, float]:
        return (float(self.x), float(self.y))

    def __str__(self) -> str:  # compact rational rendering for reports
        return f"({self.x},{self.y})"


ORIGIN = Vec(0, 0)


def orient(a: Vec, b: Vec, c: Vec) -> int:
    """Sign of the signed area of triangle abc: +1 ccw, -1 cw, 0 collinear."""
    v = (b - a).cross(c - a)
    return (v > 0) - (v < 0)


def dist2_point_segment(p: Vec, a: Vec, b: Vec) -> Fraction:
    """Exact squared distance from p to segment [a, b]."""
    ab = b - a
    denom = ab.norm2()
    if denom == 0:
        return (p - a).norm2()
    t = (p - a).dot(ab)
    if t <= 0:
        return (p - a).norm2()
    if t >= denom:
        return (p - b).norm2()
    # foot of perpendicular at parameter t/denom; distance via cross product
    c = ab.cross(p - a)
    return c * c / denom


def segments_intersect(a: Vec, b: Vec, c: Vec, d: Vec) -> bool:
    """Whether closed segments [a,b] and [c,d] share at least one point."""
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_segment(a, b, c):
        return True
    if o2 == 0 and _on_segment(a, b, d):
        return True
    if o3 == 0 and _on_segment(c, d, a):
        return True
    if o4 == 0 and _on_segment(c, d, b):
        return True
    return False


def _on_segment(a: Vec, b: Vec, p: Vec) -> bool:
    """p assumed collinear with [a,b]: is it within the segment's box?"""
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def sqrt_bounds(q: Fraction) -> tuple[float, float]:
    """Floats (lo, hi) with lo^2 <= q <= hi^2 exactly.

    Used to turn exact squared quantities into certified float intervals.
    """
    if q < 0:
        raise ValueError("sqrt of negative rational")
    if q == 0:
        return (0.0, 0.0)
    f = math.sqrt(float(q))
    lo = f
    hi = f
    # at most a couple of ulp nudges are ever needed
    while Fraction(lo) * Fraction(lo) > q:
        lo = math.nextafter(lo, 0.0)
    while Fraction(hi) * Fraction(hi) < q:
        hi = math.nextafter(hi, math.inf)
    return (lo, hi)


def norm_upper(v: Vec) -> Fraction:
    """A rational upper bound on ||v||, tight to a few ulps."""
    return Fraction(sqrt_bounds(v.norm2())[1])


def simplest_fraction_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator in [lo, hi] (Stern-Brocot walk)."""
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_fraction_between(-hi, -lo)
    # now 0 < lo <= hi
    floor_lo = lo.numerator // lo.denominator
    if floor_lo + 1 <= hi:
        # an integer lies inside
        if lo == floor_lo:
            return Fraction(floor_lo)
        return Fraction(floor_lo + 1)
    if lo == floor_lo:
        return Fraction(floor_lo)
    frac_part = simplest_fraction_between(
        1 / (hi - floor_lo), 1 / (lo - floor_lo)
    )
    return floor_lo + 1 / frac_part


@dataclass(frozen=True)
class Ball:
    """Closed disk with rational center and radius."""

    center: Vec
    radius: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "radius", frac(self.radius))
        if self.radius < 0:
            raise ValueError("negative radius")

    def contains(self, p: Vec) -> bool:
        return (p - self.center).norm2() <= self.radius * self.radius

    def translate(self, v: Vec) -> "Ball":
        return Ball(self.center + v, self.radius)


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or integer strings to Fraction (exact)."""
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    """Canonical 'p/q' (or 'p') rendering; round-trips exactly."""
    return str(q)
