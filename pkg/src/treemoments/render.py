"""Decimal rendering of exact values without floating point.

All quantities in this package are either rational or of the form
q + sum(c_i * sqrt(v_i)) with rational c_i and rational v_i >= 0 (scaled
moments with odd powers divide by odd powers of a standard deviation).
SqrtExpr represents such a value exactly; render() turns it into a decimal
string with a fixed number of digits after the point.

Digit guarantee: for a rational value, or a single square-root term, the
output is the exactly rounded (round-half-even) decimal.  For sums of two
or more square roots the terms are first rounded at GUARD_DIGITS extra
places, so the printed value is within 10**-(places + GUARD_DIGITS - 1) of
the true one; at the default 30 places this is far below the last printed
digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

GUARD_DIGITS = 10


def _format_scaled(scaled: int, places: int) -> str:
    """Decimal string for the exact value scaled / 10**places."""
    sign = "-" if scaled < 0 else ""
    mag = abs(scaled)
    if places == 0:
        return f"{sign}{mag}"
    whole, frac = divmod(mag, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def _round_half_even_scaled(value: Fraction, places: int) -> int:
    """round(value * 10**places) as an int, ties to even."""
    return int(round(value * 10**places))


def format_fraction(value: Fraction, places: int) -> str:
    """Exactly rounded decimal string with `places` digits after the point."""
    if places < 0:
        raise ValueError("places must be nonnegative")
    return _format_scaled(_round_half_even_scaled(value, places), places)


def sqrt_scaled(radicand: Fraction, places: int) -> int:
    """round(sqrt(radicand) * 10**places), ties to even, all-integer.

    radicand must be >= 0.  Uses math.isqrt, so the result is the exactly
    rounded value: sqrt(p/q)*10^d = sqrt(p*10^(2d)*q)/q, whose floor and
    half-point comparisons are decided in integers.
    """
    if radicand < 0:
        raise ValueError("radicand must be nonnegative")
    if radicand == 0:
        return 0
    p, q = radicand.numerator, radicand.denominator
    big = p * q * 10 ** (2 * places)  # (sqrt(big)/q) == sqrt(radicand)*10^places
    root = isqrt(big)
    floor = root // q
    # value >= floor + 1/2  <=>  4*big >= q^2*(2*floor + 1)^2
    lhs = 4 * big
    rhs = (q * (2 * floor + 1)) ** 2
    if lhs > rhs:
        return floor + 1
    if lhs < rhs:
        return floor
    return floor if floor % 2 == 0 else floor + 1


def format_sqrt(radicand: Fraction, places: int, sign: int = 1) -> str:
    """Exactly rounded decimal of sign * sqrt(radicand)."""
    scaled = sqrt_scaled(radicand, places)
    return _format_scaled(scaled if sign >= 0 else -scaled, places)


@dataclass(frozen=True)
class SqrtExpr:
    """Exact value rational + sum(coeff * sqrt(radicand))."""

    rational: Fraction = Fraction(0)
    terms: tuple[tuple[Fraction, Fraction], ...] = ()  # (coeff, radicand >= 0)

    @staticmethod
    def from_rational(value) -> "SqrtExpr":
        return SqrtExpr(Fraction(value), ())

    @staticmethod
    def from_sqrt(coeff, radicand) -> "SqrtExpr":
        coeff = Fraction(coeff)
        radicand = Fraction(radicand)
        if radicand < 0:
            raise ValueError("radicand must be nonnegative")
        # absorb perfect rational squares so equality tests stay exact
        if coeff == 0 or radicand == 0:
            return SqrtExpr(Fraction(0), ())
        root = _rational_sqrt(radicand)
        if root is not None:
            return SqrtExpr(coeff * root, ())
        return SqrtExpr(Fraction(0), ((coeff, radicand),))

    def __add__(self, other: "SqrtExpr") -> "SqrtExpr":
        merged: dict[Fraction, Fraction] = {}
        for coeff, rad in self.terms + other.terms:
            merged[rad] = merged.get(rad, Fraction(0)) + coeff
        terms = tuple(
            (coeff, rad) for rad, coeff in sorted(merged.items()) if coeff != 0
        )
        return SqrtExpr(self.rational + other.rational, terms)

    def __neg__(self) -> "SqrtExpr":
        return SqrtExpr(-self.rational, tuple((-c, r) for c, r in self.terms))

    def __sub__(self, other: "SqrtExpr") -> "SqrtExpr":
        return self + (-other)

    def is_zero(self) -> bool:
        return self.rational == 0 and not self.terms

    def as_rational(self) -> Fraction | None:
        return self.rational if not self.terms else None

    def __float__(self) -> float:
        total = float(self.rational)
        for coeff, rad in self.terms:
            total += float(coeff) * float(rad) ** 0.5
        return total

    def render(self, places: int) -> str:
        if not self.terms:
            return format_fraction(self.rational, places)
        if self.rational == 0 and len(self.terms) == 1:
            (coeff, rad), = self.terms
            sign = 1 if coeff > 0 else -1
            return format_sqrt(coeff * coeff * rad, places, sign)
        work = places + GUARD_DIGITS
        scaled = _round_half_even_scaled(self.rational, work)
        for coeff, rad in self.terms:
            sign = 1 if coeff > 0 else -1
            scaled += sign * sqrt_scaled(coeff * coeff * rad, work)
        return format_fraction(Fraction(scaled, 10**work), places)


def _rational_sqrt(value: Fraction) -> Fraction | None:
    """sqrt(value) if it is rational, else None (value >= 0)."""
    pn = isqrt(value.numerator)
    pd = isqrt(value.denominator)
    if pn * pn == value.numerator and pd * pd == value.denominator:
        return Fraction(pn, pd)
    return None
