"""Exact mixed moments of a unit-variance bivariate normal pair.

For jointly normal (X, Y) with E X = E Y = 0, Var X = Var Y = 1 and
correlation rho, the mixed moment M(p1,p2) = E[X^p1 Y^p2] satisfies the
Stein-identity recurrence

    M(p1,p2) = (p1-1) * M(p1-2,p2) + rho * p2 * M(p1-1,p2-1)

with M(0,0) = 1 and M = 0 whenever an index is negative.  M(p1,p2) is a
polynomial in rho; this module keeps it exact and evaluates it at the
empirical correlation of a tree statistic pair, so the difference between
scaled tree moments and the normal reference can be reported without any
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegenerateVariance, InvalidCorrelation
from .moments import (
    DEFAULT_DIGITS,
    MomentSpec,
    ScaledMoment,
    _central_from_grid,
    _grid,
    _scaled_from_grid,
)
from .render import SqrtExpr

RhoPoly = tuple[int, ...]  # coefficient c_k at rho^k


def _poly_add(a: RhoPoly, b: RhoPoly) -> RhoPoly:
    size = max(len(a), len(b))
    out = [0] * size
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _poly_scale_shift(p: RhoPoly, factor: int, shift: int) -> RhoPoly:
    """factor * rho^shift * p, trimmed."""
    if factor == 0 or not p:
        return ()
    return (0,) * shift + tuple(factor * c for c in p)


@dataclass(frozen=True)
class NormalMomentPoly:
    """M(p1,p2) as an integer polynomial in the correlation rho."""

    p1: int
    p2: int
    coefficients: RhoPoly  # index k holds the coefficient of rho^k

    def evaluate(self, rho: Fraction) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coefficients):
            total = total * rho + c
        return total

    def evaluate_at_sqrt(self, rho_squared: Fraction, rho_sign: int) -> SqrtExpr:
        """Exact value at rho = rho_sign * sqrt(rho_squared)."""
        even = Fraction(0)
        odd = Fraction(0)  # sum over odd k of c_k * rho_squared^((k-1)/2)
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k % 2 == 0:
                even += c * rho_squared ** (k // 2)
            else:
                odd += c * rho_squared ** ((k - 1) // 2)
        sign = 1 if rho_sign >= 0 else -1
        return SqrtExpr.from_rational(even) + SqrtExpr.from_sqrt(
            sign * odd, rho_squared
        )

    def is_zero(self) -> bool:
        return not self.coefficients


@lru_cache(maxsize=None)
def _moment_poly(p1: int, p2: int) -> RhoPoly:
    if p1 < 0 or p2 < 0:
        return ()
    if p1 == 0 and p2 == 0:
        return (1,)
    if p1 == 0:
        # recurse on the first index only; use symmetry to swap
        return _moment_poly(p2, p1)
    first = _poly_scale_shift(_moment_poly(p1 - 2, p2), p1 - 1, 0)
    second = _poly_scale_shift(_moment_poly(p1 - 1, p2 - 1), p2, 1)
    return _poly_add(first, second)


def normal_mixed_moment_poly(p1: int, p2: int) -> NormalMomentPoly:
    """M(p1,p2) as a polynomial in rho; identically zero when p1+p2 is odd."""
    if p1 < 0 or p2 < 0:
        raise ValueError("moment orders must be nonnegative")
    return NormalMomentPoly(p1, p2, _moment_poly(p1, p2))


@dataclass(frozen=True)
class NormalMomentValue:
    """M(p1,p2) at a concrete rho, exact plus rendered."""

    p1: int
    p2: int
    value: SqrtExpr
    text: str

    @property
    def exact(self) -> Fraction | None:
        return self.value.as_rational()


def normal_mixed_moment_eval(
    p1: int,
    p2: int,
    rho_squared: Fraction,
    rho_sign: int = 1,
    digits: int = DEFAULT_DIGITS,
) -> NormalMomentValue:
    """Evaluate M(p1,p2) at rho = rho_sign * sqrt(rho_squared).

    Exact rational whenever only even powers of rho occur (p1 even).
    """
    rho_squared = Fraction(rho_squared)
    if rho_squared < 0 or rho_squared > 1:
        raise InvalidCorrelation(f"rho^2 = {rho_squared} lies outside [0, 1]")
    poly = normal_mixed_moment_poly(p1, p2)
    value = poly.evaluate_at_sqrt(rho_squared, rho_sign)
    return NormalMomentValue(p1, p2, value, value.render(digits))


@dataclass(frozen=True)
class GapRow:
    """One grid cell: scaled tree moment, normal reference, difference."""

    p1: int
    p2: int
    alpha: SqrtExpr
    reference: SqrtExpr
    gap: SqrtExpr
    alpha_text: str
    reference_text: str
    gap_text: str


@dataclass(frozen=True)
class GapReport:
    spec: MomentSpec
    digits: int
    rho: ScaledMoment  # empirical correlation alpha_{1,1}
    rows: list[GapRow]


def normality_gap_report(
    spec: MomentSpec,
    max_p1: int | None = None,
    max_p2: int | None = None,
    digits: int = DEFAULT_DIGITS,
) -> GapReport:
    """Compare scaled mixed moments with the normal reference at rho = alpha_{1,1}.

    The reference shares the exact radicand rho^2 with the scaled moments,
    so structurally forced rows like (1,1) and (2,0) cancel to exactly zero.
    """
    if spec.s2 is None:
        raise ValueError("the normality comparison needs two statistics")
    if max_p1 is None:
        max_p1 = spec.max_p1
    if max_p2 is None:
        max_p2 = spec.max_p2
    grid = _grid(spec, max(max_p1, 2), max(max_p2, 2))
    var1 = _central_from_grid(grid, 2, 0)
    var2 = _central_from_grid(grid, 0, 2)
    if var1 == 0 or var2 == 0:
        raise DegenerateVariance(
            "a statistic has zero variance; no normal comparison possible"
        )
    rho = _scaled_from_grid(grid, 1, 1, digits)
    rows: list[GapRow] = []
    for p1 in range(max_p1 + 1):
        for p2 in range(max_p2 + 1):
            alpha = _scaled_from_grid(grid, p1, p2, digits)
            poly = normal_mixed_moment_poly(p1, p2)
            reference = poly.evaluate_at_sqrt(rho.square, rho.sign)
            gap = alpha.value - reference
            rows.append(
                GapRow(
                    p1,
                    p2,
                    alpha.value,
                    reference,
                    gap,
                    alpha.text,
                    reference.render(digits),
                    gap.render(digits),
                )
            )
    return GapReport(spec, digits, rho, rows)
