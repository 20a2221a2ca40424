"""Exact tree counts and moment numerators via Lagrange inversion.

For trees whose child counts lie in S, the counting series u solves
u = x * phi(u) with phi(z) = sum(z**s for s in S), so

    f_n = (1/n) * [z^(n-1)] phi(z)^n.

The moment numerators N_{p1,p2}(n) = sum over trees of X_{s1}^p1 * X_{s2}^p2
come from marking variables: writing u_s = y_s z^s, the operator y_s*d/dy_s
equals u_s*d/du_s, and expanding its p-th power with Stirling numbers turns
the marked series into a finite sum of plain powers of phi:

    N = (1/n) * sum_{k1<=p1, k2<=p2} S(p1,k1)*S(p2,k2)*ff(n, k1+k2)
                * [z^(n-1-k1*s1-k2*s2)] phi(z)^(n-k1-k2)

with ff the falling factorial and coefficients at negative degree taken as
zero.  Everything is exact integer arithmetic; the leading division by n is
checked to be exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .childset import ChildSet
from .errors import InvalidQuery
from .polyint import exact_div, falling_factorial, poly_pow_coeffs, stirling2


@dataclass(frozen=True)
class NumeratorQuery:
    """One numerator request: N_{p1,p2}(X_{n,s1}, X_{n,s2})."""

    child_set: ChildSet
    n: int
    s1: int
    p1: int
    s2: int | None = None
    p2: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.p1 < 0 or self.p2 < 0:
            raise ValueError("powers must be nonnegative")
        if self.s1 not in self.child_set:
            raise ValueError(f"s1={self.s1} not in child set {self.child_set}")
        if self.s2 is None:
            if self.p2 != 0:
                raise ValueError("p2 must be 0 when s2 is absent")
        else:
            if self.s2 not in self.child_set:
                raise ValueError(f"s2={self.s2} not in child set {self.child_set}")
            if self.s2 == self.s1 and self.p1 > 0 and self.p2 > 0:
                raise InvalidQuery(
                    "s1 == s2 with both powers positive; merge the powers first"
                )


@dataclass
class NumeratorTable:
    """Numerators N_{a,b}(n) for n = 1..n_max, a <= p1, b <= p2."""

    child_set: ChildSet
    s1: int
    s2: int | None
    n_max: int
    max_p1: int
    max_p2: int
    values: dict[tuple[int, int, int], int] = field(default_factory=dict)

    def value(self, n: int, p1: int, p2: int = 0) -> int:
        return self.values[(n, p1, p2)]

    def sequence(self, p1: int, p2: int = 0) -> list[int]:
        """Terms N_{p1,p2}(1), ..., N_{p1,p2}(n_max)."""
        return [self.values[(n, p1, p2)] for n in range(1, self.n_max + 1)]


def count_trees(child_set: ChildSet, n: int) -> int:
    """Number of trees on n vertices with all child counts in child_set."""
    if n < 1:
        raise ValueError("n must be >= 1")
    phi = child_set.offspring_polynomial()
    coeff = poly_pow_coeffs(phi, n, n - 1)[n - 1]
    return exact_div(coeff, n)


def numerator_mixed(query: NumeratorQuery) -> int:
    """Exact numerator for a single (n, s1, p1, s2, p2) query."""
    grid = numerator_grid(
        query.child_set, query.n, query.s1, query.s2, query.p1, query.p2
    )
    return grid[(query.p1, query.p2)]


def numerator_grid(
    child_set: ChildSet,
    n: int,
    s1: int,
    s2: int | None,
    max_p1: int,
    max_p2: int,
) -> dict[tuple[int, int], int]:
    """All N_{a,b}(n) for a <= max_p1, b <= max_p2, sharing phi-power work.

    The powers phi^(n-k) for k = 0..max_p1+max_p2 are each computed once;
    every grid cell is then a short Stirling-weighted sum of their
    coefficients.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if s2 is None and max_p2 > 0:
        raise ValueError("max_p2 must be 0 when s2 is absent")
    if s2 is not None and s2 == s1 and max_p1 > 0 and max_p2 > 0:
        raise InvalidQuery(
            "s1 == s2 with both powers positive; merge the powers first"
        )
    phi = child_set.offspring_polynomial()
    k_hi = min(max_p1 + max_p2, n)
    powers = [poly_pow_coeffs(phi, n - k, n - 1) for k in range(k_hi + 1)]

    def coeff_at(k: int, degree: int) -> int:
        if degree < 0 or degree > n - 1:
            return 0
        return powers[k][degree]

    grid: dict[tuple[int, int], int] = {}
    t2 = 0 if s2 is None else s2
    for a in range(max_p1 + 1):
        for b in range(max_p2 + 1):
            total = 0
            for k1 in range(a + 1):
                w1 = stirling2(a, k1)
                if w1 == 0:
                    continue
                for k2 in range(b + 1):
                    w2 = stirling2(b, k2)
                    if w2 == 0:
                        continue
                    k = k1 + k2
                    if k > n:
                        continue
                    ff = falling_factorial(n, k)
                    total += w1 * w2 * ff * coeff_at(k, n - 1 - k1 * s1 - k2 * t2)
            value = exact_div(total, n)
            if value < 0:
                raise ArithmeticError(f"negative numerator N_{a},{b}({n}) = {value}")
            grid[(a, b)] = value
    return grid


def numerator_sequence(
    child_set: ChildSet,
    s1: int,
    s2: int | None,
    p1: int,
    p2: int,
    n_max: int,
) -> NumeratorTable:
    """Numerators for every n = 1..n_max (whole grid up to (p1, p2))."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    # validate indices once via the query type
    NumeratorQuery(child_set, 1, s1, p1, s2, p2)
    table = NumeratorTable(child_set, s1, s2, n_max, p1, p2)
    for n in range(1, n_max + 1):
        grid = numerator_grid(child_set, n, s1, s2, p1, p2)
        for (a, b), value in grid.items():
            table.values[(n, a, b)] = value
    return table
