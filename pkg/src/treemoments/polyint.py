"""Dense univariate polynomials with exact integer coefficients.

A polynomial is a list of ints indexed by degree: [1, 10, 5] is
1 + 10*z + 5*z**2.  Python ints are unbounded, so all arithmetic here is
exact by construction.  Rationals elsewhere in the package are
fractions.Fraction, which keeps itself in lowest terms with a positive
denominator.

Everything operates on truncated power series: results carry coefficients
up to a caller-supplied max_deg and drop higher terms.  normalize() strips
trailing zeros when a plain polynomial (not a truncation) is wanted.

Also houses the small combinatorial number helpers (Stirling numbers of the
second kind, falling factorials) used to expand powers of the marking
operator y*d/dy into plain derivatives.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import NonUnitConstantTerm

Poly = list[int]


def normalize(p: Poly) -> Poly:
    """Strip trailing zero coefficients; the zero polynomial becomes []."""
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return p[:n]


def exact_div(a: int, b: int) -> int:
    """a // b, refusing to round: a must be an exact multiple of b."""
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"inexact division {a}/{b}")
    return q


def poly_mul_trunc(a: Poly, b: Poly, max_deg: int) -> Poly:
    """Product a*b with every term of degree > max_deg dropped."""
    if max_deg < 0:
        raise ValueError("max_deg must be nonnegative")
    out = [0] * (max_deg + 1)
    for i, ca in enumerate(a):
        if i > max_deg:
            break
        if ca == 0:
            continue
        hi = min(len(b), max_deg - i + 1)
        for j in range(hi):
            cb = b[j]
            if cb:
                out[i + j] += ca * cb
    return out


def _pow_binary(phi: Poly, m: int, max_deg: int) -> Poly:
    result = [1] + [0] * max_deg
    base = list(phi[: max_deg + 1]) + [0] * max(0, max_deg + 1 - len(phi))
    e = m
    while e:
        if e & 1:
            result = poly_mul_trunc(result, base, max_deg)
        e >>= 1
        if e:
            base = poly_mul_trunc(base, base, max_deg)
    return result


def _pow_recurrence(phi: Poly, m: int, max_deg: int) -> Poly:
    # From phi*(phi^m)' = m*phi'*phi^m:  j*c_j = sum_k b_k*((m+1)k - j)*c_{j-k}.
    if not phi or phi[0] != 1:
        raise NonUnitConstantTerm("power recurrence needs constant term 1")
    support = [(k, phi[k]) for k in range(1, len(phi)) if phi[k]]
    coeffs = [0] * (max_deg + 1)
    coeffs[0] = 1
    for j in range(1, max_deg + 1):
        acc = 0
        for k, bk in support:
            if k > j:
                break
            acc += bk * ((m + 1) * k - j) * coeffs[j - k]
        coeffs[j] = exact_div(acc, j)
    return coeffs


def poly_pow_coeffs(phi: Poly, m: int, max_deg: int, strategy: str = "recurrence") -> Poly:
    """Coefficients c_0..c_max_deg of phi**m.

    strategy="recurrence" (default) uses the first-order coefficient
    recurrence derived from phi*(phi^m)' = m*phi'*phi^m; it needs
    phi(0) == 1 and performs one exact small division per coefficient.
    strategy="binary" is plain binary exponentiation with truncation,
    kept as an independent cross-check path.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if max_deg < 0:
        raise ValueError("max_deg must be nonnegative")
    if m == 0:
        return [1] + [0] * max_deg
    if strategy == "recurrence":
        return _pow_recurrence(phi, m, max_deg)
    if strategy == "binary":
        return _pow_binary(phi, m, max_deg)
    raise ValueError(f"unknown strategy {strategy!r}")


@lru_cache(maxsize=None)
def stirling2(p: int, k: int) -> int:
    """Stirling number of the second kind S(p, k)."""
    if p < 0 or k < 0:
        raise ValueError("indices must be nonnegative")
    if p == 0 and k == 0:
        return 1
    if k == 0 or k > p:
        return 0
    return k * stirling2(p - 1, k) + stirling2(p - 1, k - 1)


def falling_factorial(n: int, k: int) -> int:
    """n*(n-1)*...*(n-k+1); 1 for k == 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    result = 1
    for i in range(k):
        result *= n - i
        if result == 0:
            break
    return result
