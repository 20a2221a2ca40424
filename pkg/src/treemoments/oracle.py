"""Ground truth at small n: enumeration, series fixpoint, uniform sampling.

Trees are encoded as preorder child-count sequences (Lukasiewicz codes): a
sequence c_1..c_n over the child set is a valid tree iff the partial sums of
(c_i - 1) stay >= 0 strictly before the end and finish at -1.  This module
never touches the Lagrange-inversion engine; its counts and numerators come
from direct enumeration or from iterating the defining functional equation
f = x * sum_s y_s f^s, so it can serve as an independent cross-check.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from random import Random
from typing import Iterator

from .childset import ChildSet
from .errors import EnumerationTooLarge, NoTrees

TreeCode = tuple[int, ...]

DEFAULT_ENUMERATION_CAP = 18


def is_valid_code(child_set: ChildSet, code) -> bool:
    """Lukasiewicz validity check for a candidate preorder code."""
    if not code:
        return False
    open_slots = 1
    for c in code:
        if c not in child_set:
            return False
        if open_slots < 1:
            return False  # walk already closed before the end
        open_slots += c - 1
    return open_slots == 0


def format_code(code) -> str:
    return " ".join(str(c) for c in code)


def parse_code(line: str) -> TreeCode:
    return tuple(int(tok) for tok in line.split())


def enumerate_trees(
    child_set: ChildSet, n: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> Iterator[TreeCode]:
    """Yield every valid code on n vertices in lexicographic order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise EnumerationTooLarge(f"n={n} exceeds enumeration cap {cap}")
    elements = child_set.elements
    nonzero_gcd = math.gcd(*elements[1:]) if len(elements) > 1 else 0
    prefix = [0] * n

    def extend(pos: int, open_slots: int) -> Iterator[TreeCode]:
        remaining = n - pos
        for c in elements:
            new_open = open_slots + c - 1
            if remaining == 1:
                if new_open == 0:
                    prefix[pos] = c
                    yield tuple(prefix)
                continue
            # need >= 1 vertex per open slot, and the leftover child-count
            # total (remaining-1) - new_open must be a sum of elements of S
            surplus = (remaining - 1) - new_open
            if new_open < 1 or surplus < 0:
                continue
            if surplus and (nonzero_gcd == 0 or surplus % nonzero_gcd):
                continue
            prefix[pos] = c
            yield from extend(pos + 1, new_open)

    yield from extend(0, 1)


@lru_cache(maxsize=None)
def _count_distribution(child_set: ChildSet, n: int) -> dict[TreeCode, int]:
    """Map (count of s for s in child_set) -> number of trees, by enumeration."""
    elements = child_set.elements
    dist: dict[tuple[int, ...], int] = {}
    for code in enumerate_trees(child_set, n, cap=n):
        key = tuple(code.count(s) for s in elements)
        dist[key] = dist.get(key, 0) + 1
    return dist


def child_count_distribution(
    child_set: ChildSet, n: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> dict[tuple[int, ...], int]:
    """Joint distribution of child-count vectors over all trees on n vertices."""
    if n > cap:
        raise EnumerationTooLarge(f"n={n} exceeds enumeration cap {cap}")
    return _count_distribution(child_set, n)


def oracle_numerator(
    child_set: ChildSet,
    n: int,
    s1: int,
    p1: int,
    s2: int | None = None,
    p2: int = 0,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> int:
    """Direct summation of X_{s1}^p1 * X_{s2}^p2 over all enumerated trees."""
    dist = child_count_distribution(child_set, n, cap)
    i1 = child_set.index(s1)
    i2 = None if s2 is None else child_set.index(s2)
    total = 0
    for counts, mult in dist.items():
        term = counts[i1] ** p1
        if i2 is not None:
            term *= counts[i2] ** p2
        total += mult * term
    return total


@dataclass(frozen=True)
class JointCoefficient:
    """One monomial of the joint generating polynomial at x^n."""

    n: int
    exponents: tuple[int, ...]  # aligned with child_set.elements
    count: int


def joint_gf_fixpoint(
    child_set: ChildSet, n_max: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> dict[int, list[JointCoefficient]]:
    """Truncation of the solution of f = x * sum_s y_s f^s up to x^n_max.

    The solution has valuation 1 in x, so n_max iterations of the right-hand
    side starting from 0 pin down every coefficient through x^n_max.
    Returned monomials are sorted by exponent vector.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > cap:
        raise EnumerationTooLarge(f"n_max={n_max} exceeds cap {cap}")
    elements = child_set.elements
    width = len(elements)
    zero_exp = (0,) * width
    # series[n] maps exponent vector over (y_s) to an integer coefficient
    series: list[dict[tuple[int, ...], int]] = [dict() for _ in range(n_max + 1)]

    def mul(a, b):
        out: list[dict[tuple[int, ...], int]] = [dict() for _ in range(n_max + 1)]
        for na, monos_a in enumerate(a):
            if not monos_a:
                continue
            for nb in range(n_max + 1 - na):
                monos_b = b[nb]
                if not monos_b:
                    continue
                bucket = out[na + nb]
                for ea, ca in monos_a.items():
                    for eb, cb in monos_b.items():
                        key = tuple(x + y for x, y in zip(ea, eb))
                        bucket[key] = bucket.get(key, 0) + ca * cb
        return out

    for _ in range(n_max):
        current: list[dict[tuple[int, ...], int]] = [dict() for _ in range(n_max + 1)]
        current[0][zero_exp] = 1  # running power f^exp, starting at f^0
        new: list[dict[tuple[int, ...], int]] = [dict() for _ in range(n_max + 1)]
        for exp in range(child_set.max_count + 1):
            if exp in child_set:
                mark_idx = elements.index(exp)  # y_exp marks the root
                for deg in range(n_max):
                    bucket = new[deg + 1]
                    for evec, coeff in current[deg].items():
                        key = list(evec)
                        key[mark_idx] += 1
                        key = tuple(key)
                        bucket[key] = bucket.get(key, 0) + coeff
            if exp < child_set.max_count:
                current = mul(current, series)
        series = new

    result: dict[int, list[JointCoefficient]] = {}
    for n in range(1, n_max + 1):
        result[n] = [
            JointCoefficient(n, evec, coeff)
            for evec, coeff in sorted(series[n].items())
            if coeff
        ]
    return result


class TreeSampler:
    """Exactly uniform sampler over trees on n vertices.

    Works by the recursive method: pick the root's child count i with
    probability (#trees whose root has i children)/f_n, then split the
    n-1 remaining vertices among the i subtrees left to right, each split
    weighted by exact subtree-count products.  All weights are precomputed
    integers, so no rejection and no floating point anywhere.
    """

    def __init__(self, child_set: ChildSet, n: int) -> None:
        if n < 1:
            raise ValueError("n must be >= 1")
        self.child_set = child_set
        self.n = n
        max_c = child_set.max_count
        # conv[i][t] = number of forests of i ordered trees with t vertices
        conv = [[0] * (n + 1) for _ in range(max_c + 1)]
        conv[0][0] = 1
        f = [0] * (n + 1)
        for m in range(1, n + 1):
            f[m] = sum(conv[i][m - 1] for i in child_set.elements)
            for i in range(1, max_c + 1):
                acc = 0
                prev = conv[i - 1]
                for a in range(1, m + 1):
                    if f[a]:
                        acc += f[a] * prev[m - a]
                conv[i][m] = acc
        if f[n] == 0:
            raise NoTrees(f"no trees on {n} vertices for child set {child_set}")
        self.tree_counts = f
        self._conv = conv
        # per subtree size m: cumulative root-choice weights over i in S
        self._root_rows: list[tuple[tuple[int, ...], tuple[int, ...]]] = [((), ())] * (
            n + 1
        )
        for m in range(1, n + 1):
            if f[m] == 0:
                continue
            choices = []
            cums = []
            acc = 0
            for i in child_set.elements:
                w = conv[i][m - 1]
                if w:
                    acc += w
                    choices.append(i)
                    cums.append(acc)
            self._root_rows[m] = (tuple(choices), tuple(cums))
        self._split_tables: dict[tuple[int, int], tuple[tuple[int, ...], tuple[int, ...]]] = {}

    def _split_table(self, parts: int, total: int):
        """Sizes and cumulative weights for the first of `parts` subtrees."""
        key = (parts, total)
        table = self._split_tables.get(key)
        if table is None:
            f = self.tree_counts
            rest = self._conv[parts - 1]
            sizes = []
            cums = []
            acc = 0
            for a in range(1, total - parts + 2):
                w = f[a] * rest[total - a]
                if w:
                    acc += w
                    sizes.append(a)
                    cums.append(acc)
            table = (tuple(sizes), tuple(cums))
            self._split_tables[key] = table
        return table

    def sample(self, rng: Random) -> TreeCode:
        """One uniform tree; consumes a deterministic number of rng draws."""
        f = self.tree_counts
        root_rows = self._root_rows
        split_table = self._split_table
        conv = self._conv
        randrange = rng.randrange
        code: list[int] = []
        append = code.append
        stack = [self.n]
        while stack:
            m = stack.pop()
            if m == 1:
                append(0)
                continue
            draw = randrange(f[m])
            choices, cums = root_rows[m]
            i = choices[bisect_right(cums, draw)]
            append(i)
            if i == 1:
                stack.append(m - 1)
                continue
            total = m - 1
            parts = i
            part_sizes = []
            while parts >= 2:
                sizes, cums2 = split_table(parts, total)
                draw2 = randrange(conv[parts][total])
                first = sizes[bisect_right(cums2, draw2)]
                part_sizes.append(first)
                total -= first
                parts -= 1
            part_sizes.append(total)
            stack.extend(reversed(part_sizes))
        return tuple(code)

    def decision_probability(self, code) -> Fraction:
        """Exact probability that sample() emits this code."""
        f = self.tree_counts
        conv = self._conv

        def subtree_size(pos: int) -> int:
            size = 1
            cursor = pos + 1
            for _ in range(code[pos]):
                child = subtree_size(cursor)
                cursor += child
                size += child
            return size

        prob = Fraction(1)
        stack = [(0, self.n)]
        while stack:
            pos, m = stack.pop()
            i = code[pos]
            if m == 1:
                if i != 0:
                    return Fraction(0)
                continue
            prob *= Fraction(conv[i][m - 1], f[m])
            cursor = pos + 1
            total = m - 1
            parts = i
            for child_index in range(i):
                size = subtree_size(cursor)
                if parts >= 2:
                    prob *= Fraction(f[size] * conv[parts - 1][total - size], conv[parts][total])
                stack.append((cursor, size))
                cursor += size
                total -= size
                parts -= 1
        return prob


def sample_tree_uniform(child_set: ChildSet, n: int, rng_seed: int) -> TreeCode:
    """A single uniform tree, deterministic in (child_set, n, rng_seed)."""
    sampler = TreeSampler(child_set, n)
    return sampler.sample(Random(rng_seed))


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Sample mean of a statistic with exact accumulators."""

    mean: Fraction
    variance: Fraction  # unbiased sample variance
    samples: int

    @property
    def std_error(self) -> float:
        return float(self.variance / self.samples) ** 0.5

    def within_std_errors(self, target: Fraction, k: int) -> bool:
        """Exact check |mean - target| <= k * SE (squared comparison)."""
        dev = self.mean - Fraction(target)
        return dev * dev * self.samples <= k * k * self.variance


def monte_carlo_moment(
    child_set: ChildSet,
    n: int,
    s1: int,
    p1: int,
    s2: int | None = None,
    p2: int = 0,
    samples: int = 10_000,
    rng_seed: int = 0,
) -> MonteCarloEstimate:
    """Estimate E[X_{s1}^p1 * X_{s2}^p2] from seeded uniform samples."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    sampler = TreeSampler(child_set, n)
    rng = Random(rng_seed)
    total = 0
    total_sq = 0
    use_pair = s2 is not None and p2 > 0
    for _ in range(samples):
        code = sampler.sample(rng)
        value = code.count(s1) ** p1
        if use_pair:
            value *= code.count(s2) ** p2
        total += value
        total_sq += value * value
    mean = Fraction(total, samples)
    if samples == 1:
        variance = Fraction(0)
    else:
        variance = (Fraction(total_sq) - Fraction(total * total, samples)) / (samples - 1)
    return MonteCarloEstimate(mean, variance, samples)
