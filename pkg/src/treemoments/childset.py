"""Validated sets of allowed child counts.

A ChildSet is the finite set S of child counts a vertex may have.  It must
contain 0 (otherwise no finite tree exists) and is stored as a strictly
increasing tuple so that equal sets compare and hash equal.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ChildSet:
    elements: tuple[int, ...]

    def __init__(self, elements) -> None:
        elems = tuple(sorted(set(int(e) for e in elements)))
        if not elems:
            raise ValueError("child set must be nonempty")
        if any(e < 0 for e in elems):
            raise ValueError("child counts must be nonnegative")
        if elems[0] != 0:
            raise ValueError("child set must contain 0")
        object.__setattr__(self, "elements", elems)

    def __contains__(self, value: int) -> bool:
        return value in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def max_count(self) -> int:
        return self.elements[-1]

    def index(self, value: int) -> int:
        """Position of ``value`` in the sorted element tuple."""
        return self.elements.index(value)

    def offspring_polynomial(self) -> list[int]:
        """Coefficients of sum(z**s for s in S), dense by degree."""
        coeffs = [0] * (self.max_count + 1)
        for s in self.elements:
            coeffs[s] = 1
        return coeffs

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"
