"""Brute-force ground truth on a long fixed-point prefix.

Everything here works directly from definitions: shifts are compared
letter by letter, ν is estimated by counting smaller shifts, frequencies by
counting occurrences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence

from .qfield import ExtReal, QNum, Tag
from .words import GeneralMorphism, Word, fixed_point_prefix


class PrefixUniverse:
    """A fixed-point prefix with lexicographic comparison of its shifts."""

    def __init__(self, w: Sequence[int], depth: int = 64):
        self.word: Word = tuple(w)
        self._bytes = bytes(self.word)
        self.depth = depth

    @classmethod
    def of_fixed_point(cls, m: GeneralMorphism, x: int, length: int = 100_000, depth: int = 64) -> PrefixUniverse:
        return cls(fixed_point_prefix(m, x, length), depth)

    @property
    def horizon(self) -> int:
        return len(self.word) // 2

    def compare(self, i: int, j: int) -> int:
        """Sign of σ^i(w) − σ^j(w) in lexicographic order."""
        if i == j:
            return 0
        data = self._bytes
        room = len(data) - max(i, j)
        depth = self.depth
        while True:
            d = min(depth, room)
            a, b = data[i:i + d], data[j:j + d]
            if a != b:
                return -1 if a < b else 1
            if d == room:
                raise ValueError(f"shifts {i} and {j} agree on the remaining {room} letters; use a longer prefix")
            depth *= 2
            self.depth = max(self.depth, depth)


def shift_compare(pu: PrefixUniverse, i: int, j: int) -> int:
    return pu.compare(i, j)


def empirical_nu(pu: PrefixUniverse, n: int, samples: int) -> Fraction:
    """Share of the first ``samples`` shifts strictly below σ^n(w)."""
    below = sum(1 for k in range(samples) if pu.compare(k, n) < 0)
    return Fraction(below, samples)


def empirical_frequency(pu: PrefixUniverse, u: Sequence[int]) -> Fraction:
    w, u = pu.word, tuple(u)
    total = len(w) - len(u) + 1
    if total <= 0:
        raise ValueError("factor longer than the prefix")
    hits = sum(1 for i in range(total) if w[i:i + len(u)] == u)
    return Fraction(hits, total)


def discrepancy(values: Sequence[ExtReal | QNum]) -> QNum:
    """Star discrepancy of the values' real parts, computed exactly."""
    if not values:
        raise ValueError("empty list")
    nums = sorted((v.value if isinstance(v, ExtReal) else v) for v in values)
    n = len(nums)
    worst = nums[0] - nums[0]
    for i, v in enumerate(nums):
        worst = max(worst, abs(v - Fraction(i, n)), abs(v - Fraction(i + 1, n)))
    return worst


def shift_ranking(pu: PrefixUniverse, n: int) -> list[int]:
    """Indices 0..n-1 sorted by their shifts."""
    return sorted(range(n), key=cmp_to_key(pu.compare))


def order_mismatches(terms: Sequence[ExtReal], pu: PrefixUniverse) -> int:
    """Pairs i < j whose ν order disagrees with the order of the shifts."""
    n = len(terms)
    ranked = shift_ranking(pu, n)
    # the shift order is total on distinct shifts, so sorted ν must follow it
    bad = 0
    for pos in range(n - 1):
        if not terms[ranked[pos]] < terms[ranked[pos + 1]]:
            bad += 1
    if bad:
        bad = sum(
            1
            for i in range(n)
            for j in range(i + 1, n)
            if (terms[i] < terms[j]) != (pu.compare(i, j) < 0)
        )
    return bad


def one_sided_tags(terms: Sequence[ExtReal]) -> bool:
    """True when all tagged terms sit on the same side (1 counts as minus, 0 as plus)."""
    sides = set()
    for t in terms:
        if t.tag is not Tag.NEUTRAL:
            sides.add(t.tag)
        elif t.value == 1:
            sides.add(Tag.MINUS)
        elif t.value == 0:
            sides.add(Tag.PLUS)
    return len(sides) <= 1


@dataclass(frozen=True)
class OracleVerdict:
    name: str
    passed: bool
    detail: str


def frequency_band(prefix_length: int) -> float:
    return 5 / math.sqrt(prefix_length)


def run_checks(
    terms: Sequence[ExtReal],
    pu: PrefixUniverse,
    freqs: Sequence[QNum],
    base_freqs: Sequence[QNum] | None = None,
) -> list[OracleVerdict]:
    """Order isomorphism, letter frequencies and tag sidedness for one sequence."""
    out = []
    mism = order_mismatches(terms, pu)
    n = len(terms)
    out.append(OracleVerdict("order", mism == 0, f"{mism} mismatched pairs among {n * (n - 1) // 2}"))
    band = frequency_band(len(pu.word))
    exact = base_freqs if base_freqs is not None else freqs
    worst = max(abs(float(empirical_frequency(pu, (x,))) - float(exact[x])) for x in range(len(exact)))
    out.append(OracleVerdict("frequency", worst <= band, f"max deviation {worst:.6f} (band {band:.6f})"))
    out.append(OracleVerdict("tags", one_sided_tags(terms), "tagged terms on one side"))
    if terms:
        out.append(OracleVerdict("discrepancy", True, f"{float(discrepancy(terms)):.6f} over {n} terms"))
    return out
