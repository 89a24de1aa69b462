"""Factors of a morphic subshift, their types, the synchronization delay, separability.

Factor sets are built without generating a long fixed point:

* primitive morphisms grow factors of length ``m·l + 1`` from factors of
  length ``l + 1`` (``m`` the shortest image length, squaring first when
  ``m = 1``), starting from the length-2 closure;
* the non-primitive shape ``e -> e x e, y -> y`` is seeded with the factors
  of ``φ²(e)`` of length ``h + 2`` (``h`` the longest run of ``y`` in the
  image of ``e``) and grown with ``p(l) = 1 + q(h + |φ(e)|) + r``;
* a recoded morphism over length-D factors takes its factors from the
  binary language through the sliding-window coding.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import groupby
from typing import Callable, Iterable, Iterator, NamedTuple

from .errors import ConsistencyError, SynchronizationDelayNotFound
from .words import GeneralMorphism, Word, expanding_letter, is_primitive

DEFAULT_DELAY_CAP = 64


class TypeTag(NamedTuple):
    letter: int
    offset: int

    def render(self, labels) -> str:
        return f"({labels[self.letter]},{self.offset})"


@dataclass(frozen=True)
class FactorSet:
    length: int
    factors: tuple[Word, ...]

    def __contains__(self, u) -> bool:
        return u in self._members

    def __iter__(self) -> Iterator[Word]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def _members(self) -> frozenset[Word]:
        return frozenset(self.factors)


@dataclass(frozen=True)
class TypingReport:
    """Typing of the length-``delay`` factors; ``delay`` is None when the order was derived without it."""

    delay: int | None
    typed: dict[Word, TypeTag] = field(compare=False)
    separable: bool
    type_order: tuple[TypeTag, ...] | None
    factors: tuple[Word, ...]


def _windows(word: Word, length: int) -> Iterable[Word]:
    return (word[i:i + length] for i in range(len(word) - length + 1))


def _subwindows(words: Iterable[Word], length: int) -> set[Word]:
    out: set[Word] = set()
    for w in words:
        out.update(_windows(w, length))
    return out


def factors_len2(m: GeneralMorphism) -> FactorSet:
    """Length-2 factors: close the length-2 factors of the images under m."""
    found = _subwindows(m.images, 2)
    frontier = set(found)
    while frontier:
        fresh = _subwindows((m(u) for u in frontier), 2) - found
        found |= fresh
        frontier = fresh
    return FactorSet(2, tuple(sorted(found)))


class Language:
    """Cached factor sets and interpretation tables for one morphism."""

    def __init__(self, m: GeneralMorphism, lift: tuple[Language, Callable[[Word], Word], int] | None = None):
        self.morphism = m
        self._factors: dict[int, frozenset[Word]] = {}
        self._tables: dict[int, dict[Word, frozenset[TypeTag]]] = {}
        self._lift = lift
        if lift is not None:
            self.strategy = "lift"
            return
        if is_primitive(m):
            self.strategy = "ratio"
            gen = m
            for _ in range(8):
                if min(gen.lengths) >= 2:
                    break
                gen = gen.square()
            else:
                raise ConsistencyError(f"cannot reach image length 2 by squaring {m}", "language")
            self._generator = gen
            return
        shape = expanding_letter(m) if m.size == 2 else None
        if shape is None or m.images[shape[0]][0] != shape[0] or m.images[shape[0]][-1] != shape[0]:
            raise ConsistencyError(f"no factor enumeration strategy for {m}", "language")
        self.strategy = "nonprimitive"
        e, y = shape
        img = m.images[e]
        self._h = max(len(list(run)) for letter, run in groupby(img) if letter == y)
        self._seed_len = self._h + 2
        self._factors[self._seed_len] = frozenset(_windows(m(img), self._seed_len))

    # -- factor sets ---------------------------------------------------------
    def factors(self, length: int) -> FactorSet:
        return FactorSet(length, tuple(sorted(self.factor_set(length))))

    def factor_set(self, length: int) -> frozenset[Word]:
        if length < 0:
            raise ValueError("negative length")
        cached = self._factors.get(length)
        if cached is None:
            cached = frozenset(self._compute(length))
            self._factors[length] = cached
        return cached

    def _compute(self, length: int) -> set[Word]:
        if length == 0:
            return {()}
        if self.strategy == "lift":
            base, lift, delay = self._lift
            return {lift(u) for u in base.factor_set(length + delay - 1)}
        if self.strategy == "ratio":
            if length <= 2:
                return _subwindows(factors_len2(self.morphism).factors, length)
            gen = self._generator
            n = 1 + math.ceil((length - 1) / min(gen.lengths))
            return _subwindows((gen(v) for v in self.factor_set(n)), length)
        # non-primitive shape
        if length <= self._seed_len:
            return _subwindows(self._factors[self._seed_len], length)
        l = self._seed_len
        while self._p(l) <= length:
            l += 1
        return _subwindows((self.morphism(v) for v in self.factor_set(l)), length)

    def _p(self, l: int) -> int:
        q, r = divmod(l - 1, self._h + 1)
        return 1 + q * (self._h + len(self.morphism.images[expanding_letter(self.morphism)[0]])) + r

    # -- interpretations -------------------------------------------------------
    def interpretation_table(self, length: int) -> dict[Word, frozenset[TypeTag]]:
        """Map every length-``length`` factor to the set of its (letter, offset) types."""
        table = self._tables.get(length)
        if table is not None:
            return table
        m = self.morphism
        n = 1 + math.ceil(max(length - 1, 0) / min(m.lengths))
        acc: dict[Word, set[TypeTag]] = defaultdict(set)
        for v in self.factor_set(n):
            img = m(v)
            first = v[0]
            for p in range(len(m.images[first])):
                if p + length > len(img):
                    break
                acc[img[p:p + length]].add(TypeTag(first, p))
        table = {u: frozenset(tags) for u, tags in acc.items()}
        if set(table) != self.factor_set(length):
            raise ConsistencyError(
                f"interpretation sweep at length {length} disagrees with the factor set", "language"
            )
        self._tables[length] = table
        return table


@lru_cache(maxsize=256)
def language_of(m: GeneralMorphism) -> Language:
    return Language(m)


def factors(m: GeneralMorphism, length: int) -> FactorSet:
    return language_of(m).factors(length)


def interpretations(u: Word, m: GeneralMorphism, lang: Language | None = None) -> frozenset[TypeTag]:
    """All (first letter of ancestor, offset) pairs under which u occurs."""
    lang = lang or language_of(m)
    return lang.interpretation_table(len(u)).get(tuple(u), frozenset())


def _is_synchronizing(m: GeneralMorphism, table: dict[Word, frozenset[TypeTag]]) -> bool:
    if any(len(tags) != 1 for tags in table.values()):
        return False
    if m.size == 2:
        return all(0 in u and 1 in u for u in table)
    return True


def synchronization_delay(m: GeneralMorphism, cap: int = DEFAULT_DELAY_CAP, lang: Language | None = None) -> int:
    """Smallest l such that every length-l factor has a single type.

    Over a binary alphabet every length-l factor must also contain both
    letters.
    """
    lang = lang or language_of(m)
    for length in range(1, cap + 1):
        if _is_synchronizing(m, lang.interpretation_table(length)):
            return length
    raise SynchronizationDelayNotFound(cap)


def ambiguity_count(m: GeneralMorphism, length: int, lang: Language | None = None) -> int:
    lang = lang or language_of(m)
    return sum(1 for tags in lang.interpretation_table(length).values() if len(tags) > 1)


def typing_and_separability(m: GeneralMorphism, delay: int, lang: Language | None = None) -> TypingReport:
    lang = lang or language_of(m)
    table = lang.interpretation_table(delay)
    typed: dict[Word, TypeTag] = {}
    for u, tags in table.items():
        if len(tags) != 1:
            raise ConsistencyError(f"{m.format(u)} has {len(tags)} types; {delay} is not a synchronization delay", "typing")
        typed[u] = next(iter(tags))
    ordered = tuple(sorted(typed))
    runs = [tag for tag, _ in groupby(typed[u] for u in ordered)]
    separable = len(runs) == len(set(runs))
    return TypingReport(delay, typed, separable, tuple(runs) if separable else None, ordered)
