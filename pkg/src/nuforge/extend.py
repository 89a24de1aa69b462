"""Recoding onto the alphabet of length-D factors when types are not separable.

A factor u of length D becomes one extended letter π(u); ρ maps it back to
its first binary letter. The morphism χ sends π(u) to the first |φ(u[0])|
letters of the sliding-window coding of φ(u).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ConsistencyError
from .language import FactorSet, Language, TypeTag, language_of
from .words import GeneralMorphism, Word, fixed_point_letters


@dataclass(frozen=True)
class Coding:
    """The bijection π between length-D factors and extended letters, and ρ."""

    delay: int
    factors: tuple[Word, ...]
    labels: tuple[str, ...]
    base_labels: tuple[str, ...]

    def __post_init__(self):
        if list(self.factors) != sorted(set(self.factors)):
            raise ValueError("extended letters must be the sorted distinct factors")
        object.__setattr__(self, "_index", {u: i for i, u in enumerate(self.factors)})

    @classmethod
    def from_factors(cls, facts: FactorSet, base_labels: Sequence[str]) -> Coding:
        counts = [0] * len(base_labels)
        labels = []
        for u in facts.factors:
            counts[u[0]] += 1
            labels.append(f"{base_labels[u[0]]}_{counts[u[0]]}")
        return cls(facts.length, facts.factors, tuple(labels), tuple(base_labels))

    @property
    def size(self) -> int:
        return len(self.factors)

    def pi(self, u: Word) -> int:
        try:
            return self._index[tuple(u)]
        except KeyError:
            raise ValueError(f"{u!r} is not a length-{self.delay} factor") from None

    def rho(self, letter: int) -> int:
        return self.factors[letter][0]

    def rho_word(self, word: Sequence[int]) -> Word:
        return tuple(self.factors[x][0] for x in word)

    def table(self) -> list[tuple[str, str]]:
        return [(lab, "".join(self.base_labels[x] for x in u)) for lab, u in zip(self.labels, self.factors)]


def lift_word(w: Sequence[int], coding: Coding) -> Word:
    """Sliding-window image of w; it has |w| - D + 1 letters."""
    d = coding.delay
    if len(w) < d:
        raise ValueError(f"word shorter than the window length {d}")
    w = tuple(w)
    return tuple(coding.pi(w[i:i + d]) for i in range(len(w) - d + 1))


@dataclass(frozen=True)
class Extension:
    coding: Coding
    chi: GeneralMorphism
    language: Language


def build_chi(m: GeneralMorphism, delay: int, base: Language | None = None) -> Extension:
    base = base or language_of(m)
    coding = Coding.from_factors(base.factors(delay), m.labels)
    images = []
    for u in coding.factors:
        need = len(m.images[u[0]])
        img = m(u)
        if len(img) < delay + need - 1:
            raise ConsistencyError(
                f"image of {m.format(u)} is too short for window length {delay}", "extend"
            )
        images.append(lift_word(img[:delay + need - 1], coding))
    chi = GeneralMorphism(coding.labels, tuple(images))
    lang = Language(chi, lift=(base, lambda v: lift_word(v, coding), delay))
    return Extension(coding, chi, lang)


def derived_type_order(m: GeneralMorphism, ext: Extension, base: Language, max_rounds: int = 12) -> tuple[TypeTag, ...]:
    """Order of the χ types read off the binary words they project to.

    The words of χ-type (π(v), p) project under ρ to σ^p(m(V)) for binary
    factors V extending v, and ρ preserves the order, so each type is
    represented by σ^p(m(V)) for one extension V. Extensions are lengthened
    until every pair of representatives differs inside their common length.
    """
    coding = ext.coding
    delay = coding.delay
    types = [TypeTag(x, p) for x in range(coding.size) for p in range(len(ext.chi.images[x]))]
    reps: dict[int, Word] = {}
    length = delay
    for _ in range(max_rounds):
        firsts: dict[Word, Word] = {}
        for v in sorted(base.factor_set(length)):
            firsts.setdefault(v[:delay], v)
        reps = {x: m(firsts[u]) for x, u in enumerate(coding.factors)}
        keyed = sorted(types, key=lambda t: reps[t.letter][t.offset:])
        if all(_differ(reps[s.letter][s.offset:], reps[t.letter][t.offset:]) for s, t in zip(keyed, keyed[1:])):
            return tuple(keyed)
        length *= 2
    raise ConsistencyError(f"chi types not told apart by binary extensions of length {length // 2}", "extend")


def _differ(u: Word, v: Word) -> bool:
    n = min(len(u), len(v))
    return u[:n] != v[:n]


def verify_chi(m: GeneralMorphism, chi: GeneralMorphism, coding: Coding) -> list[str]:
    """Return the failed checks (empty when χ is consistent with m)."""
    problems: list[str] = []
    for x, img in enumerate(chi.images):
        if coding.rho_word(img) != m.images[coding.rho(x)]:
            problems.append(f"rho(chi({coding.labels[x]})) differs from the image of its first letter")
    distinct = sorted(set(chi.images))
    lasts = [img[-1] for img in distinct]
    if len(set(lasts)) != len(lasts):
        problems.append("distinct chi-images share a last letter")
    interior = {y for img in chi.images for y in img[:-1]}
    clash = set(lasts) & interior
    if clash:
        problems.append(
            "last letters occur elsewhere in images: " + ", ".join(coding.labels[y] for y in sorted(clash))
        )
    fixed = fixed_point_letters(chi)
    base_fixed = fixed_point_letters(m)
    if len(fixed) != len(base_fixed) or {coding.rho(x) for x in fixed} != set(base_fixed):
        problems.append(
            f"chi has {len(fixed)} fixed-point letters, the binary morphism has {len(base_fixed)}"
        )
    return problems


def check_chi(m: GeneralMorphism, chi: GeneralMorphism, coding: Coding) -> None:
    problems = verify_chi(m, chi, coding)
    if problems:
        raise ConsistencyError("; ".join(problems), "extend")
