"""Finite words, morphisms over small ordered alphabets, and admissibility.

Letters are integer indices into an ordered alphabet, so a word is a plain
tuple of ints and Python's tuple ordering is the lexicographic order.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InadmissibleInput, MorphismParseError

Word = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]

BINARY_LABELS = ("a", "b")


@dataclass(frozen=True)
class GeneralMorphism:
    """A non-erasing morphism given by the image of every letter."""

    labels: tuple[str, ...]
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.images):
            raise ValueError("one image per letter required")
        q = len(self.labels)
        for x, img in enumerate(self.images):
            if not img:
                raise ValueError(f"empty image for letter {self.labels[x]!r}")
            if any(not 0 <= y < q for y in img):
                raise ValueError(f"image of {self.labels[x]!r} uses a letter outside the alphabet")

    @classmethod
    def binary(cls, a: str, b: str) -> GeneralMorphism:
        """Build a binary morphism from the images written as strings over 'ab'."""
        return cls(BINARY_LABELS, (word_from_str(a), word_from_str(b)))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(img) for img in self.images)

    def __call__(self, word: Iterable[int]) -> Word:
        images = self.images
        out: list[int] = []
        for x in word:
            out.extend(images[x])
        return tuple(out)

    def compose(self, other: GeneralMorphism) -> GeneralMorphism:
        """Return ``self ∘ other``, i.e. ``x ↦ self(other(x))``."""
        if self.labels != other.labels:
            raise ValueError("alphabets differ")
        return GeneralMorphism(self.labels, tuple(self(img) for img in other.images))

    def square(self) -> GeneralMorphism:
        return self.compose(self)

    def format(self, word: Sequence[int]) -> str:
        if all(len(lab) == 1 for lab in self.labels):
            return "".join(self.labels[x] for x in word)
        return " ".join(self.labels[x] for x in word)

    def rules(self) -> list[str]:
        return [f"{lab}->{self.format(img)}" for lab, img in zip(self.labels, self.images)]

    def __str__(self) -> str:
        return "; ".join(self.rules())


def word_from_str(text: str, labels: Sequence[str] = BINARY_LABELS) -> Word:
    index = {lab: i for i, lab in enumerate(labels)}
    try:
        return tuple(index[ch] for ch in text)
    except KeyError as exc:
        raise ValueError(f"unknown letter {exc.args[0]!r}") from None


def word_to_str(word: Sequence[int], labels: Sequence[str] = BINARY_LABELS) -> str:
    return "".join(labels[x] for x in word)


_RULE = re.compile(r"^([a-z])->([a-z]*)$")


def parse_morphism(rules: str) -> GeneralMorphism:
    """Parse ``"a->ab;b->ba"`` (rules separated by ';' or ',', whitespace ignored).

    >>> str(parse_morphism("a -> ab, b -> ba"))
    'a->ab; b->ba'
    """
    compact = re.sub(r"\s+", "", rules)
    if not compact:
        raise MorphismParseError("empty morphism description", "parse")
    images: dict[str, str] = {}
    for rule in filter(None, re.split(r"[;,]", compact)):
        match = _RULE.match(rule)
        if match is None:
            raise MorphismParseError(f"malformed rule {rule!r}", "parse")
        letter, image = match.groups()
        if letter not in BINARY_LABELS:
            raise MorphismParseError(f"unknown letter {letter!r}", "parse")
        if letter in images:
            raise MorphismParseError(f"duplicate rule for {letter!r}", "parse")
        if not image:
            raise MorphismParseError(f"empty image for {letter!r} (erasing morphism)", "parse")
        bad = set(image) - set(BINARY_LABELS)
        if bad:
            raise MorphismParseError(f"unknown letter {sorted(bad)[0]!r} in image of {letter!r}", "parse")
        images[letter] = image
    missing = [x for x in BINARY_LABELS if x not in images]
    if missing:
        raise MorphismParseError(
            f"missing rule for {missing[0]!r}: a binary morphism needs an image for both letters",
            "parse",
        )
    return GeneralMorphism.binary(images["a"], images["b"])


# -- matrices -------------------------------------------------------------


def matrix(m: GeneralMorphism) -> IntMatrix:
    """Entry (i, j) counts the occurrences of letter i in the image of letter j."""
    q = m.size
    return tuple(tuple(m.images[j].count(i) for j in range(q)) for i in range(q))


def mat_mul(x: IntMatrix, y: IntMatrix) -> IntMatrix:
    n, k, p = len(x), len(y), len(y[0])
    return tuple(tuple(sum(x[i][t] * y[t][j] for t in range(k)) for j in range(p)) for i in range(n))


def _positive(mat: IntMatrix) -> bool:
    return all(v > 0 for row in mat for v in row)


def is_primitive(m: GeneralMorphism) -> bool:
    """True iff some power of the matrix is entrywise positive.

    Positivity of the pattern is checked at Wielandt's exponent q²−2q+2,
    which is 2 for binary alphabets.
    """
    q = m.size
    pattern = tuple(tuple(1 if v else 0 for v in row) for row in matrix(m))
    power = pattern
    for _ in range(q * q - 2 * q + 1):
        power = tuple(tuple(1 if v else 0 for v in row) for row in mat_mul(power, pattern))
    return _positive(power)


# -- fixed points ----------------------------------------------------------


def fixed_point_letters(m: GeneralMorphism) -> frozenset[int]:
    return frozenset(x for x, img in enumerate(m.images) if img[0] == x and img != (x,))


def fixed_point_prefix(m: GeneralMorphism, x: int, n: int) -> Word:
    """First ``n`` letters of the fixed point of ``m`` starting with ``x``."""
    if x not in fixed_point_letters(m):
        raise ValueError(f"{m.labels[x]!r} is not a fixed-point letter of {m}")
    w: Word = (x,)
    while len(w) < n:
        nxt = m(w[:n])
        if len(nxt) <= len(w):
            raise ValueError(f"the fixed point of {m} starting with {m.labels[x]!r} is finite")
        w = nxt
    return w[:n]


class FixedPointStream:
    """A fixed-point prefix that grows on demand."""

    def __init__(self, m: GeneralMorphism, x: int, initial: int = 64):
        self.morphism = m
        self.letter = x
        self.prefix: Word = fixed_point_prefix(m, x, max(initial, 1))

    def ensure(self, n: int) -> Word:
        if len(self.prefix) < n:
            self.prefix = fixed_point_prefix(self.morphism, self.letter, max(n, 2 * len(self.prefix)))
        return self.prefix

    def __getitem__(self, i: int) -> int:
        return self.ensure(i + 1)[i]


# -- admissibility -----------------------------------------------------------


class Verdict(enum.Enum):
    ADMISSIBLE = "Admissible"
    PERIODIC_FIXED_POINT = "PeriodicFixedPoint"
    NO_FIXED_POINT = "NoFixedPoint"
    NOT_UNIFORMLY_RECURRENT = "NotUniformlyRecurrent"
    UNSUPPORTED_SHAPE = "UnsupportedShape"

    @property
    def phrase(self) -> str:
        return {
            "Admissible": "admissible",
            "PeriodicFixedPoint": "periodic fixed point",
            "NoFixedPoint": "no fixed point",
            "NotUniformlyRecurrent": "not uniformly recurrent",
            "UnsupportedShape": "unsupported shape",
        }[self.value]


@dataclass(frozen=True)
class Validity:
    verdict: Verdict
    detail: str
    primitive: bool = False

    @property
    def ok(self) -> bool:
        return self.verdict is Verdict.ADMISSIBLE

    def raise_if_rejected(self) -> None:
        if not self.ok:
            raise InadmissibleInput(f"{self.verdict.phrase} ({self.verdict.value}): {self.detail}", "validity")


def _alternating(img: Word, first: int) -> bool:
    """img == first (other first)^m for some m ≥ 0."""
    other = 1 - first
    if len(img) % 2 == 0 or img[0] != first:
        return False
    return all(img[i] == (other if i % 2 else first) for i in range(len(img)))


def _is_power_block(tail: Word, e: int, y: int) -> bool:
    """tail == (y^k e)^n for some k, n ≥ 1."""
    if e not in tail:
        return False
    k = tail.index(e)
    if k == 0:
        return False
    block = (y,) * k + (e,)
    n, rem = divmod(len(tail), len(block))
    return rem == 0 and tail == block * n


def admissibility(m: GeneralMorphism) -> Validity:
    """Classify a binary morphism; only Admissible ones enter the pipeline."""
    if m.size != 2:
        return Validity(Verdict.UNSUPPORTED_SHAPE, "only binary morphisms are accepted as input")
    fa, fb = m.images
    primitive = is_primitive(m)
    fixed = fixed_point_letters(m)
    if fa + fb == fb + fa:
        return Validity(Verdict.PERIODIC_FIXED_POINT, "images are powers of a common word", primitive)
    if _alternating(fa, 0) and _alternating(fb, 1) and len(fa) + len(fb) > 2:
        return Validity(Verdict.PERIODIC_FIXED_POINT, "images of the form a(ba)^m, b(ab)^n", primitive)
    if not fixed:
        return Validity(Verdict.NO_FIXED_POINT, "no image starts with its own letter", primitive)
    if primitive:
        return Validity(Verdict.ADMISSIBLE, "primitive", True)

    unary = [x for x in (0, 1) if set(m.images[x]) == {x}]
    if len(unary) != 1:
        return Validity(Verdict.UNSUPPORTED_SHAPE, "non-primitive and neither letter is self-contained")
    y = unary[0]
    e = 1 - y
    ey, ee = m.labels[y], m.labels[e]
    if len(m.images[y]) > 1:
        return Validity(
            Verdict.UNSUPPORTED_SHAPE,
            f"non-primitive with {ey}->{ey}^{len(m.images[y])}; the fixed point is not uniformly recurrent",
        )
    img = m.images[e]
    if e not in fixed:
        return Validity(Verdict.NO_FIXED_POINT, f"{ey}->{ey} and the image of {ee} does not start with {ee}")
    if img[-1] != e:
        return Validity(
            Verdict.NOT_UNIFORMLY_RECURRENT,
            f"{ey}->{ey} and the image of {ee} ends with {ey}; the subshift contains {ey}^ω",
        )
    if _is_power_block(img[1:], e, y):
        return Validity(Verdict.PERIODIC_FIXED_POINT, f"non-primitive of the form {ee}({ey}^m {ee})^n, {ey}->{ey}")
    return Validity(Verdict.ADMISSIBLE, f"non-primitive of the shape {ee}->{ee}x{ee}, {ey}->{ey}", False)


def expanding_letter(m: GeneralMorphism) -> tuple[int, int] | None:
    """For the non-primitive admissible shape, return (expanding, fixed) letters."""
    for y in range(m.size):
        if m.images[y] == (y,):
            return 1 - y, y
    return None
