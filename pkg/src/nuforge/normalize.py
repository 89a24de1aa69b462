"""Bring a binary morphism to an order-preserving one whose images end differently."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InadmissibleInput
from .words import GeneralMorphism, Word


class Orientation(enum.Enum):
    PRESERVING = "Preserving"
    REVERSING = "Reversing"


def _common_prefix_len(u: Word, v: Word) -> int:
    n = 0
    for x, y in zip(u, v):
        if x != y:
            break
        n += 1
    return n


def _common_suffix_len(u: Word, v: Word) -> int:
    return _common_prefix_len(u[::-1], v[::-1])


def orientation(m: GeneralMorphism) -> Orientation:
    """Decide whether a binary morphism preserves or reverses the order on infinite words.

    When one image is a prefix of the other, the shorter image is moved to
    the end of both images (a conjugation, which keeps the orientation)
    until the images differ at some position.
    """
    if m.size != 2:
        raise ValueError("orientation is defined here for binary morphisms only")
    fa, fb = m.images
    cap = len(fa) + len(fb)
    for _ in range(cap + 1):
        k = _common_prefix_len(fa, fb)
        if k < len(fa) and k < len(fb):
            return Orientation.PRESERVING if fa[k] < fb[k] else Orientation.REVERSING
        p = fa[:k]
        fa, fb = fa[k:] + p, fb[k:] + p
    raise InadmissibleInput(
        f"orientation undecided after {cap} conjugations of {m}; the fixed point is probably periodic",
        "orientation",
    )


def square_if_reversing(m: GeneralMorphism) -> GeneralMorphism:
    if orientation(m) is Orientation.REVERSING:
        return m.square()
    return m


@dataclass(frozen=True)
class NormalizationTrace:
    """What normalization did to the input.

    ``prepared(v)·pi == pi·source(v)`` for every finite word v, where
    ``source`` is the input morphism or its square.
    """

    original: GeneralMorphism
    squared: bool
    source: GeneralMorphism
    transfers: tuple[Word, ...]
    pi: Word
    prepared: GeneralMorphism

    @property
    def shift(self) -> int:
        return len(self.pi)


def transfer_suffixes(m: GeneralMorphism) -> tuple[tuple[Word, ...], Word, GeneralMorphism]:
    """Move maximal common suffixes of the two images to the front until the last letters differ.

    Returns (transfers, pi, prepared) with pi the transfers concatenated
    from last to first.
    """
    fa, fb = m.images
    longer, shorter = max(len(fa), len(fb)), min(len(fa), len(fb))
    bound = longer // shorter + 1
    transfers: list[Word] = []
    while fa[-1] == fb[-1]:
        if len(transfers) >= bound:
            raise InadmissibleInput(
                f"more than {bound} suffix transfers needed for {m}; the subshift is periodic",
                "normalize",
            )
        k = _common_suffix_len(fa, fb)
        s = fa[len(fa) - k:]
        fa, fb = s + fa[:len(fa) - k], s + fb[:len(fb) - k]
        transfers.append(s)
    pi: Word = tuple(x for s in reversed(transfers) for x in s)
    return tuple(transfers), pi, GeneralMorphism(m.labels, (fa, fb))


def normalize(m: GeneralMorphism) -> NormalizationTrace:
    source = square_if_reversing(m)
    squared = source is not m
    transfers, pi, prepared = transfer_suffixes(source)
    return NormalizationTrace(m, squared, source, transfers, pi, prepared)
