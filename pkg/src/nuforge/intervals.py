"""Extended intervals and the piecewise affine map that carries the morphism.

``I_a`` is the set of points coding words that start with ``a``; its length
is the frequency of ``a``. The range intervals ``J`` are laid out in type
order with lengths ``μ_b/θ``, and ``f_{a,p}`` maps ``I_a`` affinely onto
``J_{a,p}`` with slope ``1/θ``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ConsistencyError
from .language import TypeTag
from .qfield import ExtReal, FieldDesc, Interval, QNum, Tag
from .words import GeneralMorphism


@dataclass(frozen=True)
class AffinePiece:
    type: TypeTag
    domain: Interval
    range: Interval
    slope: QNum
    intercept: QNum

    def __call__(self, x: QNum) -> QNum:
        return x * self.slope + self.intercept

    def formula(self, theta_text: str) -> str:
        c = self.intercept
        if c == 0:
            return f"x/{theta_text}"
        if not c.is_rational:
            return f"x/{theta_text} + ({c.exact()})"
        if c.sign() < 0:
            return f"x/{theta_text} - {(-c).exact()}"
        return f"x/{theta_text} + {c.exact()}"


@dataclass(frozen=True)
class IntervalMorphism:
    field: FieldDesc
    morphism: GeneralMorphism
    frequencies: tuple[QNum, ...]
    letter_intervals: tuple[Interval, ...]
    pieces: tuple[tuple[AffinePiece, ...], ...]
    type_order: tuple[TypeTag, ...]

    def piece(self, letter: int, offset: int) -> AffinePiece:
        return self.pieces[letter][offset]

    def pieces_in_type_order(self) -> list[AffinePiece]:
        return [self.pieces[t.letter][t.offset] for t in self.type_order]

    @property
    def theta_text(self) -> str:
        r = self.field.rational_theta
        if r is not None:
            return str(r)
        return "θ"

    def piece_name(self, piece: AffinePiece) -> str:
        return f"f_{{{self.morphism.labels[piece.type.letter]},{piece.type.offset}}}"


def _partition(lengths: Sequence[QNum], one: QNum) -> list[Interval]:
    """Consecutive intervals of the given lengths from 0, tagged at inner cuts."""
    zero = one - one
    out = []
    start = ExtReal(zero, Tag.NEUTRAL)
    acc = zero
    for i, length in enumerate(lengths):
        acc = acc + length
        last = i == len(lengths) - 1
        if last:
            if acc != one:
                raise ConsistencyError(f"interval lengths sum to {acc.exact()}, not 1", "intervals")
            end = ExtReal(one, Tag.NEUTRAL)
        else:
            end = ExtReal(acc, Tag.MINUS)
        if length.sign() <= 0:
            raise ConsistencyError("zero-length interval", "intervals")
        out.append(Interval(start, end))
        start = ExtReal(acc, Tag.PLUS)
    return out


def build_interval_morphism(
    m: GeneralMorphism,
    field: FieldDesc,
    freqs: Sequence[QNum],
    type_order: Sequence[TypeTag],
) -> IntervalMorphism:
    expected = {TypeTag(x, p) for x in range(m.size) for p in range(len(m.images[x]))}
    if set(type_order) != expected or len(type_order) != len(expected):
        raise ConsistencyError("type order does not list every (letter, offset) pair once", "intervals")
    one = field(1)
    theta = field.theta
    letter_iv = _partition(list(freqs), one)
    ranges = dict(zip(type_order, _partition([freqs[t.letter] / theta for t in type_order], one)))
    slope = one / theta
    pieces = []
    for x in range(m.size):
        row = []
        dom = letter_iv[x]
        for p in range(len(m.images[x])):
            t = TypeTag(x, p)
            rng = ranges[t]
            target = letter_iv[m.images[x][p]]
            if not (target.contains_value(rng.lo.value) and target.contains_value(rng.hi.value)):
                raise ConsistencyError(
                    f"J{t} = {rng} is not inside the interval of letter {m.labels[m.images[x][p]]}",
                    "intervals",
                )
            row.append(AffinePiece(t, dom, rng, slope, rng.lo.value - dom.lo.value * slope))
        pieces.append(tuple(row))
    return IntervalMorphism(field, m, tuple(freqs), tuple(letter_iv), tuple(pieces), tuple(type_order))


def _matches(x: ExtReal, end: ExtReal) -> bool:
    return x.value == end.value and (x.tag is end.tag or x.tag is Tag.NEUTRAL or end.tag is Tag.NEUTRAL)


def apply_piece(piece: AffinePiece, x: ExtReal) -> ExtReal:
    """Image of an extended point; domain endpoints go to range endpoints with their tags."""
    if not piece.domain.contains_value(x.value):
        raise ValueError(f"{x} is outside the domain {piece.domain}")
    if _matches(x, piece.domain.lo):
        return piece.range.lo
    if _matches(x, piece.domain.hi):
        return piece.range.hi
    return ExtReal(piece(x.value), x.tag)


def coding_projection(x: ExtReal, im: IntervalMorphism) -> int:
    """The letter whose extended interval contains x."""
    hits = []
    for a, iv in enumerate(im.letter_intervals):
        if not iv.contains_value(x.value):
            continue
        at_lo, at_hi = x.value == iv.lo.value, x.value == iv.hi.value
        if (not at_lo and not at_hi) or (at_lo and _matches(x, iv.lo)) or (at_hi and _matches(x, iv.hi)):
            hits.append(a)
    if len(hits) != 1:
        raise ConsistencyError(f"point {x} does not select a single letter interval", "intervals")
    return hits[0]
