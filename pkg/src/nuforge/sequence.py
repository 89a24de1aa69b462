"""The equidistributed sequence ν_w of a fixed point, term by term.

The final word u (the fixed point, or its sliding-window lift) satisfies
``u = σ^p(g(u))`` for the final morphism g and ``p = |π|``. Writing
``n + p = |g(u[0:n'])| + j`` gives ``ν[n] = f_{u[n'], j}(ν[n'])``. Following
these parent links from any index either reaches a known term or closes a
cycle, whose composed map is a contraction with a unique fixed point.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from itertools import accumulate
from typing import Sequence

from .errors import ConsistencyError, NotUniform, ResourceCapExceeded
from .extend import Coding
from .intervals import AffinePiece, IntervalMorphism, apply_piece
from .language import TypeTag
from .normalize import NormalizationTrace
from .qfield import ExtReal, FieldDesc, QNum, Tag
from .words import FixedPointStream, GeneralMorphism, Word


@dataclass(frozen=True)
class ChainLink:
    index: int
    parent: int
    piece: TypeTag


@dataclass(frozen=True)
class NuSequence:
    source: int
    terms: tuple[ExtReal, ...]
    theta: FieldDesc
    links: tuple[ChainLink, ...] = field(repr=False)
    cycles: tuple[tuple[int, ...], ...]
    shift: int
    word: Word = field(repr=False)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, n: int) -> ExtReal:
        return self.terms[n]


def chain_map(u_prefix: Sequence[int], p: int, im: IntervalMorphism, n: int) -> ChainLink:
    """The parent of index n and the piece that carries ν[parent] to ν[n]."""
    lengths = im.morphism.lengths
    cum = [0, *accumulate(lengths[x] for x in u_prefix)]
    if cum[-1] <= n + p:
        raise ValueError(f"prefix of length {len(u_prefix)} does not reach index {n + p} of its image")
    i = bisect_right(cum, n + p) - 1
    return ChainLink(n, i, TypeTag(u_prefix[i], n + p - cum[i]))


class _FinalWord:
    """Prefix of the final word with cumulative image lengths, grown on demand."""

    def __init__(self, stream: FixedPointStream, coding: Coding | None, lengths: Sequence[int]):
        self.stream = stream
        self.coding = coding
        self.lengths = lengths
        self.u: list[int] = []
        self.cum: list[int] = [0]

    def _grow(self, n: int) -> None:
        n = max(n, 2 * len(self.u), 64)
        if self.coding is None:
            new = self.stream.ensure(n)[len(self.u):n]
        else:
            d = self.coding.delay
            w = self.stream.ensure(n + d - 1)
            new = [self.coding.pi(w[i:i + d]) for i in range(len(self.u), n)]
        for x in new:
            self.u.append(x)
            self.cum.append(self.cum[-1] + self.lengths[x])

    def letter(self, i: int) -> int:
        if i >= len(self.u):
            self._grow(i + 1)
        return self.u[i]

    def link(self, n: int, p: int) -> ChainLink:
        while self.cum[-1] <= n + p:
            self._grow(len(self.u) + 1)
        i = bisect_right(self.cum, n + p) - 1
        return ChainLink(n, i, TypeTag(self.u[i], n + p - self.cum[i]))


def _solve_cycle(pieces: list[AffinePiece]) -> ExtReal:
    """Fixed point of pieces[0] ∘ pieces[1] ∘ … ∘ pieces[-1]."""
    one = pieces[0].slope / pieces[0].slope
    s, c = one, one - one
    for f in reversed(pieces):
        s, c = f.slope * s, f.slope * c + f.intercept
    if not s < one:
        raise ConsistencyError("cycle map is not a contraction", "sequence")
    x = c / (one - s)
    for end in (pieces[-1].domain.lo, pieces[-1].domain.hi):
        image = end
        for f in reversed(pieces):
            image = apply_piece(f, image)
        if image.value == x:
            return image
    return ExtReal(x, Tag.NEUTRAL)


def default_chain_cap(n_terms: int, shift: int) -> int:
    return 10 * (n_terms + shift) + 1000


def generate_nu(
    original: GeneralMorphism,
    trace: NormalizationTrace,
    coding: Coding | None,
    im: IntervalMorphism,
    x: int,
    n_terms: int,
    chain_cap: int | None = None,
) -> NuSequence:
    """First n_terms of ν for the fixed point of ``original`` starting with x."""
    p = trace.shift
    cap = default_chain_cap(n_terms, p) if chain_cap is None else chain_cap
    word = _FinalWord(FixedPointStream(original, x), coding, im.morphism.lengths)
    values: dict[int, ExtReal] = {}
    links: dict[int, ChainLink] = {}
    cycles: list[tuple[int, ...]] = []
    steps = 0

    def piece_of(link: ChainLink) -> AffinePiece:
        return im.piece(link.piece.letter, link.piece.offset)

    for start in range(n_terms):
        if start in values:
            continue
        path: list[int] = []
        on_path: dict[int, int] = {}
        n = start
        while n not in values and n not in on_path:
            steps += 1
            if steps > cap:
                raise ResourceCapExceeded(f"index chains exceeded {cap} steps", "sequence")
            on_path[n] = len(path)
            path.append(n)
            link = links.get(n) or word.link(n, p)
            links[n] = link
            n = link.parent
        if n in on_path:
            k = on_path[n]
            cycle = path[k:]
            cycles.append(tuple(cycle))
            values[cycle[0]] = _solve_cycle([piece_of(links[c]) for c in cycle])
            for c in reversed(cycle[1:]):
                values[c] = apply_piece(piece_of(links[c]), values[links[c].parent])
            path = path[:k]
        for c in reversed(path):
            values[c] = apply_piece(piece_of(links[c]), values[links[c].parent])

    terms = tuple(values[n] for n in range(n_terms))
    used = tuple(links[n] for n in range(n_terms))
    return NuSequence(x, terms, im.field, used, tuple(cycles), p, tuple(word.u))


def replay_errors(seq: NuSequence, im: IntervalMorphism) -> list[int]:
    """Indices n < len(seq) whose parent is also generated and ν[n] ≠ f(ν[parent])."""
    bad = []
    for link in seq.links:
        if link.parent < len(seq.terms):
            piece = im.piece(link.piece.letter, link.piece.offset)
            if apply_piece(piece, seq.terms[link.parent]) != seq.terms[link.index]:
                bad.append(link.index)
    return bad


@dataclass(frozen=True)
class KRegular:
    k: int
    constants: dict[TypeTag, QNum]

    def predict(self, terms: Sequence[ExtReal], word: Sequence[int], n: int, p: int) -> QNum:
        """Value of ν[kn+p] from ν[n]."""
        return terms[n].value / self.k + self.constants[TypeTag(word[n], p)]


def kregular_recurrence(im: IntervalMorphism, shift: int = 0) -> KRegular:
    lengths = set(im.morphism.lengths)
    if len(lengths) != 1 or min(lengths) < 2:
        raise NotUniform(f"image lengths {sorted(lengths)} are not a single k >= 2", "sequence")
    if shift:
        raise NotUniform("a suffix transfer shifts the indices; the recurrence needs p = 0", "sequence")
    k = lengths.pop()
    consts = {piece.type: piece.intercept for row in im.pieces for piece in row}
    return KRegular(k, consts)
