"""End-to-end run: validity, normalization, typing, recoding, intervals, sequences."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyError, NotUniform, SynchronizationDelayNotFound
from .extend import Extension, build_chi, check_chi, derived_type_order
from .intervals import IntervalMorphism, build_interval_morphism
from .language import DEFAULT_DELAY_CAP, Language, TypingReport, synchronization_delay, typing_and_separability
from .normalize import NormalizationTrace, Orientation, normalize, orientation
from .qfield import FieldDesc, QNum, dominant_root, solve_frequencies
from .sequence import KRegular, NuSequence, generate_nu, kregular_recurrence
from .words import GeneralMorphism, Validity, admissibility, fixed_point_letters, matrix


@dataclass(frozen=True)
class Analysis:
    original: GeneralMorphism
    validity: Validity
    orientation: Orientation
    trace: NormalizationTrace
    field: FieldDesc
    binary_frequencies: tuple[QNum, ...]
    typing: TypingReport
    extension: Extension | None
    final_typing: TypingReport
    frequencies: tuple[QNum, ...]
    interval_morphism: IntervalMorphism

    @property
    def final(self) -> GeneralMorphism:
        return self.interval_morphism.morphism

    @property
    def fixed_letters(self) -> list[int]:
        return sorted(fixed_point_letters(self.original))

    def recurrence(self) -> KRegular | None:
        try:
            return kregular_recurrence(self.interval_morphism, self.trace.shift)
        except NotUniform:
            return None


def analyze(m: GeneralMorphism, delay_cap: int = DEFAULT_DELAY_CAP, force_extend: bool = False) -> Analysis:
    validity = admissibility(m)
    validity.raise_if_rejected()
    orient = orientation(m)
    trace = normalize(m)
    prepared = trace.prepared
    field = dominant_root(matrix(prepared))
    binary_freqs = solve_frequencies(matrix(prepared), field)

    lang = Language(prepared)
    delay = synchronization_delay(prepared, delay_cap, lang)
    typing = typing_and_separability(prepared, delay, lang)

    extension = None
    final_typing = typing
    final = prepared
    freqs = binary_freqs
    if force_extend or not typing.separable:
        extension = build_chi(prepared, delay, lang)
        check_chi(prepared, extension.chi, extension.coding)
        final = extension.chi
        final_typing = _chi_typing(prepared, extension, lang, delay_cap)
        freqs = solve_frequencies(matrix(final), field)

    im = build_interval_morphism(final, field, freqs, final_typing.type_order)
    return Analysis(m, validity, orient, trace, field, binary_freqs, typing, extension, final_typing, freqs, im)


def _chi_typing(prepared: GeneralMorphism, extension: Extension, lang: Language, cap: int) -> TypingReport:
    """Type order of χ, cross-checked against χ's own typing when its delay is within the cap.

    Letters of χ sharing one image are told apart only by factors spanning
    the images of about D binary letters, so χ's own delay can be far larger
    than D. The order itself always comes from the binary words.
    """
    order = derived_type_order(prepared, extension, lang)
    chi = extension.chi
    try:
        chi_delay = synchronization_delay(chi, cap, extension.language)
    except SynchronizationDelayNotFound:
        return TypingReport(None, {}, True, order, ())
    rep = typing_and_separability(chi, chi_delay, extension.language)
    if not rep.separable or rep.type_order != order:
        raise ConsistencyError("typing of the recoded morphism disagrees with the binary words", "extend")
    return rep


def sequences(
    analysis: Analysis,
    letters: list[int] | None = None,
    n_terms: int = 16,
    chain_cap: int | None = None,
) -> dict[int, NuSequence]:
    letters = analysis.fixed_letters if letters is None else letters
    coding = analysis.extension.coding if analysis.extension else None
    return {
        x: generate_nu(analysis.original, analysis.trace, coding, analysis.interval_morphism, x, n_terms, chain_cap)
        for x in letters
    }
