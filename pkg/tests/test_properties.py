"""Pipeline invariants on random admissible binary morphisms."""

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from conftest import brute_factors
from nuforge import analyze, sequences
from nuforge.errors import ResourceCapExceeded
from nuforge.extend import verify_chi
from nuforge.language import language_of
from nuforge.oracle import PrefixUniverse, one_sided_tags, order_mismatches
from nuforge.sequence import kregular_recurrence, replay_errors
from nuforge.words import GeneralMorphism, admissibility, matrix

images = st.lists(st.integers(0, 1), min_size=1, max_size=5).map(tuple)
SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])


@st.composite
def admissible(draw):
    m = GeneralMorphism(("a", "b"), (draw(images), draw(images)))
    assume(admissibility(m).ok)
    return m


def analysed(m):
    try:
        return analyze(m, delay_cap=40)
    except ResourceCapExceeded:
        assume(False)


@SETTINGS
@given(admissible())
def test_frequencies_are_the_perron_vector(m):
    an = analysed(m)
    f = an.binary_frequencies
    zero = an.field(0)
    assert all(v > zero for v in f) and sum(f, zero) == 1
    mat = matrix(an.trace.prepared)
    for i in range(2):
        assert sum((f[j] * mat[i][j] for j in range(2)), zero) == an.field.theta * f[i]


@SETTINGS
@given(admissible())
def test_pieces_tile_the_unit_interval(m):
    im = analysed(m).interval_morphism
    zero, one = im.field(0), im.field(1)
    pieces = sorted((p for row in im.pieces for p in row), key=lambda p: p.range.lo)
    assert pieces[0].range.lo.value == zero and pieces[-1].range.hi.value == one
    for left, right in zip(pieces, pieces[1:]):
        assert left.range.hi.value == right.range.lo.value
    assert all(p.slope * im.field.theta == one for p in pieces)
    lo = [iv.lo.value for iv in im.letter_intervals]
    assert lo[0] == zero and sum((iv.length for iv in im.letter_intervals), zero) == one


@SETTINGS
@given(admissible())
def test_terms_replay_and_match_the_oracle(m):
    an = analysed(m)
    for x, seq in sequences(an, None, 30).items():
        assert replay_errors(seq, an.interval_morphism) == []
        assert len(set(seq.terms)) == len(seq.terms)
        assert one_sided_tags(seq.terms)
        pu = PrefixUniverse.of_fixed_point(m, x, 20_000)
        assert order_mismatches(seq.terms, pu) == 0


@SETTINGS
@given(admissible())
def test_factor_sets_match_a_long_prefix(m):
    got = language_of(analysed(m).trace.prepared)
    for length in range(1, 7):
        assert got.factor_set(length) == brute_factors(m, length, 20_000)


@SETTINGS
@given(admissible())
def test_extension_is_consistent(m):
    an = analyze_forced(m)
    ext = an.extension
    assert verify_chi(an.trace.prepared, ext.chi, ext.coding) == []
    assert an.final_typing.separable


def analyze_forced(m):
    try:
        return analyze(m, delay_cap=40, force_extend=True)
    except ResourceCapExceeded:
        assume(False)


@SETTINGS
@given(st.integers(2, 4).flatmap(lambda k: st.tuples(*[st.lists(st.integers(0, 1), min_size=k, max_size=k).map(tuple)] * 2)))
def test_uniform_recurrence_reproduces_terms(pair):
    m = GeneralMorphism(("a", "b"), pair)
    assume(admissibility(m).ok)
    an = analysed(m)
    assume(an.trace.shift == 0)
    rec = kregular_recurrence(an.interval_morphism)
    k = rec.k
    for x, seq in sequences(an, None, 64).items():
        for n in range(64 // k):
            for p in range(k):
                assert rec.predict(seq.terms, seq.word, n, p) == seq.terms[k * n + p].value
