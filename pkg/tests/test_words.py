import pytest
from hypothesis import given, strategies as st

from conftest import W, morph
from nuforge.errors import InadmissibleInput, MorphismParseError
from nuforge.words import (
    FixedPointStream,
    GeneralMorphism,
    Verdict,
    admissibility,
    expanding_letter,
    fixed_point_letters,
    fixed_point_prefix,
    is_primitive,
    matrix,
    parse_morphism,
)


class TestParse:
    def test_roundtrip(self):
        m = parse_morphism("a -> ab , b -> ba")
        assert m.images == (W("ab"), W("ba"))
        assert str(m) == "a->ab; b->ba"

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("a->ab", "missing rule for 'b'"),
            ("a->ab;b->", "empty image"),
            ("a->ac;b->b", "unknown letter 'c'"),
            ("a->ab;a->b;b->a", "duplicate"),
            ("a=>ab;b->a", "malformed"),
            ("", "empty morphism"),
        ],
    )
    def test_errors(self, text, fragment):
        with pytest.raises(MorphismParseError) as err:
            parse_morphism(text)
        assert fragment in str(err.value)
        assert err.value.exit_code == 1
        assert err.value.stage == "parse"


def test_matrix_convention():
    # entry (i, j) counts letter i in the image of letter j
    assert matrix(morph("ab", "a")) == ((1, 1), (1, 0))
    assert matrix(morph("aab", "bbb")) == ((2, 0), (1, 3))


def test_primitivity():
    assert is_primitive(morph("ab", "ba"))
    assert is_primitive(morph("ab", "a"))
    assert not is_primitive(morph("aaba", "b"))
    assert not is_primitive(morph("aab", "bbb"))


def test_general_primitivity_uses_higher_powers():
    # a 3-cycle permutation pattern plus one loop needs the Wielandt exponent
    m = GeneralMorphism(("a", "b", "c"), ((1,), (2,), (0, 1)))
    assert is_primitive(m)
    assert not is_primitive(GeneralMorphism(("a", "b", "c"), ((1,), (2,), (0,))))


def test_fixed_points():
    tm = morph("ab", "ba")
    assert fixed_point_letters(tm) == {0, 1}
    assert fixed_point_prefix(tm, 0, 8) == W("abbabaab")
    assert fixed_point_letters(morph("aab", "abb")) == {0}
    s = FixedPointStream(tm, 1, initial=4)
    assert s[20] == fixed_point_prefix(tm, 1, 21)[20]


def test_fixed_point_requires_growth():
    with pytest.raises(ValueError):
        fixed_point_prefix(morph("ab", "b"), 1, 5)


@pytest.mark.parametrize(
    "a, b, verdict",
    [
        ("ab", "ba", Verdict.ADMISSIBLE),
        ("ab", "a", Verdict.ADMISSIBLE),
        ("aaba", "b", Verdict.ADMISSIBLE),
        ("aba", "bab", Verdict.PERIODIC_FIXED_POINT),
        ("ab", "abab", Verdict.PERIODIC_FIXED_POINT),
        ("aba", "b", Verdict.PERIODIC_FIXED_POINT),
        ("abbabba", "b", Verdict.PERIODIC_FIXED_POINT),
        ("ba", "ab", Verdict.NO_FIXED_POINT),
        ("abbab", "b", Verdict.NOT_UNIFORMLY_RECURRENT),
        ("aab", "bbb", Verdict.UNSUPPORTED_SHAPE),
        ("aab", "bb", Verdict.UNSUPPORTED_SHAPE),
    ],
)
def test_admissibility(a, b, verdict):
    assert admissibility(morph(a, b)).verdict is verdict


def test_rejection_raises_inadmissible():
    with pytest.raises(InadmissibleInput) as err:
        admissibility(morph("aba", "bab")).raise_if_rejected()
    assert "PeriodicFixedPoint" in str(err.value)


def test_expanding_letter():
    assert expanding_letter(morph("aaba", "b")) == (0, 1)
    assert expanding_letter(morph("ab", "ba")) is None


words = st.lists(st.sampled_from([0, 1]), min_size=1, max_size=6).map(tuple)


@given(words, words, words)
def test_compose_is_associative_application(fa, fb, w):
    m = GeneralMorphism(("a", "b"), (fa, fb))
    assert m.square()(w) == m(m(w))
    assert m(w + w) == m(w) + m(w)
