import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import S, W, morph
from nuforge.errors import InadmissibleInput
from nuforge.normalize import Orientation, normalize, orientation, square_if_reversing, transfer_suffixes
from nuforge.words import GeneralMorphism, admissibility, fixed_point_letters, fixed_point_prefix


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ("ab", "ba", Orientation.PRESERVING),
        ("ab", "a", Orientation.REVERSING),
        ("aab", "abb", Orientation.PRESERVING),
        ("aabab", "bba", Orientation.PRESERVING),
        ("ba", "ab", Orientation.REVERSING),
    ],
)
def test_orientation(a, b, expected):
    assert orientation(morph(a, b)) is expected


def test_fibonacci_square_is_preserving():
    sq = square_if_reversing(morph("ab", "a"))
    assert sq.images == (W("aba"), W("ab"))
    assert orientation(sq) is Orientation.PRESERVING


def test_orientation_undecided_for_commuting_images():
    with pytest.raises(InadmissibleInput):
        orientation(morph("ab", "abab"))


def test_single_transfer():
    transfers, pi, psi = transfer_suffixes(morph("aab", "abb"))
    assert [S(t) for t in transfers] == ["b"]
    assert S(pi) == "b"
    assert psi.images == (W("baa"), W("bab"))


def test_repeated_transfers():
    tr = normalize(morph("ab", "babab"))
    assert [S(t) for t in tr.transfers] == ["ab", "ab", "b"]
    assert S(tr.pi) == "babab" and tr.shift == 5
    assert tr.prepared.images == (W("ba"), W("babab"))


def test_nothing_to_do():
    tr = normalize(morph("ab", "ba"))
    assert not tr.squared and tr.pi == () and tr.prepared == tr.original


images = st.lists(st.sampled_from([0, 1]), min_size=1, max_size=6).map(tuple)


@settings(max_examples=300)
@given(images, images, st.lists(st.sampled_from([0, 1]), max_size=8).map(tuple))
def test_conjugacy_identity(fa, fb, v):
    m = GeneralMorphism(("a", "b"), (fa, fb))
    assume(admissibility(m).ok)
    tr = normalize(m)
    assert tr.prepared(v) + tr.pi == tr.pi + tr.source(v)
    psi = tr.prepared
    assert psi.images[0][-1] != psi.images[1][-1]
    assert orientation(psi) is Orientation.PRESERVING


@settings(max_examples=100)
@given(images, images)
def test_fixed_point_is_shift_of_prepared_image(fa, fb):
    m = GeneralMorphism(("a", "b"), (fa, fb))
    assume(admissibility(m).ok)
    tr = normalize(m)
    for x in fixed_point_letters(m):
        w = fixed_point_prefix(m, x, 400)
        img = tr.prepared(w)
        assert img[tr.shift:tr.shift + 200] == w[:200]
