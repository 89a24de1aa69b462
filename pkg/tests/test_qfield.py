import math
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nuforge.errors import ConsistencyError, InadmissibleInput
from nuforge.qfield import (
    ExtReal,
    FieldDesc,
    Interval,
    QNum,
    Tag,
    compare,
    dominant_root,
    qnum_from_strings,
    solve_frequencies,
)
from nuforge.words import matrix
from conftest import morph

GOLD = FieldDesc(3, 1)  # θ² − 3θ + 1, θ = φ²
FIB = FieldDesc(1, -1)  # golden ratio
TWO = FieldDesc(2, 0)

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=30)


def q(a, b=0, f=GOLD):
    return QNum(a, b, f)


def test_theta_values():
    assert TWO.rational_theta == 2
    assert TWO.theta == q(2, 0, TWO)
    assert abs(float(GOLD.theta) - (3 + math.sqrt(5)) / 2) < 1e-12
    assert str(GOLD.theta_decimal(22))[:22] == "2.61803398874989484820"
    assert GOLD.describe() == "θ^2 - 3θ + 1 = 0"


def test_theta_must_exceed_one():
    with pytest.raises(InadmissibleInput):
        FieldDesc(2, 1)  # double root 1
    with pytest.raises(InadmissibleInput):
        FieldDesc(0, 1)  # complex roots


def test_dominant_root():
    assert dominant_root(matrix(morph("ab", "a"))) == FieldDesc(1, -1)
    assert dominant_root(matrix(morph("aabab", "bba"))).rational_theta == 4


def test_theta_satisfies_polynomial():
    t = GOLD.theta
    assert t * t - 3 * t + 1 == 0
    assert t * t.inverse() == 1


@given(fracs, fracs, fracs, fracs)
def test_field_axioms(a1, b1, a2, b2):
    x, y = q(a1, b1), q(a2, b2)
    assert x + y == y + x
    assert x * y == y * x
    assert (x - y) + y == x
    if y != 0:
        assert (x / y) * y == x


@given(fracs, fracs)
def test_sign_matches_float(a, b):
    x = q(a, b)
    approx = float(a) + float(b) * (3 + math.sqrt(5)) / 2
    if abs(approx) > 1e-9:
        assert x.sign() == (1 if approx > 0 else -1)
    assert (x.sign() == 0) == (a == 0 and b == 0)


@given(fracs, fracs, fracs, fracs)
def test_order_is_total_and_consistent(a1, b1, a2, b2):
    x, y = q(a1, b1), q(a2, b2)
    assert compare(x, y) == -compare(y, x)
    assert (x < y) == (compare(x, y) < 0)


def test_rational_theta_collapses():
    x = q(1, 1, TWO)
    assert x.b == 0 and x.a == 3


def test_exact_and_decimal():
    assert q(Fraction(1, 2)).exact() == "1/2"
    assert q(-2, 1).exact() == "-2 + θ"
    assert q(3, -1).exact() == "3 - θ"
    assert q(0, Fraction(-1, 3)).exact() == "-1/3·θ"
    assert q(Fraction(1, 8), 0, TWO).decimal(2) == "0.12"  # half-even
    assert q(Fraction(3, 8), 0, TWO).decimal(2) == "0.38"
    assert q(3, -1).decimal(12) == "0.381966011250"


def test_strings_roundtrip():
    x = q(Fraction(-7, 3), Fraction(2, 3))
    assert qnum_from_strings("-7/3", "2/3", GOLD) == x


def test_field_mismatch():
    with pytest.raises(ValueError):
        q(1) + q(1, 0, FIB)


def test_extreal_order_and_render():
    h = q(Fraction(1, 2), 0, TWO)
    lo, mid, hi = ExtReal(h, Tag.MINUS), ExtReal(h), ExtReal(h, Tag.PLUS)
    assert lo < mid < hi
    assert lo.render() == "1/2-" and hi.render() == "1/2+"
    assert ExtReal(q(1, 0, TWO), Tag.MINUS).render() == "1"
    assert ExtReal(q(3, -1), Tag.PLUS).render() == "(3 - θ)+"


def test_interval_rejects_reversed():
    with pytest.raises(ConsistencyError):
        Interval(ExtReal(q(1)), ExtReal(q(0)))


def test_frequencies_tm_exact():
    f = solve_frequencies(matrix(morph("ab", "ba")), TWO)
    assert f == (q(Fraction(1, 2), 0, TWO), q(Fraction(1, 2), 0, TWO))


def test_frequencies_fibonacci():
    f = solve_frequencies(matrix(morph("ab", "a")), FIB)
    assert f[0] + f[1] == 1
    assert abs(float(f[0]) - 2 / (1 + math.sqrt(5))) < 1e-12


def test_frequencies_larger_matrix():
    # letter counts of a three-letter primitive morphism
    mat = ((1, 1, 0), (1, 0, 1), (0, 1, 1))  # θ = 2, eigenvector (1,1,1)/3
    f = solve_frequencies(mat, FieldDesc(2, 0))
    assert all(v == q(Fraction(1, 3), 0, FieldDesc(2, 0)) for v in f)


def test_frequencies_reject_wrong_eigenvalue():
    with pytest.raises(ConsistencyError):
        solve_frequencies(((1, 1), (1, 0)), TWO)
