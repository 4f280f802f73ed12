from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from palc.errors import EmptyIntersection
from palc.intervals import UNIT, Interval, Q, fmt, interval_intersect


@st.composite
def intervals(draw):
    den = draw(st.sampled_from([1, 2, 3, 4, 5, 10, 20]))
    a = draw(st.integers(0, den))
    b = draw(st.integers(0, den))
    return Interval(mpq(min(a, b), den), mpq(max(a, b), den))


def test_q_parses_decimals_and_ratios():
    assert Q("0.95") == mpq(19, 20)
    assert Q("1/5") == mpq(1, 5)
    assert Q(".5") == mpq(1, 2)
    assert Q(Fraction(3, 4)) == mpq(3, 4)
    assert Q(1, 6) == mpq(1, 6)


def test_q_rejects_floats_and_garbage():
    with pytest.raises(TypeError):
        Q(0.5)
    with pytest.raises(ValueError):
        Q("abc")
    with pytest.raises(ValueError):
        Q("1/0")


def test_fmt():
    assert fmt(mpq(1, 6)) == "1/6"
    assert fmt(mpq(1)) == "1"


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(Q("1.2"), Q(1))
    with pytest.raises(ValueError):
        Interval(Q("0.6"), Q("0.5"))


def test_complement_and_decimal():
    iv = Interval(Q("0.95"), Q(1))
    assert iv.complement() == Interval(0, Q("0.05"))
    assert iv.decimal(2) == "[0.95, 1.00]"
    assert str(Interval(mpq(1, 6), mpq(1, 4))) == "[1/6, 1/4]"


def test_intersect_examples():
    assert interval_intersect(Interval(Q("0.2"), Q("0.6")), Interval(Q("0.4"), Q("0.9"))) == Interval(Q("0.4"), Q("0.6"))
    x = Interval(Q("0.3"), Q("0.7"))
    assert interval_intersect(UNIT, x) == x
    with pytest.raises(EmptyIntersection):
        interval_intersect(Interval(Q("0.2"), Q("0.3")), Interval(Q("0.5"), Q("0.6")))


def _meet(a, b):
    try:
        return interval_intersect(a, b)
    except EmptyIntersection:
        return None


@given(intervals(), intervals())
def test_intersect_commutative_and_contained(a, b):
    r = _meet(a, b)
    assert r == _meet(b, a)
    if r is not None:
        assert a.contains(r) and b.contains(r)


@given(intervals(), intervals(), intervals())
def test_intersect_associative(a, b, c):
    ab = _meet(a, b)
    bc = _meet(b, c)
    left = None if ab is None else _meet(ab, c)
    right = None if bc is None else _meet(a, bc)
    assert left == right


@given(intervals())
def test_intersect_identity(a):
    assert interval_intersect(UNIT, a) == a == interval_intersect(a, UNIT)
