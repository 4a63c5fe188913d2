from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conway_genera.scalars import (RADICAL_BASIS, RadicalScalar, format_radical,
                                   parse_radical)


def rs(**kw):
    return RadicalScalar({int(k[1:]): v for k, v in kw.items()})


def test_sqrt2_times_sqrt3_is_sqrt6():
    assert RadicalScalar.sqrt_term(2) * RadicalScalar.sqrt_term(3) \
        == RadicalScalar.sqrt_term(6)


def test_pure_sqrt5_multiple_squares_to_rational():
    d = RadicalScalar.sqrt_term(5, 25)
    assert d * d == RadicalScalar.from_rational(3125)


def test_conjugate_product():
    a = rs(d1=1, d2=1)    # 1 + sqrt(2)
    b = rs(d1=1, d2=-1)   # 1 - sqrt(2)
    assert a * b == RadicalScalar.from_rational(-1)


def test_is_rational():
    ok, val = RadicalScalar.from_rational(4096).as_rational()
    assert ok and val == 4096
    ok, val = RadicalScalar.sqrt_term(2, 32).as_rational()
    assert not ok and val is None
    ok, val = RadicalScalar().as_rational()
    assert ok and val == 0


def test_inverse():
    x = rs(d1=Fraction(1, 2), d6=3, d10=Fraction(-2, 7))
    assert x * x.inverse() == RadicalScalar.from_rational(1)
    with pytest.raises(ZeroDivisionError):
        RadicalScalar().inverse()


def test_division():
    x = RadicalScalar.sqrt_term(30)
    assert x / RadicalScalar.sqrt_term(5) == RadicalScalar.sqrt_term(6)
    assert x / 2 == RadicalScalar.sqrt_term(30, Fraction(1, 2))


def test_basis_is_enforced():
    with pytest.raises(ValueError):
        RadicalScalar({7: 1})


def test_format_and_parse_roundtrip():
    x = rs(d1=Fraction(-3, 2), d2=1, d15=Fraction(7, 4))
    assert parse_radical(format_radical(x)) == x
    assert format_radical(RadicalScalar()) == "0"
    assert parse_radical("0") == RadicalScalar()
    assert parse_radical("4096") == RadicalScalar.from_rational(4096)
    assert parse_radical("-8") == RadicalScalar.from_rational(-8)
    assert parse_radical("25*sqrt(5)") == RadicalScalar.sqrt_term(5, 25)
    assert parse_radical("1/2*sqrt(6)") == RadicalScalar.sqrt_term(6, Fraction(1, 2))
    assert parse_radical("sqrt(3)") == RadicalScalar.sqrt_term(3)
    assert parse_radical("3 - 1/2*sqrt(2)") == rs(d1=3, d2=Fraction(-1, 2))


rationals = st.fractions(min_value=-40, max_value=40, max_denominator=7)
elements = st.builds(
    lambda pairs: RadicalScalar(dict(pairs)),
    st.lists(st.tuples(st.sampled_from(RADICAL_BASIS), rationals),
             max_size=4, unique_by=lambda t: t[0]))


@settings(max_examples=150, deadline=None)
@given(elements, elements, elements)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + (b + c) == (a + b) + c


@settings(max_examples=60, deadline=None)
@given(elements)
def test_parse_format_roundtrip_random(a):
    assert parse_radical(format_radical(a)) == a


def test_d_magnitudes_square_rationally(data):
    for rec in data.classes.values():
        for mag in rec.d_magnitude.values():
            ok, _ = (mag * mag).as_rational()
            assert ok
