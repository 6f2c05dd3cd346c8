"""Exact coefficient rings."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gammacalc.scalars import (M2Q, QQ, QQI, ZZ, GaussianRational, Mat2Rational, NoModulus,
                               VariantMismatch, int_mod_ring, parse_scalar, try_modulus_unit)

F5 = int_mod_ring(5)
fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def _element(ring):
    if ring is ZZ:
        return st.integers(-50, 50).map(lambda n: ring.from_fraction(Fraction(n)))
    if ring is QQ:
        return fractions.map(ring.from_fraction)
    if ring is QQI:
        return st.tuples(fractions, fractions).map(lambda t: GaussianRational(*t))
    if ring is M2Q:
        return st.tuples(fractions, fractions, fractions, fractions).map(lambda t: Mat2Rational(*t))
    return st.integers(0, 4).map(lambda n: ring.from_fraction(Fraction(n)))


RINGS = [ZZ, QQ, QQI, M2Q, F5]


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: r.name)
def test_ring_axioms(ring):
    @given(_element(ring), _element(ring), _element(ring))
    def check(a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert a + ring.zero() == a and a * ring.one() == a == ring.one() * a
        assert a - a == ring.zero()
        assert (a * b).conjugate() == b.conjugate() * a.conjugate()
    check()


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: r.name)
def test_print_parse_roundtrip(ring):
    @given(_element(ring))
    def check(a):
        assert ring.parse(str(a)) == a
    check()


def test_small_examples():
    assert QQ.parse("1/2") + QQ.parse("1/3") == QQ.parse("5/6")
    assert QQI.parse("2+3i").conjugate() == QQI.parse("2-3i")
    assert F5.parse("m5:3") * F5.parse("m5:4") == F5.parse("m5:2")
    assert str(QQ.parse("-4/6")) == "-2/3"
    assert str(F5.from_fraction(Fraction(-1))) == "m5:4"


def test_mat2_is_noncommutative():
    a, b = M2Q.parse("[[1,1],[0,1]]"), M2Q.parse("[[1,0],[1,1]]")
    assert a * b != b * a
    assert a.conjugate() == M2Q.parse("[[1,0],[1,1]]")


def test_parse_scalar_guesses_the_ring():
    assert parse_scalar("2+3i").ring is QQI
    assert parse_scalar("m5:3").ring.name == "m5"
    assert parse_scalar("[[1,0],[0,1]]").ring is M2Q


def test_mixed_rings_rejected():
    with pytest.raises(VariantMismatch):
        QQ.one() + QQI.one()


class TestModulus:
    def test_pythagorean(self):
        unit, mod = try_modulus_unit(QQI.parse("3+4i"))
        assert unit == QQI.parse("3/5+4/5i") and mod == QQI.parse("5")

    def test_zero(self):
        unit, mod = try_modulus_unit(QQ.zero())
        assert unit.is_zero() and mod.is_zero()

    def test_irrational(self):
        assert try_modulus_unit(QQI.parse("1+i")) is None

    def test_no_absolute_value(self):
        with pytest.raises(NoModulus):
            try_modulus_unit(F5.one())

    @given(st.tuples(fractions, fractions))
    def test_unit_times_modulus(self, t):
        a = GaussianRational(*t)
        got = try_modulus_unit(a)
        if got is None:
            return
        unit, mod = got
        assert unit * mod == a
        assert unit.is_zero() or unit * unit.conjugate() == QQI.one()
        assert mod.conjugate() == mod

    @given(fractions)
    def test_rationals_always_have_one(self, q):
        unit, mod = try_modulus_unit(QQ.from_fraction(q))
        assert unit * mod == QQ.from_fraction(q)
        assert mod == QQ.from_fraction(abs(q))
