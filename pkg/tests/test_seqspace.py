"""Symbolic sequences, the action of partial injections, and ideal membership."""

from fractions import Fraction
from math import isclose, log

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import log_const, log_geometric, log_power_log, oracle_member
from strategies import pinjs, sets, symseqs

from gammacalc.pinj import EVENS, NATURALS, ODDS, identity, projection, s_gen
from gammacalc.scalars import QQ, QQI
from gammacalc.seqspace import (C0, CF, LINF, IdealTag, SymSeq, act, lp, lp_minus, lp_plus, member,
                                modulus_and_phase, parse_symseq)

one = QQ.one()
CHAIN = lambda p: [CF, lp_minus(p), lp(p), lp_plus(p), C0, LINF]  # noqa: E731


def as_float(v) -> float:
    return sum(float(Fraction(str(a))) * m.to_float() for m, a in v.terms.items())


class TestPointwise:
    def test_disjoint_supports(self):
        assert (SymSeq.chi(EVENS, QQ) * SymSeq.chi(ODDS, QQ)).is_zero()

    def test_powers_add(self):
        h = SymSeq.power(one, 1)
        assert h * h == SymSeq.power(one, 2)

    def test_basis_sum(self):
        e1 = SymSeq.basis(1, one)
        assert e1 + e1 == SymSeq.basis(1, QQ.parse("2"))

    def test_values(self):
        a = SymSeq.power(one, Fraction(1, 2), 1)
        assert isclose(as_float(a.at(3)), 4 ** -0.5)
        b = SymSeq.logpower(one, 1, 2)
        assert isclose(as_float(b.at(5)), 5 ** -1 * log(6) ** -2)
        g = SymSeq.geometric(QQ.parse("3"), Fraction(1, 2))
        assert g.at(4) == SymSeq.basis(4, QQ.parse("3/8")).at(4)

    @given(symseqs(), symseqs(), symseqs())
    def test_ring_laws(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert (a - a).is_zero()

    @given(symseqs(), symseqs())
    def test_canonical_equality_matches_window(self, a, b):
        assert (a == b) == (a.window(512) == b.window(512))
        assert (a + b).window(64) == [x + y for x, y in zip(a.window(64), b.window(64))]
        assert (a * b).window(64) == [x * y for x, y in zip(a.window(64), b.window(64))]

    @given(symseqs())
    def test_print_parse_roundtrip(self, a):
        assert parse_symseq(str(a), QQ) == a


class TestAction:
    def test_shift_basis(self):
        assert act(s_gen(1), SymSeq.basis(1, one)) == SymSeq.basis(2, one)

    def test_values_move_along_f(self):
        a = SymSeq.power(one, 1)
        b = act(s_gen(2), a)
        assert b.at(7) == a.at(3) and b.at(6).is_zero()

    @given(pinjs, symseqs())
    def test_action_law(self, f, a):
        assert act(f, act(f.dagger(), act(f, a))) == act(f, a)

    @given(sets, symseqs())
    def test_idempotents_restrict(self, A, a):
        assert act(projection(A), a) == a.restrict(A)

    @given(pinjs, pinjs, symseqs())
    def test_functorial(self, f, g, a):
        lhs, rhs = act(f * g, a), act(f, act(g, a))
        assert lhs == rhs
        assert lhs.window(512) == rhs.window(512)

    @given(pinjs, symseqs())
    def test_pointwise_definition(self, f, a):
        b = act(f, a)
        for n in range(1, 200):
            m = f.preimage(n)
            if m is None:
                assert b.at(n).is_zero()
            else:
                assert b.at(n) == a.at(m)

    def test_identity_acts_trivially(self):
        a = SymSeq.power(one, 2)
        assert act(identity(), a) == a


class TestMembership:
    def test_harmonic(self):
        h = SymSeq.power(one, 1)
        assert member(h, lp_plus(1)) and not member(h, lp(1)) and member(h, lp(2))

    def test_geometric(self):
        g = SymSeq.geometric(one, Fraction(1, 2))
        assert all(member(g, lp(p)) for p in (Fraction(1, 2), 1, 2, 3))
        assert member(g, lp_minus(Fraction(1, 3)))
        assert not member(g, CF)

    def test_chi_even(self):
        a = SymSeq.chi(EVENS, QQ)
        assert not member(a, C0) and member(a, LINF)

    @pytest.mark.parametrize("p", [Fraction(1), Fraction(3, 2), Fraction(2)])
    def test_log_witness(self, p):
        g = 2 / p
        a = SymSeq.logpower(one, 1 / p, g)
        assert member(a, lp(p)) and not member(a, lp_minus(p))

    def test_tags_parse(self):
        assert IdealTag.parse("lp:3/2") == lp(Fraction(3, 2))
        assert IdealTag.parse("lp+:1") == lp_plus(1)
        assert IdealTag.parse("lp-:2") == lp_minus(2)
        assert IdealTag.parse("cf") == CF

    @given(symseqs(), symseqs(), st.sampled_from(CHAIN(1) + CHAIN(2)))
    def test_ideal(self, a, b, tag):
        if member(a, tag):
            assert member(a * b, tag)
            if member(b, tag):
                assert member(a + b, tag) or (a + b).is_zero()

    @given(pinjs, symseqs(), st.sampled_from(CHAIN(Fraction(3, 2))))
    def test_symmetric(self, f, a, tag):
        if member(a, tag):
            assert member(act(f, a), tag)

    @given(symseqs(), st.sampled_from([1, Fraction(3, 2), 2]))
    def test_monotone_along_chain(self, a, p):
        flags = [member(a, t) for t in CHAIN(p)]
        assert flags == sorted(flags)


# symbolic sequence, its log-space formula, and whether it is finite
WITNESSES = {
    "e1": (SymSeq.basis(1, one), log_const(), True),
    "2^-n": (SymSeq.geometric(one, Fraction(1, 2)), log_geometric(0.5), False),
    "n^-1": (SymSeq.power(one, 1), log_power_log(1, 0), False),
    "(n+1)^-2": (SymSeq.power(one, 2, 1), log_power_log(2, 0, 1), False),
    "n^-1/2 log^-3": (SymSeq.logpower(one, Fraction(1, 2), 3), log_power_log(0.5, 3), False),
    "log^-1": (SymSeq.logpower(one, 0, 1), log_power_log(0, 1), False),
    "1": (SymSeq.const(one), log_const(), False),
}


@pytest.mark.parametrize("name", sorted(WITNESSES))
def test_membership_agrees_with_series_oracle(name):
    a, log_a, finite = WITNESSES[name]
    for tag in CHAIN(1) + [lp(2), lp_plus(2), lp_minus(2)]:
        p = float(tag.p) if tag.p is not None else 1.0
        assert member(a, tag) == oracle_member(log_a, tag.kind, p, finite), str(tag)


class TestModulus:
    def test_point(self):
        a = SymSeq.basis(1, QQI.parse("i"))
        phase, mod = modulus_and_phase(a)
        assert phase == a and mod == SymSeq.basis(1, QQI.one())

    def test_zero(self):
        phase, mod = modulus_and_phase(SymSeq.zero(QQI))
        assert phase.is_zero() and mod.is_zero()

    def test_class(self):
        a = SymSeq.const(QQI.parse("3+4i"), EVENS)
        phase, mod = modulus_and_phase(a)
        assert phase == SymSeq.const(QQI.parse("3/5+4/5i"), EVENS)
        assert mod == SymSeq.const(QQI.parse("5"), EVENS)

    def test_irrational(self):
        assert modulus_and_phase(SymSeq.const(QQI.parse("1+i"), NATURALS)) is None

    @given(symseqs())
    def test_product(self, a):
        got = modulus_and_phase(a)
        if got is not None:
            phase, mod = got
            assert phase * mod == a
