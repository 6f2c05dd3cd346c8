"""Formal crossed products and the map onto operators."""

import random

from hypothesis import given
from hypothesis import strategies as st
from oracles import opsum_entries, window_of
from strategies import F7, crossed, opsums, pinjs, seeds, sets, symseqs

from gammacalc import randgen
from gammacalc.cohn import CohnWord
from gammacalc.crossed import (CrossedElem, UnitalSeq, cp_mul, cp_to_gami, preimage, relation_instance,
                               retract, section, split_check)
from gammacalc.gami import OpSum
from gammacalc.pinj import EVENS, ODDS, PInj, identity, projection, s_gen
from gammacalc.scalars import QQ, ZZ
from gammacalc.seqspace import SymSeq, act

one = QQ.one()
T = CrossedElem.term
pairs = st.sampled_from([QQ, F7]).flatmap(lambda r: st.tuples(crossed(r), crossed(r)))


def crossed_entries(x, n):
    """Entries of the image, summed term by term from values."""
    out = {}
    for a, f in x.terms:
        for j in range(1, n + 1):
            i = f(j)
            if i is not None and i <= n:
                v = a.at(i)
                out[(i, j)] = out[(i, j)] + v if (i, j) in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


class TestProducts:
    def test_shift_squared(self):
        x = T(SymSeq.const(one), s_gen(1))
        assert x * x == T(SymSeq.const(one), s_gen(1) * s_gen(1))
        want = {(4 * j, j): one for j in range(1, 17)}
        assert {k: v.as_ring() for k, v in crossed_entries(x * x, 64).items()} == want
        assert {k: v.as_ring() for k, v in window_of(cp_to_gami(x * x), 64).items()} == want

    def test_covariance(self):
        a = SymSeq.power(one, 1)
        x = T(SymSeq.const(one), s_gen(2))
        y = T(a, identity())
        assert x * y == T(act(s_gen(2), a), s_gen(2))

    def test_cohn_words(self):
        x = T(SymSeq.const(one), CohnWord((1,), (1,)))
        assert x == T(SymSeq.chi(EVENS, QQ), projection(EVENS))

    # periods multiply along products, so triples use single terms
    @given(crossed(terms=1), crossed(terms=1), crossed(terms=1))
    def test_associative(self, x, y, z):
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z

    @given(crossed())
    def test_zero(self, x):
        z = CrossedElem.zero(QQ)
        assert (x * z).is_zero() and (z * x).is_zero()
        assert (x - x).is_zero()

    @given(symseqs(), symseqs())
    def test_diagonal_subalgebra(self, a, b):
        assert T(a, identity()) * T(b, identity()) == T(a * b, identity())
        assert T(a, identity()) + T(b, identity()) == T(a + b, identity())


class TestToOperators:
    @given(pairs)
    def test_homomorphism(self, pair):
        x, y = pair
        assert cp_to_gami(x * y) == cp_to_gami(x) * cp_to_gami(y)
        assert cp_to_gami(x + y) == cp_to_gami(x) + cp_to_gami(y)
        assert cp_mul(x, y) == x * y

    @given(crossed())
    def test_entries(self, x):
        assert window_of(cp_to_gami(x), 64) == crossed_entries(x, 64)

    @given(crossed())
    def test_kernel_is_the_normalized_zero(self, x):
        assert x.is_zero() == cp_to_gami(x).is_zero()
        assert cp_to_gami(x) == cp_to_gami(x.normalized())
        assert x == x.normalized()

    @given(crossed(), st.booleans())
    def test_forced_cancellation(self, x, split):
        # a sum that vanishes only after refining the grid
        if split:
            y = x + CrossedElem(x.ring, [(-a, projection(EVENS) * f) for a, f in x.terms]) \
                  + CrossedElem(x.ring, [(-a, projection(ODDS) * f) for a, f in x.terms])
        else:
            y = x - x
        assert y.is_zero() and cp_to_gami(y).is_zero()

    @given(symseqs(), sets, pinjs)
    def test_relation_instances_vanish(self, a, A, f):
        r = relation_instance(a, A, f)
        assert r.is_zero() and cp_to_gami(r).is_zero()

    def test_coefficient_outside_range(self):
        x = T(SymSeq.chi(ODDS, QQ), s_gen(1))
        assert x.is_zero()
        assert not T(SymSeq.chi(EVENS, QQ), s_gen(1)).is_zero()

    @given(opsums(QQ, 3))
    def test_preimage(self, x):
        assert cp_to_gami(preimage(x)) == x

    @given(seeds)
    def test_nonzero_means_a_nonzero_entry(self, seed):
        x = randgen.random_crossed(random.Random(seed), QQ, 3, profiles=False)
        if not x.is_zero():
            assert crossed_entries(x, 512) or opsum_entries(cp_to_gami(x), 512)


class TestUnitalization:
    def seq(self, rng, ring):
        return randgen.random_symseq(rng, ring, profiles=False)

    @given(seeds)
    def test_split(self, seed):
        rng = random.Random(seed)
        x = UnitalSeq(self.seq(rng, ZZ), self.seq(rng, QQ))
        assert split_check(x, QQ)
        assert retract(section(x.scalar, QQ)) == x.scalar

    @given(seeds)
    def test_retract_is_multiplicative(self, seed):
        rng = random.Random(seed)
        x = UnitalSeq(self.seq(rng, ZZ), self.seq(rng, QQ))
        y = UnitalSeq(self.seq(rng, ZZ), self.seq(rng, QQ))
        assert retract(x * y) == retract(x) * retract(y)
        assert retract(x + y) == retract(x) + retract(y)

    def test_unit(self):
        u = UnitalSeq(SymSeq.const(ZZ.one()), SymSeq.zero(QQ))
        a = UnitalSeq(SymSeq.zero(ZZ), SymSeq.power(one, 1))
        assert u * a == a == a * u

    def test_integer_action(self):
        k = UnitalSeq(SymSeq.const(ZZ.parse("3")), SymSeq.zero(QQ))
        a = UnitalSeq(SymSeq.zero(ZZ), SymSeq.power(one, 1))
        assert (k * a).algebra == SymSeq.power(QQ.parse("3"), 1)
