"""The sum ring structure, Phi, and the M_2 and N x N stability maps."""

import random

from hypothesis import given
from hypothesis import strategies as st
from oracles import opsum_entries, window_of
from strategies import F7, opsums, seeds

from gammacalc import randgen
from gammacalc.gami import OpSum
from gammacalc.pinj import DYADIC, PInj, f_gen, identity, s_gen
from gammacalc.scalars import QQ, QQI
from gammacalc.seqspace import SymSeq, act
from gammacalc.sumring import (LazyOp, block_mul, blocks_equal, g_decode, g_index, g_map, jmath,
                               jmath_corner_check, jmath_op, m2_iso, m2_reconstruct, mu_iso, oplus,
                               pair_pullback_window, phi, phi_index_check, phi_truncated,
                               preserves_minf, sum_ring_axioms, window_equal, x_gen, y_gen)

one = QQ.one()
ID = OpSum.identity(QQ)
small = st.sampled_from([QQ, F7]).flatmap(lambda r: st.tuples(opsums(r, 1, False), opsums(r, 1, False)))
quads = st.sampled_from([QQ, F7]).flatmap(lambda r: st.tuples(*[opsums(r, 1, False)] * 4))


def copies(k: int, i: int) -> int:
    """``f_1^k f_0 (i)`` by applying the maps one at a time."""
    n = 2 * i
    for _ in range(k):
        n = 2 * n - 1
    return n


class TestAxioms:
    def test_identities(self):
        for ring in (QQ, QQI, F7):
            assert all(sum_ring_axioms(ring).values())

    def test_one_plus_one(self):
        assert oplus(ID, ID) == ID

    def test_generators(self):
        assert x_gen(0, QQ) == OpSum.U(f_gen(0), QQ)
        assert y_gen(1, QQ) * x_gen(0, QQ) == OpSum.zero(QQ)

    @given(quads)
    def test_homomorphism(self, xs):
        a, b, c, d = xs
        assert oplus(a, b) * oplus(c, d) == oplus(a * c, b * d)
        assert oplus(a, b) + oplus(c, d) == oplus(a + c, b + d)

    @given(small)
    def test_entries_interleave(self, pair):
        r, s = pair
        want = {(2 * i, 2 * j): v for (i, j), v in opsum_entries(r, 64).items()}
        want.update({(2 * i - 1, 2 * j - 1): v for (i, j), v in opsum_entries(s, 64).items()})
        got = window_of(oplus(r, s), 128)
        assert got == {k: v for k, v in want.items() if max(k) <= 128}

    @given(small)
    def test_lazy_and_exact_agree(self, pair):
        r, s = pair
        lazy = oplus(LazyOp.of(r), s)
        assert isinstance(lazy, LazyOp)
        assert window_equal(lazy, oplus(r, s), 128)


class TestPhi:
    def test_index_formula(self):
        for k in range(8):
            for i in range(1, 50):
                assert g_index(k, i) == copies(k, i) == g_map(k)(i)
                assert g_decode(g_index(k, i)) == (k, i)
        assert g_decode(1) is None

    def test_partition(self):
        assert phi_index_check(12)
        seen = {1}
        for k in range(10):
            for i in range(1, 2 ** (10 - k) + 1):
                n = copies(k, i)
                if n <= 1024:
                    assert n not in seen
                    seen.add(n)
        assert seen >= set(range(1, 1025))

    def test_e11(self):
        e = phi(OpSum.E(1, 1, one)).window(64)
        assert sorted(e.entries) == [(n, n) for n in (2, 3, 5, 9, 17, 33)]

    @given(small, st.sampled_from([64, 128, 256]))
    def test_absorbs(self, pair, n):
        r = pair[0]
        P = phi(r)
        assert window_equal(oplus(r, P), P, n)

    @given(small)
    def test_matches_enumeration(self, pair):
        r = pair[0]
        want = {}
        for (i, j), v in opsum_entries(r, 128).items():
            for k in range(8):
                a, b = copies(k, i), copies(k, j)
                if a <= 128 and b <= 128:
                    want[(a, b)] = v
        assert window_of(phi(r), 128) == want

    @given(small)
    def test_truncation(self, pair):
        r = pair[0]
        assert window_equal(phi_truncated(r, 8), phi(r), 128)

    @given(small)
    def test_band(self, pair):
        r = pair[0]
        assert phi(r).spot_check_band(128)

    def test_finite_stays_finite(self):
        assert preserves_minf(OpSum.U(s_gen(1), QQ))


class TestM2:
    def test_identity(self):
        b = m2_iso(ID)
        assert blocks_equal(b, [[ID, OpSum.zero(QQ)], [OpSum.zero(QQ), ID]])

    def test_blocks_are_strided_entries(self):
        x = OpSum.E(4, 3, one)
        b = m2_iso(x)
        assert b[0][1] == OpSum.E(2, 2, one)
        assert b[0][0].is_zero() and b[1][0].is_zero() and b[1][1].is_zero()

    @given(small)
    def test_multiplicative(self, pair):
        a, b = pair
        assert blocks_equal(m2_iso(a * b), block_mul(m2_iso(a), m2_iso(b)))
        assert m2_reconstruct(m2_iso(a)) == a

    @given(small)
    def test_block_entries(self, pair):
        a = pair[0]
        ents = opsum_entries(a, 128)
        blocks = m2_iso(a)
        for bi, ri in enumerate((0, 1)):
            for bj, rj in enumerate((0, 1)):
                want = {((i + ri) // 2, (j + rj) // 2): v for (i, j), v in ents.items()
                        if i % 2 == bi and j % 2 == bj and max(i, j) <= 128}
                assert window_of(blocks[bi][bj], 64) == want


class TestJmath:
    def test_unit(self):
        x = jmath(SymSeq.basis(1, one), identity())
        c = DYADIC.encode(1, 1)
        assert x == OpSum.E(c, c, one)

    @given(seeds)
    def test_term_and_operator_forms_agree(self, seed):
        rng = random.Random(seed)
        a, f = randgen.random_symseq(rng, QQ), randgen.random_pinj(rng)
        x = OpSum.term(a, f)
        assert jmath(a, f) == jmath_op(x)
        # row one of the pairing is the odds, entry (i, j) moves to (2i - 1, 2j - 1)
        want = {(2 * i - 1, 2 * j - 1): v for (i, j), v in opsum_entries(x, 64).items()}
        assert window_of(jmath_op(x), 128) == want

    @given(small)
    def test_multiplicative_and_corner(self, pair):
        x, y = pair
        assert jmath_op(x) * jmath_op(y) == jmath_op(x * y)
        assert jmath_corner_check(x)


class TestMu:
    def test_single_entry(self):
        e = mu_iso([(1, SymSeq.basis(1, one))], QQ)
        assert e == SymSeq.basis(DYADIC.encode(1, 1), one)

    def test_values(self):
        inner = SymSeq.power(one, 1)
        a = mu_iso([(3, inner)], QQ)
        for m in range(1, 20):
            assert a.at(DYADIC.encode(m, 3)) == inner.at(m)
            assert a.at(DYADIC.encode(m, 2)).is_zero()

    def test_constant_tail(self):
        c = QQ.parse("5")
        a = mu_iso([(2, SymSeq.basis(1, one))], QQ, tail=(2, c))
        assert a.at(DYADIC.encode(1, 2)) == SymSeq.basis(1, one).at(1)
        assert a.at(DYADIC.encode(4, 2)).is_zero()
        assert a.at(DYADIC.encode(3, 7)) == SymSeq.const(c).at(1)
        assert a.at(DYADIC.encode(3, 1)).is_zero()

    def test_intertwines_shift(self):
        rng = random.Random(7)
        outer = [(n, randgen.random_symseq(rng, QQ, profiles=False)) for n in (1, 2, 3)]
        f = s_gen(1)
        base = mu_iso(outer, QQ)
        inner = mu_iso([(n, act(f, a)) for n, a in outer], QQ)
        assert inner.window(256) == pair_pullback_window(f, identity(), base, 256)
        moved = mu_iso([(f(n), a) for n, a in outer], QQ)
        assert moved.window(256) == pair_pullback_window(identity(), f, base, 256)

    def test_pullback_oracle_is_pointwise(self):
        a = SymSeq.power(one, 2)
        w = pair_pullback_window(identity(), identity(), a, 64)
        assert w == a.window(64)
        f = PInj.from_dict({1: 2})
        w = pair_pullback_window(f, identity(), a, 64)
        assert w[DYADIC.encode(2, 1) - 1] == a.at(DYADIC.encode(1, 1))
        assert w[DYADIC.encode(1, 1) - 1].is_zero()
