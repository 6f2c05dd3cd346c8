"""Partial injections and progression sets."""

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import compose_graph, pinj_graph
from strategies import pinjs, sets

from gammacalc.pinj import (CANTOR, DYADIC, EMPTY_SET, EVENS, NATURALS, ODDS, PSI, SQCUP, BadWord,
                            NotInjective, PInj, ProgressionSet, affine, atomize, empty_map, f_gen,
                            identity, parse_pinj, parse_set, projection, s_gen, s_word)

N = 200


class TestSets:
    def test_crt_intersection(self):
        a, b = ProgressionSet.progression(2, 2), ProgressionSet.progression(3, 3)
        got = a.intersect(b)
        assert got == ProgressionSet.progression(6, 6)
        assert got.elements(100) == [n for n in range(1, 101) if n % 2 == 0 and n % 3 == 0]

    def test_complement_of_evens(self):
        assert EVENS.complement() == ODDS

    def test_union_is_canonical(self):
        a = ProgressionSet.finite([1]).union(ProgressionSet.progression(2, 2))
        b = ProgressionSet.make([(4, 4), (2, 4)], [1])
        assert a == b and hash(a) == hash(b)

    def test_atoms_of_evens_and_fours(self):
        four = ProgressionSet.progression(4, 4)
        atoms = atomize([EVENS, four])
        assert sorted(atoms, key=lambda s: s.elements(64)) == sorted(
            [four, EVENS.difference(four), ODDS], key=lambda s: s.elements(64))

    def test_trivial_atoms(self):
        assert atomize([]) == [NATURALS]
        assert atomize([NATURALS]) == [NATURALS]

    @given(sets, sets)
    def test_set_algebra_matches_enumeration(self, a, b):
        ea, eb = set(a.elements(N)), set(b.elements(N))
        assert set(a.union(b).elements(N)) == ea | eb
        assert set(a.intersect(b).elements(N)) == ea & eb
        assert set(a.complement().elements(N)) == set(range(1, N + 1)) - ea
        assert a.union(b) == b.union(a)

    @given(st.lists(sets, max_size=4))
    def test_atoms_partition(self, family):
        atoms = atomize(family)
        seen = set()
        for atom in atoms:
            els = set(atom.elements(N))
            assert not atom.is_empty()
            assert not els & seen
            seen |= els
            for s in family:
                inside = set(s.elements(N))
                assert els <= inside or not els & inside
        assert seen == set(range(1, N + 1))

    def test_parse(self):
        assert parse_set("even") == EVENS
        assert parse_set("{1,3,5}") == ProgressionSet.finite([1, 3, 5])
        assert EMPTY_SET.is_empty() and EMPTY_SET.is_finite()


class TestMaps:
    def test_cohn_generators_compose(self):
        assert s_gen(1) * s_gen(2) == affine(4, 2)
        assert s_word((1, 2)) == affine(4, 2)
        assert s_word("12")(5) == 22

    def test_cohn_relation(self):
        assert (s_gen(1).dagger() * s_gen(2)).is_empty()
        assert s_gen(1).dagger() * s_gen(1) == identity()

    def test_dagger_examples(self):
        d = s_gen(1).dagger()
        assert d.domain() == EVENS and d(10) == 5
        assert projection(EVENS).dagger() == projection(EVENS)
        assert PInj.from_dict({3: 7}).dagger() == PInj.from_dict({7: 3})

    def test_f_maps(self):
        assert f_gen(1)(1) == 1 and f_gen(0)(3) == 6

    def test_bad_word(self):
        with pytest.raises(BadWord):
            s_word("13")

    def test_not_injective(self):
        with pytest.raises(NotInjective):
            PInj.from_dict({1: 5, 2: 5})

    def test_parse(self):
        assert parse_pinj("s1") == s_gen(1)
        assert parse_pinj("s[12]") == affine(4, 2)
        assert parse_pinj("f1") == f_gen(1)
        assert parse_pinj("P[even]") == projection(EVENS)
        assert parse_pinj("aff(3,1)@prog(2,2)") == affine(3, 1, 2, 2)
        assert parse_pinj("map{3->7}") == PInj.from_dict({3: 7})
        assert parse_pinj(str(s_word("212"))) == s_word("212")

    @given(pinjs)
    def test_print_parse_roundtrip(self, f):
        assert parse_pinj(str(f)) == f


class TestInverseMonoid:
    @given(pinjs, pinjs, pinjs)
    def test_laws(self, f, g, h):
        fd = f.dagger()
        assert f * (g * h) == (f * g) * h
        assert f * fd * f == f
        assert fd * f * fd == fd
        assert (f * g).dagger() == g.dagger() * fd
        assert fd.dagger() == f

    @given(pinjs)
    def test_range_and_domain_projections(self, f):
        assert f.dagger() * f == projection(f.domain())
        assert f * f.dagger() == projection(f.range())

    @given(pinjs, pinjs)
    def test_composition_matches_pointwise(self, f, g):
        assert pinj_graph(f * g, N) == compose_graph(f, g, N)

    @given(pinjs)
    def test_dagger_matches_pointwise(self, f):
        graph = pinj_graph(f, N)
        d = f.dagger()
        assert all(d(v) == k for k, v in graph.items())
        assert len(set(graph.values())) == len(graph)

    @given(pinjs, sets)
    def test_idempotent_pushforward(self, f, a):
        p = projection(a)
        assert f * p == projection(f.image_of(a)) * f

    def test_zero_and_identity(self):
        f = s_gen(2)
        assert (f * empty_map()).is_empty()
        assert identity() * f == f == f * identity()


class TestCodecs:
    def test_psi(self):
        assert PSI.encode(0, 0) == 1
        seen = {PSI.encode(l, k) for l in range(12) for k in range(1 << l)}
        assert seen == set(range(1, 1 << 12))
        assert all(PSI.encode(*PSI.decode(n)) == n for n in range(1, 1 << 12))

    @pytest.mark.parametrize("codec", [DYADIC, CANTOR, SQCUP], ids=lambda c: c.name)
    def test_bijections(self, codec):
        for n in range(1, 1 << 12):
            assert codec.encode(*codec.decode(n)) == n

    def test_psi_matches_cohn_words(self):
        # s_mu(1) runs through [2^l, 2^(l+1)) as mu runs through words of length l
        for l in range(6):
            vals = sorted(s_word(w)(1) for w in _words(l))
            assert vals == list(range(1 << l, 1 << (l + 1)))

    def test_first_row_lands_on_a_progression(self):
        assert DYADIC.row(1).range() == ODDS
        assert SQCUP.inclusion(1).range() == EVENS


def _words(l):
    if l == 0:
        return [()]
    return [w + (c,) for w in _words(l - 1) for c in (1, 2)]
