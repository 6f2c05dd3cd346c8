"""Randomized identity suites, one per construction, shared by the CLI and the tests.

Each suite takes a seeded ``random.Random`` and a trial count and returns a
list of ``(check, ok)`` pairs.  Nothing here reads the clock, so a fixed seed
gives identical output.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

from .cohn import CohnElem, CohnWord, f_hat, injectivity_probe, minf_embed, rho, rho_crossed
from .crossed import CrossedElem, cp_to_gami, preimage, relation_instance
from .decomp import decompose, reduce_rows
from .gami import OpSum, ideal_member, polar, unit_witness
from .pinj import DYADIC, identity, projection
from .randgen import (F7, random_cohn, random_crossed, random_matrix, random_opsum, random_pinj,
                      random_polar_term, random_set, random_symseq, random_unit_term, random_word)
from .scalars import QQ, QQI
from .seqspace import C0, CF, LINF, SymSeq, act, lp, lp_minus, lp_plus, member
from .sumring import (block_mul, blocks_equal, jmath, jmath_corner_check, jmath_op, m2_iso, m2_reconstruct,
                      mu_iso, oplus, pair_pullback_window, phi, phi_index_check, sum_ring_axioms, window_equal)

DEFAULT_TRIALS = 200


def default_trials() -> int:
    return int(os.environ.get("GAMMACALC_TRIALS", DEFAULT_TRIALS))


@dataclass
class SuiteResult:
    name: str
    checks: list

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def failures(self) -> list[str]:
        return [c for c, ok in self.checks if not ok]


def _all(rng, trials, fn) -> bool:
    return all(fn(rng) for _ in range(trials))


# ---------------------------------------------------------------- suites

def suite_dagproj(rng, trials):
    def one(rng):
        f, g, h = random_pinj(rng), random_pinj(rng), random_pinj(rng)
        fd = f.dagger()
        return (f * (g * h) == (f * g) * h and f * fd * f == f and fd * f * fd == fd
                and (f * g).dagger() == g.dagger() * fd
                and fd * f == projection(f.domain()) and f * fd == projection(f.range()))
    return [("inverse monoid identities", _all(rng, trials, one))]


def suite_eqcov(rng, trials):
    def one(rng):
        ring = rng.choice([QQ, QQI, F7])
        a, f = random_symseq(rng, ring), random_pinj(rng)
        Uf, Ufd = OpSum.U(f, ring), OpSum.U(f.dagger(), ring)
        fa = OpSum.diag(act(f, a))
        return fa * Uf == Uf * OpSum.diag(a) and Uf * OpSum.diag(a) * Ufd == fa
    def functor(rng):
        f, g = random_pinj(rng), random_pinj(rng)
        a = random_symseq(rng, QQ)
        return act(f * g, a) == act(f, act(g, a))
    return [("covariance of diag under U_f", _all(rng, trials, one)),
            ("(fg)_* = f_* g_*", _all(rng, trials, functor))]


def suite_sumring(rng, trials):
    checks = []
    for ring in (QQ, QQI, F7):
        for name, ok in sum_ring_axioms(ring).items():
            checks.append((f"{name} over {ring.name}", ok))
    one = OpSum.identity(QQ)
    checks.append(("1 (+) 1 = 1", oplus(one, one) == one))
    z = OpSum.zero(QQ)
    checks.append(("0 (+) 0 = 0", oplus(z, z).is_zero()))

    def hom(rng):
        ring = rng.choice([QQ, F7])
        a, b, c, d = (random_opsum(rng, ring, 1) for _ in range(4))
        return oplus(a, b) * oplus(c, d) == oplus(a * c, b * d)
    checks.append(("(a+b)(c+d) = ac + bd", _all(rng, max(1, trials // 4), hom)))
    return checks


def suite_defphi(rng, trials):
    checks = [("g_k images disjoint and complementary", phi_index_check(12))]

    def one(rng):
        r = random_opsum(rng, rng.choice([QQ, F7]), 2, profiles=False)
        P = phi(r)
        return window_equal(oplus(r, P), P, rng.choice([64, 128, 256]))
    checks.append(("r (+) Phi(r) = Phi(r) on windows", _all(rng, max(1, trials // 4), one)))
    e = phi(OpSum.E(1, 1, QQ.one())).window(64)
    checks.append(("Phi(E_11) diagonal positions", sorted(e.entries) == [(n, n) for n in (2, 3, 5, 9, 17, 33)]))
    return checks


def suite_cohn(rng, trials, size: int = 8):
    S = [CohnElem.word((1,)), CohnElem.word((2,))]
    checks = [("s_i† s_j = delta_ij",
               all(S[i].dagger() * S[j] == (CohnElem.one() if i == j else CohnElem.zero())
                   for i in range(2) for j in range(2)))]
    units = {(i, j): minf_embed(i, j) for i in range(1, size + 1) for j in range(1, size + 1)}
    checks.append((f"E_ij E_kl = delta_jk E_il up to {size}",
                   all(units[i, j] * units[k, l] == (units[i, l] if j == k else CohnElem.zero())
                       for (i, j) in units for (k, l) in units)))
    rf = rho(f_hat(), QQ)
    checks.append(("rho(f)† rho(f) = 1", rf.adjoint() * rf == OpSum.identity(QQ)))
    rs = [rho(s, QQ) for s in S]
    checks.append(("relations hold under rho",
                   all(rs[i].adjoint() * rs[j] == (OpSum.identity(QQ) if i == j else OpSum.zero(QQ))
                       for i in range(2) for j in range(2))))

    def alg(rng):
        x, y, z = random_cohn(rng), random_cohn(rng), random_cohn(rng)
        return (x * y) * z == x * (y * z) and (x * y).dagger() == y.dagger() * x.dagger()
    checks.append(("associativity and dagger", _all(rng, trials, alg)))

    def hom(rng):
        x, y = random_cohn(rng, 3, 2), random_cohn(rng, 3, 2)
        return rho(x * y, QQ) == rho(x, QQ) * rho(y, QQ)
    checks.append(("rho is multiplicative", _all(rng, max(1, trials // 4), hom)))

    def probe(rng):
        terms = [(random_symseq(rng, QQ, profiles=False), CohnWord(random_word(rng), random_word(rng)))
                 for _ in range(rng.randint(1, 3))]
        if rng.random() < 0.5:
            # add a cancelling copy split one level down
            a, w = terms[0]
            terms += [(-a, CohnWord(w.mu + (1,), w.nu + (1,))), (-a, CohnWord(w.mu + (2,), w.nu + (2,)))]
        return injectivity_probe(terms, QQ) == rho_crossed(terms, QQ).is_zero()
    checks.append(("normal form agrees with rho on zero", _all(rng, trials, probe)))
    return checks


def suite_cpg(rng, trials):
    def hom(rng):
        ring = rng.choice([QQ, QQI, F7])
        x, y = random_crossed(rng, ring), random_crossed(rng, ring)
        return cp_to_gami(x * y) == cp_to_gami(x) * cp_to_gami(y)

    def kernel(rng):
        ring = rng.choice([QQ, F7])
        x = random_crossed(rng, ring)
        if rng.random() < 0.5:
            x = x - preimage(cp_to_gami(x))
        if rng.random() < 0.3:
            x = x + relation_instance(random_symseq(rng, ring), random_set(rng), random_pinj(rng))
        return cp_to_gami(x).is_zero() == x.is_zero()

    def ideal(rng):
        tag = rng.choice([lp(1), lp(2), C0, lp_minus(2)])
        x = random_crossed(rng, QQ)
        inS = all(member(a, tag) for a, _ in x.terms)
        X = cp_to_gami(x)
        back = preimage(X)
        return ((not inS or ideal_member(X, tag)) and cp_to_gami(back) == X
                and ideal_member(X, tag) == all(member(a, tag) for a, _ in back.terms))
    return [("cp_to_gami is multiplicative", _all(rng, trials, hom)),
            ("cp_to_gami kills exactly the normalized zero", _all(rng, trials, kernel)),
            ("image is the ideal, with constructed preimages", _all(rng, max(1, trials // 2), ideal))]


def _nonneg_amp(a) -> bool:
    um = a.modulus_unit()
    return a.is_zero() or (um is not None and um[0].is_one())


def _nonneg(x: OpSum) -> bool:
    amps = [amp for _, _, lab in x.classes() for _, tv in lab for amp in tv.terms.values()]
    amps += [amp for _, col in x.finite_columns() for _, v in col for amp in v.terms.values()]
    return all(_nonneg_amp(a) for a in amps)


POLAR_TAGS = (CF, lp_minus(1), lp(1), lp_plus(1), lp(2), C0, LINF)


def suite_poldec(rng, trials):
    def one(rng):
        ring = rng.choice([QQ, QQI])
        alpha, f = random_polar_term(rng, ring)
        T = OpSum.term(alpha, f)
        P = polar(alpha, f)
        tag = rng.choice(POLAR_TAGS)
        return (P.V * P.abs == T and P.V * P.V.adjoint() * P.V == P.V and _nonneg(P.abs)
                and ideal_member(T, tag) == ideal_member(P.abs, tag))
    return [("T = V|T|, VV†V = V, |T| >= 0, same ideal", _all(rng, trials, one))]


def suite_idinminf(rng, trials):
    def one(rng):
        alpha, f = random_unit_term(rng)
        x = OpSum.term(alpha, f)
        w = unit_witness(alpha, f)
        return OpSum.U(w.h, QQ) * w.D * x * OpSum.U(w.g, QQ) == OpSum.identity(QQ)
    return [("U_h D x U_g = 1", _all(rng, trials, one))]


def suite_elusive(rng, trials):
    def one(rng):
        A = random_matrix(rng, max_dim=32)
        parts = reduce_rows(A)   # raises when an inequality breaks
        return A.r() <= 1 or all(C.r() < A.r() and C.c() <= A.c() for C, _ in parts)
    return [("row reduction keeps r < r(A), c <= c(A)", _all(rng, trials, one))]


def suite_bigsum(rng, trials):
    def one(rng):
        A = random_matrix(rng, max_dim=32)
        comps = decompose(A)     # verifies witnesses and the sum
        return all(c.matrix.N() <= 1 for c in comps)
    return [("components with N <= 1 and verified witnesses", _all(rng, trials, one))]


def suite_gamastable(rng, trials):
    def one(rng):
        ring = rng.choice([QQ, F7])
        a, b = random_opsum(rng, ring, 1), random_opsum(rng, ring, 1)
        return blocks_equal(m2_iso(a * b), block_mul(m2_iso(a), m2_iso(b))) and m2_reconstruct(m2_iso(a)) == a
    return [("M_2 blocks multiplicative and invertible", _all(rng, max(1, trials // 2), one))]


def suite_jota(rng, trials):
    def one(rng):
        ring = rng.choice([QQ, F7])
        (a, f), (b, g) = [(random_symseq(rng, ring), random_pinj(rng)) for _ in range(2)]
        x, y = OpSum.term(a, f), OpSum.term(b, g)
        return (jmath(a, f) == jmath_op(x) and jmath_op(x) * jmath_op(y) == jmath_op(x * y)
                and jmath_corner_check(x))

    def mu(rng):
        ring = QQ
        outer = [(n, random_symseq(rng, ring, profiles=False)) for n in rng.sample(range(1, 5), 2)]
        f = random_pinj(rng)
        # row n has period 2^n, so keep moved rows small
        while any((f(n) or 0) > 10 for n, _ in outer):
            f = random_pinj(rng)
        base = mu_iso(outer, ring)
        inner = mu_iso([(n, act(f, a)) for n, a in outer], ring)
        outer_moved = mu_iso([(f(n), a) for n, a in outer if f(n) is not None], ring)
        ident = identity()
        return (inner.window(256) == pair_pullback_window(f, ident, base, 256)
                and outer_moved.window(256) == pair_pullback_window(ident, f, base, 256))
    e = mu_iso([(1, SymSeq.basis(1, QQ.one()))], QQ)
    return [("jmath multiplicative and a corner embedding", _all(rng, max(1, trials // 2), one)),
            ("mu intertwines both actions", _all(rng, max(1, trials // 4), mu)),
            ("mu(e_1 at 1) = e at (1,1)", e == SymSeq.basis(DYADIC.encode(1, 1), QQ.one()))]


SUITES = {
    "dagproj": suite_dagproj,
    "eqcov": suite_eqcov,
    "sumring": suite_sumring,
    "defphi": suite_defphi,
    "cohn": suite_cohn,
    "cpg": suite_cpg,
    "poldec": suite_poldec,
    "idinminf": suite_idinminf,
    "elusive": suite_elusive,
    "bigsum": suite_bigsum,
    "gamastable": suite_gamastable,
    "jota": suite_jota,
}


def run_suite(name: str, seed: int = 0, trials: int | None = None) -> SuiteResult:
    rng = random.Random(f"{name}:{seed}")
    return SuiteResult(name, SUITES[name](rng, trials if trials is not None else default_trials()))
