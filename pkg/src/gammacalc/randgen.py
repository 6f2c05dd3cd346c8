"""Seeded random objects for the property suites and the CLI verifier."""

from __future__ import annotations

import random
from fractions import Fraction

from .arith import divisors, prog_contains
from .cohn import CohnElem
from .crossed import CrossedElem
from .decomp import FinMatrix
from .gami import OpSum
from .pinj import NATURALS, PInj, ProgressionSet
from .scalars import QQ, QQI, GaussianRational, Ring, int_mod_ring
from .seqspace import SymSeq

F7 = int_mod_ring(7)


def _has_rationals(ring: Ring) -> bool:
    return ring in (QQ, QQI)


def random_scalar(rng: random.Random, ring: Ring, nonzero: bool = False):
    while True:
        if ring == QQI:
            v = GaussianRational(Fraction(rng.randint(-3, 3), rng.randint(1, 3)), rng.randint(-2, 2))
        else:
            v = ring.from_fraction(Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]) if _has_rationals(ring) else 1))
        if not (nonzero and v.is_zero()):
            return v


def random_pinj(rng: random.Random, max_period: int = 4, max_threshold: int = 4, points: int = 2,
                total: bool = False) -> PInj:
    """Affine on a random set of residue classes, plus a few finite pairs; injective by construction."""
    M = rng.randint(1, max_period)
    T = rng.randint(1, max_threshold)
    residues = list(range(M)) if total else [r for r in range(M) if rng.random() < 0.75]
    b = rng.choice(divisors(M))
    a = rng.randint(1, 3)
    P = a * M // b
    while P < len(residues):
        a += 1
        P = a * M // b
    slope = Fraction(a, b)
    targets = rng.sample(range(P), len(residues))
    pieces, images = [], []
    for r, t in zip(residues, targets):
        s = T + (r - T) % M
        t0 = t if t > 0 else P
        t0 += P * rng.randint(0, 2)
        pieces.append((s, M, slope, t0 - slope * s))
        images.append((t0, P))
    pts, used = [], set()
    for n in range(1, T):
        if len(pts) >= points or rng.random() < 0.4:
            continue
        for _ in range(20):
            v = rng.randint(1, 4 * P + 8)
            if v not in used and not any(prog_contains(img, v) for img in images):
                pts.append((n, v))
                used.add(v)
                break
    return PInj.make(pieces, pts)


def random_set(rng: random.Random) -> ProgressionSet:
    m = rng.randint(1, 4)
    progs = [(s, m) for s in range(1, m + 1) if rng.random() < 0.5]
    fin = [n for n in range(1, 8) if rng.random() < 0.2]
    return ProgressionSet.make(progs, fin)


def random_symseq(rng: random.Random, ring: Ring, profiles: bool = True, finite_only: bool = False) -> SymSeq:
    """A few class pieces (constants, and decaying profiles over rings with rationals) plus points."""
    pts = [(n, random_scalar(rng, ring)) for n in rng.sample(range(1, 10), rng.randint(0, 3))]
    out = SymSeq.make(ring, (), pts)
    if finite_only:
        return out
    M = rng.randint(1, 3)
    for s in range(1, M + 1):
        roll = rng.random()
        if roll < 0.3:
            continue
        support = ProgressionSet.progression(s + M * rng.randint(0, 2), M)
        c = random_scalar(rng, ring, nonzero=True)
        if not (profiles and _has_rationals(ring)) or roll < 0.6:
            out = out + SymSeq.const(c, support)
        elif roll < 0.8:
            e = rng.choice([Fraction(1), Fraction(1, 2), Fraction(2), Fraction(3, 2)])
            out = out + SymSeq.power(c, e, rng.randint(0, 2), support)
        elif roll < 0.9:
            out = out + SymSeq.geometric(c, Fraction(1, rng.randint(2, 3)), support)
        else:
            out = out + SymSeq.logpower(c, Fraction(1, 2), 1, support)
    return out


def random_opsum(rng: random.Random, ring: Ring, terms: int = 2, profiles: bool = True) -> OpSum:
    out = OpSum.zero(ring)
    for _ in range(rng.randint(1, terms)):
        out = out + OpSum.term(random_symseq(rng, ring, profiles), random_pinj(rng))
    return out


def random_crossed(rng: random.Random, ring: Ring, terms: int = 2, profiles: bool = True) -> CrossedElem:
    return CrossedElem(ring, [(random_symseq(rng, ring, profiles), random_pinj(rng))
                              for _ in range(rng.randint(1, terms))])


def random_polar_term(rng: random.Random, ring: Ring = QQ) -> tuple[SymSeq, PInj]:
    """``(alpha, f)`` whose classes each carry one profile, so a rational modulus exists."""
    M = rng.randint(1, 3)
    alpha = SymSeq.zero(ring)
    free = []
    for s in range(1, M + 1):
        if rng.random() < 0.25:
            free.append(s)
            continue
        support = ProgressionSet.progression(s, M)
        if ring == QQI:
            c = rng.choice([GaussianRational(Fraction(3, 5), Fraction(4, 5)), GaussianRational(0, 1),
                            GaussianRational(-2, 0), GaussianRational(Fraction(5, 13), Fraction(-12, 13))])
            c = c * ring.from_fraction(Fraction(rng.randint(1, 3)))
        else:
            c = ring.from_fraction(Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 2)))
        roll = rng.random()
        if roll < 0.4:
            alpha = alpha + SymSeq.const(c, support)
        elif roll < 0.8:
            alpha = alpha + SymSeq.power(c, rng.choice([Fraction(1), Fraction(1, 2), Fraction(2)]), 0, support)
        else:
            alpha = alpha + SymSeq.geometric(c, Fraction(1, 2), support)
    # isolated values only where no class lives, so every value keeps a rational modulus
    spots = [n for n in range(1, 10) if (n - 1) % M + 1 in free]
    for n in rng.sample(spots, min(len(spots), rng.randint(0, 2))):
        alpha = alpha + SymSeq.basis(n, ring.from_fraction(Fraction(rng.choice([-2, 1, 3]))))
    return alpha, random_pinj(rng)


def random_unit_term(rng: random.Random, ring: Ring = QQ) -> tuple[SymSeq, PInj]:
    """``(alpha, f)`` with infinite support and a constant invertible class."""
    f = random_pinj(rng, total=True)
    c = ring.from_fraction(Fraction(rng.choice([-3, -2, -1, 1, 2, 5]), rng.randint(1, 3)))
    alpha = SymSeq.const(c, NATURALS)
    if rng.random() < 0.5:
        alpha = alpha + random_symseq(rng, ring, finite_only=True)
    return alpha, f


def random_matrix(rng: random.Random, ring: Ring | None = None, max_dim: int = 64, max_band: int = 8) -> FinMatrix:
    """A sparse matrix with at most ``max_band`` entries per row and column."""
    ring = ring or rng.choice([QQ, F7, QQI])
    n, m = rng.randint(1, max_dim), rng.randint(1, max_dim)
    N = rng.randint(1, max_band)
    ents, rowc, colc = {}, {}, {}
    for _ in range(n * N):
        i, j = rng.randint(1, n), rng.randint(1, m)
        if (i, j) in ents or rowc.get(i, 0) >= N or colc.get(j, 0) >= N:
            continue
        v = random_scalar(rng, ring, nonzero=True)
        ents[(i, j)] = v
        rowc[i] = rowc.get(i, 0) + 1
        colc[j] = colc.get(j, 0) + 1
    return FinMatrix(n, m, ring, ents)


def random_word(rng: random.Random, max_len: int = 3) -> tuple:
    return tuple(rng.choice((1, 2)) for _ in range(rng.randint(0, max_len)))


def random_cohn(rng: random.Random, words: int = 4, max_len: int = 3) -> CohnElem:
    out = CohnElem.zero()
    for _ in range(rng.randint(1, words)):
        out = out + CohnElem.word(random_word(rng, max_len), random_word(rng, max_len), rng.choice([-2, -1, 1, 2]))
    return out
