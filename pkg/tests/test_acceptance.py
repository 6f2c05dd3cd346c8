"""Acceptance criteria at their full sizes.

Each criterion is a function returning ``(ok, detail)``.  The pytest wrappers
time them, record one line each for the terminal summary and fail on a wrong
result or a blown time budget.  ``python3 tests/test_acceptance.py`` prints the
same lines without pytest.
"""

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import (compose_graph, log_const, log_geometric, log_power_log, oracle_member,  # noqa: E402
                     opsum_entries, pinj_graph, row_col_counts, witness_image, window_of)

from gammacalc import randgen  # noqa: E402
from gammacalc.cohn import S1, S2, CohnElem, f_hat, minf_embed, rho  # noqa: E402
from gammacalc.crossed import cp_to_gami, relation_instance  # noqa: E402
from gammacalc.decomp import decompose  # noqa: E402
from gammacalc.gami import OpSum, equal, ideal_member, polar, unit_witness  # noqa: E402
from gammacalc.pinj import EVENS, ODDS, projection  # noqa: E402
from gammacalc.scalars import QQ, QQI  # noqa: E402
from gammacalc.seqspace import C0, CF, LINF, SymSeq, lp, lp_minus, lp_plus, member  # noqa: E402
from gammacalc.sumring import (beta_map, block_mul, blocks_equal, m2_iso, m2_reconstruct, jmath_op,  # noqa: E402
                               oplus, phi, sum_ring_axioms, window_equal)

F7 = randgen.F7
one = QQ.one()
SEED = 20240601

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []


def _fail(what, i):
    return False, f"{what} (trial {i})"


# ---------------------------------------------------------------- 1. partial injections

def criterion_1():
    rng = random.Random(SEED + 1)
    for i in range(1000):
        f, g, h = (randgen.random_pinj(rng) for _ in range(3))
        if f * (g * h) != (f * g) * h:
            return _fail("f(gh) != (fg)h", i)
        if f * f.dagger() * f != f:
            return _fail("ff'f != f", i)
        if (f * g).dagger() != g.dagger() * f.dagger():
            return _fail("(fg)' != g'f'", i)
        if f.dagger() * f != projection(f.domain()):
            return _fail("f'f != P_dom", i)
        # values, independently of the canonical form
        if pinj_graph(f * g, 64) != compose_graph(f, g, 64):
            return _fail("composition disagrees with values", i)
    return True, "1000 triples"


# ---------------------------------------------------------------- 2. decomposition

def _step_ok(M, parts) -> bool:
    """One reduce_rows step: smaller r, no larger c, and the parts sum to M."""
    r, c = row_col_counts(M.entries)
    total = {}
    for part in parts:
        pr, pc = row_col_counts(part.entries)
        if not (pr < r and pc <= c):
            return False
        for k, v in part.entries.items():
            total[k] = total[k] + v if k in total else v
    return {k: v for k, v in total.items() if not v.is_zero()} == M.entries


def criterion_2():
    rng = random.Random(SEED + 2)
    steps = [0]
    for i in range(1000):
        A = randgen.random_matrix(rng, rng.choice([QQ, F7, QQI]), max_dim=64, max_band=8)
        trace = []
        comps = decompose(A, trace=trace)
        # every reduce_rows step the decomposition took, row stage and transposed stage
        for entry in trace:
            if entry[0] == "step":
                steps[0] += 1
                if not _step_ok(entry[1], entry[2]):
                    return _fail("a reduce_rows step violated the r/c inequalities or the sum", i)
        total = {}
        for comp in comps:
            if max(row_col_counts(comp.matrix.entries)) > 1:
                return _fail("component with N > 1", i)
            if witness_image(comp.witness, A) != comp.matrix.entries:
                return _fail("witness does not reproduce its component", i)
            for k, v in comp.matrix.entries.items():
                total[k] = total[k] + v if k in total else v
        if {k: v for k, v in total.items() if not v.is_zero()} != A.entries:
            return _fail("components do not sum to A", i)
    return True, f"1000 matrices, {steps[0]} reduce_rows steps checked"


# ---------------------------------------------------------------- 3. Cohn ring

def criterion_3():
    S = [S1, S2]
    for i in range(2):
        for j in range(2):
            if S[i].dagger() * S[j] != (CohnElem.one() if i == j else CohnElem.zero()):
                return False, f"s_{i + 1}' s_{j + 1}"
    size = 16
    E = {(i, j): minf_embed(i, j) for i in range(1, size + 1) for j in range(1, size + 1)}
    for (i, j), a in E.items():
        for (k, l), b in E.items():
            if a * b != (E[i, l] if j == k else CohnElem.zero()):
                return False, f"E_{i}{j} E_{k}{l}"
    # the representation sends E_ij to the matrix unit at (i, j)
    for (i, j), a in E.items():
        if window_of(rho(a, QQ), 2 * size) != {(i, j): window_of(OpSum.E(1, 1, one), 1)[(1, 1)]}:
            return False, f"rho(E_{i}{j}) is not a matrix unit"
    r = rho(f_hat(), QQ)
    if r.adjoint() * r != OpSum.identity(QQ):
        return False, "rho(f)' rho(f) != 1"
    return True, f"s_i's_j, E_ij E_kl for i,j,k,l <= {size}, rho(f)'rho(f) = 1"


# ---------------------------------------------------------------- 4. sum ring and Phi

def criterion_4():
    for ring in (QQ, QQI, F7):
        bad = [k for k, ok in sum_ring_axioms(ring).items() if not ok]
        if bad:
            return False, f"{bad[0]} over {ring.name}"
    I = OpSum.identity(QQ)
    if oplus(I, I) != I:
        return False, "1 (+) 1 != 1"
    rng = random.Random(SEED + 4)
    for i in range(100):
        r = randgen.random_opsum(rng, rng.choice([QQ, F7]), 2, profiles=False)
        P = phi(r)
        for n in (64, 128, 256):
            if not window_equal(oplus(r, P), P, n):
                return _fail(f"r (+) Phi(r) != Phi(r) on window {n}", i)
    return True, "axioms over Q, Q(i), F7; 100 r on windows 64, 128, 256"


# ---------------------------------------------------------------- 5. crossed product

def criterion_5():
    rng = random.Random(SEED + 5)
    zeros = 0
    for i in range(500):
        ring = rng.choice([QQ, F7])
        x, y = randgen.random_crossed(rng, ring), randgen.random_crossed(rng, ring)
        if cp_to_gami(x * y) != cp_to_gami(x) * cp_to_gami(y):
            return _fail("not multiplicative", i)
        if cp_to_gami(x + y) != cp_to_gami(x) + cp_to_gami(y):
            return _fail("not additive", i)
        # kernel: a formal zero, a relation instance, and the pair itself
        a, f = x.terms[0]
        split = x - type(x)(ring, [(b, projection(EVENS) * g) for b, g in x.terms]) \
                  - type(x)(ring, [(b, projection(ODDS) * g) for b, g in x.terms])
        rel = relation_instance(a, randgen.random_set(rng), f)
        for z in (split, rel, x, y, x * y):
            if z.is_zero() != cp_to_gami(z).is_zero():
                return _fail("kernel differs from the normalized zero", i)
            zeros += z.is_zero()
        if not (split.is_zero() and rel.is_zero()):
            return _fail("a relation was not normalized to zero", i)
    return True, f"500 pairs, {zeros} zero elements met"


# ---------------------------------------------------------------- 6. ideal lattice

def _witnesses(p):
    """Sequences separating consecutive members of the chain, with their log-space formulas."""
    ip = 1 / float(p)
    g = 2 / Fraction(p)
    return [
        ("cf", "lp-", SymSeq.geometric(one, Fraction(1, 2)), log_geometric(0.5)),
        ("lp-", "lp", SymSeq.logpower(one, 1 / Fraction(p), g), log_power_log(ip, float(g))),
        ("lp", "lp+", SymSeq.power(one, 1 / Fraction(p)), log_power_log(ip, 0)),
        ("lp+", "c0", SymSeq.logpower(one, 0, 1), log_power_log(0, 1)),
        ("c0", "linf", SymSeq.const(one), log_const()),
    ]


def criterion_6():
    rng = random.Random(SEED + 6)
    for p in (Fraction(1), Fraction(3, 2), Fraction(2)):
        tags = {"cf": CF, "lp-": lp_minus(p), "lp": lp(p), "lp+": lp_plus(p), "c0": C0, "linf": LINF}
        order = list(tags)
        for lo, hi, a, log_a in _witnesses(p):
            # a lies in hi but not in lo, symbolically and by partial sums
            for k in order:
                want = order.index(k) >= order.index(hi)
                if member(a, tags[k]) != want:
                    return False, f"p={p}: {hi} witness misplaced at {k}"
                if oracle_member(log_a, k, float(p), False) != want:
                    return False, f"p={p}: series oracle disagrees for {hi} witness at {k}"
        for _ in range(40):
            a = randgen.random_symseq(rng, QQ)
            flags = [member(a, tags[k]) for k in order]
            if flags != sorted(flags):
                return False, f"p={p}: chain not monotone"
    # two-sided ideals
    chain = [CF, lp_minus(1), lp(1), lp_plus(1), lp(Fraction(3, 2)), lp(2), C0, LINF]
    for i in range(200):
        tag = rng.choice(chain)
        seeds = {CF: SymSeq.basis(3, one), C0: SymSeq.logpower(one, 0, 1), LINF: SymSeq.const(one)}
        w = seeds.get(tag) or SymSeq.geometric(one, Fraction(1, 2))
        x = OpSum.diag(w) * randgen.random_opsum(rng, QQ, 2)
        if not ideal_member(x, tag):
            return _fail(f"generator left {tag}", i)
        g, h = randgen.random_opsum(rng, QQ, 2), randgen.random_opsum(rng, QQ, 2)
        if not (ideal_member(g * x, tag) and ideal_member(x * h, tag) and ideal_member(g * x * h, tag)):
            return _fail(f"product left {tag}", i)
    return True, "strict chain for p in {1, 3/2, 2}, oracle at 10^6 terms, 200 products"


# ---------------------------------------------------------------- 7. polar decomposition

def _nonnegative(v) -> bool:
    total = 0.0
    for m, a in v.terms.items():
        if getattr(a, "im", 0) != 0:
            return False
        total += float(getattr(a, "re", None) if hasattr(a, "re") else Fraction(str(a))) * m.to_float()
    return total >= 0


def criterion_7():
    rng = random.Random(SEED + 7)
    tags = [CF, lp_minus(1), lp(1), lp_plus(1), lp(2), C0, LINF]
    for i in range(200):
        ring = rng.choice([QQ, QQI])
        alpha, f = randgen.random_polar_term(rng, ring)
        T = OpSum.term(alpha, f)
        P = polar(alpha, f)
        V, A = P.V, P.abs
        if V * A != T:
            return _fail("T != V|T|", i)
        if V * V.adjoint() * V != V:
            return _fail("VV'V != V", i)
        if A.adjoint() != A or A * A != T.adjoint() * T:
            return _fail("|T| not self-adjoint with |T|^2 = T'T", i)
        ents = A.window(256).entries
        if any(r != c for r, c in ents) or not all(_nonnegative(v) for v in ents.values()):
            return _fail("|T| not a nonnegative diagonal", i)
        for tag in tags:
            if ideal_member(T, tag) != ideal_member(A, tag):
                return _fail(f"membership of T and |T| differ at {tag}", i)
    return True, "200 terms over Q and Q(i)"


# ---------------------------------------------------------------- 8. unit witnesses

def criterion_8():
    rng = random.Random(SEED + 8)
    I = OpSum.identity(QQ)
    for i in range(100):
        alpha, f = randgen.random_unit_term(rng)
        w = unit_witness(alpha, f)
        if OpSum.U(w.h, QQ) * w.D * OpSum.term(alpha, f) * OpSum.U(w.g, QQ) != I:
            return _fail("U_h D x U_g != 1", i)
    return True, "100 infinite-support terms"


# ---------------------------------------------------------------- 9. stability maps

def criterion_9():
    rng = random.Random(SEED + 9)
    for i in range(200):
        ring = rng.choice([QQ, F7])
        a, b = randgen.random_opsum(rng, ring, 1), randgen.random_opsum(rng, ring, 1)
        if not blocks_equal(m2_iso(a * b), block_mul(m2_iso(a), m2_iso(b))):
            return _fail("M_2 blocks not multiplicative", i)
        if m2_reconstruct(m2_iso(a)) != a:
            return _fail("M_2 reconstruction", i)
    B = lambda ring: OpSum.U(beta_map(), ring)  # noqa: E731
    for i in range(50):
        ring = rng.choice([QQ, F7])
        x = randgen.random_opsum(rng, ring, 2, profiles=False)
        y = B(ring) * jmath_op(x) * B(ring).adjoint()
        # the corner [[x, 0], [0, 0]] puts x(i, j) at (2i, 2j)
        want = {(2 * i_, 2 * j_): v for (i_, j_), v in opsum_entries(x, 64).items()}
        if window_of(y, 128) != want:
            return _fail("jmath corner differs on window 128", i)
    return True, "200 pairs, 50 corners on window 128"


# ---------------------------------------------------------------- 10. equality

def _represent(x):
    """The same operator assembled from pieces split over the evens and the odds."""
    out = OpSum.zero(x.ring)
    for a, f in x.terms():
        out = out + OpSum.term(a, f * projection(EVENS)) + OpSum.term(a, f * projection(ODDS))
    return out


def criterion_10():
    rng = random.Random(SEED + 10)
    counts = [0, 0]
    for i in range(1000):
        ring = rng.choice([QQ, F7, QQI])
        x = randgen.random_opsum(rng, ring, 2, profiles=rng.random() < 0.5)
        roll = rng.random()
        if roll < 0.4:
            y = _represent(x)
        elif roll < 0.7:
            y = x + OpSum.E(rng.randint(1, 64), rng.randint(1, 64), randgen.random_scalar(rng, ring, True))
        else:
            y = randgen.random_opsum(rng, ring, 2, profiles=rng.random() < 0.5)
        e = equal(x, y)
        counts[e] += 1
        if e != (x.window(512) == y.window(512)):
            return _fail("equal() and window(512) disagree", i)
    return True, f"1000 pairs, {counts[1]} equal and {counts[0]} different"


CRITERIA = [
    (1, "partial injection laws", criterion_1, 5),
    (2, "band-one decomposition", criterion_2, 30),
    (3, "Cohn relations and matrix units", criterion_3, None),
    (4, "sum ring and Phi", criterion_4, None),
    (5, "crossed product homomorphism", criterion_5, None),
    (6, "ideal lattice", criterion_6, None),
    (7, "polar decomposition", criterion_7, None),
    (8, "unit witnesses", criterion_8, None),
    (9, "M_2 and jmath stability", criterion_9, None),
    (10, "equality vs window(512)", criterion_10, None),
]
TOTAL_BUDGET = 180.0
_elapsed: dict = {}


def run_criterion(num, name, fn, budget):
    t = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t
    _elapsed[num] = dt
    in_time = budget is None or dt < budget
    limit = f" (limit {budget} s)" if budget else ""
    status = "PASS" if ok and in_time else "FAIL"
    line = f"[{status}] criterion {num:>2}: {name}: {detail}; {dt:.1f} s{limit}"
    ACCEPTANCE_LINES.append(line)
    return ok, in_time, line


@pytest.mark.parametrize("num,name,fn,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, name, fn, budget):
    ok, in_time, line = run_criterion(num, name, fn, budget)
    print(line)
    assert ok, line
    assert in_time, line


def test_total_runtime():
    missing = [c[0] for c in CRITERIA if c[0] not in _elapsed]
    if missing:
        pytest.skip(f"criteria {missing} did not run in this session")
    total = sum(_elapsed.values())
    line = f"[{'PASS' if total < TOTAL_BUDGET else 'FAIL'}] total acceptance runtime {total:.1f} s (limit {TOTAL_BUDGET:.0f} s)"
    ACCEPTANCE_LINES.append(line)
    assert total < TOTAL_BUDGET, line


if __name__ == "__main__":
    failed = 0
    for c in CRITERIA:
        ok, in_time, line = run_criterion(*c)
        print(line, flush=True)
        failed += not (ok and in_time)
    total = sum(_elapsed.values())
    print(f"[{'PASS' if total < TOTAL_BUDGET else 'FAIL'}] total {total:.1f} s (limit {TOTAL_BUDGET:.0f} s)")
    sys.exit(1 if failed or total >= TOTAL_BUDGET else 0)
