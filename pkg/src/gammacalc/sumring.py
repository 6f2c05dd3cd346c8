"""The infinite sum ring structure and the stability maps.

With ``f_0(n) = 2n`` and ``f_1(n) = 2n - 1`` we take ``x_i = U_{f_i}`` and
``y_i = U_{f_i}†``, so that ``y_0 x_0 = y_1 x_1 = 1`` and
``x_0 y_0 + x_1 y_1 = 1``.  Then

    r (+) s = x_0 r y_0 + x_1 s y_1,     Phi(A) = sum_k x_1^k x_0 A y_0 y_1^k.

``Phi(A)`` places ``A_ij`` at ``(g_k(i), g_k(j))`` with
``g_k = f_1^k f_0``, i.e. ``g_k(i) = 2^(k+1) i - 2^k + 1``.  It is not a finite
sum of terms, so it lives in :class:`LazyOp`, compared through windows.
"""

from __future__ import annotations

from typing import Callable

from .gami import OpSum, WindowMatrix
from .pinj import DYADIC, NATURALS, SQCUP, PInj, ProgressionSet, f_gen
from .scalars import Ring, RingValue
from .seqspace import SymSeq, act
from .values import Value


class LazyOp:
    """An ``N x N`` matrix known through a column oracle ``j -> {i: Value}``."""

    def __init__(self, ring: Ring, column: Callable[[int], dict], band_bound: int | None = None,
                 label: str | Callable[[], str] = "lazy"):
        self.ring = ring
        self._column = column
        self.band_bound = band_bound
        self._label = label

    @property
    def label(self) -> str:
        # printing a large OpSum is costly, so labels may be deferred
        return self._label() if callable(self._label) else self._label

    @classmethod
    def of(cls, x: OpSum) -> "LazyOp":
        return cls(x.ring, x.column, x.band_stats().N if not x.is_zero() else 0, lambda: str(x))

    def column(self, j: int) -> dict:
        return {i: v for i, v in self._column(j).items() if not v.is_zero()}

    def entry(self, i: int, j: int) -> Value:
        return self.column(j).get(i, Value(self.ring))

    def window(self, n: int) -> WindowMatrix:
        ents = {}
        for j in range(1, n + 1):
            for i, v in self.column(j).items():
                if i <= n:
                    ents[(i, j)] = v
        return WindowMatrix(n, self.ring, ents)

    def __add__(self, other) -> "LazyOp":
        other = as_lazy(other)

        def col(j):
            out = dict(self.column(j))
            for i, v in other.column(j).items():
                out[i] = out[i] + v if i in out else v
            return out
        bb = None if self.band_bound is None or other.band_bound is None else self.band_bound + other.band_bound
        return LazyOp(self.ring, col, bb, lambda: f"({self.label} + {other.label})")

    def __mul__(self, other) -> "LazyOp":
        other = as_lazy(other)

        def col(j):
            out: dict = {}
            for k, w in other.column(j).items():
                for i, v in self.column(k).items():
                    t = v * w
                    out[i] = out[i] + t if i in out else t
            return out
        bb = None if self.band_bound is None or other.band_bound is None else self.band_bound * other.band_bound
        return LazyOp(self.ring, col, bb, lambda: f"{self.label} * {other.label}")

    def spot_check_band(self, n: int) -> bool:
        """Within the first n columns and rows, no column or row exceeds the band bound."""
        if self.band_bound is None:
            return True
        w = self.window(n)
        rows: dict = {}
        cols: dict = {}
        for i, j in w.entries:
            rows[i] = rows.get(i, 0) + 1
            cols[j] = cols.get(j, 0) + 1
        return max([0, *rows.values(), *cols.values()]) <= self.band_bound

    def __str__(self):
        return self.label

    def __repr__(self):
        return f"LazyOp({self.label})"


def as_lazy(x) -> LazyOp:
    return x if isinstance(x, LazyOp) else LazyOp.of(x)


def window_equal(x, y, n: int) -> bool:
    return as_lazy(x).window(n) == as_lazy(y).window(n)


# ---------------------------------------------------------------- sum ring

def x_gen(i: int, ring: Ring) -> OpSum:
    return OpSum.U(f_gen(i), ring)


def y_gen(i: int, ring: Ring) -> OpSum:
    return OpSum.U(f_gen(i).dagger(), ring)


def sum_ring_axioms(ring: Ring) -> dict[str, bool]:
    """The three defining identities, each as an exact OpSum equality."""
    x0, x1, y0, y1 = x_gen(0, ring), x_gen(1, ring), y_gen(0, ring), y_gen(1, ring)
    one = OpSum.identity(ring)
    return {
        "y0*x0 = 1": y0 * x0 == one,
        "y1*x1 = 1": y1 * x1 == one,
        "x0*y0 + x1*y1 = 1": x0 * y0 + x1 * y1 == one,
    }


def oplus(r, s):
    """``x_0 r y_0 + x_1 s y_1``; an OpSum when both inputs are, otherwise lazy."""
    if isinstance(r, OpSum) and isinstance(s, OpSum):
        ring = r.ring
        return x_gen(0, ring) * r * y_gen(0, ring) + x_gen(1, ring) * s * y_gen(1, ring)
    r, s = as_lazy(r), as_lazy(s)

    def col(j):
        if j % 2 == 0:
            return {2 * i: v for i, v in r.column(j // 2).items()}
        return {2 * i - 1: v for i, v in s.column((j + 1) // 2).items()}
    bb = None if r.band_bound is None or s.band_bound is None else max(r.band_bound, s.band_bound)
    return LazyOp(r.ring, col, bb, lambda: f"oplus({r.label}, {s.label})")


def g_index(k: int, i: int) -> int:
    """``g_k(i) = 2^(k+1) i - 2^k + 1``, the position of ``i`` in the k-th copy."""
    return (i << (k + 1)) - (1 << k) + 1


def g_decode(n: int):
    """``(k, i)`` with ``g_k(i) = n``, or None for ``n = 1``."""
    if n < 2:
        return None
    m = n - 1
    k = (m & -m).bit_length() - 1
    return k, ((m >> k) + 1) // 2


def g_map(k: int) -> PInj:
    """``g_k = f_1^k f_0`` as a partial injection."""
    g = f_gen(0)
    for _ in range(k):
        g = f_gen(1) * g
    return g


def phi_index_check(depth: int) -> bool:
    """The images of g_0..g_{depth-1} are disjoint, and with the tail and {1} they cover N."""
    images = [g_map(k).range() for k in range(depth)]
    for a in range(depth):
        if images[a] != ProgressionSet.progression((1 << a) + 1, 1 << (a + 1)):
            return False
        for b in range(a):
            if not (images[a] & images[b]).is_empty():
                return False
    tail = ProgressionSet.progression((1 << depth) + 1, 1 << depth)
    union = ProgressionSet.finite([1]) | tail
    for im in images:
        if not (union & im).is_empty():
            return False
        union = union | im
    return union == NATURALS


def phi(A: OpSum) -> LazyOp:
    """``Phi(A) = sum_k x_1^k x_0 A y_0 y_1^k``."""
    def col(j):
        dec = g_decode(j)
        if dec is None:
            return {}
        k, jj = dec
        return {g_index(k, i): v for i, v in A.column(jj).items()}
    bb = A.band_stats().N if not A.is_zero() else 0
    return LazyOp(A.ring, col, bb, lambda: f"Phi({A})")


def phi_truncated(A: OpSum, depth: int) -> OpSum:
    """The finite partial sum ``sum_{k < depth} x_1^k x_0 A y_0 y_1^k``."""
    out = OpSum.zero(A.ring)
    for k in range(depth):
        g = OpSum.U(g_map(k), A.ring)
        out = out + g * A * g.adjoint()
    return out


def preserves_minf(x: OpSum, indices=range(1, 6)) -> bool:
    """``x E_ij`` and ``E_ij x`` stay finite for the given matrix units."""
    one = x.ring.one()
    for i in indices:
        for j in indices:
            e = OpSum.E(i, j, one)
            if not ((x * e).is_finite() and (e * x).is_finite()):
                return False
    return True


# ---------------------------------------------------------------- M_2 stability

def copy_map(i: int) -> PInj:
    """Inclusion of the i-th copy of N into N = copy 1 (evens) + copy 2 (odds)."""
    return SQCUP.inclusion(i)


def m2_iso(a: OpSum) -> list[list[OpSum]]:
    """Blocks ``U_{q_i}† a U_{q_j}`` of an operator on two copies of N."""
    U = [OpSum.U(copy_map(i), a.ring) for i in (1, 2)]
    return [[U[i].adjoint() * a * U[j] for j in range(2)] for i in range(2)]


def m2_reconstruct(blocks: list[list[OpSum]]) -> OpSum:
    """Inverse of :func:`m2_iso`: ``sum U_{q_i} b_ij U_{q_j}†``."""
    ring = blocks[0][0].ring
    U = [OpSum.U(copy_map(i), ring) for i in (1, 2)]
    out = OpSum.zero(ring)
    for i in range(2):
        for j in range(2):
            out = out + U[i] * blocks[i][j] * U[j].adjoint()
    return out


def block_mul(a: list[list[OpSum]], b: list[list[OpSum]]) -> list[list[OpSum]]:
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]


def blocks_equal(a, b) -> bool:
    return all(a[i][j] == b[i][j] for i in range(2) for j in range(2))


def jmath(alpha: SymSeq, f: PInj) -> OpSum:
    """``alpha # U_f`` placed on the row ``n = 1`` of N x N (dyadic pairing)."""
    row = DYADIC.row(1)
    return OpSum.term(act(row, alpha), row * f * row.dagger())


def jmath_op(x: OpSum) -> OpSum:
    """:func:`jmath` extended additively: conjugation by the first row inclusion."""
    U = OpSum.U(DYADIC.row(1), x.ring)
    return U * x * U.adjoint()


def beta_map() -> PInj:
    """The involution swapping ``2n - 1`` and ``2n``; it carries the odds onto the evens."""
    return PInj.make([(1, 2, 1, 1), (2, 2, 1, -1)])


def corner(x: OpSum) -> list[list[OpSum]]:
    z = OpSum.zero(x.ring)
    return [[x, z], [z, z]]


def jmath_corner_check(x: OpSum) -> bool:
    """After conjugating by U_beta, jmath(x) has blocks [[x, 0], [0, 0]]."""
    b = OpSum.U(beta_map(), x.ring)
    return blocks_equal(m2_iso(b * jmath_op(x) * b.adjoint()), corner(x))


# ---------------------------------------------------------------- sequences of sequences

def mu_iso(outer, ring: Ring, tail: tuple[int, RingValue] | None = None) -> SymSeq:
    """``mu(alpha)_{(m, n)} = (alpha_n)_m`` under the dyadic pairing.

    ``outer`` is a list of ``(n, inner SymSeq)``.  ``tail = (n0, c)`` makes every
    unlisted ``alpha_n`` with ``n >= n0`` the constant sequence ``c``.
    """
    out = SymSeq.zero(ring)
    listed = set()
    for n, inner in outer:
        listed.add(n)
        out = out + act(DYADIC.row(n), inner)
    if tail is not None:
        n0, c = tail
        step = 1 << (n0 - 1)
        region = ProgressionSet.progression(step, step)
        for n in listed:
            if n >= n0:
                region = region - DYADIC.row(n).range()
        out = out + SymSeq.const(c, region)
    return out


def pair_pullback_window(f: PInj, g: PInj, a: SymSeq, n: int) -> list[Value]:
    """Window of ``(f x g)_* a`` under the dyadic pairing, computed pointwise."""
    zero = Value(a.ring)
    out = []
    for x in range(1, n + 1):
        m2, k2 = DYADIC.decode(x)
        m, k = f.preimage(m2), g.preimage(k2)
        out.append(zero if m is None or k is None else a.at(DYADIC.encode(m, k)))
    return out


__all__ = [
    "LazyOp", "as_lazy", "window_equal", "x_gen", "y_gen", "sum_ring_axioms", "oplus", "g_index",
    "g_decode", "g_map", "phi_index_check", "phi", "phi_truncated", "preserves_minf", "copy_map",
    "m2_iso", "m2_reconstruct", "block_mul", "blocks_equal", "jmath", "jmath_op", "beta_map",
    "corner", "jmath_corner_check", "mu_iso", "pair_pullback_window",
]
