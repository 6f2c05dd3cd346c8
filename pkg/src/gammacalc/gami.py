"""Finite sums of weighted partial isometries ``sum diag(alpha_k) U_{f_k}``.

An :class:`OpSum` is stored column by column.  Past a threshold, the column
``j`` in residue class ``r`` holds the entries

    (p*j + q, j) -> v(j)        for each ((p, q), v) in the class label,

where ``v`` is a :class:`~gammacalc.profiles.TrackValue` in the column index.
Below the threshold each column is listed explicitly.  Because this is the
canonical eventually periodic form of :mod:`gammacalc.periodic`, two sums
describe the same matrix exactly when they compare equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import affine_image, affine_preimage, intersect_progressions, prog_contains
from .periodic import InvalidAt, Kind, Periodic, build, combine_classwise, map_labels
from .pinj import NATURALS, PInj, ProgressionSet, identity as pinj_identity
from .profiles import TrackValue
from .scalars import NoModulus, Ring, RingValue, VariantMismatch
from .seqspace import IdealTag, SymSeq, act, modulus_and_phase, track_member
from .values import Value


class FiniteSupport(ValueError):
    """The coefficient sequence has finite support."""


class NoUnitWitness(ValueError):
    """No residue class carries a constant invertible coefficient."""


class NotATerm(ValueError):
    """The operator has more than one nonzero entry in some row or column."""


# ---------------------------------------------------------------- column kind

def _merge_cols(cols) -> tuple:
    acc: dict = {}
    for col in cols:
        for i, v in col:
            acc[i] = acc[i] + v if i in acc else v
    return tuple(sorted((i, v) for i, v in acc.items() if not v.is_zero()))


def _merge_labels(labels) -> tuple:
    acc: dict = {}
    for lab in labels:
        for m, tv in lab:
            acc[m] = acc[m] + tv if m in acc else tv
    return tuple(sorted((m, tv) for m, tv in acc.items() if not tv.is_zero()))


class _OpKind(Kind):
    empty_label = ()
    empty_point = ()

    def __init__(self, ring: Ring):
        self.ring = ring

    def combine(self, labels):
        return _merge_labels(labels)

    def combine_points(self, points):
        return _merge_cols(points)

    def evaluate(self, label, j):
        acc: dict = {}
        for (p, q), tv in label:
            i = p * j + q
            if i.denominator != 1 or i < 1:
                raise InvalidAt(j)
            i = int(i)
            v = tv.evaluate(j, self.ring)
            acc[i] = acc[i] + v if i in acc else v
        # two row maps may meet at this column
        return tuple(sorted((i, v) for i, v in acc.items() if not v.is_zero()))

    def validate(self, label, start, step):
        for (p, q), tv in label:
            if p <= 0:
                raise ValueError("row maps must increase")
            i = p * start + q
            if i.denominator != 1 or (p * step).denominator != 1 or i < 1:
                raise ValueError("row map is not integral on its progression")
            if not tv.defined_at(start):
                raise ValueError(f"coefficient undefined at column {start}")


@lru_cache(maxsize=None)
def op_kind(ring: Ring) -> _OpKind:
    return _OpKind(ring)


@dataclass(frozen=True)
class BandStats:
    r: int
    c: int

    @property
    def N(self) -> int:
        return max(self.r, self.c)


# ---------------------------------------------------------------- windows

class WindowMatrix:
    """An exact sparse ``n x n`` matrix with :class:`Value` entries."""

    __slots__ = ("n", "ring", "entries")

    def __init__(self, n: int, ring: Ring, entries: dict | None = None):
        self.n = n
        self.ring = ring
        self.entries = {k: v for k, v in (entries or {}).items() if not v.is_zero()}

    def get(self, i: int, j: int) -> Value:
        return self.entries.get((i, j), Value(self.ring))

    def __add__(self, other: "WindowMatrix") -> "WindowMatrix":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return WindowMatrix(self.n, self.ring, out)

    def __neg__(self):
        return WindowMatrix(self.n, self.ring, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "WindowMatrix") -> "WindowMatrix":
        rows: dict = {}
        for (j, k), v in other.entries.items():
            rows.setdefault(j, []).append((k, v))
        out: dict = {}
        for (i, j), u in self.entries.items():
            for k, v in rows.get(j, ()):
                w = u * v
                out[(i, k)] = out[(i, k)] + w if (i, k) in out else w
        return WindowMatrix(min(self.n, other.n), self.ring, out)

    def __eq__(self, other):
        return isinstance(other, WindowMatrix) and self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((self.n, frozenset(self.entries.items())))

    def to_json(self) -> str:
        ents = [[i, j, str(v)] for (i, j), v in sorted(self.entries.items())]
        return json.dumps({"n": self.n, "ring": self.ring.name, "entries": ents})

    def __repr__(self):
        return f"WindowMatrix(n={self.n}, nnz={len(self.entries)})"


# ---------------------------------------------------------------- operators

class OpSum:
    """An element of the algebra spanned by ``diag(alpha) U_f``."""

    __slots__ = ("ring", "_p")

    def __init__(self, ring: Ring, periodic: Periodic):
        self.ring = ring
        self._p = periodic

    # ---------------------------------------------------------------- constructors
    @classmethod
    def _build(cls, ring, pieces, points) -> "OpSum":
        kind = op_kind(ring)
        pieces = [(s, m, lab) for s, m, lab in pieces if lab]
        points = [(j, _merge_cols([col])) for j, col in points]
        return cls(ring, build(kind, pieces, points))

    @classmethod
    def zero(cls, ring: Ring) -> "OpSum":
        return cls._build(ring, (), ())

    @classmethod
    def term(cls, alpha: SymSeq, f: PInj) -> "OpSum":
        """``diag(alpha) U_f``: the entry at ``(f(j), j)`` is ``alpha(f(j))``."""
        ring = alpha.ring
        pieces, points = [], []
        a_classes = list(alpha.classes())
        for s, m, p, q in f.pieces():
            for s2, m2, tv in a_classes:
                pre = affine_preimage((s, m), p, q, (s2, m2))
                if pre is not None:
                    pieces.append((pre[0], pre[1], (((p, q), tv.substitute(p, q)),)))
            for i, v in alpha.points():
                j = (i - q) / p
                if j.denominator == 1 and prog_contains((s, m), int(j)):
                    points.append((int(j), ((i, v),)))
        for j, i in f.points():
            v = alpha.at(i)
            if not v.is_zero():
                points.append((j, ((i, v),)))
        return cls._build(ring, pieces, points)

    @classmethod
    def diag(cls, alpha: SymSeq) -> "OpSum":
        return cls.term(alpha, pinj_identity())

    @classmethod
    def U(cls, f: PInj, ring: Ring) -> "OpSum":
        return cls.term(SymSeq.chi(NATURALS, ring), f)

    @classmethod
    def identity(cls, ring: Ring) -> "OpSum":
        return cls.U(pinj_identity(), ring)

    @classmethod
    def scalar(cls, a: RingValue) -> "OpSum":
        return cls.diag(SymSeq.const(a))

    @classmethod
    def E(cls, i: int, j: int, a: RingValue) -> "OpSum":
        """``a * E_ij``."""
        return cls._build(a.ring, (), [(j, ((i, Value.of(a)),))])

    @classmethod
    def from_entries(cls, ring: Ring, entries) -> "OpSum":
        """Finite matrix from ``(i, j, value)`` triples."""
        pts = []
        for i, j, v in entries:
            v = v if isinstance(v, Value) else Value.of(v)
            pts.append((j, ((i, v),)))
        return cls._build(ring, (), pts)

    # ---------------------------------------------------------------- access
    @property
    def periodic(self) -> Periodic:
        return self._p

    def column(self, j: int) -> dict[int, Value]:
        return dict(self._p.at(j))

    def entry(self, i: int, j: int) -> Value:
        return self.column(j).get(i, Value(self.ring))

    def window(self, n: int) -> WindowMatrix:
        ents = {}
        for j in range(1, n + 1):
            for i, v in self._p.at(j):
                if i <= n:
                    ents[(i, j)] = v
        return WindowMatrix(n, self.ring, ents)

    def classes(self):
        """Yield ``(s, M, ((p, q), TrackValue), ...)`` for the periodic part."""
        return self._p.pieces()

    def finite_columns(self):
        return self._p.points()

    def is_zero(self) -> bool:
        return not self._p.finite and not self._p.has_periodic_part()

    def is_finite(self) -> bool:
        """Finitely many nonzero entries (an element of M_inf)."""
        return not self._p.has_periodic_part()

    # ---------------------------------------------------------------- algebra
    def _same(self, other):
        if not isinstance(other, OpSum):
            raise TypeError(f"expected an operator, got {type(other).__name__}")
        if other.ring != self.ring:
            raise VariantMismatch(f"{self.ring.name} vs {other.ring.name}")

    def __add__(self, other: "OpSum") -> "OpSum":
        self._same(other)
        kind = op_kind(self.ring)
        return OpSum(self.ring, combine_classwise(self._p, other._p, lambda a, b: _merge_labels([a, b]),
                                                 lambda a, b: _merge_cols([a, b]), kind))

    def __neg__(self) -> "OpSum":
        kind = op_kind(self.ring)
        return OpSum(self.ring, map_labels(self._p, lambda lab: tuple((m, -tv) for m, tv in lab),
                                           lambda col: tuple((i, -v) for i, v in col), kind))

    def __sub__(self, other):
        return self + (-other)

    def lmul(self, a: RingValue) -> "OpSum":
        kind = op_kind(self.ring)
        return OpSum(self.ring, map_labels(self._p, lambda lab: _merge_labels([tuple((m, tv.lmul(a)) for m, tv in lab)]),
                                           lambda col: _merge_cols([tuple((i, v.lmul(a)) for i, v in col)]), kind))

    def rmul(self, a: RingValue) -> "OpSum":
        kind = op_kind(self.ring)
        return OpSum(self.ring, map_labels(self._p, lambda lab: _merge_labels([tuple((m, tv.rmul(a)) for m, tv in lab)]),
                                           lambda col: _merge_cols([tuple((i, v.rmul(a)) for i, v in col)]), kind))

    def __mul__(self, other: "OpSum") -> "OpSum":
        self._same(other)
        X, Y = self, other
        ring = self.ring
        pieces, points = [], []
        x_classes = list(X.classes())
        x_finite = X._p.finite
        for s, M, labY in Y.classes():
            for (p2, q2), v in labY:
                img = affine_image((s, M), p2, q2)
                for s1, M1, labX in x_classes:
                    hit = intersect_progressions(img, (s1, M1))
                    if hit is None:
                        continue
                    a, L = hit
                    k0, step = (a - q2) / p2, L / p2
                    lab = _merge_labels([tuple(((p1 * p2, p1 * q2 + q1), w.substitute(p2, q2) * v)
                                               for (p1, q1), w in labX)])
                    pieces.append((int(k0), int(step), lab))
                for j, col in x_finite.items():
                    if prog_contains(img, j):
                        k = int((j - q2) / p2)
                        vk = v.evaluate(k, ring)
                        points.append((k, tuple((i, xv * vk) for i, xv in col)))
        for k, colY in Y._p.finite.items():
            acc = []
            for j, yv in colY:
                acc.append(tuple((i, xv * yv) for i, xv in X._p.at(j)))
            points.append((k, _merge_cols(acc)))
        return OpSum._build(ring, pieces, points)

    def adjoint(self) -> "OpSum":
        pieces, points = [], []
        for s, M, lab in self.classes():
            for (p, q), v in lab:
                a, d = affine_image((s, M), p, q)
                pieces.append((a, d, (((1 / p, -q / p), v.conjugate().substitute(1 / p, -q / p)),)))
        for j, col in self._p.finite.items():
            for i, v in col:
                points.append((i, ((j, v.conjugate()),)))
        return OpSum._build(self.ring, pieces, points)

    def __eq__(self, other):
        return isinstance(other, OpSum) and self.ring == other.ring and self._p == other._p

    def __hash__(self):
        return hash(("op", self._p))

    # ---------------------------------------------------------------- structure
    def band_stats(self) -> BandStats:
        def colmax(x: OpSum) -> int:
            best = max((len(lab) for _, _, lab in x.classes()), default=0)
            return max([best] + [len(col) for col in x._p.finite.values()])
        return BandStats(r=colmax(self.adjoint()), c=colmax(self))

    def terms(self) -> list[tuple[SymSeq, PInj]]:
        """A decomposition ``sum diag(alpha) U_f`` with ``supp(alpha)`` inside ``ran(f)``."""
        ring = self.ring
        out = []
        for s, M, lab in self.classes():
            for (p, q), v in lab:
                f = PInj.make([(s, M, p, q)], check=False)
                a, d = affine_image((s, M), p, q)
                out.append((SymSeq.make(ring, [(a, d, v.substitute(1 / p, -q / p))]), f))
        slots: list[tuple[set, set, dict, list]] = []
        for j, col in self.finite_columns():
            for i, v in col:
                for cols, rows, mp, vals in slots:
                    if j not in cols and i not in rows:
                        break
                else:
                    cols, rows, mp, vals = set(), set(), {}, []
                    slots.append((cols, rows, mp, vals))
                cols.add(j)
                rows.add(i)
                mp[j] = i
                vals.append((i, v))
        for _, _, mp, vals in slots:
            out.append((SymSeq.make(ring, (), vals), PInj.from_dict(mp)))
        return out

    def as_term(self) -> tuple[SymSeq, PInj]:
        """``(alpha, f)`` with ``self == diag(alpha) U_f`` when every row and column has one entry."""
        if self.band_stats().N > 1:
            raise NotATerm("band number exceeds one")
        alpha = SymSeq.zero(self.ring)
        pieces, points = [], []
        for a, f in self.terms():
            alpha = alpha + a
            pieces += list(f.pieces())
            points += f.points()
        return alpha, PInj.make(pieces, points)

    def __str__(self):
        ts = self.terms()
        if not ts:
            return "0"
        return " + ".join(f"diag({a}) * U[{f}]" for a, f in ts)

    def __repr__(self):
        return f"OpSum({self})"


# ---------------------------------------------------------------- predicates

def equal(x: OpSum, y: OpSum) -> bool:
    return x == y


def ideal_member(x: OpSum, tag: IdealTag) -> bool:
    """Whether every coefficient of the canonical form lies in the ideal."""
    return all(track_member(tv, tag, x.ring) for _, _, lab in x.classes() for _, tv in lab)


def is_karoubi(x: OpSum) -> bool:
    """Finite band and finitely many distinct entries."""
    return (all(tv.is_const() for _, _, lab in x.classes() for _, tv in lab)
            and all(v.is_ring() for _, col in x.finite_columns() for _, v in col))


# ---------------------------------------------------------------- polar decomposition

@dataclass(frozen=True)
class Polar:
    V: OpSum
    abs: OpSum
    phase: SymSeq
    f: PInj


def polar(alpha: SymSeq, f: PInj) -> Polar:
    """``diag(alpha) U_f = V |T|`` with ``V = diag(phase) U_f``, ``|T| = diag(f†_*|alpha|)``."""
    alpha = alpha.restrict(f.range())
    mp = modulus_and_phase(alpha)
    if mp is None:
        raise NoModulus("a coefficient has no exact modulus")
    phase, mod = mp
    V = OpSum.term(phase, f)
    absT = OpSum.diag(act(f.dagger(), mod))
    return Polar(V, absT, phase, f)


# ---------------------------------------------------------------- unit witness

@dataclass(frozen=True)
class UnitWitness:
    D: OpSum
    g: PInj
    h: PInj


def unit_witness(alpha: SymSeq, f: PInj) -> UnitWitness:
    """``(D, g, h)`` with ``U_h D diag(alpha) U_f U_g = 1``."""
    x = OpSum.term(alpha, f)
    if x.is_finite():
        raise FiniteSupport("the coefficient has finite support")
    ring = x.ring
    for s, M, lab in x.classes():
        (p, q), tv = lab[0]
        c = tv.const_value()
        if not tv.is_const() or c is None:
            continue
        try:
            cinv = c.inverse()
        except ZeroDivisionError:
            continue
        a, d = affine_image((s, M), p, q)
        D = OpSum.diag(SymSeq.const(cinv, ProgressionSet.progression(a, d)))
        g = PInj.make([(1, 1, M, s - M)])
        h = PInj.make([(a, d, Fraction(1, d), 1 - Fraction(a, d))])
        return UnitWitness(D, g, h)
    raise NoUnitWitness("no residue class carries a constant invertible coefficient")


def lift_window(w: WindowMatrix) -> tuple[SymSeq, PInj]:
    """Read off ``(alpha, f)`` from a window with at most one entry per row and column."""
    rows, cols = set(), set()
    mp, vals = {}, []
    for (i, j), v in sorted(w.entries.items()):
        if i in rows or j in cols:
            raise NotATerm("band number exceeds one")
        rows.add(i)
        cols.add(j)
        mp[j] = i
        vals.append((i, v))
    return SymSeq.make(w.ring, (), vals), PInj.from_dict(mp)
