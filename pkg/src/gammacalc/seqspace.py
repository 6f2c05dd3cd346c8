"""Symbolic bounded sequences, the action of partial injections, ideal membership.

A :class:`SymSeq` is eventually periodic in the sense of
:mod:`gammacalc.periodic`: past a threshold, the value at ``n`` is given by a
:class:`~gammacalc.profiles.TrackValue` depending on ``n mod M``; below it the
values are listed.  Equality is equality of canonical forms.

Membership in the symmetric ideals

    c_f  <  l^{p-}  <  l^p  <  l^{p+}  <  c_0  <  l^inf

is decided from the decay data of each residue class.  Nonzero ring
amplitudes count as norm one.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .arith import RADICAL_ONE, Radical, affine_image, frac_str, intersect_progressions, prog_contains
from .periodic import InvalidAt, Kind, Periodic, build, combine_classwise, map_labels
from .pinj import NATURALS, PInj, ProgressionSet, _split_top, parse_set
from .profiles import PROFILE_ONE, TRACK_ZERO, Profile, TrackValue
from .scalars import NoModulus, Ring, RingValue
from .values import MONO_ONE, Monomial, Value, parse_value


class MembershipUndecided(ArithmeticError):
    """Leading terms cancel and the remainder bound is not fine enough."""


class _SeqKind(Kind):
    empty_label = TRACK_ZERO

    def __init__(self, ring: Ring):
        self.ring = ring
        self.empty_point = Value(ring)

    def combine(self, labels):
        out = labels[0]
        for x in labels[1:]:
            out = out + x
        return out

    def combine_points(self, points):
        out = points[0]
        for x in points[1:]:
            out = out + x
        return out

    def evaluate(self, label, n):
        if label.is_zero():
            return self.empty_point
        return label.evaluate(n, self.ring)

    def validate(self, label, start, step):
        if not label.defined_at(start):
            raise ValueError(f"profile undefined at {start}")


@lru_cache(maxsize=None)
def seq_kind(ring: Ring) -> _SeqKind:
    return _SeqKind(ring)


def _check_profile_ring(ring: Ring, tv: TrackValue):
    if not ring.has_rationals and not tv.is_const():
        raise ValueError(f"decaying profiles need rational scalars; ring {ring.name} has none")


class SymSeq:
    """A symbolic element of l^inf over a coefficient ring."""

    __slots__ = ("ring", "_p")

    def __init__(self, ring: Ring, periodic: Periodic):
        self.ring = ring
        self._p = periodic

    # ---------------------------------------------------------------- constructors
    @classmethod
    def make(cls, ring: Ring, pieces=(), points=()) -> "SymSeq":
        """From pieces ``(s, m, TrackValue)`` and points ``(n, Value | RingValue)``."""
        pieces = list(pieces)
        for _, _, tv in pieces:
            _check_profile_ring(ring, tv)
        pts = [(n, v if isinstance(v, Value) else Value.of(v)) for n, v in points]
        return cls(ring, build(seq_kind(ring), pieces, pts))

    @classmethod
    def zero(cls, ring: Ring) -> "SymSeq":
        return cls.make(ring)

    @classmethod
    def const(cls, a: RingValue, support: ProgressionSet = NATURALS) -> "SymSeq":
        tv = TrackValue.const(a)
        return cls.make(a.ring, [(s, m, tv) for s, m in support.progressions],
                        [(n, a) for n in support.finite_part])

    @classmethod
    def chi(cls, support: ProgressionSet, ring: Ring) -> "SymSeq":
        return cls.const(ring.one(), support)

    @classmethod
    def basis(cls, n: int, a: RingValue) -> "SymSeq":
        """``a * e_n``."""
        return cls.make(a.ring, (), [(n, a)])

    @classmethod
    def from_list(cls, values, start: int = 1) -> "SymSeq":
        values = list(values)
        if not values:
            raise ValueError("empty list needs a ring")
        return cls.make(values[0].ring, (), [(start + i, v) for i, v in enumerate(values)])

    @classmethod
    def profile_seq(cls, a: RingValue, profile: Profile, q: Fraction = Fraction(1),
                    support: ProgressionSet = NATURALS) -> "SymSeq":
        tv = TrackValue.single(a, profile, q)
        return cls.make(a.ring, [(s, m, tv) for s, m in support.progressions],
                        [(n, tv.evaluate(n, a.ring)) for n in support.finite_part])

    @classmethod
    def power(cls, c: RingValue, e, shift=0, support: ProgressionSet = NATURALS) -> "SymSeq":
        """``c * (n + shift)**(-e)``."""
        q, prof = Profile.make(1, [(shift, e)])
        return cls.profile_seq(c, prof, q, support)

    @classmethod
    def geometric(cls, c: RingValue, r, support: ProgressionSet = NATURALS) -> "SymSeq":
        """``c * r**(n-1)``."""
        r = Fraction(r)
        if not 0 < r <= 1:
            raise ValueError("ratio must lie in (0, 1]")
        q, prof = Profile.make(r)
        return cls.profile_seq(c, prof, q / r, support)

    @classmethod
    def logpower(cls, c: RingValue, e, g, support: ProgressionSet = NATURALS) -> "SymSeq":
        """``c * n**(-e) * log(n+1)**(-g)``."""
        q, prof = Profile.make(1, [(0, e)], [(1, 1, g)])
        return cls.profile_seq(c, prof, q, support)

    @classmethod
    def track(cls, a: RingValue, s: int, m: int, rho=1, powers=(), logs=()) -> "SymSeq":
        """Value at ``n = s + m*k``: ``a * rho**k * prod (b*k+a0)**(-e) * prod log(d*k+c)**(-g)``.

        ``powers`` holds ``(a0, b, e)`` and ``logs`` holds ``(c, d, g)``.
        """
        s, m = int(s), int(m)
        rho = Fraction(rho)
        if not 0 < rho <= 1:
            raise ValueError("rho must lie in (0, 1]")
        base = Radical.of(rho) ** Fraction(1, m)
        const = Radical.of(rho) ** Fraction(-s, m)
        pw = []
        for a0, b, e in powers:
            a0, b, e = Fraction(a0), Fraction(b), Fraction(e)
            if b <= 0:
                raise ValueError("power slopes must be positive")
            const = const * Radical.of(b / m) ** (-e)
            pw.append((a0 * m / b - s, e))
        lg = []
        for c, d, g in logs:
            c, d = Fraction(c), Fraction(d)
            if d <= 0:
                raise ValueError("log slopes must be positive")
            lg.append((d / m, c - d * s / m, g))
        q, prof = Profile(base, const, pw, lg).normalized()
        tv = TrackValue.single(a, prof, q)
        return cls.make(a.ring, [(s, m, tv)])

    # ---------------------------------------------------------------- access
    @property
    def periodic(self) -> Periodic:
        return self._p

    def at(self, n: int) -> Value:
        return self._p.at(n)

    def __getitem__(self, n: int) -> Value:
        return self.at(n)

    def window(self, upto: int) -> list[Value]:
        return [self.at(n) for n in range(1, upto + 1)]

    def classes(self):
        """Yield ``(start, step, TrackValue)`` for the periodic part."""
        return self._p.pieces()

    def points(self) -> list[tuple[int, Value]]:
        return self._p.points()

    def is_zero(self) -> bool:
        return not self._p.finite and not self._p.has_periodic_part()

    def is_finite(self) -> bool:
        return not self._p.has_periodic_part()

    def carrier(self) -> ProgressionSet:
        """Support, up to isolated zeros of non-constant class rules."""
        return ProgressionSet.make([(s, m) for s, m, _ in self.classes()], self._p.finite)

    def is_finite_image(self) -> bool:
        """Finitely many distinct values (every class rule constant)."""
        return all(tv.is_const() for _, _, tv in self.classes())

    # ---------------------------------------------------------------- algebra
    def _same(self, other: "SymSeq"):
        if not isinstance(other, SymSeq):
            raise TypeError(f"expected a sequence, got {type(other).__name__}")
        if other.ring != self.ring:
            from .scalars import VariantMismatch
            raise VariantMismatch(f"{self.ring.name} vs {other.ring.name}")

    def __add__(self, other: "SymSeq") -> "SymSeq":
        self._same(other)
        return SymSeq(self.ring, combine_classwise(self._p, other._p, TrackValue.__add__,
                                                   Value.__add__, seq_kind(self.ring)))

    def __neg__(self) -> "SymSeq":
        return SymSeq(self.ring, map_labels(self._p, TrackValue.__neg__, Value.__neg__,
                                            seq_kind(self.ring)))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "SymSeq") -> "SymSeq":
        self._same(other)
        return SymSeq(self.ring, combine_classwise(self._p, other._p, TrackValue.__mul__,
                                                   Value.__mul__, seq_kind(self.ring)))

    def lmul(self, a: RingValue) -> "SymSeq":
        return SymSeq(self.ring, map_labels(self._p, lambda t: t.lmul(a), lambda v: v.lmul(a),
                                            seq_kind(self.ring)))

    def rmul(self, a: RingValue) -> "SymSeq":
        return SymSeq(self.ring, map_labels(self._p, lambda t: t.rmul(a), lambda v: v.rmul(a),
                                            seq_kind(self.ring)))

    def conjugate(self) -> "SymSeq":
        return SymSeq(self.ring, map_labels(self._p, TrackValue.conjugate, Value.conjugate,
                                            seq_kind(self.ring)))

    def restrict(self, a: ProgressionSet) -> "SymSeq":
        """Pointwise product with the characteristic function of A."""
        return self * SymSeq.chi(a, self.ring)

    def __eq__(self, other):
        return isinstance(other, SymSeq) and self.ring == other.ring and self._p == other._p

    def __hash__(self):
        return hash(("seq", self._p))

    def __str__(self):
        return format_symseq(self)

    def __repr__(self):
        return f"SymSeq({self})"


# ---------------------------------------------------------------- action

def act(f: PInj, a: SymSeq) -> SymSeq:
    """``f_* a``: the value at ``f(n)`` is ``a(n)``; zero off the range of f."""
    ring = a.ring
    pieces, points = [], []
    a_classes = list(a.classes())
    for s, m, p, q in f.pieces():
        for s2, m2, tv in a_classes:
            hit = intersect_progressions((s, m), (s2, m2))
            if hit is None:
                continue
            x, L = hit
            img = affine_image((x, L), p, q)
            pieces.append((img[0], img[1], tv.substitute(1 / p, -q / p)))
        for n, v in a.points():
            if prog_contains((s, m), n):
                points.append((int(p * n + q), v))
    for n, fn in f.points():
        v = a.at(n)
        if not v.is_zero():
            points.append((fn, v))
    return SymSeq(ring, build(seq_kind(ring), pieces, points))


# ---------------------------------------------------------------- ideals

class IdealTag:
    """One of c_f, c_0, l^p, l^{p+}, l^{p-} (p may be infinite), l^inf."""

    KINDS = ("cf", "lp-", "lp", "lp+", "c0", "linf")
    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p=None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown ideal {kind!r}")
        if kind in ("lp", "lp+", "lp-"):
            if p is None:
                raise ValueError(f"{kind} needs an exponent")
            if p != "inf":
                p = Fraction(p)
                if p <= 0:
                    raise ValueError("exponent must be positive")
            elif kind != "lp-":
                raise ValueError("only lp- accepts an infinite exponent")
        else:
            p = None
        self.kind = kind
        self.p = p

    @classmethod
    def parse(cls, text: str) -> "IdealTag":
        text = text.strip()
        if ":" in text:
            kind, p = text.split(":", 1)
            return cls(kind, "inf" if p in ("inf", "oo") else Fraction(p))
        return cls(text)

    def contains_decay(self, G: Radical, E: Fraction, Gt: Fraction) -> bool:
        """Whether ``G**n n**(-E) log(n)**(-Gt)`` (G <= 1) lies in the ideal."""
        k = self.kind
        if k == "linf":
            return True
        if k == "cf":
            return False
        if G.compare_one() < 0:
            return True
        if k == "c0":
            return E > 0 or Gt > 0
        p = self.p
        if k == "lp-" and p == "inf":
            return E > 0
        inv = 1 / p
        if k == "lp":
            return E > inv or (E == inv and Gt * p > 1)
        if k == "lp+":
            return E >= inv
        return E > inv  # lp-

    def __eq__(self, other):
        return isinstance(other, IdealTag) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __str__(self):
        if self.p is None:
            return self.kind
        return f"{self.kind}:{self.p if self.p == 'inf' else frac_str(self.p)}"

    def __repr__(self):
        return f"IdealTag({self})"


CF, C0, LINF = IdealTag("cf"), IdealTag("c0"), IdealTag("linf")


def lp(p) -> IdealTag:
    return IdealTag("lp", p)


def lp_plus(p) -> IdealTag:
    return IdealTag("lp+", p)


def lp_minus(p) -> IdealTag:
    return IdealTag("lp-", p)


def _dominance_key(decay):
    G, E, Gt = decay
    # larger base first, then slower power decay, then slower log decay
    return (_RadKey(G), -E, -Gt)


class _RadKey:
    __slots__ = ("r",)

    def __init__(self, r: Radical):
        self.r = r

    def __lt__(self, other):
        return self.r.compare(other.r) > 0

    def __eq__(self, other):
        return self.r == other.r


def track_member(tv: TrackValue, tag: IdealTag, ring: Ring) -> bool:
    """Membership of one nonzero class rule (an infinite, eventually nonzero sequence)."""
    if tag.kind == "linf":
        return True
    if tag.kind == "cf":
        return tv.is_zero()
    groups: dict = {}
    for prof, amp in tv.terms.items():
        groups.setdefault(prof.decay(), []).append((prof, amp))
    for decay in sorted(groups, key=_dominance_key):
        lead = Value(ring)
        for prof, amp in groups[decay]:
            lead = lead + Value(ring, {Monomial(prof.const): amp})
        if not lead.is_zero():
            return tag.contains_decay(*decay)
        G, E, Gt = decay
        profs = [p for p, _ in groups[decay]]
        if all(d == 1 for p in profs for d, _, _ in p.logs):
            bound = (G, E + 1, Gt)
        else:
            bound = (G, E, Gt + 1)
        if not tag.contains_decay(*bound):
            raise MembershipUndecided(f"leading terms of {tv} cancel")
    return True


def member(a: SymSeq, tag: IdealTag) -> bool:
    """Whether ``a`` lies in the ideal named by ``tag``."""
    return all(track_member(tv, tag, a.ring) for _, _, tv in a.classes())


# ---------------------------------------------------------------- modulus and phase

def _unit_split(amps: list[RingValue]):
    """Common unit and moduli of amplitudes, or None when they disagree."""
    unit, mods = None, []
    for a in amps:
        um = a.modulus_unit()
        if um is None:
            return None
        u, r = um
        if unit is None:
            unit = u
        elif u != unit:
            return None
        mods.append(r)
    return unit, mods


def modulus_and_phase(a: SymSeq):
    """``(phase, modulus)`` with ``phase * modulus == a`` exactly, or None.

    Each class rule and each listed value must have amplitudes that share a
    single unit and have rational moduli; otherwise the result is None.
    """
    ring = a.ring
    try:
        ph_pieces, mod_pieces = [], []
        for s, m, tv in a.classes():
            items = tv.sorted_terms()
            split = _unit_split([amp for _, amp in items])
            if split is None:
                return None
            unit, mods = split
            ph_pieces.append((s, m, TrackValue.const(unit)))
            mod_pieces.append((s, m, TrackValue({p: r for (p, _), r in zip(items, mods)})))
        ph_points, mod_points = [], []
        for n, v in a.points():
            items = list(v.terms.items())
            split = _unit_split([amp for _, amp in items])
            if split is None:
                return None
            unit, mods = split
            ph_points.append((n, Value.of(unit)))
            mod_points.append((n, Value(ring, {mono: r for (mono, _), r in zip(items, mods)})))
    except NoModulus:
        return None
    return SymSeq.make(ring, ph_pieces, ph_points), SymSeq.make(ring, mod_pieces, mod_points)


# ---------------------------------------------------------------- text form

def format_symseq(a: SymSeq) -> str:
    """Canonical text: ``at(n; value)`` and ``on(prog(s,m); track)`` joined by `` + ``."""
    parts = [f"at({n}; {v})" for n, v in a.points()]
    parts += [f"on(prog({s},{m}); {tv})" for s, m, tv in a.classes()]
    return " + ".join(parts) if parts else "0"


def _split_depth(text: str, sep: str) -> list[str]:
    out, depth, i, start = [], 0, 0, 0
    while i < len(text):
        ch = text[i]
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif depth == 0 and text.startswith(sep, i):
            out.append(text[start:i])
            i += len(sep)
            start = i
            continue
        i += 1
    out.append(text[start:])
    return [p.strip() for p in out if p.strip()]


def parse_radical(text: str) -> Radical:
    exps = {}
    for part in _split_depth(text, "*"):
        if part == "1":
            continue
        m = re.fullmatch(r"(\d+)\^\(([-+\d/]+)\)", part)
        if not m and re.fullmatch(r"\d+(/\d+)?", part):
            return Radical.of(Fraction(part))
        if not m:
            raise ValueError(f"bad radical factor {part!r}")
        exps[int(m.group(1))] = Fraction(m.group(2))
    return Radical(exps)


def parse_profile(text: str) -> Profile:
    G = const = RADICAL_ONE
    powers, logs = [], []
    for part in _split_depth(text, "*"):
        if part == "1":
            continue
        head, _, body = part.partition("(")
        body = body[:-1]
        if head == "rad":
            const = parse_radical(body)
        elif head == "geom":
            G = parse_radical(body)
        elif head == "pow":
            a, e = body.split(";")
            powers.append((Fraction(a), Fraction(e)))
        elif head == "log":
            d, c, g = body.split(";")
            logs.append((Fraction(d), Fraction(c), Fraction(g)))
        else:
            raise ValueError(f"bad profile factor {part!r}")
    return Profile(G, const, powers, logs)


def parse_track(text: str, ring: Ring) -> TrackValue:
    out = TRACK_ZERO
    if text.strip() == "0":
        return out
    for term in _split_depth(text, " + "):
        depth = 0
        for i, ch in enumerate(term):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0:
                break
        amp = ring.parse(term[1:i])
        rest = term[i + 1:]
        prof = parse_profile(rest[1:]) if rest.startswith("*") else PROFILE_ONE
        q, prof = prof.normalized()
        out = out + TrackValue.single(amp, prof, q)
    return out


def parse_symseq(text: str, ring: Ring) -> SymSeq:
    """Inverse of :func:`format_symseq`."""
    text = text.strip()
    if text == "0":
        return SymSeq.zero(ring)
    pieces, points = [], []
    for part in _split_depth(text, " + "):
        m = re.fullmatch(r"at\((\d+);(.*)\)", part, re.S)
        if m:
            points.append((int(m.group(1)), parse_value(m.group(2), ring)))
            continue
        m = re.fullmatch(r"on\(prog\((\d+),(\d+)\);(.*)\)", part, re.S)
        if m:
            pieces.append((int(m.group(1)), int(m.group(2)), parse_track(m.group(3), ring)))
            continue
        raise ValueError(f"bad sequence term {part!r}")
    return SymSeq.make(ring, pieces, points)
