"""Decay profiles and the symbolic values carried by one residue class.

A :class:`Profile` is the positive real function of the absolute index ``n``

    const * G**n * prod (n + a)**(-e) * prod log(d*n + c)**(-g)

with ``G <= 1`` and ``const`` radicals, and ``e, g >= 0``.  Every rational
factor is pushed out into the ring amplitude, so profiles are canonical.  The
class is closed under products and under affine substitution ``n -> P*n + Q``
(which is what the action of a partial injection needs).

A :class:`TrackValue` is a finite sum ``sum amp * profile``.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import RADICAL_ONE, Radical, frac_str
from .periodic import InvalidAt
from .scalars import Ring, RingValue
from .values import MONO_ONE, Monomial, Value, log_monomial


class Profile:
    __slots__ = ("G", "const", "powers", "logs", "_hash")

    def __init__(self, G: Radical = RADICAL_ONE, const: Radical = RADICAL_ONE,
                 powers=(), logs=()):
        if G.compare_one() > 0:
            raise ValueError("geometric base must be at most 1")
        pw: dict = {}
        for a, e in powers:
            pw[Fraction(a)] = pw.get(Fraction(a), 0) + Fraction(e)
        lg: dict = {}
        for d, c, g in logs:
            key = (Fraction(d), Fraction(c))
            lg[key] = lg.get(key, 0) + Fraction(g)
        if any(e < 0 for e in pw.values()) or any(g < 0 for g in lg.values()):
            raise ValueError("decay exponents must be nonnegative")
        if any(d <= 0 for d, _ in lg):
            raise ValueError("log slopes must be positive")
        self.G = G
        self.const = const
        self.powers = tuple(sorted((a, e) for a, e in pw.items() if e))
        self.logs = tuple(sorted((d, c, g) for (d, c), g in lg.items() if g))
        self._hash = hash((G, const, self.powers, self.logs))

    @classmethod
    def make(cls, G=1, powers=(), logs=()) -> tuple[Fraction, "Profile"]:
        """Canonical profile with rational base ``G``; returns the pulled-out rational too."""
        return Profile(Radical.of(G), RADICAL_ONE, powers, logs).normalized()

    def normalized(self) -> tuple[Fraction, "Profile"]:
        q, c = self.const.split()
        if c == self.const:
            return Fraction(1), self
        return q, Profile(self.G, c, self.powers, self.logs)

    def is_one(self) -> bool:
        return self.G.is_one() and self.const.is_one() and not self.powers and not self.logs

    # ---------------------------------------------------------------- algebra
    def mul(self, other: "Profile") -> tuple[Fraction, "Profile"]:
        if other.is_one():
            return Fraction(1), self
        if self.is_one():
            return Fraction(1), other
        return Profile(self.G * other.G, self.const * other.const,
                       self.powers + other.powers, self.logs + other.logs).normalized()

    def substitute(self, P: Fraction, Q: Fraction) -> tuple[Fraction, "Profile"]:
        """The profile ``n -> self(P*n + Q)`` (P > 0)."""
        if self.is_one():
            return Fraction(1), self
        P, Q = Fraction(P), Fraction(Q)
        const = self.const * self.G ** Q
        powers = []
        for a, e in self.powers:
            const = const * Radical.of(P) ** (-e)
            powers.append(((Q + a) / P, e))
        logs = [(d * P, d * Q + c, g) for d, c, g in self.logs]
        return Profile(self.G ** P, const, powers, logs).normalized()

    # ---------------------------------------------------------------- evaluation
    def defined_at(self, n: int) -> bool:
        return all(n + a > 0 for a, _ in self.powers) and all(d * n + c > 1 for d, c, _ in self.logs)

    def evaluate(self, n: int) -> tuple[Fraction, Monomial]:
        if self.is_one():
            return Fraction(1), MONO_ONE
        if not self.defined_at(n):
            raise InvalidAt(n)
        rad = self.const * self.G ** n
        for a, e in self.powers:
            rad = rad * Radical.of(n + a) ** (-e)
        logs = []
        for d, c, g in self.logs:
            r, m = log_monomial(d * n + c, g)
            rad = rad * r
            logs += m.logs
        q, frac = rad.split()
        merged: dict = {}
        for t, g in logs:
            merged[t] = merged.get(t, 0) + g
        return q, Monomial(frac, merged.items())

    def float_log(self, n: float) -> float:
        """Natural log of the profile value at a real index."""
        from math import log
        out = self.const.to_float_log() + n * self.G.to_float_log()
        for a, e in self.powers:
            out -= float(e) * log(n + float(a))
        for d, c, g in self.logs:
            out -= float(g) * log(log(float(d) * n + float(c)))
        return out

    # ---------------------------------------------------------------- asymptotics
    def decay(self) -> tuple[Radical, Fraction, Fraction]:
        """``(G, E, Gtot)``: base, total power exponent, total log exponent."""
        return self.G, sum((e for _, e in self.powers), Fraction(0)), sum((g for *_, g in self.logs), Fraction(0))

    def sort_key(self):
        return (self.G.exps, self.const.exps, self.powers, self.logs)

    def __eq__(self, other):
        return (isinstance(other, Profile) and self.G == other.G and self.const == other.const
                and self.powers == other.powers and self.logs == other.logs)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        parts = []
        if not self.const.is_one():
            parts.append(f"rad({self.const})")
        if not self.G.is_one():
            parts.append(f"geom({self.G})")
        parts += [f"pow({frac_str(a)};{frac_str(e)})" for a, e in self.powers]
        parts += [f"log({frac_str(d)};{frac_str(c)};{frac_str(g)})" for d, c, g in self.logs]
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"Profile({self})"


PROFILE_ONE = Profile()


class TrackValue:
    """``sum amp_i * profile_i`` in the absolute index; hashable and canonical."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict | None = None):
        self.terms = {p: a for p, a in (terms or {}).items() if not a.is_zero()}
        self._hash = None

    @classmethod
    def const(cls, a: RingValue) -> "TrackValue":
        return cls({PROFILE_ONE: a})

    @classmethod
    def single(cls, a: RingValue, profile: Profile, q: Fraction = Fraction(1)) -> "TrackValue":
        return cls({profile: a.scale(q)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(p.is_one() for p in self.terms)

    def const_value(self):
        return self.terms.get(PROFILE_ONE)

    def __add__(self, other: "TrackValue") -> "TrackValue":
        out = dict(self.terms)
        for p, a in other.terms.items():
            out[p] = out[p] + a if p in out else a
        return TrackValue(out)

    def __neg__(self):
        return TrackValue({p: -a for p, a in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "TrackValue") -> "TrackValue":
        out: dict = {}
        for p1, a1 in self.terms.items():
            for p2, a2 in other.terms.items():
                q, p = p1.mul(p2)
                c = (a1 * a2).scale(q)
                out[p] = out[p] + c if p in out else c
        return TrackValue(out)

    def lmul(self, a: RingValue) -> "TrackValue":
        return TrackValue({p: a * b for p, b in self.terms.items()})

    def rmul(self, a: RingValue) -> "TrackValue":
        return TrackValue({p: b * a for p, b in self.terms.items()})

    def conjugate(self) -> "TrackValue":
        return TrackValue({p: a.conjugate() for p, a in self.terms.items()})

    def map_amplitudes(self, fn) -> "TrackValue":
        return TrackValue({p: fn(a) for p, a in self.terms.items()})

    def substitute(self, P, Q) -> "TrackValue":
        P, Q = Fraction(P), Fraction(Q)
        if P == 1 and Q == 0:
            return self
        out: dict = {}
        for p, a in self.terms.items():
            q, p2 = p.substitute(P, Q)
            c = a.scale(q)
            out[p2] = out[p2] + c if p2 in out else c
        return TrackValue(out)

    def defined_at(self, n: int) -> bool:
        return all(p.defined_at(n) for p in self.terms)

    def evaluate(self, n: int, ring: Ring) -> Value:
        if not self.defined_at(n):
            raise InvalidAt(n)
        out: dict = {}
        for p, a in self.terms.items():
            q, m = p.evaluate(n)
            c = a.scale(q)
            out[m] = out[m] + c if m in out else c
        return Value(ring, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __eq__(self, other):
        return isinstance(other, TrackValue) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({a})*{p}" if not p.is_one() else f"({a})" for p, a in self.sorted_terms())

    def __repr__(self):
        return f"TrackValue({self})"


TRACK_ZERO = TrackValue()
