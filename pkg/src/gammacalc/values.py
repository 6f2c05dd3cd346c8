"""Exact pointwise values of symbolic sequences.

A decaying sequence evaluated at an index is generally not a ring element:
``n**(-1/2)`` is a radical and ``log(n+1)**(-2)`` is transcendental.  A
:class:`Value` is a finite sum ``sum_i a_i * m_i`` where ``a_i`` lies in the
coefficient ring and each :class:`Monomial` ``m_i`` is a radical with
exponents in (0, 1) times a product of powers ``log(t)**(-g)`` over rationals
``t > 1`` that are not perfect powers.  Distinct monomials are treated as
linearly independent over the rationals.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .arith import RADICAL_ONE, Radical, frac_str, perfect_power_root
from .scalars import Ring, RingValue


class Monomial:
    __slots__ = ("rad", "logs", "_hash")

    def __init__(self, rad: Radical = RADICAL_ONE, logs=()):
        self.rad = rad
        self.logs = tuple(sorted((Fraction(t), Fraction(g)) for t, g in logs if g != 0))
        self._hash = hash((rad, self.logs))

    def is_one(self) -> bool:
        return self.rad.is_one() and not self.logs

    def mul(self, other: "Monomial") -> tuple[Fraction, "Monomial"]:
        q, rad = (self.rad * other.rad).split()
        logs = dict(self.logs)
        for t, g in other.logs:
            logs[t] = logs.get(t, 0) + g
        return q, Monomial(rad, logs.items())

    def sort_key(self):
        return (self.rad.exps, self.logs)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.rad == other.rad and self.logs == other.logs

    def __hash__(self):
        return self._hash

    def to_float(self) -> float:
        from math import exp, log
        x = exp(self.rad.to_float_log())
        for t, g in self.logs:
            x *= log(t) ** (-float(g))
        return x

    def __str__(self):
        parts = [] if self.rad.is_one() else [str(self.rad)]
        parts += [f"log({frac_str(t)})^({frac_str(-g)})" for t, g in self.logs]
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"Monomial({self})"


MONO_ONE = Monomial()


def log_monomial(x: Fraction, g: Fraction) -> tuple[Fraction, Radical, Monomial]:
    """``log(x)**(-g)`` as ``radical * monomial`` (the radical carries j**(-g) for x = t**j)."""
    t, j = perfect_power_root(Fraction(x))
    return Radical.of(j) ** (-g), Monomial(RADICAL_ONE, [(t, g)])


class Value:
    """A finite exact combination of monomials with ring coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict | None = None):
        self.ring = ring
        self.terms = {m: a for m, a in (terms or {}).items() if not a.is_zero()}
        self._hash = None

    @classmethod
    def of(cls, a: RingValue) -> "Value":
        return cls(a.ring, {MONO_ONE: a})

    @classmethod
    def zero(cls, ring: Ring) -> "Value":
        return cls(ring)

    def is_zero(self) -> bool:
        return not self.terms

    def is_ring(self) -> bool:
        return all(m.is_one() for m in self.terms)

    def as_ring(self) -> RingValue:
        if not self.is_ring():
            raise ValueError(f"{self} is not a ring element")
        return self.terms.get(MONO_ONE, self.ring.zero())

    def __add__(self, other: "Value") -> "Value":
        out = dict(self.terms)
        for m, a in other.terms.items():
            out[m] = out[m] + a if m in out else a
        return Value(self.ring, out)

    def __neg__(self):
        return Value(self.ring, {m: -a for m, a in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "Value") -> "Value":
        out: dict = {}
        for m1, a1 in self.terms.items():
            for m2, a2 in other.terms.items():
                q, m = m1.mul(m2)
                c = (a1 * a2).scale(q)
                out[m] = out[m] + c if m in out else c
        return Value(self.ring, out)

    def lmul(self, a: RingValue) -> "Value":
        return Value(self.ring, {m: a * b for m, b in self.terms.items()})

    def rmul(self, a: RingValue) -> "Value":
        return Value(self.ring, {m: b * a for m, b in self.terms.items()})

    def scale(self, q: Fraction) -> "Value":
        return Value(self.ring, {m: a.scale(q) for m, a in self.terms.items()})

    def conjugate(self) -> "Value":
        return Value(self.ring, {m: a.conjugate() for m, a in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Value):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=Monomial.sort_key):
            a = self.terms[m]
            parts.append(str(a) if m.is_one() else f"({a})*{m}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Value({self})"


_RAD = re.compile(r"(\d+)\^\(([-+\d/]+)\)")
_LOG = re.compile(r"log\(([\d/]+)\)\^\(([-+\d/]+)\)")


def parse_monomial(text: str) -> Monomial:
    rad = {}
    logs = []
    for part in filter(None, text.split("*")):
        m = _LOG.fullmatch(part)
        if m:
            logs.append((Fraction(m.group(1)), -Fraction(m.group(2))))
            continue
        m = _RAD.fullmatch(part)
        if m:
            rad[int(m.group(1))] = Fraction(m.group(2))
            continue
        if part != "1":
            raise ValueError(f"bad monomial factor {part!r}")
    return Monomial(Radical(rad), logs)


def parse_value(text: str, ring: Ring) -> Value:
    """Inverse of ``str(Value)``."""
    text = text.strip()
    if text == "0":
        return Value(ring)
    out = Value(ring)
    for part in text.split(" + "):
        part = part.strip()
        if part.startswith("("):
            depth = 0
            for i, ch in enumerate(part):
                depth += ch == "("
                depth -= ch == ")"
                if depth == 0:
                    break
            amp = ring.parse(part[1:i])
            rest = part[i + 1:]
            if not rest.startswith("*"):
                raise ValueError(f"bad value term {part!r}")
            out = out + Value(ring, {parse_monomial(rest[1:]): amp})
        else:
            out = out + Value.of(ring.parse(part))
    return out
