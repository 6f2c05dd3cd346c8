"""Exact coefficient rings.

Five ring variants stand in for the coefficient algebra: arbitrary precision
integers, rationals, Gaussian rationals, residues modulo ``m`` and 2x2
rational matrices (the noncommutative test ring).  Every value knows its ring;
mixing rings raises :class:`VariantMismatch`.

String codec::

    "7"            Integer / Rational (ring decides)
    "3/4"          Rational
    "2+3i"         GaussianRational
    "m5:3"         IntMod(5) residue 3
    "[[1,0],[0,1]]" Mat2Rational
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import isqrt


class VariantMismatch(TypeError):
    """Operands belong to different coefficient rings."""


class NoModulus(ValueError):
    """The ring has no absolute value we can compute exactly."""


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parse_frac(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"not a rational number: {text!r}")
    return Fraction(text)


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class Ring:
    """A coefficient ring; subclasses fix the element type."""

    name: str = "?"
    #: whether arbitrary rational scalars embed (needed for decaying profiles)
    has_rationals = False
    #: whether values carry a nontrivial modulus |a|
    has_modulus = False
    commutative = True

    def zero(self) -> "RingValue":
        return self.from_fraction(Fraction(0))

    def one(self) -> "RingValue":
        return self.from_fraction(Fraction(1))

    def from_fraction(self, q: Fraction) -> "RingValue":
        raise NotImplementedError

    def parse(self, text: str) -> "RingValue":
        raise NotImplementedError

    def __repr__(self):
        return f"<ring {self.name}>"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class RingValue:
    """Base class of ring elements.  Values are immutable."""

    __slots__ = ()
    ring: Ring

    def _check(self, other):
        if not isinstance(other, RingValue):
            return NotImplemented
        if other.ring != self.ring:
            raise VariantMismatch(f"{self.ring.name} vs {other.ring.name}")
        return other

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, RingValue):
            return NotImplemented
        self._check(other)
        return self._key() == other._key()

    def __hash__(self):
        return hash((self.ring.name, self._key()))

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def is_zero(self) -> bool:
        return self == self.ring.zero()

    def is_one(self) -> bool:
        return self == self.ring.one()

    def conjugate(self) -> "RingValue":
        return self

    def scale(self, q: Fraction) -> "RingValue":
        """Multiply by a rational scalar (raises if the ring cannot)."""
        if q == 1:
            return self
        return self * self.ring.from_fraction(q)

    def inverse(self) -> "RingValue":
        raise ZeroDivisionError(f"no inverse in {self.ring.name}")

    def modulus_unit(self):
        raise NoModulus(f"{self.ring.name} has no exact modulus")


# ---------------------------------------------------------------- integers

class IntegerRing(Ring):
    name = "Z"

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator != 1:
            raise ValueError(f"{q} is not an integer")
        return Integer(q.numerator)

    def parse(self, text):
        text = text.strip()
        if not re.fullmatch(r"[+-]?\d+", text):
            raise ValueError(f"not an integer: {text!r}")
        return Integer(int(text))


ZZ = IntegerRing()


class Integer(RingValue):
    __slots__ = ("v",)
    ring = ZZ

    def __init__(self, v: int):
        self.v = int(v)

    def _key(self):
        return self.v

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Integer(self.v + other.v)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Integer(self.v * other.v)

    def __neg__(self):
        return Integer(-self.v)

    def is_zero(self):
        return self.v == 0

    def inverse(self):
        if self.v in (1, -1):
            return self
        raise ZeroDivisionError(f"{self.v} is not a unit in Z")

    def modulus_unit(self):
        if self.v == 0:
            return self, self
        return Integer(1 if self.v > 0 else -1), Integer(abs(self.v))

    def __str__(self):
        return str(self.v)


# ---------------------------------------------------------------- rationals

class RationalField(Ring):
    name = "Q"
    has_rationals = True
    has_modulus = True

    def from_fraction(self, q):
        return Rational(q)

    def parse(self, text):
        return Rational(_parse_frac(text))


QQ = RationalField()


class Rational(RingValue):
    __slots__ = ("v",)
    ring = QQ

    def __init__(self, v):
        # Fraction keeps lowest terms and a positive denominator
        self.v = Fraction(v)

    def _key(self):
        return self.v

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Rational(self.v + other.v)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Rational(self.v * other.v)

    def __neg__(self):
        return Rational(-self.v)

    def is_zero(self):
        return self.v == 0

    def scale(self, q):
        return Rational(self.v * q)

    def inverse(self):
        return Rational(1 / self.v)

    def modulus_unit(self):
        if self.v == 0:
            return self, self
        return Rational(1 if self.v > 0 else -1), Rational(abs(self.v))

    def __str__(self):
        return _frac_str(self.v)


# ---------------------------------------------------------------- Gaussian rationals

class GaussianField(Ring):
    name = "Q(i)"
    has_rationals = True
    has_modulus = True

    def from_fraction(self, q):
        return GaussianRational(q, 0)

    def parse(self, text):
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty Gaussian rational")
        if "i" not in s:
            return GaussianRational(_parse_frac(s), 0)
        if not s.endswith("i"):
            raise ValueError(f"not a Gaussian rational: {text!r}")
        body = s[:-1]
        # split at the last sign that is not the leading one
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut > 0:
            re_part, im_part = body[:cut], body[cut:]
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+"):
            im = Fraction(1)
        elif im_part == "-":
            im = Fraction(-1)
        else:
            im = _parse_frac(im_part)
        return GaussianRational(_parse_frac(re_part), im)


QQI = GaussianField()


class GaussianRational(RingValue):
    __slots__ = ("re", "im")
    ring = QQI

    def __init__(self, re_, im=0):
        self.re = Fraction(re_)
        self.im = Fraction(im)

    def _key(self):
        return (self.re, self.im)

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def scale(self, q):
        return GaussianRational(self.re * q, self.im * q)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("0 has no inverse")
        return GaussianRational(self.re / n, -self.im / n)

    def modulus_unit(self):
        if self.is_zero():
            return self, self
        r = rational_sqrt(self.norm2())
        if r is None:
            return None
        return GaussianRational(self.re / r, self.im / r), GaussianRational(r, 0)

    def __str__(self):
        re_, im = self.re, self.im
        if im == 0:
            return _frac_str(re_)
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = _frac_str(im) + "i"
        if re_ == 0:
            return ims
        sign = "" if ims.startswith("-") else "+"
        return f"{_frac_str(re_)}{sign}{ims}"


# ---------------------------------------------------------------- integers mod m

class IntModRing(Ring):
    def __init__(self, m: int):
        if m < 2:
            raise ValueError("modulus must be >= 2")
        self.m = m
        self.name = f"m{m}"

    def from_fraction(self, q):
        q = Fraction(q)
        num = q.numerator % self.m
        try:
            den = pow(q.denominator, -1, self.m)
        except ValueError:
            raise ValueError(f"{q} has no image in Z/{self.m}") from None
        return IntMod(num * den, self.m)

    def parse(self, text):
        s = text.strip()
        m = re.fullmatch(r"m(\d+):([+-]?\d+)", s)
        if m:
            if int(m.group(1)) != self.m:
                raise VariantMismatch(f"modulus {m.group(1)} in ring {self.name}")
            return IntMod(int(m.group(2)), self.m)
        return self.from_fraction(_parse_frac(s))


@lru_cache(maxsize=None)
def int_mod_ring(m: int) -> IntModRing:
    return IntModRing(m)


class IntMod(RingValue):
    __slots__ = ("v", "ring")

    def __init__(self, v: int, m: int):
        self.ring = int_mod_ring(m)
        self.v = int(v) % m

    @property
    def modulus(self):
        return self.ring.m

    def _key(self):
        return self.v

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return IntMod(self.v + other.v, self.ring.m)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return IntMod(self.v * other.v, self.ring.m)

    def __neg__(self):
        return IntMod(-self.v, self.ring.m)

    def is_zero(self):
        return self.v == 0

    def inverse(self):
        try:
            return IntMod(pow(self.v, -1, self.ring.m), self.ring.m)
        except ValueError:
            raise ZeroDivisionError(f"{self} is not a unit") from None

    def __str__(self):
        return f"m{self.ring.m}:{self.v}"


# ---------------------------------------------------------------- 2x2 rational matrices

class Mat2Ring(Ring):
    name = "M2(Q)"
    has_rationals = True
    commutative = False

    def from_fraction(self, q):
        q = Fraction(q)
        return Mat2Rational(q, 0, 0, q)

    def parse(self, text):
        s = text.replace(" ", "")
        m = re.fullmatch(r"\[\[([^,\]]+),([^,\]]+)\],\[([^,\]]+),([^,\]]+)\]\]", s)
        if not m:
            if re.fullmatch(r"[+-]?\d+(/\d+)?", s):
                return self.from_fraction(Fraction(s))
            raise ValueError(f"not a 2x2 matrix: {text!r}")
        return Mat2Rational(*(_parse_frac(g) for g in m.groups()))


M2Q = Mat2Ring()


class Mat2Rational(RingValue):
    __slots__ = ("a", "b", "c", "d")
    ring = M2Q

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = (Fraction(x) for x in (a, b, c, d))

    def _key(self):
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Mat2Rational(self.a + other.a, self.b + other.b,
                            self.c + other.c, self.d + other.d)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return Mat2Rational(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __neg__(self):
        return Mat2Rational(-self.a, -self.b, -self.c, -self.d)

    def is_zero(self):
        return not (self.a or self.b or self.c or self.d)

    def scale(self, q):
        return Mat2Rational(self.a * q, self.b * q, self.c * q, self.d * q)

    def conjugate(self):
        return Mat2Rational(self.a, self.c, self.b, self.d)

    def inverse(self):
        det = self.a * self.d - self.b * self.c
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        return Mat2Rational(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __str__(self):
        f = _frac_str
        return f"[[{f(self.a)},{f(self.b)}],[{f(self.c)},{f(self.d)}]]"


# ---------------------------------------------------------------- helpers

RINGS = {"Z": ZZ, "Q": QQ, "Q(i)": QQI, "QI": QQI, "M2Q": M2Q, "M2(Q)": M2Q}


def ring_by_name(name: str) -> Ring:
    """Resolve ``Z``, ``Q``, ``Q(i)``, ``M2Q`` or ``m<k>`` / ``F<p>``."""
    name = name.strip()
    if name in RINGS:
        return RINGS[name]
    m = re.fullmatch(r"[mF](\d+)", name)
    if m:
        return int_mod_ring(int(m.group(1)))
    raise ValueError(f"unknown ring {name!r}")


def parse_scalar(text: str, ring: Ring | None = None) -> RingValue:
    """Parse a scalar literal; without a ring the literal picks its variant."""
    if ring is not None:
        return ring.parse(text)
    s = text.strip()
    if s.startswith("[["):
        return M2Q.parse(s)
    if s.startswith("m") and ":" in s:
        return int_mod_ring(int(s[1:s.index(":")])).parse(s)
    if "i" in s:
        return QQI.parse(s)
    if "/" in s:
        return QQ.parse(s)
    return ZZ.parse(s)


def try_modulus_unit(a: RingValue):
    """Return ``(unit, modulus)`` with ``unit * modulus == a``, or None.

    None means ``|a|`` is irrational.  Rings without an absolute value raise
    :class:`NoModulus`.
    """
    return a.modulus_unit()
