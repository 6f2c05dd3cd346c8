"""Number theory helpers: factoring, exact radicals, progression intersection."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=65536)
def factorint(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of a positive integer as sorted ``(p, e)`` pairs."""
    if n < 1:
        raise ValueError("factorint needs n >= 1")
    if n < 10**12:
        out = []
        m = n
        p = 2
        while p * p <= m:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                out.append((p, e))
            p += 1 if p == 2 else 2
        if m > 1:
            out.append((m, 1))
        return tuple(out)
    from sympy import factorint as sympy_factorint
    return tuple(sorted(sympy_factorint(n).items()))


def rational_exponents(q: Fraction) -> dict[int, int]:
    """Exponent vector of a positive rational."""
    if q <= 0:
        raise ValueError("needs a positive rational")
    out = dict(factorint(q.numerator))
    for p, e in factorint(q.denominator):
        out[p] = out.get(p, 0) - e
    return out


def perfect_power_root(q: Fraction) -> tuple[Fraction, int]:
    """Write ``q = t**j`` with ``t`` not a perfect power (q positive, q != 1)."""
    exps = rational_exponents(q)
    j = 0
    for e in exps.values():
        j = gcd(j, abs(e))
    if j <= 1:
        return q, 1
    t = Fraction(1)
    for p, e in exps.items():
        t *= Fraction(p) ** (e // j)
    return t, j


class Radical:
    """A positive real of the form prod p**x_p with rational exponents x_p.

    Immutable and canonical: equal numbers have equal ``exps``.
    """

    __slots__ = ("exps", "_hash")

    def __init__(self, exps=()):
        items = exps.items() if isinstance(exps, dict) else exps
        self.exps = tuple(sorted((int(p), Fraction(x)) for p, x in items if x != 0))
        self._hash = hash(self.exps)

    ONE: "Radical"

    @classmethod
    def of(cls, q) -> "Radical":
        q = Fraction(q)
        if q == 1:
            return RADICAL_ONE
        return cls(rational_exponents(q))

    def __mul__(self, other: "Radical") -> "Radical":
        if not other.exps:
            return self
        if not self.exps:
            return other
        d = dict(self.exps)
        for p, x in other.exps:
            d[p] = d.get(p, 0) + x
        return Radical(d)

    def __pow__(self, k) -> "Radical":
        k = Fraction(k)
        if k == 0 or not self.exps:
            return RADICAL_ONE
        return Radical((p, x * k) for p, x in self.exps)

    def inverse(self) -> "Radical":
        return self ** -1

    def is_one(self) -> bool:
        return not self.exps

    def is_rational(self) -> bool:
        return all(x.denominator == 1 for _, x in self.exps)

    def split(self) -> tuple[Fraction, "Radical"]:
        """Return ``(q, r)`` with ``self == q * r`` and exponents of r in (0, 1)."""
        q = Fraction(1)
        frac = []
        for p, x in self.exps:
            fl = x.numerator // x.denominator
            if fl:
                q *= Fraction(p) ** fl
            rest = x - fl
            if rest:
                frac.append((p, rest))
        return q, Radical(frac)

    def compare_one(self) -> int:
        """Sign of log(self): -1 if < 1, 0 if == 1, +1 if > 1."""
        if not self.exps:
            return 0
        L = lcm(*(x.denominator for _, x in self.exps))
        num, den = 1, 1
        for p, x in self.exps:
            e = int(x * L)
            if e > 0:
                num *= p ** e
            else:
                den *= p ** (-e)
        return (num > den) - (num < den)

    def compare(self, other: "Radical") -> int:
        return (self * other.inverse()).compare_one()

    def to_float_log(self) -> float:
        from math import log
        return sum(float(x) * log(p) for p, x in self.exps)

    def __eq__(self, other):
        return isinstance(other, Radical) and self.exps == other.exps

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.exps < other.exps

    def __str__(self):
        if not self.exps:
            return "1"
        parts = []
        for p, x in self.exps:
            xs = str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
            parts.append(f"{p}^({xs})")
        return "*".join(parts)

    def __repr__(self):
        return f"Radical({self})"


RADICAL_ONE = Radical()
Radical.ONE = RADICAL_ONE


# ---------------------------------------------------------------- progressions
#
# A progression (s, m) is the infinite set {s + m*k : k >= 0} with s, m >= 1.

def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def intersect_progressions(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int] | None:
    """Intersection of two infinite progressions, or None when empty."""
    s1, m1 = a
    s2, m2 = b
    g = gcd(m1, m2)
    if (s2 - s1) % g:
        return None
    L = m1 // g * m2
    # solve s1 + m1*k == s2 (mod m2)
    k = ((s2 - s1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 // g > 1 else 0
    x = s1 + m1 * k
    lo = max(s1, s2)
    if x < lo:
        x += ceil_div(lo - x, L) * L
    else:
        x -= ((x - lo) // L) * L
    return x, L


def affine_image(prog: tuple[int, int], p: Fraction, q: Fraction) -> tuple[int, int]:
    """Image of progression under n -> p*n + q (p > 0, integral on prog)."""
    s, m = prog
    a = p * s + q
    d = p * m
    if a.denominator != 1 or d.denominator != 1:
        raise ValueError("affine map is not integral on the progression")
    return int(a), int(d)


def affine_preimage(prog: tuple[int, int], p: Fraction, q: Fraction,
                    target: tuple[int, int]) -> tuple[int, int] | None:
    """Elements n of ``prog`` with p*n + q in ``target``, as a progression."""
    img = affine_image(prog, p, q)
    hit = intersect_progressions(img, target)
    if hit is None:
        return None
    a, L = hit
    n0 = (a - q) / p
    step = Fraction(L) / p
    return int(n0), int(step)


def prog_contains(prog: tuple[int, int], n: int) -> bool:
    s, m = prog
    return n >= s and (n - s) % m == 0


def frac_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
