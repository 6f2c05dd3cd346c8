"""Partial injections of the positive integers and eventually periodic sets.

Both types sit on top of :class:`~gammacalc.periodic.Periodic`, so equality
is structural equality of canonical forms.

A :class:`PInj` is affine on each residue class past a threshold, ``n -> p*n + q``
with rational ``p > 0`` (rational slopes keep the class closed under dagger),
and an explicit finite map below the threshold.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .arith import affine_image, frac_str as _frac_str, intersect_progressions, prog_contains
from .periodic import InvalidAt, Kind, Periodic, build, combine_classwise, normalize


class BadWord(ValueError):
    """A word over {1, 2} contains another symbol."""


class NotInjective(ValueError):
    """Pieces of a partial map overlap in their domains or ranges."""


# ---------------------------------------------------------------- sets

class _SetKind(Kind):
    empty_label = False
    empty_point = False

    def combine(self, labels):
        return True

    def combine_points(self, points):
        return any(points)

    def evaluate(self, label, n):
        return label


SET_KIND = _SetKind()


class ProgressionSet:
    """An eventually periodic subset of {1, 2, ...}."""

    __slots__ = ("_p",)

    def __init__(self, periodic: Periodic):
        self._p = periodic

    @classmethod
    def make(cls, progressions=(), finite=()) -> "ProgressionSet":
        pieces = [(s, m, True) for s, m in progressions]
        return cls(build(SET_KIND, pieces, [(int(n), True) for n in finite]))

    @classmethod
    def progression(cls, s: int, m: int) -> "ProgressionSet":
        return cls.make([(s, m)])

    @classmethod
    def finite(cls, elements) -> "ProgressionSet":
        return cls.make((), elements)

    # canonical data
    @property
    def periodic(self) -> Periodic:
        return self._p

    @property
    def progressions(self) -> list[tuple[int, int]]:
        return [(s, m) for s, m, _ in self._p.pieces()]

    @property
    def finite_part(self) -> list[int]:
        return sorted(self._p.finite)

    def __contains__(self, n: int) -> bool:
        return n >= 1 and bool(self._p.at(n))

    def elements(self, upto: int) -> list[int]:
        return [n for n in range(1, upto + 1) if n in self]

    def is_empty(self) -> bool:
        return not self._p.finite and not self._p.has_periodic_part()

    def is_finite(self) -> bool:
        return not self._p.has_periodic_part()

    def __iter__(self):
        if not self.is_finite():
            raise ValueError("cannot iterate an infinite set")
        return iter(self.finite_part)

    def __len__(self):
        if not self.is_finite():
            raise ValueError("infinite set")
        return len(self._p.finite)

    def union(self, other: "ProgressionSet") -> "ProgressionSet":
        return ProgressionSet(combine_classwise(self._p, other._p, bool.__or__, bool.__or__, SET_KIND))

    def intersect(self, other: "ProgressionSet") -> "ProgressionSet":
        return ProgressionSet(combine_classwise(self._p, other._p, bool.__and__, bool.__and__, SET_KIND))

    def complement(self) -> "ProgressionSet":
        p = self._p
        finite = {n: True for n in range(1, p.T) if n not in p.finite}
        classes = tuple(not c for c in p.classes)
        return ProgressionSet(normalize(SET_KIND, p.T, p.M, classes, finite))

    def difference(self, other: "ProgressionSet") -> "ProgressionSet":
        return self.intersect(other.complement())

    __or__ = union
    __and__ = intersect
    __sub__ = difference

    def issubset(self, other: "ProgressionSet") -> bool:
        return self.difference(other).is_empty()

    def __eq__(self, other):
        return isinstance(other, ProgressionSet) and self._p == other._p

    def __hash__(self):
        return hash(("set", self._p))

    def __str__(self):
        parts = []
        if self._p.finite:
            parts.append("{" + ",".join(map(str, self.finite_part)) + "}")
        parts += [f"prog({s},{m})" for s, m in self.progressions]
        return "|".join(parts) if parts else "{}"

    def __repr__(self):
        return f"ProgressionSet({self})"


NATURALS = ProgressionSet.progression(1, 1)
EVENS = ProgressionSet.progression(2, 2)
ODDS = ProgressionSet.progression(1, 2)
EMPTY_SET = ProgressionSet.finite(())


def atomize(sets: list[ProgressionSet]) -> list[ProgressionSet]:
    """Nonempty Boolean atoms generated by ``sets`` inside the naturals."""
    atoms = [NATURALS]
    for a in sets:
        nxt = []
        for at in atoms:
            for piece in (at & a, at - a):
                if not piece.is_empty():
                    nxt.append(piece)
        atoms = nxt
    return atoms


def parse_set(text: str) -> ProgressionSet:
    """Parse ``even``, ``odd``, ``all``, ``{1,3}``, ``prog(s,m)`` joined by ``|``."""
    out = EMPTY_SET
    for part in _split_top(text.replace(" ", ""), "|"):
        if part in ("even", "evens"):
            s = EVENS
        elif part in ("odd", "odds"):
            s = ODDS
        elif part in ("all", "N"):
            s = NATURALS
        elif part.startswith("{") and part.endswith("}"):
            body = part[1:-1]
            s = ProgressionSet.finite([int(x) for x in body.split(",")] if body else [])
        else:
            m = re.fullmatch(r"prog\((\d+),(\d+)\)", part)
            if not m:
                raise ValueError(f"bad set literal {part!r}")
            s = ProgressionSet.progression(int(m.group(1)), int(m.group(2)))
        out = out | s
    return out


def _split_top(text: str, sep: str) -> list[str]:
    """Split at ``sep`` outside brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p for p in parts if p]


# ---------------------------------------------------------------- partial injections

class _PInjKind(Kind):
    empty_label = None
    empty_point = None

    def combine(self, labels):
        if len(labels) > 1:
            raise NotInjective("overlapping domains")
        return labels[0]

    def combine_points(self, points):
        vals = [p for p in points if p is not None]
        if len(vals) > 1:
            raise NotInjective("overlapping domains")
        return vals[0] if vals else None

    def evaluate(self, label, n):
        if label is None:
            return None
        p, q = label
        v = p * n + q
        if v.denominator != 1 or v < 1:
            raise InvalidAt(n)
        return int(v)

    def validate(self, label, start, step):
        p, q = label
        if p <= 0:
            raise ValueError("slopes must be positive")
        v = p * start + q
        if v.denominator != 1 or (p * step).denominator != 1:
            raise ValueError("affine map is not integral on its progression")
        if v < 1:
            raise ValueError("images must be positive")


PINJ_KIND = _PInjKind()


def _affine(p, q) -> tuple[Fraction, Fraction]:
    return Fraction(p), Fraction(q)


class PInj:
    """A partial injection in the affine-on-progressions class."""

    __slots__ = ("_p",)

    def __init__(self, periodic: Periodic):
        self._p = periodic

    @classmethod
    def make(cls, pieces=(), points=(), check=True) -> "PInj":
        """From affine pieces ``(s, m, p, q)`` and finite pairs ``(n, f(n))``."""
        pc = [(s, m, _affine(p, q)) for s, m, p, q in pieces]
        pts = [(int(n), int(v)) for n, v in points]
        if check:
            for _, v in pts:
                if v < 1:
                    raise ValueError("images must be positive")
        f = cls(build(PINJ_KIND, pc, pts))
        if check:
            f._check_injective()
        return f

    @classmethod
    def from_dict(cls, mapping: dict) -> "PInj":
        return cls.make((), mapping.items())

    def _check_injective(self):
        imgs = [affine_image((s, m), *lab) for s, m, lab in self._p.pieces()]
        for i in range(len(imgs)):
            for j in range(i + 1, len(imgs)):
                if intersect_progressions(imgs[i], imgs[j]) is not None:
                    raise NotInjective("ranges of affine pieces overlap")
        vals = list(self._p.finite.values())
        if len(set(vals)) != len(vals):
            raise NotInjective("finite part is not injective")
        for v in vals:
            if any(prog_contains(img, v) for img in imgs):
                raise NotInjective(f"{v} is hit twice")

    # ---------------------------------------------------------------- access
    @property
    def periodic(self) -> Periodic:
        return self._p

    def __call__(self, n: int):
        if n < 1:
            return None
        return self._p.at(n)

    def pieces(self):
        """Yield ``(s, m, p, q)`` for the affine part."""
        for s, m, (p, q) in self._p.pieces():
            yield s, m, p, q

    def points(self) -> list[tuple[int, int]]:
        return self._p.points()

    def domain(self) -> ProgressionSet:
        return ProgressionSet.make([(s, m) for s, m, _, _ in self.pieces()], self._p.finite)

    def range(self) -> ProgressionSet:
        return ProgressionSet.make([affine_image((s, m), p, q) for s, m, p, q in self.pieces()],
                                   self._p.finite.values())

    def is_empty(self) -> bool:
        return not self._p.finite and not self._p.has_periodic_part()

    def is_finite(self) -> bool:
        return not self._p.has_periodic_part()

    def graph(self, upto: int) -> dict[int, int]:
        """Pairs ``n -> f(n)`` with ``n <= upto``."""
        out = {}
        for n in range(1, upto + 1):
            v = self(n)
            if v is not None:
                out[n] = v
        return out

    def preimage(self, m: int):
        """``f†(m)`` computed directly."""
        for n, v in self._p.finite.items():
            if v == m:
                return n
        for s, step, p, q in self.pieces():
            n = (m - q) / p
            if n.denominator == 1 and prog_contains((s, step), int(n)):
                return int(n)
        return None

    # ---------------------------------------------------------------- algebra
    def compose(self, g: "PInj") -> "PInj":
        """``self ∘ g`` (apply g first)."""
        f = self
        pieces, points = [], []
        for s, m, p, q in g.pieces():
            img = affine_image((s, m), p, q)
            for fs, fm, fp, fq in f.pieces():
                hit = intersect_progressions(img, (fs, fm))
                if hit is None:
                    continue
                a, L = hit
                n0 = (a - q) / p
                pieces.append((int(n0), int(L / p), fp * p, fp * q + fq))
            # values of g landing in f's explicit region
            for x, fx in f._p.finite.items():
                if prog_contains(img, x):
                    points.append((int((x - q) / p), fx))
        for n, v in g._p.finite.items():
            w = f(v)
            if w is not None:
                points.append((n, w))
        return PInj.make(pieces, points, check=False)

    def __mul__(self, g: "PInj") -> "PInj":
        return self.compose(g)

    def dagger(self) -> "PInj":
        pieces = []
        for s, m, p, q in self.pieces():
            a, d = affine_image((s, m), p, q)
            pieces.append((a, d, 1 / p, -q / p))
        return PInj.make(pieces, [(v, n) for n, v in self._p.finite.items()], check=False)

    def restrict(self, a: ProgressionSet) -> "PInj":
        """``f ∘ P_A``."""
        return self.compose(projection(a))

    def corestrict(self, a: ProgressionSet) -> "PInj":
        """``P_A ∘ f``."""
        return projection(a).compose(self)

    def image_of(self, a: ProgressionSet) -> ProgressionSet:
        return self.restrict(a).range()

    def __eq__(self, other):
        return isinstance(other, PInj) and self._p == other._p

    def __hash__(self):
        return hash(("pinj", self._p))

    def __str__(self):
        parts = [f"aff({_frac_str(p)},{_frac_str(q)})@prog({s},{m})" for s, m, p, q in self.pieces()]
        if self._p.finite:
            parts.append("map{" + ",".join(f"{n}->{v}" for n, v in self.points()) + "}")
        return "|".join(parts) if parts else "empty"

    def __repr__(self):
        return f"PInj({self})"


# ---------------------------------------------------------------- standard maps

def identity() -> PInj:
    return PInj.make([(1, 1, 1, 0)])


def empty_map() -> PInj:
    return PInj.make()


def projection(a: ProgressionSet) -> PInj:
    """``P_A``: the identity on A."""
    return PInj.make([(s, m, 1, 0) for s, m in a.progressions], [(n, n) for n in a.finite_part],
                     check=False)


def affine(p, q, s: int = 1, m: int = 1) -> PInj:
    """``n -> p*n + q`` on ``{s + m*k}``."""
    return PInj.make([(s, m, p, q)])


def check_word(word) -> tuple[int, ...]:
    out = []
    for ch in word:
        c = int(ch) if str(ch) in ("1", "2") else None
        if c is None:
            raise BadWord(f"bad symbol {ch!r} in word {word!r}")
        out.append(c)
    return tuple(out)


def s_gen(i: int) -> PInj:
    """``s_i(m) = 2m + i - 1`` for i in {1, 2}."""
    if i not in (1, 2):
        raise BadWord(f"no generator s_{i}")
    return affine(2, i - 1)


def s_word(word) -> PInj:
    """``s_mu = s_{mu_1} ... s_{mu_l}``, that is ``n -> 2^l n + sum (mu_t - 1) 2^(t-1)``."""
    mu = check_word(word)
    off = sum((c - 1) << t for t, c in enumerate(mu))
    return affine(1 << len(mu), off)


def s_word_value(word, n: int) -> int:
    mu = check_word(word)
    return (n << len(mu)) + sum((c - 1) << t for t, c in enumerate(mu))


def f_gen(i: int) -> PInj:
    """``f_i(n) = 2n - i`` for i in {0, 1}."""
    if i not in (0, 1):
        raise ValueError(f"no map f_{i}")
    return affine(2, -i)


# ---------------------------------------------------------------- codecs

class Codec:
    """A named bijection between an index set and the positive integers."""

    name = "?"

    def encode(self, a, b) -> int:
        raise NotImplementedError

    def decode(self, n: int) -> tuple[int, int]:
        raise NotImplementedError

    def __repr__(self):
        return f"<codec {self.name}>"


class PsiCodec(Codec):
    """``(l, k) -> 2^l + k`` on ``{(l, k) : 0 <= k <= 2^l - 1}``."""

    name = "psi"

    def encode(self, l, k):
        if l < 0 or not 0 <= k < (1 << l):
            raise ValueError(f"({l}, {k}) outside the domain")
        return (1 << l) + k

    def decode(self, n):
        if n < 1:
            raise ValueError("indices start at 1")
        l = n.bit_length() - 1
        return l, n - (1 << l)


class DisjointUnionCodec(Codec):
    """Two copies of the naturals: copy 1 to the evens, copy 2 to the odds."""

    name = "sqcup"

    def encode(self, copy, n):
        if copy == 1:
            return 2 * n
        if copy == 2:
            return 2 * n - 1
        raise ValueError("copy must be 1 or 2")

    def decode(self, n):
        return (1, n // 2) if n % 2 == 0 else (2, (n + 1) // 2)

    def inclusion(self, copy: int) -> PInj:
        return f_gen(0) if copy == 1 else f_gen(1)


class DyadicPairCodec(Codec):
    """``(m, n) -> 2^(n-1) (2m - 1)``.  Row ``n = 1`` goes onto the odds."""

    name = "dyadic"

    def encode(self, m, n):
        if m < 1 or n < 1:
            raise ValueError("indices start at 1")
        return (2 * m - 1) << (n - 1)

    def decode(self, x):
        if x < 1:
            raise ValueError("indices start at 1")
        v = (x & -x).bit_length() - 1
        return ((x >> v) + 1) // 2, v + 1

    def row(self, n: int) -> PInj:
        """``m -> (m, n)`` as a partial injection."""
        return affine(1 << n, -(1 << (n - 1)))


class CantorPairCodec(Codec):
    """Diagonal enumeration ``(m, n) -> (m+n-1)(m+n-2)/2 + n``."""

    name = "cantor"

    def encode(self, m, n):
        if m < 1 or n < 1:
            raise ValueError("indices start at 1")
        d = m + n - 1
        return d * (d - 1) // 2 + n

    def decode(self, x):
        from math import isqrt
        d = (1 + isqrt(8 * x - 7)) // 2
        while d * (d - 1) // 2 >= x:
            d -= 1
        while d * (d + 1) // 2 < x:
            d += 1
        n = x - d * (d - 1) // 2
        return d + 1 - n, n


PSI = PsiCodec()
SQCUP = DisjointUnionCodec()
DYADIC = DyadicPairCodec()
CANTOR = CantorPairCodec()


# ---------------------------------------------------------------- text syntax

def parse_pinj(text: str) -> PInj:
    """Parse a partial injection literal; parts joined by ``|`` are glued."""
    pieces, points = [], []
    glued = []
    for part in _split_top(text.replace(" ", ""), "|"):
        f = _parse_pinj_part(part)
        if isinstance(f, tuple):
            pieces.append(f)
        elif isinstance(f, dict):
            points += f.items()
        else:
            glued.append(f)
    for g in glued:
        pieces += list(g.pieces())
        points += g.points()
    return PInj.make(pieces, points)


_WORD = re.compile(r"s\[([12]*)\]")


def _parse_pinj_part(part: str):
    if part in ("s1", "s2"):
        return s_gen(int(part[1]))
    if part in ("f0", "f1"):
        return f_gen(int(part[1]))
    if part in ("id", "1"):
        return identity()
    if part in ("empty", "0"):
        return empty_map()
    m = re.fullmatch(r"s\[([^\]]*)\]", part)
    if m:
        return s_word(m.group(1))
    if part.startswith("P[") and part.endswith("]"):
        return projection(parse_set(part[2:-1]))
    m = re.fullmatch(r"aff\(([-+\d/]+),([-+\d/]+)\)(?:@prog\((\d+),(\d+)\))?", part)
    if m:
        s = int(m.group(3) or 1)
        step = int(m.group(4) or 1)
        return (s, step, Fraction(m.group(1)), Fraction(m.group(2)))
    m = re.fullmatch(r"map\{(.*)\}", part)
    if m:
        out = {}
        body = m.group(1)
        for pair in filter(None, body.split(",")):
            a, b = pair.split("->")
            out[int(a)] = int(b)
        return out
    raise ValueError(f"bad partial injection literal {part!r}")
