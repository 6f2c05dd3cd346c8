"""Crossed products ``S # Gamma`` and ``S # C_2`` as formal sums.

An element is a list of terms ``alpha # f`` with ``alpha`` a sequence and ``f``
a partial injection (or a Cohn word, read as ``s_mu s_nu†``).  Products follow

    (a # U_f)(b # U_g) = a f_*(b) # U_{fg}.

Two formal sums are identified modulo ``a # f = a chi_{ran f} # f`` and
``a # (f|A + f|B) = a # f|A + a # f|B``.  :meth:`CrossedElem.normal_form`
chooses a common threshold and period past which no two affine pieces on a
residue class meet, splits every term along that grid and sums coefficients
key by key; the element vanishes exactly when every summed coefficient does.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import affine_image, lcm
from .cohn import CohnWord
from .gami import OpSum
from .pinj import PInj, ProgressionSet, projection
from .scalars import Ring
from .seqspace import SymSeq, act


def _as_pinj(word) -> PInj:
    return word.pinj() if isinstance(word, CohnWord) else word


class CrossedElem:
    """A formal sum ``sum alpha_i # f_i``."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms=()):
        self.ring = ring
        self.terms = tuple((a, _as_pinj(w)) for a, w in terms)
        for a, _ in self.terms:
            if a.ring != ring:
                raise TypeError("coefficient ring mismatch")

    @classmethod
    def term(cls, alpha: SymSeq, word) -> "CrossedElem":
        return cls(alpha.ring, [(alpha, word)])

    @classmethod
    def zero(cls, ring: Ring) -> "CrossedElem":
        return cls(ring)

    def __add__(self, other: "CrossedElem") -> "CrossedElem":
        return CrossedElem(self.ring, self.terms + other.terms)

    def __neg__(self):
        return CrossedElem(self.ring, [(-a, f) for a, f in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "CrossedElem") -> "CrossedElem":
        return cp_mul(self, other)

    def normal_form(self) -> dict:
        """Canonical coefficients keyed by grid pieces; see the module docstring."""
        if not self.terms:
            return {}
        T = max(f.periodic.T for _, f in self.terms)
        L = lcm(*(f.periodic.M for _, f in self.terms))
        by_class: dict = {}
        for _, f in self.terms:
            classes, _ = f.periodic.refined(T, L)
            for r, lab in enumerate(classes):
                if lab is not None:
                    by_class.setdefault(r, set()).add(lab)
        # push T past every crossing of two affine maps on a common class
        for labs in by_class.values():
            labs = sorted(labs)
            for i, (p, q) in enumerate(labs):
                for p2, q2 in labs[i + 1:]:
                    if p != p2:
                        x = (q2 - q) / (p - p2)
                        if x.denominator == 1 and x >= T:
                            T = int(x) + 1
        out: dict = {}
        for alpha, f in self.terms:
            classes, finite = f.periodic.refined(T, L)
            for r, lab in enumerate(classes):
                if lab is None:
                    continue
                p, q = lab
                start = T + (r - T) % L
                img = affine_image((start, L), p, q)
                key = ("class", start, L, p, q)
                c = alpha.restrict(ProgressionSet.progression(*img))
                out[key] = out[key] + c if key in out else c
            for n, v in finite.items():
                key = ("point", n, v)
                c = alpha.restrict(ProgressionSet.finite([v]))
                out[key] = out[key] + c if key in out else c
        return {k: c for k, c in out.items() if not c.is_zero()}

    def normalized(self) -> "CrossedElem":
        terms = []
        for key, c in sorted(self.normal_form().items(), key=lambda kv: kv[0]):
            if key[0] == "class":
                _, s, L, p, q = key
                terms.append((c, PInj.make([(s, L, p, q)])))
            else:
                terms.append((c, PInj.from_dict({key[1]: key[2]})))
        return CrossedElem(self.ring, terms)

    def is_zero(self) -> bool:
        return not self.normal_form()

    def __eq__(self, other):
        return isinstance(other, CrossedElem) and (self - other).is_zero()

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({a}) # U[{f}]" for a, f in self.terms)

    def __repr__(self):
        return f"CrossedElem({self})"


def cp_mul(x: CrossedElem, y: CrossedElem) -> CrossedElem:
    """Termwise ``(a # f)(b # g) = a f_*(b) # fg``."""
    terms = []
    for a, f in x.terms:
        for b, g in y.terms:
            terms.append((a * act(f, b), f * g))
    return CrossedElem(x.ring, terms)


def cp_to_gami(x: CrossedElem) -> OpSum:
    """``alpha # f -> diag(alpha) U_f``."""
    out = OpSum.zero(x.ring)
    for a, f in x.terms:
        out = out + OpSum.term(a, f)
    return out


def preimage(x: OpSum) -> CrossedElem:
    """A formal sum mapping onto x, read off its single-entry-per-column terms."""
    return CrossedElem(x.ring, x.terms())


def relation_instance(alpha: SymSeq, a: ProgressionSet, f: PInj) -> CrossedElem:
    """``(alpha chi_A) # f - alpha # (P_A f)``, which is zero in the crossed product."""
    chi = SymSeq.chi(a, alpha.ring)
    return CrossedElem.term(alpha * chi, f) - CrossedElem.term(alpha, projection(a) * f)


# ---------------------------------------------------------------- unitalization

class UnitalSeq:
    """A sequence over the unitalization: an integral part plus an algebra part."""

    __slots__ = ("scalar", "algebra")

    def __init__(self, scalar: SymSeq, algebra: SymSeq):
        self.scalar = scalar
        self.algebra = algebra

    def __add__(self, other):
        return UnitalSeq(self.scalar + other.scalar, self.algebra + other.algebra)

    def __mul__(self, other):
        # (k, a)(l, b) = (kl, kb + la + ab), with integers acting by repeated addition
        k, a, l, b = self.scalar, self.algebra, other.scalar, other.algebra
        return UnitalSeq(k * l, _int_act(k, b) + _int_act(l, a) + a * b)

    def __eq__(self, other):
        return isinstance(other, UnitalSeq) and self.scalar == other.scalar and self.algebra == other.algebra

    __hash__ = None


def _int_act(k: SymSeq, a: SymSeq) -> SymSeq:
    """Pointwise ``k_n a_n`` for an integer-valued k, through the algebra's rationals."""
    ring = a.ring
    conv = SymSeq.make(ring,
                       [(s, m, tv.map_amplitudes(lambda v: ring.from_fraction(Fraction(str(v))))) for s, m, tv in k.classes()],
                       [(n, ring.from_fraction(Fraction(str(v)))) for n, v in k.points()])
    return conv * a


def retract(x: UnitalSeq) -> SymSeq:
    """The scalar part: the quotient map onto the scalar sequences."""
    return x.scalar


def section(k: SymSeq, algebra_ring: Ring) -> UnitalSeq:
    return UnitalSeq(k, SymSeq.zero(algebra_ring))


def split_check(x: UnitalSeq, algebra_ring: Ring) -> bool:
    """``retract . section = id`` and ``x - section(retract(x))`` lies in the algebra part."""
    s = section(retract(x), algebra_ring)
    rest = UnitalSeq(x.scalar - s.scalar, x.algebra - s.algebra)
    return retract(s) == x.scalar and rest.scalar.is_zero() and s + rest == x
