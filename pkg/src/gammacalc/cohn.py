"""The Cohn ring on two generators.

Elements are integer combinations of the basis words ``s_mu s_nu†``; the only
relations are ``s_i† s_j = delta_ij``, so the words form a free basis and the
normal form is just a dictionary.  The defect idempotent
``1 - s_1 s_1† - s_2 s_2†`` generates a copy of ``M_inf`` via
``E_{s_mu(1), s_nu(1)} -> s_mu (1 - s_1 s_1† - s_2 s_2†) s_nu†``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .gami import OpSum
from .pinj import BadWord, PInj, check_word, s_word, s_word_value
from .scalars import Ring
from .seqspace import SymSeq


class NoWord(ValueError):
    """An index is not of the form s_mu(1)."""


Word = tuple  # tuple of 1s and 2s


@dataclass(frozen=True, order=True)
class CohnWord:
    mu: Word
    nu: Word

    def __post_init__(self):
        object.__setattr__(self, "mu", check_word(self.mu))
        object.__setattr__(self, "nu", check_word(self.nu))

    def dagger(self) -> "CohnWord":
        return CohnWord(self.nu, self.mu)

    def mul(self, other: "CohnWord"):
        """Product of basis words, or None when it vanishes."""
        nu, rho = self.nu, other.mu
        if rho[:len(nu)] == nu:
            return CohnWord(self.mu + rho[len(nu):], other.nu)
        if nu[:len(rho)] == rho:
            return CohnWord(self.mu, other.nu + nu[len(rho):])
        return None

    def pinj(self) -> PInj:
        return s_word(self.mu) * s_word(self.nu).dagger()

    def __str__(self):
        m = "".join(map(str, self.mu))
        n = "".join(map(str, self.nu))
        if not m and not n:
            return "1"
        if not n:
            return f"S[{m}]"
        if not m:
            return f"S'[{n}]"
        return f"S[{m}]S'[{n}]"


ONE_WORD = CohnWord((), ())


class CohnElem:
    """A finite integer combination of words ``s_mu s_nu†``."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {w: int(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, mu=(), nu=(), coeff: int = 1) -> "CohnElem":
        return cls({CohnWord(tuple(mu), tuple(nu)): coeff})

    @classmethod
    def one(cls) -> "CohnElem":
        return cls({ONE_WORD: 1})

    @classmethod
    def zero(cls) -> "CohnElem":
        return cls()

    @classmethod
    def integer(cls, n: int) -> "CohnElem":
        return cls({ONE_WORD: n})

    def __add__(self, other: "CohnElem") -> "CohnElem":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return CohnElem(out)

    def __neg__(self):
        return CohnElem({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CohnElem({w: c * other for w, c in self.terms.items()})
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1.mul(w2)
                if w is not None:
                    out[w] = out.get(w, 0) + c1 * c2
        return CohnElem(out)

    __rmul__ = lambda self, n: self * n  # integer scalars commute

    def dagger(self) -> "CohnElem":
        return CohnElem({w.dagger(): c for w, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, CohnElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for w in sorted(self.terms, key=lambda w: (len(w.mu) + len(w.nu), w.mu, w.nu)):
            c = self.terms[w]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = str(w) if mag == 1 else (f"{mag}" if w == ONE_WORD else f"{mag}*{w}")
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"CohnElem({self})"


S1 = CohnElem.word((1,))
S2 = CohnElem.word((2,))


def defect() -> CohnElem:
    """``1 - s_1 s_1† - s_2 s_2†``."""
    return CohnElem.one() - CohnElem.word((1,), (1,)) - CohnElem.word((2,), (2,))


def f_hat() -> CohnElem:
    """``1 - s_1 s_1† - s_2 s_2† + s_2 s_1† + s_1 s_2†``."""
    return defect() + CohnElem.word((2,), (1,)) + CohnElem.word((1,), (2,))


def decode_index(i: int) -> Word:
    """The word mu with ``s_mu(1) = i``."""
    if i < 1:
        raise NoWord(f"{i} is not a positive index")
    l = i.bit_length() - 1
    rest = i - (1 << l)
    return tuple(((rest >> t) & 1) + 1 for t in range(l))


def minf_embed(i: int, j: int) -> CohnElem:
    """Image of the matrix unit ``E_ij``."""
    mu, nu = decode_index(i), decode_index(j)
    return CohnElem.word(mu, nu) - CohnElem.word(mu + (1,), nu + (1,)) - CohnElem.word(mu + (2,), nu + (2,))


def rho(x: CohnElem, ring: Ring, alpha: SymSeq | None = None) -> OpSum:
    """``diag(alpha) * sum c_w U_w`` (alpha defaults to 1)."""
    out = OpSum.zero(ring)
    for w, c in x.terms.items():
        out = out + OpSum.U(w.pinj(), ring).lmul(ring.from_fraction(c))
    if alpha is not None:
        out = OpSum.diag(alpha) * out
    return out


def rho_crossed(terms, ring: Ring) -> OpSum:
    """``sum diag(alpha) U_w`` for pairs ``(alpha, CohnWord)``."""
    out = OpSum.zero(ring)
    for alpha, w in terms:
        out = out + OpSum.term(alpha, w.pinj())
    return out


# ---------------------------------------------------------------- injectivity

@dataclass
class CohnNormalForm:
    """``sum x_ij # E_ij + sum beta_{mu,nu} # s_mu s_nu†`` with ``|mu| = top`` and ``i < 2**top``."""

    top: int
    matrix: dict          # (i, j) -> Value
    words: dict           # CohnWord -> SymSeq, projected onto ran(s_mu)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.matrix.values()) and all(b.is_zero() for b in self.words.values())


def normal_form(terms, ring: Ring) -> CohnNormalForm:
    """Rewrite ``sum alpha # s_mu s_nu†`` (pairs ``(alpha, CohnWord)``) into the top-length form."""
    terms = list(terms)
    top = max((len(w.mu) for _, w in terms), default=0)
    matrix: dict = {}
    words: dict = {}
    todo = [(alpha, w.mu, w.nu) for alpha, w in terms]
    while todo:
        alpha, mu, nu = todo.pop()
        if len(mu) == top:
            w = CohnWord(mu, nu)
            words[w] = words[w] + alpha if w in words else alpha
            continue
        i, j = s_word_value(mu, 1), s_word_value(nu, 1)
        v = alpha.at(i)
        matrix[(i, j)] = matrix[(i, j)] + v if (i, j) in matrix else v
        todo.append((alpha, mu + (1,), nu + (1,)))
        todo.append((alpha, mu + (2,), nu + (2,)))
    words = {w: b.restrict(s_word(w.mu).range()) for w, b in words.items()}
    return CohnNormalForm(top, {k: v for k, v in matrix.items() if not v.is_zero()},
                          {w: b for w, b in words.items() if not b.is_zero()})


def injectivity_probe(terms, ring: Ring) -> bool:
    """Whether ``sum alpha # s_mu s_nu†`` is zero, decided on the normal form."""
    return normal_form(terms, ring).is_zero()


# ---------------------------------------------------------------- text

def parse_word(text: str) -> CohnWord:
    """``S1``, ``S2'``, ``S[12]``, ``S'[21]``, ``S[12]S'[21]`` or ``1``."""
    t = text.replace(" ", "")
    if t == "1":
        return ONE_WORD
    m = re.fullmatch(r"S\[([^\]]*)\]S'\[([^\]]*)\]", t)
    if m:
        return CohnWord(check_word(m.group(1)), check_word(m.group(2)))
    m = re.fullmatch(r"S\[([^\]]*)\]", t)
    if m:
        return CohnWord(check_word(m.group(1)), ())
    m = re.fullmatch(r"S'\[([^\]]*)\]", t)
    if m:
        return CohnWord((), check_word(m.group(1)))
    m = re.fullmatch(r"S([12])('?)", t)
    if m:
        w = (int(m.group(1)),)
        return CohnWord((), w) if m.group(2) else CohnWord(w, ())
    raise BadWord(f"bad Cohn word {text!r}")
