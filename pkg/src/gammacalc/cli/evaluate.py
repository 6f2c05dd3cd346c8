"""Typing and evaluation of parsed expressions."""

from __future__ import annotations

from fractions import Fraction

from ..cohn import CohnElem, minf_embed, parse_word, rho
from ..crossed import CrossedElem, cp_to_gami
from ..gami import OpSum
from ..pinj import identity as pinj_identity
from ..pinj import parse_pinj, parse_set
from ..scalars import QQ, QQI, Ring, RingValue
from ..seqspace import SymSeq, parse_profile, parse_symseq
from ..sumring import as_lazy, oplus, phi
from .parser import Node, parse

SCALAR, SEQ, OP, COHN, CROSSED, LAZY = "Scalar", "Seq", "Op", "Cohn", "Crossed", "Lazy"


class ExprTypeError(TypeError):
    def __init__(self, msg: str, node: Node, src: str = ""):
        where = f" at columns {node.span[0] + 1}-{node.span[1]}" if node.span else ""
        snippet = f" in {src[node.span[0]:node.span[1]]!r}" if src else ""
        super().__init__(f"type error{where}{snippet}: {msg}")
        self.msg, self.node = msg, node


_LIT_TYPES = {"scalar": SCALAR, "basis": SEQ, "chi": SEQ, "profile": SEQ, "seq": SEQ, "sugar": SEQ,
              "pinj": OP, "cohn": COHN, "unit": COHN}


def _join(op: str, a: str, b: str, node: Node) -> str:
    """Result type of ``a op b`` with scalars promoted to the other side."""
    if op == "*":
        if a == SCALAR:
            return b
        if b == SCALAR:
            return a
        if a == b and a in (SEQ, OP, COHN, CROSSED, LAZY):
            return a
        if {a, b} == {OP, LAZY}:
            return LAZY
        raise ExprTypeError(f"cannot multiply {a} by {b}", node)
    if a == b:
        return a
    if SCALAR in (a, b):
        other = b if a == SCALAR else a
        if other in (SEQ, OP, COHN, LAZY, CROSSED):
            return other
    if {a, b} == {OP, LAZY}:
        return LAZY
    raise ExprTypeError(f"expected matching operands, got {a} and {b}", node)


def _strip_dag(node: Node) -> tuple[Node, int]:
    flips = 0
    while node.op == "dag":
        node, flips = node.args[0], flips + 1
    return node, flips


def infer(node: Node) -> str:
    op = node.op
    if op == "lit":
        return _LIT_TYPES[node.kind]
    if op in ("+", "-", "*"):
        return _join(op, infer(node.args[0]), infer(node.args[1]), node)
    if op == "neg":
        return infer(node.args[0])
    if op == "dag":
        t = infer(node.args[0])
        if t not in (SCALAR, SEQ, OP, COHN):
            raise ExprTypeError(f"expected Scalar, Seq, Op or Cohn under ', got {t}", node)
        return t
    if op == "#":
        left, rhs = infer(node.args[0]), _strip_dag(node.args[1])[0]
        if left not in (SEQ, SCALAR):
            raise ExprTypeError(f"expected Seq before '#', got {left}", node)
        if rhs.op != "lit" or rhs.kind not in ("pinj", "cohn"):
            raise ExprTypeError(f"expected U[...] or a Cohn word after '#', got {rhs.op}", node)
        return CROSSED
    if op == "diag":
        t = infer(node.args[0])
        if t not in (SEQ, SCALAR):
            raise ExprTypeError(f"expected Seq, got {t}", node)
        return OP
    if op == "Phi":
        t = infer(node.args[0])
        if t not in (OP, SCALAR, COHN):
            raise ExprTypeError(f"expected Op, got {t}", node)
        return LAZY
    if op == "rho":
        t = infer(node.args[0])
        if t not in (COHN, CROSSED):
            raise ExprTypeError(f"expected Cohn or Crossed, got {t}", node)
        return OP
    if op == "oplus":
        ts = [infer(a) for a in node.args]
        for t in ts:
            if t not in (OP, LAZY, SCALAR, COHN):
                raise ExprTypeError(f"expected Op, got {t}", node)
        return LAZY if LAZY in ts else OP
    raise ExprTypeError(f"unknown operation {op}", node)


# ---------------------------------------------------------------- evaluation

def _integer(a: RingValue) -> int:
    q = Fraction(str(a))
    if q.denominator != 1:
        raise ValueError(f"Cohn coefficients are integers, got {a}")
    return int(q)


def _promote(v, target: str, ring: Ring):
    if target == SEQ:
        return SymSeq.const(v)
    if target == OP:
        return OpSum.scalar(v)
    if target == COHN:
        return CohnElem.integer(_integer(v))
    if target == LAZY:
        return as_lazy(OpSum.scalar(v))
    if target == CROSSED:
        return CrossedElem.term(SymSeq.const(v), pinj_identity())
    raise ValueError(f"cannot promote a scalar to {target}")


def _as(value, t: str, target: str, ring: Ring):
    if t == target:
        return value
    if t == SCALAR:
        return _promote(value, target, ring)
    if t == OP and target == LAZY:
        return as_lazy(value)
    if t == COHN and target in (OP, LAZY):
        # Cohn elements act on sequences through rho
        return _as(rho(value, ring), OP, target, ring)
    raise ValueError(f"cannot use {t} as {target}")


class Evaluator:
    def __init__(self, ring: Ring):
        self.ring = ring

    def scalar(self, text: str) -> RingValue:
        if text == "i":
            if self.ring != QQI:
                raise ValueError("the imaginary unit needs ring Q(i)")
            return self.ring.parse("i")
        if text.endswith("i") and self.ring != QQI:
            raise ValueError("imaginary scalars need ring Q(i)")
        return self.ring.parse(text)

    def literal(self, node: Node):
        k, text, ring = node.kind, node.text, self.ring
        if k == "scalar":
            return self.scalar(text)
        if k == "basis":
            return SymSeq.basis(int(text), ring.one())
        if k == "chi":
            return SymSeq.chi(parse_set(text), ring)
        if k == "profile":
            prof = parse_profile(text)
            start = next(n for n in range(1, 10_000) if prof.defined_at(n))
            return parse_symseq(f"on(prog({start},1); (1)*{text})", ring)
        if k == "seq":
            return parse_symseq(text, ring)
        if k == "sugar":
            return self.sugar(text)
        if k == "pinj":
            return OpSum.U(parse_pinj(text), ring)
        if k == "cohn":
            w = parse_word(text)
            return CohnElem({w: 1})
        if k == "unit":
            i, j = text.split(",")
            return minf_embed(int(i), int(j))
        raise ValueError(f"unknown literal {k}")

    def sugar(self, text: str) -> SymSeq:
        """``geom(c; r)`` is ``c r^(n-1)``, ``logpow(e; g)`` is ``n^-e log(n+1)^-g``, ``list[..]`` starts at 1."""
        ring = self.ring
        if text.startswith("list["):
            return SymSeq.from_list([self.scalar(x.strip()) for x in text[5:-1].split(",")])
        head, body = text[:-1].split("(", 1)
        a, b = (x.strip() for x in body.split(";"))
        if head == "geom":
            return SymSeq.geometric(self.scalar(a), Fraction(b))
        return SymSeq.logpower(ring.one(), Fraction(a), Fraction(b))

    def eval(self, node: Node):
        """Return ``(type, value)``."""
        op, ring = node.op, self.ring
        if op == "lit":
            return infer(node), self.literal(node)
        if op in ("+", "-", "*"):
            (ta, a), (tb, b) = self.eval(node.args[0]), self.eval(node.args[1])
            t = _join(op, ta, tb, node)
            if t == COHN and ring != QQ:
                # Cohn coefficients are integers, whatever the ambient ring
                if ta == SCALAR:
                    a = Evaluator(QQ).eval(node.args[0])[1]
                if tb == SCALAR:
                    b = Evaluator(QQ).eval(node.args[1])[1]
            if op == "*":
                return t, self._mul(ta, a, tb, b, t)
            a, b = _as(a, ta, t, ring), _as(b, tb, t, ring)
            if op == "+":
                return t, a + b
            if t == LAZY:
                return t, a + _neg(LAZY, b, ring)
            return t, a - b
        if op == "neg":
            t, v = self.eval(node.args[0])
            return t, _neg(t, v, ring)
        if op == "dag":
            t, v = self.eval(node.args[0])
            if t == SCALAR or t == SEQ:
                return t, v.conjugate()
            if t == OP:
                return t, v.adjoint()
            return t, v.dagger()
        if op == "#":
            (ta, a), (rhs, flips) = self.eval(node.args[0]), _strip_dag(node.args[1])
            if ta == SCALAR:
                a = SymSeq.const(a)
            if rhs.kind == "pinj":
                b = parse_pinj(rhs.text)
            else:
                b = next(iter(self.literal(rhs).terms))
            if flips % 2:
                b = b.dagger()
            return CROSSED, CrossedElem.term(a, b)
        if op == "diag":
            t, v = self.eval(node.args[0])
            return OP, OpSum.diag(_as(v, t, SEQ, ring))
        if op == "Phi":
            t, v = self.eval(node.args[0])
            return LAZY, phi(_as(v, t, OP, ring))
        if op == "rho":
            t, v = self.eval(node.args[0])
            return OP, rho(v, ring) if t == COHN else cp_to_gami(v)
        if op == "oplus":
            vals = [self.eval(a) for a in node.args]
            t = infer(node)
            args = [_as(v, tv, OP, ring) if tv in (SCALAR, COHN) else v for tv, v in vals]
            return t, oplus(*args)
        raise ValueError(f"unknown operation {op}")

    def _mul(self, ta, a, tb, b, t):
        ring = self.ring
        if ta == SCALAR and tb == SCALAR:
            return a * b
        if ta == SCALAR or tb == SCALAR:
            c, x, tx = (a, b, tb) if ta == SCALAR else (b, a, ta)
            left = ta == SCALAR
            if tx in (SEQ, OP):
                return x.lmul(c) if left else x.rmul(c)
            if tx == COHN:
                return x * _integer(c)
            if tx == CROSSED:
                return CrossedElem(ring, [((f_a.lmul(c) if left else f_a.rmul(c)), f) for f_a, f in x.terms])
            return as_lazy(OpSum.scalar(c)) * x if left else x * as_lazy(OpSum.scalar(c))
        if t == LAZY:
            return as_lazy(a) * as_lazy(b)
        return a * b


def _neg(t, v, ring):
    if t == LAZY:
        return as_lazy(OpSum.scalar(-ring.one())) * v
    return -v


def evaluate(src: str, ring: Ring):
    node = parse(src)
    try:
        infer(node)
    except ExprTypeError as e:
        raise ExprTypeError(e.msg, e.node, src) from None
    return Evaluator(ring).eval(node)


def render(t: str, v) -> str:
    """Canonical text of a value; re-parses to an equal value."""
    if t == LAZY:
        raise ValueError("Phi values are infinite sums; inspect them with window --n N")
    if t == CROSSED:
        return str(v.normalized())
    return str(v)


__all__ = ["ExprTypeError", "Evaluator", "evaluate", "render", "infer",
           "SCALAR", "SEQ", "OP", "COHN", "CROSSED", "LAZY"]
