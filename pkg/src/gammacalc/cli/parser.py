"""Expression syntax.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom "'"* ('#' (U[pinj] | cohn word) "'"*)?
    atom   := '(' expr ')' | U[pinj] | diag(expr) | Phi(expr) | oplus(expr, expr) | rho(expr)
            | e(n) | chi[set] | pow(..) | geom(..) | log(..) | rad(..) | at(..) | on(..)
            | geom(c; r) | logpow(e; g) | list[a, b, ..]
            | cohn word | E(i, j) | number | i

Whitespace is ignored.  ``'`` is the adjoint (dagger, conjugate).
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class ExprSyntaxError(ValueError):
    def __init__(self, msg: str, src: str, pos: int):
        line = src.count("\n", 0, pos) + 1
        col = pos - (src.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"syntax error at line {line}, column {col}: {msg}")
        self.line, self.col = line, col


@dataclass(frozen=True)
class Node:
    op: str            # 'lit', '+', '-', '*', 'neg', 'dag', '#', or a call name
    args: tuple
    span: tuple        # (start, end) offsets into the source
    kind: str = ""     # literal kind
    text: str = ""     # literal text


_COHN = re.compile(r"S\[[12]*\]S'\[[12]*\]|S\[[12]*\]|S'\[[12]*\]|S[12]")
_NUM = re.compile(r"\d+(?:/\d+)?i?")
_PROFILE_CALLS = ("pow", "geom", "log", "rad")
_SEQ_CALLS = ("at", "on")
_UNARY_CALLS = ("diag", "Phi", "rho")


class Parser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        raise ExprSyntaxError(msg, self.src, self.pos if pos is None else pos)

    def ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.src.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            found = self.src[self.pos:self.pos + 8] or "end of input"
            self.error(f"expected {s!r}, found {found!r}")
        self.pos += len(s)

    def balanced(self, open_: str, close: str) -> str:
        """Text up to the bracket matching the one just consumed."""
        depth, start = 1, self.pos
        while self.pos < len(self.src):
            c = self.src[self.pos]
            if c == open_:
                depth += 1
            elif c == close:
                depth -= 1
                if depth == 0:
                    self.pos += 1
                    return self.src[start:self.pos - 1]
            self.pos += 1
        self.error(f"unclosed {open_!r}", start - 1)

    # ---------------------------------------------------------------- grammar
    def parse(self) -> Node:
        node = self.expr()
        self.ws()
        if self.pos != len(self.src):
            self.error(f"unexpected {self.src[self.pos]!r}")
        return node

    def expr(self) -> Node:
        start = self.pos
        node = self.term()
        while True:
            if self.peek("+"):
                op = "+"
            elif self.peek("-"):
                op = "-"
            else:
                return node
            self.pos += 1
            rhs = self.term()
            node = Node(op, (node, rhs), (start, self.pos))

    def term(self) -> Node:
        start = self.pos
        node = self.factor()
        while self.peek("*"):
            self.pos += 1
            rhs = self.factor()
            node = Node("*", (node, rhs), (start, self.pos))
        return node

    def factor(self) -> Node:
        self.ws()
        start = self.pos
        if self.peek("-"):
            self.pos += 1
            return Node("neg", (self.factor(),), (start, self.pos))
        node = self.atom()
        while self.peek("'"):
            self.pos += 1
            node = Node("dag", (node,), (start, self.pos))
        if self.peek("#"):
            self.pos += 1
            self.ws()
            if self.peek("U["):
                rhs = self.atom()
            else:
                rhs = self.cohn_word()
                if rhs is None:
                    self.error("expected U[...] or a Cohn word after '#'")
            while self.peek("'"):
                self.pos += 1
                rhs = Node("dag", (rhs,), (rhs.span[0], self.pos))
            node = Node("#", (node, rhs), (start, self.pos))
        return node

    def cohn_word(self) -> Node | None:
        self.ws()
        m = _COHN.match(self.src, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return Node("lit", (), m.span(), "cohn", m.group())

    def atom(self) -> Node:
        self.ws()
        start = self.pos
        src = self.src
        if self.peek("("):
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if self.peek("U["):
            self.pos += 2
            text = self.balanced("[", "]")
            return Node("lit", (), (start, self.pos), "pinj", text)
        if self.peek("chi["):
            self.pos += 4
            text = self.balanced("[", "]")
            return Node("lit", (), (start, self.pos), "chi", text)
        for name in _UNARY_CALLS:
            if self.peek(name + "("):
                self.pos += len(name) + 1
                arg = self.expr()
                self.expect(")")
                return Node(name, (arg,), (start, self.pos))
        if self.peek("oplus("):
            self.pos += 6
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect(")")
            return Node("oplus", (a, b), (start, self.pos))
        for name in _PROFILE_CALLS + _SEQ_CALLS + ("logpow",):
            if self.peek(name + "("):
                self.pos += len(name) + 1
                text = self.balanced("(", ")")
                kind = "profile" if name in _PROFILE_CALLS else "seq"
                if name == "logpow" or (name == "geom" and ";" in text):
                    kind = "sugar"
                return Node("lit", (), (start, self.pos), kind, f"{name}({text})")
        if self.peek("list["):
            self.pos += 5
            text = self.balanced("[", "]")
            return Node("lit", (), (start, self.pos), "sugar", f"list[{text}]")
        m = re.compile(r"e\(\s*(\d+)\s*\)").match(src, self.pos)
        if m:
            self.pos = m.end()
            return Node("lit", (), (start, self.pos), "basis", m.group(1))
        m = re.compile(r"E\(\s*(\d+)\s*,\s*(\d+)\s*\)").match(src, self.pos)
        if m:
            self.pos = m.end()
            return Node("lit", (), (start, self.pos), "unit", f"{m.group(1)},{m.group(2)}")
        node = self.cohn_word()
        if node is not None:
            return node
        m = _NUM.match(src, self.pos)
        if m:
            self.pos = m.end()
            return Node("lit", (), m.span(), "scalar", m.group())
        if src.startswith("i", self.pos) and not src[self.pos + 1:self.pos + 2].isalnum():
            self.pos += 1
            return Node("lit", (), (start, self.pos), "scalar", "i")
        if self.pos >= len(src):
            self.error("unexpected end of input")
        self.error(f"unexpected {src[self.pos]!r}")


def parse(src: str) -> Node:
    return Parser(src).parse()
