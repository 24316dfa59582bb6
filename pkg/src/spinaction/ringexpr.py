"""Parser for ring expressions such as ``(1 - t1)^2`` or ``z1*h1 + h2``.

Grammar (whitespace is ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := power ('*' power)*
    power  := atom ['^' ['-'] INT]
    atom   := INT | 't1' | 'h' INT | 'z' INT | '(' expr ')' | '-' atom

``t1`` is the sign representation 1~, ``h<i>`` the two-dimensional h_i (``h0`` = 1 + t1), and
``z<f>`` the generator of the f-th cyclic factor (xi for odd type).  Negative exponents are
allowed only on characters.
"""

from __future__ import annotations

import re

from .errors import GroupMismatch, ParseError
from .repring import GroupSpec, RepElement

_TOKEN = re.compile(r"\s*(?:(\d+)|(t1)|h(\d+)|z(\d+)|([-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, object]]:
    out: list[tuple[str, object]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at column {pos}: {text[pos:pos + 10]!r}")
        num, tilde, h, z, op = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif tilde:
            out.append(("t1", None))
        elif h is not None:
            out.append(("h", int(h)))
        elif z is not None:
            out.append(("z", int(z)))
        else:
            out.append((op, None))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, group: GroupSpec) -> None:
        self.toks = _tokenize(text)
        self.i = 0
        self.group = group

    def peek(self) -> str | None:
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind: str) -> object:
        if self.peek() != kind:
            raise ParseError(f"expected {kind!r}, found {self.peek()!r}")
        tok = self.toks[self.i]
        self.i += 1
        return tok[1]

    def parse(self) -> RepElement:
        if not self.toks:
            raise ParseError("empty expression")
        val = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input starting at token {self.toks[self.i][0]!r}")
        return val

    def expr(self) -> RepElement:
        neg = False
        if self.peek() == "-":
            self.take("-")
            neg = True
        val = self.term()
        if neg:
            val = -val
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.take(op)
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> RepElement:
        val = self.power()
        while self.peek() == "*":
            self.take("*")
            val = val * self.power()
        return val

    def power(self) -> RepElement:
        start = self.i
        base, char = self.atom()
        if self.peek() != "^":
            return base
        self.take("^")
        sign = 1
        if self.peek() == "-":
            self.take("-")
            sign = -1
        n = sign * self.take("int")
        if n >= 0:
            return base**n
        if char is None:
            raise ParseError(f"negative exponent on a non-character (token {start})")
        f, e = char
        chi = [0] * len(self.group.orders)
        chi[f] = e * n
        return RepElement.char(self.group, chi)

    def atom(self) -> tuple[RepElement, tuple[int, int] | None]:
        kind = self.peek()
        g = self.group
        if kind == "int":
            return RepElement.one(g) * self.take("int"), None
        if kind == "t1":
            self.take("t1")
            return RepElement.tilde(g), None
        if kind == "h":
            i = self.take("h")
            return (RepElement.one(g) + RepElement.tilde(g) if i == 0 else RepElement.h(g, i)), None
        if kind == "z":
            f = self.take("z")
            if not 1 <= f <= len(g.orders):
                raise GroupMismatch(f"z{f} needs a factor {f}, group {g} has {len(g.orders)}")
            chi = [0] * len(g.orders)
            chi[f - 1] = 1
            return RepElement.char(g, chi), (f - 1, 1)
        if kind == "(":
            self.take("(")
            val = self.expr()
            self.take(")")
            return val, None
        if kind == "-":
            self.take("-")
            val, _ = self.atom()
            return -val, None
        raise ParseError(f"unexpected token {kind!r}")


def parse_ring(text: str, group: GroupSpec | None = None) -> RepElement:
    return _Parser(text, group or GroupSpec.trivial()).parse()
