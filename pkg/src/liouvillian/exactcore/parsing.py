"""Text format for polynomials.

Accepts signed sums of monomials such as ``x^6 - 9*x^2 + 1/2`` or
``3*a0*b1^2 - lam``; ``*`` may be omitted, parentheses and division by a
rational constant are allowed, and identifiers may carry trailing primes
(``a''``) for jet variables.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .multipoly import MultiPoly, natural_key
from .unipoly import UniPoly, from_multipoly

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*'*)|(\*\*|[-+*/^()]))")


class PolyParseError(ValueError):
    def __init__(self, text: str, pos: int, message: str):
        self.text = text
        self.pos = pos
        self.message = message
        super().__init__(f"{message} at position {pos}\n{self.caret()}")

    def caret(self) -> str:
        return f"  {self.text}\n  {' ' * self.pos}^"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN_RE.match(text, pos)
            if not m:
                at = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise PolyParseError(text, at, f"unexpected character {text[at]!r}")
            kind = "num" if m.group(1) else "id" if m.group(2) else "op"
            value = m.group(1) or m.group(2) or m.group(3)
            self.tokens.append((kind, "^" if value == "**" else value, m.start(m.lastindex)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, message: str):
        raise PolyParseError(self.text, self.peek()[2], message)

    def parse(self) -> MultiPoly:
        if not self.tokens:
            raise PolyParseError(self.text, 0, "empty polynomial")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self) -> MultiPoly:
        sign = 1
        while self.peek()[1] in "+-" and self.peek()[0] == "op":
            if self.take()[1] == "-":
                sign = -sign
        acc = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            sign = 1 if op == "+" else -1
            while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
                if self.take()[1] == "-":
                    sign = -sign
            acc = acc + self.term() * sign
        return acc

    def term(self) -> MultiPoly:
        acc = self.power()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.take()
                acc = acc * self.power()
            elif kind == "op" and value == "/":
                self.take()
                start = self.peek()[2]
                den = self.power()
                if not den.is_constant() or not den:
                    raise PolyParseError(self.text, start, "can only divide by a nonzero constant")
                acc = acc * Fraction(1) / den.constant_value()
            elif kind in ("num", "id") or (kind == "op" and value == "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, value, _ = self.peek()
            if kind != "num":
                self.fail("exponent must be a non-negative integer")
            self.take()
            return base ** int(value)
        return base

    def atom(self) -> MultiPoly:
        kind, value, _ = self.peek()
        if kind == "num":
            self.take()
            return MultiPoly.constant(int(value))
        if kind == "id":
            self.take()
            return MultiPoly.variable(value)
        if kind == "op" and value == "(":
            self.take()
            inner = self.expr()
            if self.peek()[1] != ")":
                self.fail("missing ')'")
            self.take()
            return inner
        if kind == "op" and value == "-":
            self.take()
            return -self.power()
        self.fail("expected a number, variable or '('" if kind != "end" else "unexpected end of input")


def parse_multipoly(text: str, vars: Sequence[str] | None = None) -> MultiPoly:
    """Parse into a MultiPoly over ``vars`` (default: used variables, naturally sorted)."""
    p = _Parser(text).parse()
    used = p.used_vars()
    if vars is None:
        return p.with_vars(sorted(used, key=natural_key))
    unknown = [v for v in used if v not in vars]
    if unknown:
        raise PolyParseError(text, text.find(unknown[0]), f"unknown variable {unknown[0]!r}")
    return p.with_vars(vars)


def parse_unipoly(text: str, var: str = "x") -> UniPoly:
    """Parse into a UniPoly in ``var``; other identifiers become symbolic coefficients."""
    return from_multipoly(_Parser(text).parse(), var)
