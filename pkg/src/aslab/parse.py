"""Tiny recursive-descent parser for carrier literals.

One grammar serves rational functions, series and univariate polynomials:
`+ - * /`, parentheses, `^` with an integer or a parenthesised rational
exponent, integer constants, field-element lists `[c0,c1,...]`, the
carrier variable, and `O(...)` for a truncation cap. Evaluation is
delegated to an adapter object so each carrier decides what it accepts.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|(\[[^\]]*\])|([A-Za-z_]\w*)|(.))")


def tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        num, lst, ident, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif lst is not None:
            out.append(("list", lst))
        elif ident is not None:
            out.append(("ident", ident))
        elif op is not None and not op.isspace():
            out.append(("op", op))
    return out


class _Parser:
    def __init__(self, text: str, adapter):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.a = adapter

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"unexpected {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            v = self.a.add(v, rhs) if op == "+" else self.a.sub(v, rhs)
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            v = self.a.mul(v, rhs) if op == "*" else self.a.div(v, rhs)
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return self.a.neg(self.unary())
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base_is_var = self.peek()[0] == "ident" and self.peek()[1] != "O"
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            e = self.exponent()
            if base_is_var:
                return self.a.monomial(e)
            if e.denominator != 1:
                raise ParseError("rational exponents apply to the variable only")
            return self.a.pow(v, int(e))
        return v

    def exponent(self) -> Fraction:
        if self.peek() == ("op", "("):
            self.take()
            e = self.signed_int()
            if self.peek() == ("op", "/"):
                self.take()
                e = Fraction(e, int(self.take("num")[1]))
            self.take("op", ")")
            return Fraction(e)
        return Fraction(self.signed_int())

    def signed_int(self) -> int:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        return sign * int(self.take("num")[1])

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return self.a.const(int(val))
        if kind == "list":
            self.take()
            body = val[1:-1].strip()
            return self.a.ffconst([int(c) for c in body.split(",")] if body else [])
        if kind == "ident":
            self.take()
            if val == "O":
                self.take("op", "(")
                inner = self.expr()
                self.take("op", ")")
                return self.a.big_o(inner)
            if val not in self.a.variables:
                raise ParseError(f"unknown variable {val!r}")
            return self.a.monomial(Fraction(1))
        if (kind, val) == ("op", "("):
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        raise ParseError(f"unexpected {val!r} in {self.text!r}")


def parse_with(text: str, adapter):
    return _Parser(text, adapter).parse()


def fmt_exp(e: Fraction) -> str:
    e = Fraction(e)
    if e.denominator == 1:
        return str(e.numerator) if e >= 0 else f"({e.numerator})"
    return f"({e.numerator}/{e.denominator})"
