"""Expression parsing shared by the CLI and the field-descriptor grammar.

Grammar (explicit ``*`` required, no implicit multiplication)::

    expr    := term (('+'|'-') term)*
    term    := unary (('*'|'/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' INT)?
    atom    := INT | NAME | '(' expr ')'

NAME must be the variable (``x`` by default) or the field's declared
extension generator; anything else raises :class:`UnknownSymbol`.  Values
are built as rational functions, so ``(1/2)*x^3 - i*x`` and
``(x^4+1)/x^2`` both parse exactly.
"""

from __future__ import annotations

import re
from typing import List, Tuple, Union

from . import errors
from .field import FieldCtx, QuadExtField
from .poly import Poly
from .ratfunc import RatFunc

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|([()+\-*/^]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise errors.ParseError(f"unexpected character {text[pos]!r}",
                                    position=pos)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, field: FieldCtx, var_name: str):
        self.text = text
        self.field = field
        self.var_name = var_name
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise errors.ParseError("unexpected end of expression",
                                    position=len(self.text))
        self.i += 1
        return tok

    def expect_op(self, op: str):
        tok = self.next()
        if tok[0] != "op" or tok[1] != op:
            raise errors.ParseError(f"expected {op!r}", position=tok[2])

    def parse(self) -> RatFunc:
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise errors.ParseError(f"unexpected token {tok[1]!r}",
                                    position=tok[2])
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.i += 1
                rhs = self.term()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def term(self) -> RatFunc:
        value = self.unary()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "*/":
                self.i += 1
                rhs = self.unary()
                if tok[1] == "*":
                    value = value * rhs
                else:
                    if rhs.num.is_zero:
                        raise errors.ParseError("division by zero",
                                                position=tok[2])
                    value = value / rhs
            else:
                return value

    def unary(self) -> RatFunc:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.i += 1
            return -self.unary()
        if tok and tok[0] == "op" and tok[1] == "+":
            self.i += 1
            return self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.i += 1
            etok = self.next()
            if etok[0] != "int":
                raise errors.ParseError("exponent must be a nonnegative integer",
                                        position=etok[2])
            return base ** int(etok[1])
        return base

    def atom(self) -> RatFunc:
        tok = self.next()
        kind, text, pos = tok
        if kind == "int":
            return RatFunc.constant(self.field.from_int(int(text)))
        if kind == "name":
            if text == self.var_name:
                return RatFunc.x(self.field)
            if (isinstance(self.field, QuadExtField)
                    and text == self.field.gen_name):
                return RatFunc.constant(self.field.generator())
            raise errors.UnknownSymbol(f"unknown symbol {text!r}", position=pos)
        if kind == "op" and text == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        raise errors.ParseError(f"unexpected token {text!r}", position=pos)


def parse_ratfunc(text: str, field: FieldCtx, var_name: str = "x") -> RatFunc:
    if not text.strip():
        raise errors.ParseError("empty expression", position=0)
    return _Parser(text, field, var_name).parse()


def parse_expression(text: str, field: FieldCtx,
                     var_name: str = "x") -> Union[Poly, RatFunc]:
    """Parse to a Poly when the reduced denominator is constant, else RatFunc."""
    f = parse_ratfunc(text, field, var_name)
    if f.is_polynomial:
        return f.to_poly()
    return f


def parse_poly_over(text: str, field: FieldCtx, var_name: str = "x") -> Poly:
    f = parse_ratfunc(text, field, var_name)
    if not f.is_polynomial:
        raise errors.ParseError(f"{text!r} is not a polynomial")
    return f.to_poly()
