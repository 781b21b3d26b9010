"""Parser for the polynomial and operator text grammar.

The surface syntax is integers, rationals ``a/b``, the indeterminate ``x``,
the operator symbol ``D``, and ``+ - * ^ ( )``. Coefficients must stay to the
left of ``D`` inside any product: ``(2+x)*D^2`` parses, ``D*x`` does not;
input written in commuted form has to be expanded by the caller first.

Parsing produces a plain list of ``Poly`` coefficients (index = power of D)
so that this module stays independent of the operator ring.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple

from .polyring import Poly


class GrammarError(ValueError):
    """Syntax or structure error, with 1-based line/column positions."""

    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.column = col


_SYMBOLS = "+-*/^()"


def _tokenize(text: str) -> list:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if c in _SYMBOLS:
            tokens.append((c, c, i))
            i += 1
            continue
        if c == "x" or c == "D":
            tokens.append(("name", c, i))
            i += 1
            continue
        raise GrammarError(f"unexpected character {c!r}", text, i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    """Recursive descent over coefficient-list values.

    A value is a list of Poly coefficients; a bare polynomial is a list of
    length one. Products are only defined when they keep coefficients to the
    left of D powers.
    """

    def __init__(self, text: str, allow_d: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.allow_d = allow_d

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        raise GrammarError(message, self.text, tok[2])

    def parse(self) -> list:
        value = self.expr()
        if self.peek()[0] != "end":
            self.error("trailing input")
        return value

    def expr(self) -> list:
        value = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            value = _add(value, rhs) if op == "+" else _add(value, _neg(rhs))
        return value

    def term(self) -> list:
        value = self.factor()
        while self.peek()[0] in "*/":
            op, _, pos = self.take()
            if op == "*":
                rhs = self.factor()
                prod = _mul(value, rhs)
                if prod is None:
                    raise GrammarError(
                        "coefficients must appear left of D", self.text, pos
                    )
                value = prod
            else:
                rhs = self.factor()
                if len(rhs) != 1 or not rhs[0].is_constant() or rhs[0].is_zero():
                    raise GrammarError(
                        "division is only defined by nonzero integers", self.text, pos
                    )
                value = [c * (1 / rhs[0][0]) for c in value]
        return value

    def factor(self) -> list:
        kind, val, pos = self.peek()
        if kind == "-":
            self.take()
            return _neg(self.factor())
        if kind == "+":
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek()[0] == "^":
            _, _, cpos = self.take()
            kind, val, _ = self.peek()
            if kind != "int":
                self.error("exponent must be a non-negative integer")
            self.take()
            result = [Poly.one()]
            for _ in range(val):
                nxt = _mul(result, base)
                if nxt is None:
                    raise GrammarError(
                        "coefficients must appear left of D", self.text, cpos
                    )
                result = nxt
            return result
        return base

    def atom(self) -> list:
        kind, val, pos = self.take()
        if kind == "int":
            return [Poly.constant(val)]
        if kind == "name":
            if val == "x":
                return [Poly.x()]
            if not self.allow_d:
                raise GrammarError("D is not allowed in a polynomial", self.text, pos)
            return [Poly.zero(), Poly.one()]
        if kind == "(":
            value = self.expr()
            kind, _, cpos = self.take()
            if kind != ")":
                raise GrammarError("expected ')'", self.text, cpos)
            return value
        raise GrammarError("expected a number, x, D or '('", self.text, pos)


def _trim(value: list) -> list:
    while value and value[-1].is_zero():
        value.pop()
    return value


def _add(a: list, b: list) -> list:
    out = [Poly.zero()] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = out[i] + c
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _trim(out)


def _neg(a: list) -> list:
    return [-c for c in a]


def _is_pure_d_power(a: list) -> Optional[Tuple[int, Fraction]]:
    """Recognize c*D^k: all coefficients zero except a constant last one."""
    if not a:
        return None
    if any(not c.is_zero() for c in a[:-1]):
        return None
    if not a[-1].is_constant():
        return None
    return len(a) - 1, a[-1][0]


def _mul(a: list, b: list) -> Optional[list]:
    """Product of two values, or None when it would need commutation rules.

    Allowed shapes: scalar polynomial times anything, anything times a
    constant, and anything times a pure power of D. All of these multiply the
    same way in every operator ring considered here.
    """
    a = _trim(list(a))
    b = _trim(list(b))
    if not a or not b:
        return []
    if len(a) == 1:
        return _trim([a[0] * c for c in b])
    if len(b) == 1 and b[0].is_constant():
        return _trim([c * b[0] for c in a])
    d_power = _is_pure_d_power(b)
    if d_power is not None:
        k, scale = d_power
        return _trim([Poly.zero()] * k + [c * scale for c in a])
    return None


def parse_coeff_list(text: str) -> List[Poly]:
    """Parse operator text into its list of polynomial coefficients."""
    return _Parser(text, allow_d=True).parse()


def parse_poly(text: str) -> Poly:
    """Parse polynomial text."""
    value = _Parser(text, allow_d=False).parse()
    return value[0] if value else Poly.zero()
