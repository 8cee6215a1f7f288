"""Text grammars for scalars, exp-polynomials and divisors.

One recursive-descent expression parser serves every value grammar.  It
evaluates directly into ``ExpPoly2`` (the variable ``z`` of one-variable
expressions is read as ``s``) and the callers narrow the result.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InvalidDivisor, ParseError
from .exppoly import Divisor, ExpPoly, ExpPoly2
from .scalar import ZERO_G, ExpScalar, GaussRat

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^();]))")


def _tokenize(text, offset=0):
    pos, toks = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", column=offset + bad + 1)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), offset + start + 1))
        pos = m.end()
    toks.append(("end", "", offset + len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text, variables, offset=0):
        self.toks = _tokenize(text, offset)
        self.k = 0
        self.vars = variables

    def peek(self):
        return self.toks[self.k]

    def take(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            found = tok[1] or "end of input"
            raise ParseError(f"expected {value!r}, found {found!r}", column=tok[2])
        return tok

    def parse(self):
        val = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", column=tok[2])
        return val

    def expr(self):
        val = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, col = self.take()
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                c = _constant(rhs)
                if c is None or not c.is_unit():
                    raise ParseError("can only divide by a nonzero monomial constant", column=col)
                val = val.scale(c.inverse())
        return val

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, value, col = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", column=col)
            base = base ** int(value)
        return base

    def atom(self):
        kind, value, col = self.take()
        if kind == "int":
            return ExpPoly2.const(GaussRat(Fraction(int(value))))
        if kind == "name":
            if value == "i":
                return ExpPoly2.const(GaussRat(0, 1))
            if value in self.vars:
                return ExpPoly2.s() if self.vars[value] == 0 else ExpPoly2.t()
            if value in ("E", "exp"):
                self.expect("(")
                inner_start = self.peek()[2]
                arg = self.expr()
                self.expect(")")
                if value == "E":
                    c = _constant(arg)
                    if c is None or not c.is_gaussrat():
                        raise ParseError("E(...) needs a Gaussian rational exponent", column=inner_start)
                    return ExpPoly2.const(ExpScalar.exp(c.as_gaussrat()))
                lin = _linear(arg)
                if lin is None:
                    raise ParseError("exp(...) needs a linear argument with exact coefficients",
                                     column=inner_start)
                c0, alpha, beta = lin
                return ExpPoly2.monomial(alpha=alpha, beta=beta, coef=ExpScalar.exp(c0))
            raise ParseError(f"unknown name {value!r}", column=col)
        if value == "(":
            val = self.expr()
            self.expect(")")
            return val
        found = value or "end of input"
        raise ParseError(f"unexpected {found!r}", column=col)


def _constant(p):
    """ExpScalar value of a constant ExpPoly2, else None."""
    if p.is_zero():
        return ExpScalar()
    parts = p._parts
    if len(parts) != 1 or (ZERO_G, ZERO_G) not in parts:
        return None
    poly = parts[(ZERO_G, ZERO_G)]
    if set(poly) != {(0, 0)}:
        return None
    return poly[(0, 0)]


def _linear(p):
    """``(c0, alpha, beta)`` if ``p = c0 + alpha*s + beta*t`` over Q(i)."""
    c0 = alpha = beta = GaussRat(0)
    for (a, b), poly in p._parts.items():
        if a or b:
            return None
        for mono, c in poly.items():
            if not c.is_gaussrat():
                return None
            q = c.as_gaussrat()
            if mono == (0, 0):
                c0 = q
            elif mono == (1, 0):
                alpha = q
            elif mono == (0, 1):
                beta = q
            else:
                return None
    return c0, alpha, beta


def parse_expression(text, variables=(), offset=0):
    names = {v: k for k, v in enumerate(variables)}
    return _Parser(text, names, offset).parse()


def parse_scalar(text, offset=0):
    val = _constant(parse_expression(text, (), offset))
    if val is None:
        raise ParseError(f"not a scalar: {text!r}", column=offset + 1)
    return val


def parse_gaussrat(text, offset=0):
    val = parse_scalar(text, offset)
    if not val.is_gaussrat():
        raise ParseError(f"not a Gaussian rational: {text!r}", column=offset + 1)
    return val.as_gaussrat()


def parse_exppoly(text, offset=0):
    p = parse_expression(text, ("z",), offset)
    return _to_exppoly(p)


def _to_exppoly(p):
    out = {}
    for (a, b), poly in p._parts.items():
        dense = {}
        for (i, j), c in poly.items():
            dense[i] = c
        coeffs = [ExpScalar()] * (max(dense) + 1)
        for i, c in dense.items():
            coeffs[i] = c
        out[a] = coeffs
    return ExpPoly(out)


def parse_exppoly2(text, offset=0):
    return parse_expression(text, ("s", "t"), offset)


_DIV_TERM = re.compile(r"\s*(?P<n>\d*)\s*\[(?P<lam>[^\]\[]*)\]\s*")


def parse_divisor(text, offset=0):
    """``n[lambda]`` terms joined by ``+``; a missing multiplicity means 1."""
    pos, points = 0, {}
    while True:
        m = _DIV_TERM.match(text, pos)
        if m is None:
            raise ParseError("expected a divisor term like 2[0]", column=offset + pos + 1)
        n = int(m.group("n")) if m.group("n") else 1
        lam = parse_gaussrat(m.group("lam"), offset + m.start("lam"))
        points[lam] = points.get(lam, 0) + n
        pos = m.end()
        if pos >= len(text):
            break
        if text[pos] != "+":
            raise ParseError(f"expected '+' between divisor terms, found {text[pos]!r}",
                             column=offset + pos + 1)
        pos += 1
    try:
        return Divisor(points)
    except InvalidDivisor as exc:
        raise ParseError(str(exc), column=offset + 1) from None


def split_top_level(text, sep=";"):
    """Split on ``sep`` outside parentheses, returning ``(piece, start)`` pairs."""
    depth, start, out = 0, 0, []
    for k, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:k], start))
            start = k + 1
    out.append((text[start:], start))
    return out
