"""Text syntax for polynomials and rational functions.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') (INT | power))?
    atom   := NUMBER | NAME | '(' expr ')'

``^`` followed by an integer is a power.  Between two non-scalar operands
(differential forms) it is the wedge product; the caller supplies the
``wedge`` hook for that.
"""

import re

from ..errors import ParseError
from .polynomial import Poly, to_q
from .ratfunc import RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9']*)|(\*\*|[-+*/^()]))")


def tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1
            while col <= n and text[col - 1].isspace():
                col += 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", column=col)
        num, name, op = m.groups()
        start = m.start(m.lastindex) + 1
        if num is not None:
            out.append(("num", num, start))
        elif name is not None:
            out.append(("name", name, start))
        else:
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, n + 1))
    return out


class ExprParser:
    def __init__(self, text, resolve, wedge=None, make_number=None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.resolve = resolve
        self.wedge = wedge
        self.make_number = make_number or (lambda q: RationalFunction(Poly.const(q)))

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, column=tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        v = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            w = self.unary()
            if tok[1] == "*":
                v = v * w
            else:
                try:
                    v = v / w
                except ZeroDivisionError:
                    self.error("division by zero", tok)
                except TypeError:
                    self.error("cannot divide by this expression", tok)
        return v

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            v = self.unary()
            return -v if t[1] == "-" else v
        return self.power()

    def power(self):
        v = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.peek()
            if e[0] == "num":
                self.take()
                if "." in e[1]:
                    self.error("exponent must be a nonnegative integer", e)
                return v ** int(e[1])
            if self.wedge is None:
                self.error("exponent must be a nonnegative integer", e)
            w = self.power()
            return self.wedge(v, w, t)
        return v

    def atom(self):
        t = self.take()
        kind, val, col = t
        if kind == "num":
            return self.make_number(to_q(val))
        if kind == "name":
            return self.resolve(val, col)
        if kind == "op" and val == "(":
            v = self.expr()
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return v
        if kind == "end":
            self.error("unexpected end of expression", t)
        self.error(f"unexpected {val!r}", t)


def parse_ratfunc(text, gens=None):
    """Parse a rational function; ``gens`` restricts the allowed names."""
    ring = tuple(gens) if gens is not None else None

    def resolve(name, col):
        if ring is not None and name not in ring:
            raise ParseError(f"unknown variable {name!r}", column=col)
        return RationalFunction(Poly.var(name, ring))

    def number(q):
        return RationalFunction(Poly.const(q, ring or ()))

    v = ExprParser(text, resolve, make_number=number).parse()
    if not isinstance(v, RationalFunction):
        v = RationalFunction(v)
    if ring is not None:
        v = RationalFunction(v.num.to_gens(ring), v.den.to_gens(ring))
    return v


def parse_poly(text, gens=None):
    r = parse_ratfunc(text, gens)
    if not r.den.is_constant():
        raise ParseError(f"not a polynomial: {text.strip()!r}")
    p = r.as_poly()
    if gens is None:
        p = p.trim() if p.gens else p
    return p
