"""Integer polynomials in x1..xd: infix and s-expression readers.

Infix syntax: integers, variables ``x1..xd``, the prime ``p``, ``+ - * ^``
and parentheses, e.g. ``x1^2 - 2`` or ``(x1 - 1)*(x2 + p)``.

S-expression syntax (used inside class expressions): atoms are integers,
variables or ``p``; compound forms are ``(+ a b ...)``, ``(- a ...)``,
``(* a b ...)`` and ``(^ a k)``.
"""

from __future__ import annotations

import re

import sympy

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class PolySyntaxError(ValueError):
    pass


def variables(dim):
    return sympy.symbols(f"x1:{dim + 1}")


class PolyRing:
    """Z[x1..xd] with the residue characteristic p available as a constant."""

    def __init__(self, dim, p):
        self.dim = dim
        self.p = p
        self.gens = variables(dim)
        self._names = {str(g): i for i, g in enumerate(self.gens)}

    def const(self, c):
        return sympy.Poly(c, *self.gens, domain="ZZ")

    def var(self, i):
        return sympy.Poly(self.gens[i], *self.gens, domain="ZZ")

    def _atom(self, tok):
        if tok.isdigit():
            return self.const(int(tok))
        if tok == "p":
            return self.const(self.p)
        if tok in self._names:
            return self.var(self._names[tok])
        raise PolySyntaxError(f"unknown symbol {tok!r} (variables are x1..x{self.dim})")

    # -- infix -----------------------------------------------------------

    def parse(self, text):
        toks = _tokenize(text.replace("−", "-"))
        parser = _Infix(self, toks)
        out = parser.expr()
        if parser.pos != len(toks):
            raise PolySyntaxError(f"unexpected {toks[parser.pos]!r}")
        return out

    # -- s-expressions -----------------------------------------------------

    def from_sexpr(self, node):
        if isinstance(node, str):
            if node.lstrip("-").isdigit():
                return self.const(int(node))
            return self._atom(node)
        if not node:
            raise PolySyntaxError("empty form")
        head, *args = node
        if head == "+":
            return sum((self.from_sexpr(a) for a in args), self.const(0))
        if head == "-":
            if not args:
                raise PolySyntaxError("(-) needs an argument")
            vals = [self.from_sexpr(a) for a in args]
            if len(vals) == 1:
                return -vals[0]
            return vals[0] - sum(vals[1:], self.const(0))
        if head == "*":
            out = self.const(1)
            for a in args:
                out = out * self.from_sexpr(a)
            return out
        if head == "^":
            if len(args) != 2 or not isinstance(args[1], str) or not args[1].isdigit():
                raise PolySyntaxError("(^ base k) needs a nonnegative integer k")
            return self.from_sexpr(args[0]) ** int(args[1])
        raise PolySyntaxError(f"unknown polynomial operator {head!r}")


def _tokenize(text):
    toks, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        toks.append(m.group(m.lastindex))
        pos = m.end()
    return toks


class _Infix:
    def __init__(self, ring, toks):
        self.ring = ring
        self.toks = toks
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise PolySyntaxError(f"expected {expected or 'a token'}, got {tok!r}")
        self.pos += 1
        return tok

    def expr(self):
        out = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.factor()
        while self.peek() == "*":
            self.take()
            out = out * self.factor()
        return out

    def factor(self):
        if self.peek() in ("-", "+"):
            op = self.take()
            val = self.factor()
            return -val if op == "-" else val
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            k = self.take()
            if not k.isdigit():
                raise PolySyntaxError(f"exponent must be a nonnegative integer, got {k!r}")
            return base ** int(k)
        return base

    def atom(self):
        tok = self.take()
        if tok == "(":
            out = self.expr()
            self.take(")")
            return out
        if tok in (")", "+", "-", "*", "^"):
            raise PolySyntaxError(f"unexpected {tok!r}")
        return self.ring._atom(tok)


def parse_sexpr(text):
    """Read one s-expression into nested lists of string atoms."""
    toks = re.findall(r"\(|\)|[^\s()]+", text)
    if not toks:
        raise PolySyntaxError("empty expression")
    stack, cur = [], []
    for tok in toks:
        if tok == "(":
            stack.append(cur)
            cur = []
        elif tok == ")":
            if not stack:
                raise PolySyntaxError("unbalanced ')'")
            done, cur = cur, stack.pop()
            cur.append(done)
        else:
            cur.append(tok)
    if stack:
        raise PolySyntaxError("unbalanced '('")
    if len(cur) != 1:
        raise PolySyntaxError("expected exactly one expression")
    return cur[0]


def poly_str(f):
    """Compact infix rendering, using ^ for powers."""
    return str(f.as_expr()).replace("**", "^")
