"""Expression parser shared by the CLI.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' ['-'] INT)?
    atom   := NUMBER ['/' NUMBER] | 'q' | 'qhat'
            | 'X[' i ',' j ']' | 'Y[' i ']' | 'E[' i ']' | 'F[' i ']'
            | 'K{' r, ... '}' | 'Ka{' a, ... '}' | '(' expr ')'

Evaluation happens in a target: an AlgebraSpec (X/Y letters) or a U_q
Variant (E/F/K letters).  Bare scalars are always allowed.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .coeff import LaurentPoly, QHAT, QhatFraction, qhat_fraction
from .ncalg import AlgebraSpec, NCPoly
from .uqrep.uq import UqElement, Variant
from .uqrep.weights import Weight, from_roots


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(qhat|q|Ka|[XYEFK])|(\d+)|([-+*/^()\[\],{}]))")


def tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 8]!r}")
        name, num, sym = m.groups()
        if name:
            out.append(("name", name))
        elif num:
            out.append(("int", int(num)))
        else:
            out.append(("sym", sym))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input")
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, got {tok[1]!r}")
        self.i += 1
        return tok[1]

    def at(self, value):
        return self.peek() == ("sym", value)

    def expr(self):
        neg = False
        if self.at("-"):
            self.take()
            neg = True
        node = self.term()
        if neg:
            node = ("neg", node)
        while self.at("+") or self.at("-"):
            op = self.take()
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.at("*"):
            self.take()
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.at("^"):
            self.take()
            sign = 1
            if self.at("-"):
                self.take()
                sign = -1
            node = ("pow", node, sign * self.take("int"))
        return node

    def _int_list(self, close):
        vals = []
        while True:
            sign = 1
            if self.at("-"):
                self.take()
                sign = -1
            num = Fraction(self.take("int"))
            if self.at("/"):
                self.take()
                num = num / self.take("int")
            vals.append(sign * num)
            if self.at(","):
                self.take()
                continue
            self.take("sym", close)
            return vals

    def atom(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            num = Fraction(val)
            if self.at("/"):
                self.take()
                den = self.take("int")
                if den == 0:
                    raise ParseError("zero denominator")
                num = num / den
            return ("num", num)
        if kind == "sym" and val == "(":
            self.take()
            node = self.expr()
            self.take("sym", ")")
            return node
        if kind == "name":
            self.take()
            if val == "q":
                return ("q",)
            if val == "qhat":
                return ("qhat",)
            if val in ("K", "Ka"):
                self.take("sym", "{")
                return ("K" if val == "K" else "Ka", tuple(self._int_list("}")))
            self.take("sym", "[")
            idx = [self.take("int")]
            while self.at(","):
                self.take()
                idx.append(self.take("int"))
            self.take("sym", "]")
            want = 2 if val == "X" else 1
            if len(idx) != want:
                raise ParseError(f"{val} takes {want} index(es)")
            return ("gen", val, tuple(idx))
        raise ParseError(f"unexpected token {val!r}")


def parse(text: str):
    p = _Parser(tokenize(text))
    if not p.toks:
        raise ParseError("empty expression")
    node = p.expr()
    if p.i != len(p.toks):
        raise ParseError(f"trailing input at token {p.toks[p.i][1]!r}")
    return node


def _is_scalar(v):
    return isinstance(v, (LaurentPoly, QhatFraction))


def evaluate(node, target=None):
    """Evaluate a parse tree.  ``target`` is an AlgebraSpec, a Variant or None."""
    op = node[0]
    if op == "num":
        return LaurentPoly.const(node[1])
    if op == "q":
        return LaurentPoly.q(1)
    if op == "qhat":
        return QHAT
    if op == "neg":
        return -evaluate(node[1], target)
    if op in ("add", "sub"):
        a = evaluate(node[1], target)
        b = evaluate(node[2], target)
        if not (_is_scalar(a) and _is_scalar(b)):
            a, b = _lift(a, target), _lift(b, target)
        return a + b if op == "add" else a - b
    if op == "mul":
        a = evaluate(node[1], target)
        b = evaluate(node[2], target)
        if _is_scalar(a) and not _is_scalar(b):
            return b * a if isinstance(b, UqElement) else _lift(a, target) * b
        return a * b
    if op == "pow":
        base, k = node[1], node[2]
        if base[0] == "qhat" and k < 0:
            return qhat_fraction(LaurentPoly.const(1), -k)
        if base[0] in ("K", "Ka"):
            return evaluate((base[0], tuple(c * k for c in base[1])), target)
        v = evaluate(base, target)
        if isinstance(v, UqElement) and k < 0:
            raise ParseError("negative powers of E/F letters are not defined")
        return v ** k
    if op == "gen":
        return _generator(node[1], node[2], target)
    if op in ("K", "Ka"):
        if not isinstance(target, Variant):
            raise ParseError("K letters need a U_q context")
        n = target.n
        if len(node[1]) != n:
            raise ParseError(f"K needs {n} coordinates")
        if op == "K":
            lam = Weight(node[1])
        else:
            if any(Fraction(c).denominator != 1 for c in node[1]):
                raise ParseError("Ka{...} takes integer root coordinates")
            lam = from_roots(n, node[1])
        return UqElement.K(target, lam)
    raise ParseError(f"bad node {op}")


def _lift(v, target):
    if not _is_scalar(v):
        return v
    if isinstance(target, AlgebraSpec):
        return NCPoly.one(target) * v
    if isinstance(target, Variant):
        return UqElement.one(target) * v
    return v


def _generator(name, idx, target):
    if name in ("X", "Y"):
        if not isinstance(target, AlgebraSpec):
            raise ParseError(f"{name} letters need an algebra context")
        if name == "X":
            if target.kind == "torus":
                raise ParseError("the torus has Y letters, not X")
            return NCPoly.gen(target, *idx)
        if target.kind != "torus":
            raise ParseError("Y letters live in the torus")
        return NCPoly.gen(target, idx[0])
    if not isinstance(target, Variant):
        raise ParseError(f"{name} letters need a U_q context")
    return UqElement.E(target, idx[0]) if name == "E" else UqElement.F(target, idx[0])


def parse_expr(text: str, target=None):
    return evaluate(parse(text), target)


def parse_index_list(text: str):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ParseError(f"bad index list {text!r}") from exc


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}") from exc
