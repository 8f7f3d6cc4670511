"""A small expression language for poset operators.

Syntax, loosest binding first::

    a - b        difference (both sides must denote single elements)
    a v b        join
    a ^ b        meet
    !a           negation
    (expr)'      prime the outermost operator of a group
    ^' v' !' -'  primed operators written inline
    sup(expr)    tag a set as standing for a missing upper bound
    inf(expr)    tag a set as standing for a missing lower bound
    {a,b}        set literal

``T``/``TOP`` and ``B``/``BOT`` name the top and bottom unless the poset has
elements with those names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ordlogic.order_core import Poset
from ordlogic.order_ops import PLAIN, PRIMED, SignedSet, join, meet, minus, neg, signed_apply


class ExprError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass
class Lit:
    names: tuple


@dataclass
class Op:
    op: str
    args: tuple
    primed: bool = False


@dataclass
class Tag:
    tag: str
    arg: object


_TOKEN = re.compile(r"\s*(?:(?P<op>\^'?|!'?|-'?|[(){},'])|(?P<name>[A-Za-z0-9_]+'*))")


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError(f"unexpected character {text[pos]!r}", pos)
        start = m.start("op") if m.group("op") else m.start("name")
        tok = m.group("op") or m.group("name")
        if tok in ("v", "v'"):
            tok = "v" + tok[1:]
            out.append(("join", tok, start))
        elif m.group("op"):
            out.append(("op", tok, start))
        else:
            out.append(("name", tok, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, tok, pos = self.take()
        if tok != value:
            raise ExprError(f"expected {value!r}, found {tok or 'end of input'!r}", pos)

    def parse(self):
        node = self.diff()
        kind, tok, pos = self.peek()
        if kind != "end":
            raise ExprError(f"unexpected {tok!r}", pos)
        return node

    def _binary(self, sub, symbols, opname):
        left = sub()
        while self.peek()[1] in symbols:
            tok = self.take()[1]
            right = sub()
            left = Op(opname, (left, right), tok.endswith("'"))
        return left

    def diff(self):
        return self._binary(self.joins, ("-", "-'"), "minus")

    def joins(self):
        return self._binary(self.meets, ("v", "v'"), "join")

    def meets(self):
        return self._binary(self.unary, ("^", "^'"), "meet")

    def unary(self):
        if self.peek()[1] in ("!", "!'"):
            tok = self.take()[1]
            return Op("neg", (self.unary(),), tok.endswith("'"))
        return self.atom()

    def atom(self):
        kind, tok, pos = self.take()
        if tok == "(":
            node = self.diff()
            self.expect(")")
            if self.peek()[1] == "'":
                self.take()
                if not isinstance(node, Op):
                    raise ExprError("prime needs an operator inside the group", pos)
                node = Op(node.op, node.args, True)
            return node
        if tok == "{":
            names = []
            while self.peek()[1] != "}":
                k, name, p = self.take()
                if k != "name":
                    raise ExprError(f"expected element name, found {name!r}", p)
                names.append(name)
                if self.peek()[1] == ",":
                    self.take()
            self.take()
            if not names:
                raise ExprError("empty set literal", pos)
            return Lit(tuple(names))
        if kind == "name" and tok in ("sup", "inf") and self.peek()[1] == "(":
            self.take()
            node = self.diff()
            self.expect(")")
            return Tag(tok, node)
        if kind == "name":
            return Lit((tok,))
        raise ExprError(f"unexpected {tok or 'end of input'!r}", pos)


def parse_expr(text: str):
    return _Parser(text).parse()


def _resolve(P: Poset, name):
    if name in P.elements:
        return name
    if name in ("T", "TOP") and P.top is not None:
        return P.top
    if name in ("B", "BOT") and P.bottom is not None:
        return P.bottom
    raise ExprError(f"unknown element {name!r}", 0)


def evaluate(P: Poset, node, signed=False) -> SignedSet:
    """Evaluate an expression tree to a (possibly tagged) element set.

    Operators switch to their tag-aware form as soon as an operand carries
    a tag.  With ``signed=True`` every meet, join and negation is tag-aware,
    so intermediate results keep their tags.
    """
    if isinstance(node, Lit):
        return SignedSet(frozenset(_resolve(P, n) for n in node.names))
    if isinstance(node, Tag):
        inner = evaluate(P, node.arg, signed)
        return SignedSet(inner.base, node.tag, inner.tag != PLAIN)
    args = [evaluate(P, a, signed) for a in node.args]
    variant = PRIMED if node.primed else PLAIN
    if node.op == "minus":
        if any(len(a.base) != 1 for a in args):
            raise ExprError("difference needs single elements on both sides", 0)
        (x,), (y,) = args[0].base, args[1].base
        return SignedSet(minus(P, x, y, variant))
    if signed or any(a.tag != PLAIN for a in args):
        return signed_apply(P, node.op, *args)
    if node.op == "meet":
        return SignedSet(meet(P, args[0].base, args[1].base, variant))
    if node.op == "join":
        return SignedSet(join(P, args[0].base, args[1].base, variant))
    return SignedSet(neg(P, args[0].base, variant))


def eval_text(P: Poset, text: str, signed=False) -> SignedSet:
    return evaluate(P, parse_expr(text), signed)
