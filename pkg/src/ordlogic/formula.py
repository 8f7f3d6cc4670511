"""Propositional formulas: syntax tree, parser, printer and truth tables.

Grammar::

    formula := conj ("|" conj)*
    conj    := unary ("&" unary)*
    unary   := "!" unary | atom | "TOP" | "BOT" | "(" formula ")"
    atom    := [A-Za-z_][A-Za-z0-9_']*

``&`` and ``|`` chains are flattened into n-ary nodes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class FormulaSyntaxError(SyntaxError):
    def __init__(self, message, pos, text=""):
        super().__init__(f"{message} at column {pos + 1}")
        self.pos = pos
        self.text = text


class TooManyAtoms(ValueError):
    pass


MAX_ATOMS = 24


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class And:
    args: tuple

    def __post_init__(self):
        if not self.args:
            raise ValueError("And needs at least one argument")


@dataclass(frozen=True)
class Or:
    args: tuple

    def __post_init__(self):
        if not self.args:
            raise ValueError("Or needs at least one argument")


TOP, BOT = Top(), Bot()

_TOKEN = re.compile(r"\s*(?:(?P<sym>[!&|()])|(?P<name>[A-Za-z_][A-Za-z0-9_']*))")


def _tokens(text):
    pos, out = 0, []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = "sym" if m.group("sym") else "name"
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def error(self, message, pos):
        raise FormulaSyntaxError(message, pos, self.text)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def formula(self):
        parts = [self.conj()]
        while self.peek()[1] == "|":
            self.take()
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else make_or(parts)

    def conj(self):
        parts = [self.unary()]
        while self.peek()[1] == "&":
            self.take()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else make_and(parts)

    def unary(self):
        kind, tok, pos = self.take()
        if tok == "!":
            return Not(self.unary())
        if tok == "(":
            inner = self.formula()
            k, t, p = self.take()
            if t != ")":
                self.error(f"expected ')' but found {t or 'end of input'!r}", p)
            return inner
        if kind == "name":
            if tok == "TOP":
                return TOP
            if tok == "BOT":
                return BOT
            return Atom(tok)
        self.error(f"unexpected {tok or 'end of input'!r}", pos)


def parse(text: str):
    """Parse a formula; raises :class:`FormulaSyntaxError` with a position."""
    p = _Parser(text)
    f = p.formula()
    kind, tok, pos = p.peek()
    if kind != "end":
        p.error(f"unexpected {tok!r}", pos)
    return f


def make_and(parts):
    flat = []
    for f in parts:
        flat.extend(f.args if isinstance(f, And) else (f,))
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def make_or(parts):
    flat = []
    for f in parts:
        flat.extend(f.args if isinstance(f, Or) else (f,))
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def normalize(f):
    """Flatten nested chains and drop one-element chains."""
    if isinstance(f, Not):
        return Not(normalize(f.arg))
    if isinstance(f, And):
        return make_and([normalize(a) for a in f.args])
    if isinstance(f, Or):
        return make_or([normalize(a) for a in f.args])
    return f


def render(f) -> str:
    """Print with the fewest parentheses the grammar allows."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "TOP"
    if isinstance(f, Bot):
        return "BOT"
    if isinstance(f, Not):
        inner = render(f.arg)
        return "!" + (f"({inner})" if isinstance(f.arg, (And, Or)) else inner)
    if isinstance(f, And):
        return " & ".join(f"({render(a)})" if isinstance(a, (Or, And)) else render(a) for a in f.args)
    if isinstance(f, Or):
        return " | ".join(f"({render(a)})" if isinstance(a, Or) else render(a) for a in f.args)
    raise TypeError(f"not a formula: {f!r}")


def atoms(f) -> frozenset:
    """Atom names occurring in the formula."""
    if isinstance(f, Atom):
        return frozenset({f.name})
    if isinstance(f, Not):
        return atoms(f.arg)
    if isinstance(f, (And, Or)):
        return frozenset().union(*(atoms(a) for a in f.args))
    return frozenset()


def evaluate(f, valuation) -> bool:
    """Truth value under a mapping from atom names to booleans."""
    if isinstance(f, Atom):
        return bool(valuation[f.name])
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not evaluate(f.arg, valuation)
    if isinstance(f, And):
        return all(evaluate(a, valuation) for a in f.args)
    return any(evaluate(a, valuation) for a in f.args)


def substitute(f, mapping):
    """Replace atoms by formulas (atoms missing from ``mapping`` stay)."""
    if isinstance(f, Atom):
        return mapping.get(f.name, f)
    if isinstance(f, Not):
        return Not(substitute(f.arg, mapping))
    if isinstance(f, And):
        return And(tuple(substitute(a, mapping) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(substitute(a, mapping) for a in f.args))
    return f


class TruthTable:
    """Truth tables over a fixed atom order, packed into Python integers.

    Row k assigns atom i the value of bit i of k; bit k of a table is the
    formula's value in row k.
    """

    def __init__(self, names):
        self.names = tuple(sorted(names))
        n = len(self.names)
        if n > MAX_ATOMS:
            raise TooManyAtoms(f"{n} atoms exceed the limit of {MAX_ATOMS}")
        self.rows = 1 << n
        self.full = (1 << self.rows) - 1
        self.columns = {}
        for i, name in enumerate(self.names):
            width = 1 << i
            period = width << 1
            block = ((1 << width) - 1) << width
            reps = self.full // ((1 << period) - 1)
            self.columns[name] = block * reps

    def table(self, f) -> int:
        if isinstance(f, Atom):
            return self.columns[f.name]
        if isinstance(f, Top):
            return self.full
        if isinstance(f, Bot):
            return 0
        if isinstance(f, Not):
            return self.full ^ self.table(f.arg)
        if isinstance(f, And):
            out = self.full
            for a in f.args:
                out &= self.table(a)
            return out
        out = 0
        for a in f.args:
            out |= self.table(a)
        return out

    def row(self, k) -> dict:
        return {name: bool(k >> i & 1) for i, name in enumerate(self.names)}

    def essential(self, tt) -> frozenset:
        """Atoms whose two cofactors differ."""
        out = set()
        for i, name in enumerate(self.names):
            col, shift = self.columns[name], 1 << i
            low = tt & ~col & self.full
            high = (tt & col) >> shift
            if low != high:
                out.add(name)
        return frozenset(out)
