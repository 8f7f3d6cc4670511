"""Analogy maps between finite first-order vocabularies.

Ground atoms such as ``P(x)`` or ``B(x,y)`` are handled as propositional
atoms whose names carry the predicate and its arguments, so the formula
machinery of :mod:`ordlogic.formula` applies unchanged.  Known facts are
three-valued: true, false or unknown.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ordlogic.formula import And, Atom, Bot, Not, Top, atoms, parse, render, substitute
from ordlogic.size_logic import choice_report


class AnalogyError(ValueError):
    pass


class SymbolOutsideDomain(AnalogyError):
    pass


class NotInQuestionSupport(AnalogyError):
    pass


class InjectivityViolation(AnalogyError):
    pass


class OverlapConflict(AnalogyError):
    pass


class EmptySpace(AnalogyError):
    pass


OBJECT, UNARY, BINARY = "object", "unary", "binary"
ARITY = {UNARY: 1, BINARY: 2}

_GROUND = re.compile(r"^([A-Za-z_][A-Za-z0-9_']*)\(([^()]*)\)$")


def ground(pred, *args) -> str:
    return f"{pred}({','.join(args)})"


def split_ground(name):
    m = _GROUND.match(name)
    if not m:
        raise AnalogyError(f"not a ground atom: {name!r}")
    return m.group(1), tuple(a.strip() for a in m.group(2).split(","))


@dataclass(frozen=True)
class Signature:
    objects: frozenset
    unary: frozenset = frozenset()
    binary: frozenset = frozenset()

    def __post_init__(self):
        for name, val in (("objects", self.objects), ("unary", self.unary), ("binary", self.binary)):
            object.__setattr__(self, name, frozenset(val))
        if (self.objects & self.unary) or (self.objects & self.binary) or (self.unary & self.binary):
            raise AnalogyError("symbol names must be disjoint across kinds")

    def kind(self, symbol):
        if symbol in self.objects:
            return OBJECT
        if symbol in self.unary:
            return UNARY
        if symbol in self.binary:
            return BINARY
        raise SymbolOutsideDomain(f"unknown symbol {symbol!r}")

    def check_atom(self, name):
        pred, args = split_ground(name)
        kind = self.kind(pred)
        if kind == OBJECT or len(args) != ARITY[kind]:
            raise AnalogyError(f"{name!r} does not fit the signature")
        for a in args:
            if self.kind(a) != OBJECT:
                raise AnalogyError(f"{a!r} in {name!r} is not an object")
        return pred, args

    def ground_atoms(self, preds=None, objs=None):
        preds = sorted(self.unary | self.binary) if preds is None else sorted(preds)
        objs = sorted(self.objects) if objs is None else sorted(objs)
        out = []
        for p in preds:
            for args in product(objs, repeat=ARITY[self.kind(p)]):
                out.append(ground(p, *args))
        return out


_CALL = re.compile(r"([A-Za-z_][A-Za-z0-9_']*)\s*\(([^()&|!]*)\)")


def parse_ground(text: str):
    """Parse a formula whose atoms are ground atoms like ``P(x) & !B(x,y)``."""
    names = {}

    def repl(m):
        key = f"g__{len(names)}"
        names[key] = ground(m.group(1), *[a.strip() for a in m.group(2).split(",")])
        return key

    f = parse(_CALL.sub(repl, text))
    return substitute(f, {k: Atom(v) for k, v in names.items()})


def _as_formula(f):
    return parse_ground(f) if isinstance(f, str) else f


@dataclass
class KnowledgeState:
    """Known truth values of ground atoms; missing atoms are unknown."""

    values: dict = field(default_factory=dict)

    def value(self, f):
        """Kleene three-valued evaluation; None means unknown."""
        f = _as_formula(f)
        if isinstance(f, Atom):
            return self.values.get(f.name)
        if isinstance(f, Top):
            return True
        if isinstance(f, Bot):
            return False
        if isinstance(f, Not):
            v = self.value(f.arg)
            return None if v is None else not v
        vals = [self.value(a) for a in f.args]
        if isinstance(f, And):
            if False in vals:
                return False
            return None if None in vals else True
        if True in vals:
            return True
        return None if None in vals else False

    def extended(self, extra):
        return KnowledgeState({**extra, **self.values})


@dataclass
class AnalogyMap:
    """A kind-preserving injective map on symbols, with atom-level overrides.

    ``overrides`` send individual ground atoms to ground atoms; they are
    used when a combined map treats the same predicate differently
    depending on its arguments.
    """

    signature: Signature
    symbols: dict
    overrides: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        sig = self.signature
        for s, t in self.symbols.items():
            if sig.kind(s) != sig.kind(t):
                raise AnalogyError(f"{s!r} and {t!r} are of different kinds")
        if len(set(self.symbols.values())) != len(self.symbols):
            raise InjectivityViolation("two symbols share an image")
        for s, t in self.overrides.items():
            sig.check_atom(s)
            sig.check_atom(t)
        images = [self.image(a) for a in self.domain_atoms()]
        if len(set(images)) != len(images):
            raise InjectivityViolation("two ground atoms share an image")

    def image(self, atom_name):
        if atom_name in self.overrides:
            return self.overrides[atom_name]
        pred, args = self.signature.check_atom(atom_name)
        try:
            return ground(self.symbols[pred], *(self.symbols[a] for a in args))
        except KeyError as e:
            raise SymbolOutsideDomain(f"{e.args[0]!r} is outside the domain of the map") from None

    def domain_atoms(self):
        sig = self.signature
        preds = [p for p in self.symbols if sig.kind(p) != OBJECT]
        objs = [o for o in self.symbols if sig.kind(o) == OBJECT]
        out = set(sig.ground_atoms(preds, objs)) | set(self.overrides)
        return sorted(out)

    def transport(self, f):
        """Apply the map to every atom of a formula."""
        f = _as_formula(f)
        return substitute(f, {a: Atom(self.image(a)) for a in atoms(f)})


@dataclass
class Supports:
    plus: tuple
    minus: tuple
    question: tuple


def supports(alpha: AnalogyMap, facts, v: KnowledgeState) -> Supports:
    """Split facts by how their images fare.

    A fact with known value goes to ``plus`` when its image has the same
    known value, to ``minus`` when the image's value differs, and to
    ``question`` when the image is unknown.  Facts of unknown value are
    ignored.
    """
    plus, minus, question = [], [], []
    for f in facts:
        f = _as_formula(f)
        vf = v.value(f)
        if vf is None:
            continue
        vi = v.value(alpha.transport(f))
        if vi is None:
            question.append(render(f))
        elif vi == vf:
            plus.append(render(f))
        else:
            minus.append(render(f))
    return Supports(tuple(plus), tuple(minus), tuple(question))


@dataclass
class Conjecture:
    formula: str
    value: bool
    source: str


def conjecture(alpha: AnalogyMap, phi, v: KnowledgeState) -> Conjecture:
    """Carry the known value of ``phi`` over to its unknown image."""
    phi = _as_formula(phi)
    vf = v.value(phi)
    image = alpha.transport(phi)
    if vf is None or v.value(image) is not None:
        raise NotInQuestionSupport(f"{render(phi)} is not known with an unknown image")
    return Conjecture(render(image), vf, render(phi))


def combine(alpha: AnalogyMap, beta: AnalogyMap, splitter=None, name="") -> AnalogyMap:
    """Piecewise map: ``alpha`` on the left objects, ``beta`` on the right.

    ``splitter`` maps each object to ``"left"`` or ``"right"`` (a dict or a
    callable).  Atoms whose objects lie on one side take that side's
    image.  Without a splitter the maps must agree wherever both are
    defined.
    """
    sig = alpha.signature
    if beta.signature != sig:
        raise AnalogyError("maps over different signatures")
    side_of = splitter if callable(splitter) or splitter is None else splitter.get
    common = sorted(set(alpha.symbols) & set(beta.symbols), key=str)
    if splitter is None:
        for s in common:
            if alpha.symbols[s] != beta.symbols[s]:
                raise OverlapConflict(f"{s!r} maps to {alpha.symbols[s]!r} and {beta.symbols[s]!r}")
        return AnalogyMap(sig, {**alpha.symbols, **beta.symbols}, {**alpha.overrides, **beta.overrides}, name)
    maps = {"left": alpha, "right": beta}
    symbols, overrides = {}, {}
    objs = [s for s in common if sig.kind(s) == OBJECT]
    preds = [s for s in common if sig.kind(s) != OBJECT]
    for o in objs:
        side = side_of(o)
        if side not in maps:
            raise AnalogyError(f"splitter puts {o!r} on side {side!r}")
        symbols[o] = maps[side].symbols[o]
    for p in preds:
        if alpha.symbols[p] == beta.symbols[p]:
            symbols[p] = alpha.symbols[p]
            continue
        for atom in sig.ground_atoms([p], objs):
            _, args = split_ground(atom)
            sides = {side_of(a) for a in args}
            if len(sides) == 1:
                overrides[atom] = maps[sides.pop()].image(atom)
    return AnalogyMap(sig, symbols, overrides, name)


def default_key(s: Supports):
    """Fewer negative cases first, then more positive cases."""
    return (len(s.minus), -len(s.plus))


@dataclass
class AnalogySpace:
    """Candidate maps and an optional strict preference (better, worse)."""

    maps: dict
    prefer: set | None = None

    def __post_init__(self):
        if not self.maps:
            raise EmptySpace("no candidate maps")
        if self.prefer is not None:
            self.prefer = {tuple(p) for p in self.prefer}
            for a, b in self.prefer:
                if a not in self.maps or b not in self.maps:
                    raise AnalogyError(f"preference ({a}, {b}) names unknown maps")
                if a == b:
                    raise AnalogyError(f"preference ({a}, {a}) is reflexive")
            self._check_acyclic()

    def _check_acyclic(self):
        succ = {m: [b for a, b in self.prefer if a == m] for m in self.maps}
        state = {}

        def visit(m):
            state[m] = 1
            for n in succ[m]:
                if state.get(n) == 1 or (n not in state and visit(n)):
                    return True
            state[m] = 2
            return False

        for m in self.maps:
            if m not in state and visit(m):
                raise AnalogyError("preference has a cycle")

    def better(self, facts, v):
        """Pairs (better, worse) of map names."""
        if self.prefer is not None:
            return set(self.prefer)
        keys = {n: default_key(supports(m, facts, v)) for n, m in self.maps.items()}
        return {(a, b) for a in self.maps for b in self.maps if keys[a] < keys[b]}

    def best(self, facts, v):
        rel = self.better(facts, v)
        return [n for n in self.maps if not any((o, n) in rel for o in self.maps)]


@dataclass
class ScepticalAnswer:
    query: str
    value: bool | None
    per_map: dict


def sceptical_consequence(space: AnalogySpace, v: KnowledgeState, facts, queries):
    """Answer each query by what every best map conjectures.

    A best map extends the known values with its conjectures (images of
    facts in its question support take the fact's value).  A query gets a
    value when all best maps agree on it and ``None`` otherwise.
    """
    best = space.best(facts, v)
    if not best:
        raise EmptySpace("no best map")
    extended = {}
    for name in best:
        alpha = space.maps[name]
        guesses = {}
        for q in supports(alpha, facts, v).question:
            phi = parse_ground(q)
            image = alpha.transport(phi)
            if isinstance(image, Atom):
                guesses[image.name] = v.value(phi)
        extended[name] = v.extended(guesses)
    out = []
    for q in queries:
        per = {name: extended[name].value(q) for name in best}
        vals = set(per.values())
        out.append(ScepticalAnswer(q if isinstance(q, str) else render(q), vals.pop() if len(vals) == 1 else None, per))
    return out


def support_degree(n, r, s, fn=None) -> Fraction:
    """Degree of support from n confirming, r refuting and s open cases."""
    if min(n, r, s) < 0:
        raise AnalogyError("counts must be non-negative")
    if fn is not None:
        return fn(n, r, s)
    return Fraction(n, n + r + s + 1)


def check_support_monotone(fn=None, bound=10):
    """First grid point where increasing n fails to raise, or r or s to lower, p."""
    for n, r, s in product(range(bound + 1), repeat=3):
        p = support_degree(n, r, s, fn)
        if support_degree(n + 1, r, s, fn) <= p:
            return ("n", n, r, s)
        if n and support_degree(n, r + 1, s, fn) >= p:
            return ("r", n, r, s)
        if n and support_degree(n, r, s + 1, fn) >= p:
            return ("s", n, r, s)
    return None


def mu_property_report(choice, universe):
    """Which choice-function laws hold; see :func:`ordlogic.size_logic.choice_report`."""
    return choice_report(choice, universe)


# ---------------------------------------------------------------------------
# case files


@dataclass
class Case:
    signature: Signature
    knowledge: KnowledgeState
    facts: list
    space: AnalogySpace
    queries: list


def case_from_dict(data) -> Case:
    """Build a case from parsed TOML.

    Keys: ``objects``, ``unary``, ``binary``, ``known`` (atom to bool),
    ``facts`` (formulas), ``maps`` (name to symbol table, or to
    ``{combine = [a, b], left = [...], right = [...]}``), ``prefer``
    (list of [better, worse]) and ``queries``.
    """
    sig = Signature(data.get("objects", []), data.get("unary", []), data.get("binary", []))
    known = {}
    for a, b in data.get("known", {}).items():
        sig.check_atom(a)
        known[a] = bool(b)
    maps = {}
    pending = []
    for name, spec in data.get("maps", {}).items():
        if "combine" in spec:
            pending.append((name, spec))
        else:
            maps[name] = AnalogyMap(sig, dict(spec), name=name)
    for name, spec in pending:
        a, b = spec["combine"]
        side = {o: "left" for o in spec.get("left", [])} | {o: "right" for o in spec.get("right", [])}
        maps[name] = combine(maps[a], maps[b], side or None, name)
    prefer = data.get("prefer")
    space = AnalogySpace(maps, None if prefer is None else {tuple(p) for p in prefer})
    facts = [parse_ground(f) for f in data.get("facts", [])]
    queries = list(data.get("queries", []))
    return Case(sig, KnowledgeState(known), facts, space, queries)
