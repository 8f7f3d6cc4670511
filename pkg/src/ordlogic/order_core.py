"""Finite strict partial orders and the primitive relations built on them.

A :class:`Poset` stores the full transitive closure of its strict order, so
every comparison is a set lookup.  Element sets are plain ``frozenset``
objects of element identifiers; functions that need the order take the
poset as their first argument.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable


class OrderError(ValueError):
    """Base class for invalid order input."""


class CycleDetected(OrderError):
    pass


class ReflexivePair(OrderError):
    pass


class UnknownElement(OrderError):
    pass


class BoundViolation(OrderError):
    pass


class EmptyOperand(OrderError):
    pass


@dataclass(frozen=True)
class Poset:
    """A validated finite strict partial order.

    Build instances with :func:`build_poset`; the constructor trusts its
    arguments.  ``lt`` is transitively closed.
    """

    elements: frozenset
    lt: frozenset
    bottom: str | None = None
    top: str | None = None
    _down: dict = field(default=None, repr=False, compare=False, hash=False)
    _up: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        down = {e: set() for e in self.elements}
        up = {e: set() for e in self.elements}
        for a, b in self.lt:
            down[b].add(a)
            up[a].add(b)
        object.__setattr__(self, "_down", {k: frozenset(v) for k, v in down.items()})
        object.__setattr__(self, "_up", {k: frozenset(v) for k, v in up.items()})

    @property
    def ordered(self) -> list:
        """Elements in lexicographic order (the canonical iteration order)."""
        return sorted(self.elements)

    @property
    def bounded(self) -> bool:
        return self.bottom is not None and self.top is not None

    def less(self, a, b) -> bool:
        return (a, b) in self.lt

    def leq(self, a, b) -> bool:
        return a == b or (a, b) in self.lt

    def comparable(self, a, b) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def below(self, x) -> frozenset:
        """Strict down-set of ``x``."""
        return self._down[x]

    def above(self, x) -> frozenset:
        """Strict up-set of ``x``."""
        return self._up[x]

    def downset(self, x) -> frozenset:
        return self._down[x] | {x}

    def upset(self, x) -> frozenset:
        return self._up[x] | {x}

    def covers(self) -> list:
        """Covering pairs (the transitive reduction), sorted."""
        out = []
        for a, b in self.lt:
            if not any((a, c) in self.lt and (c, b) in self.lt for c in self.elements):
                out.append((a, b))
        return sorted(out)

    def check(self, xs: Iterable) -> frozenset:
        xs = frozenset(xs)
        unknown = xs - self.elements
        if unknown:
            raise UnknownElement(f"unknown elements: {sorted(unknown)}")
        return xs


def _closure(elements, pairs):
    succ = {e: set() for e in elements}
    for a, b in pairs:
        succ[a].add(b)
    closed = set()
    for start in elements:
        seen = set()
        stack = list(succ[start])
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            stack.extend(succ[n])
        if start in seen:
            raise CycleDetected(f"cycle through {start!r}")
        closed.update((start, n) for n in seen)
    return frozenset(closed)


def build_poset(elements, strict_pairs, bottom=None, top=None) -> Poset:
    """Validate a strict order and return its closed :class:`Poset`."""
    elements = frozenset(elements)
    if not elements:
        raise OrderError("a poset needs at least one element")
    pairs = list(strict_pairs)
    for a, b in pairs:
        for x in (a, b):
            if x not in elements:
                raise UnknownElement(f"pair ({a!r}, {b!r}) references unknown {x!r}")
        if a == b:
            raise ReflexivePair(f"reflexive pair ({a!r}, {a!r})")
    for name, value in (("bottom", bottom), ("top", top)):
        if value is not None and value not in elements:
            raise UnknownElement(f"{name} {value!r} is not an element")
    if bottom is not None and bottom == top:
        raise BoundViolation("bottom and top must differ")
    lt = _closure(elements, pairs)
    if bottom is not None:
        missing = [x for x in sorted(elements) if x != bottom and (bottom, x) not in lt]
        if missing:
            raise BoundViolation(f"bottom {bottom!r} is not below {missing[0]!r}")
    if top is not None:
        missing = [x for x in sorted(elements) if x != top and (x, top) not in lt]
        if missing:
            raise BoundViolation(f"top {top!r} is not above {missing[0]!r}")
    return Poset(elements, lt, bottom, top)


def with_bounds(inner, pairs=(), bottom="bot", top="top") -> Poset:
    """Add a fresh bottom and top around ``inner`` elements ordered by ``pairs``."""
    inner = list(inner)
    all_pairs = list(pairs)
    all_pairs += [(bottom, x) for x in inner] + [(x, top) for x in inner]
    all_pairs.append((bottom, top))
    return build_poset(set(inner) | {bottom, top}, all_pairs, bottom, top)


def set_name(s) -> str:
    return "{" + ",".join(sorted(s)) + "}"


def inclusion_poset(family):
    """Order a family of sets by strict inclusion.

    Returns ``(poset, names)`` where ``names`` maps each frozenset to its
    element identifier such as ``"{a,b}"``.  Least and greatest members
    become bottom and top when they exist.
    """
    family = [frozenset(s) for s in family]
    names = {s: set_name(s) for s in family}
    pairs = [(names[a], names[b]) for a in family for b in family if a < b]
    least = [s for s in family if all(s <= t for t in family)]
    most = [s for s in family if all(t <= s for t in family)]
    bottom = names[least[0]] if least and len(family) > 1 else None
    top = names[most[0]] if most and len(family) > 1 else None
    return build_poset(names.values(), pairs, bottom, top), names


def min_max(P: Poset, X, which="max") -> frozenset:
    """Minimal or maximal members of ``X``."""
    X = P.check(X)
    if which == "min":
        return frozenset(x for x in X if not (P.below(x) & X))
    if which == "max":
        return frozenset(x for x in X if not (P.above(x) & X))
    raise ValueError(f"which must be 'min' or 'max', not {which!r}")


def disjoint(P: Poset, x, y) -> bool:
    """True when ``x`` and ``y`` share no lower bound other than bottom.

    Without a bottom element the two must have no common lower bound at all.
    Lower bounds are non-strict, so ``x`` itself counts when ``x <= y``.
    """
    common = P.downset(x) & P.downset(y)
    if P.bottom is not None:
        return common <= {P.bottom}
    return not common


def set_compare(P: Poset, X, Y, mode="leq") -> bool:
    """Compare element sets.

    ``leq``: every x lies below some y.  ``lt``: ``leq`` plus some y whose
    part of X below it is nonempty and lies strictly below it.  ``lt_all``:
    ``leq`` and, for every y, no member of X equals y.
    """
    X, Y = P.check(X), P.check(Y)
    if not all(any(P.leq(x, y) for y in Y) for x in X):
        return False
    if mode == "leq":
        return True

    def strictly_under(y):
        under = [x for x in X if P.leq(x, y)]
        return bool(under) and all(x != y for x in under)

    if mode == "lt":
        return any(strictly_under(y) for y in Y)
    if mode == "lt_all":
        return not (X & Y)
    raise ValueError(f"unknown mode {mode!r}")
