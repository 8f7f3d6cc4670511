"""Heights, probabilities, set sizes, cores and means.

All ratios are exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil

from ordlogic.order_core import OrderError, Poset, build_poset, min_max
from ordlogic.order_ops import join, meet, neg


class UnboundedPoset(OrderError):
    pass


class EmptySet(OrderError):
    pass


class DegenerateConditioning(OrderError):
    pass


class DegenerateSet(ValueError):
    pass


def _topological(P: Poset) -> list:
    """Elements ordered so that smaller elements come first, ties by name."""
    done, order = set(), []
    remaining = sorted(P.elements)
    while remaining:
        ready = [x for x in remaining if P.below(x) <= done]
        x = ready[0]
        order.append(x)
        done.add(x)
        remaining.remove(x)
    return order


def heights(P: Poset) -> dict:
    """Edge count of the longest chain ending in each element.

    Chains start at the bottom, or at any minimal element when the poset
    has no bottom.
    """
    ht = {}
    for x in _topological(P):
        ht[x] = max((ht[y] + 1 for y in P.below(x)), default=0)
    return ht


def depths_to_top(P: Poset) -> dict:
    """Edge count of the longest chain from each element upwards."""
    t = {}
    for x in reversed(_topological(P)):
        t[x] = max((t[y] + 1 for y in P.above(x)), default=0)
    return t


@dataclass(frozen=True)
class HeightProfile:
    ht: dict
    t: dict
    rht: dict
    ratio: dict
    pr: dict

    @property
    def b(self):
        return self.ht

    def maxht(self, X) -> int:
        return max(self.ht[x] for x in X)

    def minht(self, X) -> int:
        return min(self.ht[x] for x in X)


def height_profile(P: Poset) -> HeightProfile:
    """Height-based measures of every element of a bounded poset.

    ``pr`` counts the elements comparable with x, x included, over the
    number of elements.
    """
    if not P.bounded:
        raise UnboundedPoset("relative heights need a bottom and a top")
    ht, t = heights(P), depths_to_top(P)
    total = ht[P.top]
    n = len(P.elements)
    rht = {x: Fraction(ht[x], total) for x in ht}
    ratio = {x: Fraction(ht[x], ht[x] + t[x]) for x in ht}
    pr = {x: Fraction(sum(1 for y in P.elements if P.comparable(x, y)), n) for x in ht}
    return HeightProfile(ht, t, rht, ratio, pr)


def maxht(P: Poset, X) -> frozenset:
    """Members of X of greatest height."""
    ht = heights(P)
    best = max(ht[x] for x in X)
    return frozenset(x for x in X if ht[x] == best)


def minht(P: Poset, X) -> frozenset:
    """Members of X of least height."""
    ht = heights(P)
    best = min(ht[x] for x in X)
    return frozenset(x for x in X if ht[x] == best)


def dd_op(P: Poset, X, Y=None, which="meet2p") -> frozenset:
    """Operators that keep only the highest (meet, neg) or lowest (join) results."""
    if not P.bounded:
        raise UnboundedPoset("height-filtered operators need a bounded poset")
    if which == "meet2p":
        return maxht(P, meet(P, X, Y))
    if which == "join2p":
        return minht(P, join(P, X, Y))
    if which == "neg2p":
        return maxht(P, neg(P, X))
    raise ValueError(f"unknown operator {which!r}")


def prob(P: Poset, X, mode="maxht") -> Fraction:
    """Height-based probability of an element set.

    ``maxht``: greatest height in X over the height of top.
    ``sum``: summed heights of X over summed heights of all elements.
    """
    if not P.bounded:
        raise UnboundedPoset("probabilities need a bounded poset")
    X = P.check(X)
    ht = heights(P)
    if mode == "maxht":
        if not X:
            raise EmptySet("maxht probability of the empty set")
        return Fraction(max(ht[x] for x in X), ht[P.top])
    if mode == "sum":
        return Fraction(sum(ht[x] for x in X), sum(ht.values()))
    raise ValueError(f"unknown mode {mode!r}")


def independence(P: Poset, A, B, mode="product", pmode="maxht") -> bool:
    """Decide whether A and B are independent.

    ``product``: P(A meet B) equals P(A) times P(B).  ``conditional``:
    with a = P(B), r = P(A meet B)/P(A) and s = P(not-A meet B)/P(not-A),
    independent when r equals a, or r and s fall on opposite sides of a
    (s may touch a).
    """
    pA = prob(P, A, pmode)
    pAB = prob(P, meet(P, A, B), pmode)
    if mode == "product":
        return pAB == pA * prob(P, B, pmode)
    if mode != "conditional":
        raise ValueError(f"unknown mode {mode!r}")
    notA = neg(P, A)
    pnotA = prob(P, notA, pmode)
    if pA == 0 or pnotA == 0:
        raise DegenerateConditioning("conditioning on a set of probability zero")
    alpha = prob(P, B, pmode)
    r = pAB / pA
    s = prob(P, meet(P, notA, B), pmode) / pnotA
    if r == alpha:
        return True
    if r < alpha:
        return s >= alpha
    return s <= alpha


def product_order(P1: Poset, P2: Poset, value1: dict, value2: dict):
    """Order pairs of elements by the sum of their values.

    Returns ``(poset, heights)``; pairs are named ``"(x,y)"``.  Pairs with
    equal sums are incomparable.
    """
    score = {}
    for x in P1.elements:
        for y in P2.elements:
            score[f"({x},{y})"] = Fraction(value1[x]) + Fraction(value2[y])
    pairs = [(a, b) for a in score for b in score if score[a] < score[b]]
    lo = [k for k in score if score[k] == min(score.values())]
    hi = [k for k in score if score[k] == max(score.values())]
    bottom = lo[0] if len(lo) == 1 and len(score) > 1 else None
    top = hi[0] if len(hi) == 1 and len(score) > 1 else None
    Q = build_poset(score, pairs, bottom, top)
    return Q, heights(Q)


# ---------------------------------------------------------------------------
# translation of elements into sets


@dataclass(frozen=True)
class SizeTranslation:
    sets: dict
    universe: frozenset

    def size(self, x) -> int:
        return len(self.sets[x])

    def relative(self, x) -> Fraction:
        if not self.universe:
            return Fraction(0)
        return Fraction(len(self.sets[x]), len(self.universe))


def size_translation(P: Poset) -> SizeTranslation:
    """Assign each element a set of tokens so that the order becomes inclusion.

    Elements are processed bottom-up.  A unique least element gets the
    empty set and every other minimal element a fresh token.  An element
    with one maximal predecessor extends that predecessor's set by a fresh
    token.  An element with several maximal predecessors takes the union of
    their sets, plus a fresh token when some element incomparable to it
    lies above all of those predecessors (without the token its set would
    sit inside that element's set).
    """
    counter = 0
    sets = {}
    minimal = min_max(P, P.elements, "min")

    def fresh(x):
        nonlocal counter
        counter += 1
        return f"a_{x}_{counter}"

    for x in _topological(P):
        preds = min_max(P, P.below(x), "max")
        if not preds:
            sets[x] = frozenset() if len(minimal) == 1 else frozenset({fresh(x)})
        elif len(preds) == 1:
            (y,) = preds
            sets[x] = sets[y] | {fresh(x)}
        else:
            union = frozenset().union(*(sets[y] for y in preds))
            rivals = [
                z for z in P.elements
                if z != x and not P.comparable(x, z)
                and all(P.leq(y, z) for y in preds)
            ]
            sets[x] = union | {fresh(x)} if rivals else union
    universe = frozenset().union(*sets.values())
    return SizeTranslation(sets, universe)


# ---------------------------------------------------------------------------
# cores


def _depth(U, X, d, x):
    return min(d(x, y) for y in U - X)


def depth_table(U, X, d) -> dict:
    U, X = frozenset(U), frozenset(X)
    if not X or X == U:
        raise DegenerateSet("depth needs a nonempty proper subset")
    return {x: _depth(U, X, d, x) for x in X}


def core(U, X, d, m=2) -> frozenset:
    """Members of X at least 1/m as deep as the deepest member.

    Depth is the distance to the nearest point outside X.  The deepest
    member always qualifies, so the result is never empty.
    """
    table = depth_table(U, X, d)
    limit = Fraction(max(table.values())) / m
    return frozenset(x for x, v in table.items() if v >= limit)


def _nearest(B, A, d):
    """Members of A at minimal distance from B (the set-to-set step)."""
    best = min(d(a, b) for a in A for b in B)
    return frozenset(a for a in A if any(d(a, b) == best for b in B))


def core_layers(U, X, d):
    """Peel X from the outside in.

    Layer k holds the members of what is left of X that lie nearest to
    everything already removed (the complement to start with).  With
    layers numbered 0..n, what remains after removing the first k layers
    is X_k.  Returns ``(layers, core)`` with core = X_k for k = ceil(n/2),
    which is the union of X_n, ..., X_k since these sets are nested.
    """
    U, X = frozenset(U), frozenset(X)
    if not X or X == U:
        raise DegenerateSet("core layers need a nonempty proper subset")
    layers = []
    outside, rest = U - X, X
    while rest:
        layer = _nearest(outside, rest, d)
        layers.append(layer)
        outside, rest = outside | layer, rest - layer
    n = len(layers) - 1
    core_set = frozenset().union(*layers[ceil(n / 2):])
    return layers, core_set


def hamming(a: str, b: str) -> int:
    return sum(x != y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# means of plain sets


@dataclass(frozen=True)
class MeanCandidate:
    members: frozenset
    interior: tuple
    exterior: tuple


def _score_key(scheme, c: MeanCandidate):
    ti, te = sum(c.interior), sum(c.exterior)
    if scheme == "interior_lex":
        return (ti, te)
    if scheme == "exterior_lex":
        return (te, ti)
    if scheme == "squared":
        return (sum((i + e) ** 2 for i, e in zip(c.interior, c.exterior)),)
    if scheme == "equalized":
        totals = [i + e for i, e in zip(c.interior, c.exterior)]
        return (sum(totals), max(totals) - min(totals))
    if isinstance(scheme, tuple) and scheme[0] == "weighted":
        _, wi, we = scheme
        return (Fraction(wi) * ti + Fraction(we) * te,)
    raise ValueError(f"unknown scheme {scheme!r}")


def set_mean(sets, scheme="interior_lex", universe=None, multiplicity=None):
    """Score every candidate set against a family of sets.

    For a candidate Z the interior vector counts ``|Z - A_i|`` and the
    exterior vector ``|A_i - Z|``.  Candidates range over subsets of the
    union of the sets, extended by ``universe`` if given.  ``multiplicity``
    repeats sets, so a set may weigh more than others.  ``scheme`` is one of
    ``interior_lex``, ``exterior_lex``, ``squared``, ``equalized`` or
    ``("weighted", wi, we)``.

    Returns ``(candidates, optima)``; candidates are ordered by size then by
    sorted members.
    """
    sets = [frozenset(s) for s in sets]
    if len(sets) < 2:
        raise ValueError("a mean needs at least two sets")
    if multiplicity:
        sets = [s for s, k in zip(sets, multiplicity) for _ in range(k)]
    pool = sorted(frozenset().union(*sets) | frozenset(universe or ()))
    candidates = []
    for k in range(len(pool) + 1):
        for combo in combinations(pool, k):
            Z = frozenset(combo)
            candidates.append(MeanCandidate(
                Z,
                tuple(len(Z - A) for A in sets),
                tuple(len(A - Z) for A in sets),
            ))
    best = min(_score_key(scheme, c) for c in candidates)
    optima = [c for c in candidates if _score_key(scheme, c) == best]
    return candidates, optima


def revision_mean(sets, d) -> frozenset:
    """Union over i of the members of the other sets nearest to set i."""
    sets = [frozenset(s) for s in sets]
    out = set()
    for i, A in enumerate(sets):
        others = frozenset().union(*(B for j, B in enumerate(sets) if j != i))
        if others:
            out |= _nearest(A, others, d)
    return frozenset(out)


# ---------------------------------------------------------------------------
# similarity and uncertainty


def similarity(P: Poset, x, y) -> int:
    """Height of the highest common lower bound of x and y.

    This is the length of the longest chain shared by some chain up to x
    and some chain up to y.
    """
    if not P.bounded:
        raise UnboundedPoset("similarity needs a bounded poset")
    ht = heights(P)
    return max(ht[z] for z in P.downset(x) & P.downset(y))


def uncertainty(P: Poset, x) -> int:
    """Number of elements incomparable with x."""
    return sum(1 for y in P.elements if not P.comparable(x, y))


def downset_size(P: Poset, x) -> int:
    return len(P.below(x))
