"""Set-valued Boolean operators on partial orders that need not be lattices.

Every operator takes element sets (frozensets of identifiers).  A single
element is passed as a one-element set.  The plain operators collect all
candidate answers; the primed ones keep only the best of them (maximal for
meet, negation and difference, minimal for join).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from ordlogic.order_core import EmptyOperand, Poset, disjoint, min_max

PLAIN = "plain"
PRIMED = "primed"


def _operand(P: Poset, X):
    X = P.check(X)
    if not X:
        raise EmptyOperand("operators are not defined on the empty set")
    return X


def _down_union(P, X):
    out = set()
    for x in X:
        out |= P.downset(x)
    return out


def _up_union(P, X):
    out = set()
    for x in X:
        out |= P.upset(x)
    return out


def meet(P: Poset, X, Y, variant=PLAIN) -> frozenset:
    """Elements below some member of X and some member of Y."""
    X, Y = _operand(P, X), _operand(P, Y)
    out = frozenset(_down_union(P, X) & _down_union(P, Y))
    return min_max(P, out, "max") if variant == PRIMED else out


def join(P: Poset, X, Y, variant=PLAIN) -> frozenset:
    """Elements above some member of X and some member of Y."""
    X, Y = _operand(P, X), _operand(P, Y)
    out = frozenset(_up_union(P, X) & _up_union(P, Y))
    return min_max(P, out, "min") if variant == PRIMED else out


def neg(P: Poset, X, variant=PLAIN) -> frozenset:
    """Elements disjoint from every member of X."""
    X = _operand(P, X)
    out = frozenset(a for a in P.elements if all(disjoint(P, a, x) for x in X))
    return min_max(P, out, "max") if variant == PRIMED else out


def minus(P: Poset, x, y, variant=PLAIN) -> frozenset:
    """Elements below ``x`` and disjoint from ``y``."""
    P.check({x, y})
    out = frozenset(a for a in P.downset(x) if disjoint(P, a, y))
    return min_max(P, out, "max") if variant == PRIMED else out


def alt_op(P: Poset, X, Y=None, which="meet1") -> frozenset:
    """Alternative operators.

    ``meet1``/``join1`` intersect the pairwise element results,
    ``meet2``/``join2`` treat X and Y as one pool, and ``neg1`` keeps the
    elements disjoint from at least one member of X.
    """
    X = _operand(P, X)
    if which == "neg1":
        return frozenset(a for a in P.elements if any(disjoint(P, a, x) for x in X))
    Y = _operand(P, Y)
    if which in ("meet1", "join1"):
        bound = P.downset if which == "meet1" else P.upset
        out = None
        for x, y in product(sorted(X), sorted(Y)):
            part = bound(x) & bound(y)
            out = part if out is None else out & part
        return frozenset(out)
    if which in ("meet2", "join2"):
        bound = P.downset if which == "meet2" else P.upset
        out = frozenset(P.elements)
        for z in X | Y:
            out &= bound(z)
        return out
    raise ValueError(f"unknown alternative operator {which!r}")


@dataclass(frozen=True)
class SignedSet:
    """An element set tagged with what it stands for.

    ``sup`` marks a set standing in for a missing least upper bound of its
    members, ``inf`` for a missing greatest lower bound.  ``base`` keeps
    every qualifying element; ``core`` is its useful part.
    """

    base: frozenset
    tag: str = PLAIN
    nested: bool = field(default=False, compare=False)

    def core(self, P: Poset) -> frozenset:
        if self.tag == "sup":
            return min_max(P, self.base, "max")
        if self.tag == "inf":
            return min_max(P, self.base, "min")
        return self.base


def _below(P, b, A: SignedSet):
    # b <= A: plain and sup read as "below some member", inf as "below all".
    test = all if A.tag == "inf" else any
    return test(P.leq(b, a) for a in A.base)


def _above(P, b, A: SignedSet):
    # b >= A: sup reads as "above all members", plain and inf as "above some".
    test = all if A.tag == "sup" else any
    return test(P.leq(a, b) for a in A.base)


def _apart(P, b, A: SignedSet):
    # b disjoint from A: inf needs one disjoint member, the others need all.
    test = any if A.tag == "inf" else all
    return test(disjoint(P, b, a) for a in A.base)


def signed_apply(P: Poset, op, A, B=None) -> SignedSet:
    """Apply meet, join or neg honouring the sup/inf tags of the operands.

    Meet and negation results are tagged ``sup``; join results ``inf``.
    """
    A = A if isinstance(A, SignedSet) else SignedSet(_operand(P, A))
    _operand(P, A.base)
    operands = [A]
    if op in ("meet", "join"):
        B = B if isinstance(B, SignedSet) else SignedSet(_operand(P, B))
        _operand(P, B.base)
        operands.append(B)
    nested = any(o.tag != PLAIN for o in operands)
    elems = sorted(P.elements)
    if op == "meet":
        base = [b for b in elems if all(_below(P, b, o) for o in operands)]
        return SignedSet(frozenset(base), "sup", nested)
    if op == "join":
        base = [b for b in elems if all(_above(P, b, o) for o in operands)]
        return SignedSet(frozenset(base), "inf", nested)
    if op == "neg":
        base = [b for b in elems if _apart(P, b, A)]
        return SignedSet(frozenset(base), "sup", nested)
    raise ValueError(f"unknown signed operator {op!r}")


# ---------------------------------------------------------------------------
# law audit


@dataclass
class LawResult:
    law: str
    variant: str
    holds: bool
    witness: dict | None = None
    failures: list = field(default_factory=list)


@dataclass
class LawReport:
    results: list

    def verdict(self, law, variant=PLAIN) -> LawResult:
        for r in self.results:
            if r.law == law and r.variant == variant:
                return r
        raise KeyError((law, variant))

    def failures(self) -> list:
        return [r for r in self.results if not r.holds]


def _subsets(P, max_size):
    elems = sorted(P.elements)
    for k in range(1, max_size + 1):
        for combo in combinations(elems, k):
            yield frozenset(combo)


def _fmt(s):
    return sorted(s)


def law_audit(P: Poset, set_size=1) -> LawReport:
    """Check the standard Boolean laws for the plain and primed operators.

    Laws over elements use every element (as a singleton); containment and
    antitonicity laws range over nonempty subsets up to ``set_size``
    members.  Results are compared as literal sets.  Instances are visited
    with the bounds last so the reported witness is the most informative;
    every failing instance is kept in ``failures``.
    """
    if not P.bounded:
        raise ValueError("law audit needs a bottom and a top")
    bot, top = frozenset({P.bottom}), frozenset({P.top})
    bounds = [P.bottom, P.top]
    inner = sorted(P.elements - set(bounds))
    singles = [frozenset({x}) for x in inner + bounds]
    sets = list(_subsets(P, max(1, set_size)))
    results = []

    def check(law, variant, instances, left, right, relation="eq"):
        failed = []
        for inst in instances:
            lhs, rhs = left(*inst), right(*inst)
            ok = lhs == rhs if relation == "eq" else lhs <= rhs
            if not ok:
                failed.append({
                    "instance": [_fmt(i) for i in inst],
                    "left": _fmt(lhs),
                    "right": _fmt(rhs),
                })
        if failed:
            results.append(LawResult(law, variant, False, failed[0], failed))
        else:
            results.append(LawResult(law, variant, True))

    pairs = list(product(singles, repeat=2))
    triples = list(product(singles, repeat=3))
    for v in (PLAIN, PRIMED):
        m = lambda a, b, v=v: meet(P, a, b, v)
        j = lambda a, b, v=v: join(P, a, b, v)
        n = lambda a, v=v: neg(P, a, v)
        check("commutativity-meet", v, pairs, m, lambda a, b: m(b, a))
        check("commutativity-join", v, pairs, j, lambda a, b: j(b, a))
        check("associativity-meet", v, triples,
              lambda a, b, c: m(m(a, b), c), lambda a, b, c: m(a, m(b, c)))
        check("associativity-join", v, triples,
              lambda a, b, c: j(j(a, b), c), lambda a, b, c: j(a, j(b, c)))
        check("distributivity-meet-over-join", v, triples,
              lambda a, b, c: m(a, j(b, c)), lambda a, b, c: j(m(a, b), m(a, c)))
        check("distributivity-join-over-meet", v, triples,
              lambda a, b, c: j(a, m(b, c)), lambda a, b, c: m(j(a, b), j(a, c)))
        check("neg-top-is-bottom", v, [()], lambda: n(top), lambda: bot)
        check("neg-bottom-is-top", v, [()], lambda: n(bot), lambda: top)
        check("double-negation", v, [(s,) for s in singles], lambda a: n(n(a)), lambda a: a)
        check("meet-with-negation-is-bottom", v, [(s,) for s in singles],
              lambda a: m(a, n(a)), lambda a: bot)
        check("join-with-negation-is-top", v, [(s,) for s in singles],
              lambda a: j(a, n(a)), lambda a: top)
        check("difference-is-meet-with-negation", v, pairs,
              lambda a, b, v=v: minus(P, min(a), min(b), v), lambda a, b: m(a, n(b)))
        antitone = [(X, Y) for X in sets for Y in sets if X <= Y]
        check("negation-antitone", v, antitone, lambda X, Y: n(Y), lambda X, Y: n(X), "sub")
        check("set-within-double-negation", v, [(s,) for s in sets],
              lambda X: X, lambda X: n(n(X)), "sub")
        check("double-negation-within-set", v, [(s,) for s in sets],
              lambda X: n(n(X)), lambda X: X, "sub")
    return LawReport(results)
