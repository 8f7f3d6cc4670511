"""Essential variables, letter sharing and relevant implication."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product

from ordlogic.formula import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Not,
    Or,
    Top,
    TruthTable,
    atoms,
    make_and,
    make_or,
)


class DegenerateSet(ValueError):
    pass


class NotDNF(ValueError):
    pass


TAUTOLOGY, CONTRADICTION, CONTINGENT = "tautology", "contradiction", "contingent"


@dataclass(frozen=True)
class FormulaProfile:
    s: frozenset
    r: frozenset
    classification: str


def essential_vars(f) -> FormulaProfile:
    """Syntactic atoms, essential atoms and the semantic status of ``f``.

    An atom is essential when flipping it changes the value of ``f`` under
    some assignment to the other atoms.
    """
    s = atoms(f)
    tt = TruthTable(s)
    t = tt.table(f)
    if t == tt.full:
        cls = TAUTOLOGY
    elif t == 0:
        cls = CONTRADICTION
    else:
        cls = CONTINGENT
    return FormulaProfile(s, tt.essential(t), cls)


@dataclass(frozen=True)
class ImplicationVerdict:
    verdict: str
    shared: frozenset = frozenset()
    countermodel: dict | None = None


def classify_implication(phi, psi) -> ImplicationVerdict:
    """Classify ``phi -> psi``.

    ``invalid`` comes with the first countermodel (rows in binary order of
    the sorted atoms).  ``degenerate_valid`` means valid only because
    ``phi`` is a contradiction or ``psi`` a tautology.  Otherwise the
    implication is ``relevant_valid`` and the shared essential atoms are
    returned; this set is never empty.
    """
    tt = TruthTable(atoms(phi) | atoms(psi))
    a, b = tt.table(phi), tt.table(psi)
    bad = a & ~b & tt.full
    if bad:
        k = (bad & -bad).bit_length() - 1
        return ImplicationVerdict("invalid", countermodel=tt.row(k))
    if a == 0 or b == tt.full:
        return ImplicationVerdict("degenerate_valid")
    shared = tt.essential(a) & tt.essential(b)
    return ImplicationVerdict("relevant_valid", shared)


def entails(premises, conclusion) -> bool:
    premises = list(premises)
    names = frozenset().union(atoms(conclusion), *(atoms(p) for p in premises))
    tt = TruthTable(names)
    models = tt.full
    for p in premises:
        models &= tt.table(p)
    return models & ~tt.table(conclusion) & tt.full == 0


def ct_check(A, B, theta) -> bool:
    """Cumulative transitivity on one instance.

    Returns True when the rule holds here: either its premises fail (A
    does not entail all of B, or A with B does not entail theta) or A
    entails theta.
    """
    A, B = list(A), list(B)
    if not all(entails(A, b) for b in B):
        return True
    if not entails(A + B, theta):
        return True
    return entails(A, theta)


# ---------------------------------------------------------------------------
# model sets over products


class ModelSet:
    """A subset of a finite product of nonempty domains.

    ``index`` names the coordinates; ``members`` are tuples in index order.
    """

    def __init__(self, index, domains, members):
        self.index = tuple(index)
        self.domains = {i: tuple(domains[i]) for i in self.index}
        if any(not d for d in self.domains.values()):
            raise ValueError("domains must be nonempty")
        self.members = frozenset(tuple(m) for m in members)
        for m in self.members:
            if len(m) != len(self.index) or any(v not in self.domains[i] for i, v in zip(self.index, m)):
                raise ValueError(f"{m!r} is not in the product")

    def universe(self):
        return product(*(self.domains[i] for i in self.index))

    def size(self) -> int:
        n = 1
        for d in self.domains.values():
            n *= len(d)
        return n

    def is_inessential(self, J) -> bool:
        """True when changing the coordinates in J never leaves the set."""
        pos = [k for k, i in enumerate(self.index) if i in J]
        for m in self.members:
            for values in product(*(self.domains[self.index[k]] for k in pos)):
                t = list(m)
                for k, v in zip(pos, values):
                    t[k] = v
                if tuple(t) not in self.members:
                    return False
        return True

    def inessential_sets(self) -> list:
        """All inessential coordinate sets, smallest first."""
        out = []
        for k in range(len(self.index) + 1):
            for J in combinations(self.index, k):
                if self.is_inessential(set(J)):
                    out.append(frozenset(J))
        return out

    def maximal_inessential(self) -> list:
        sets = self.inessential_sets()
        return [J for J in sets if not any(J < K for K in sets)]

    def essential(self) -> frozenset:
        """Coordinates that belong to no inessential set."""
        return frozenset(i for i in self.index if not self.is_inessential({i}))


@dataclass
class SplicingResult:
    confirmed: bool
    witness: dict | None = None


def splicing_check(M: ModelSet, N: ModelSet) -> SplicingResult:
    """Confirm that no inessential sets of nested M and N cover the index.

    If a covering pair existed, gluing a member of M to a non-member of N
    along the two sets would produce a member of N equal to the
    non-member.  That glued sequence is returned as the witness.
    """
    for S in (M, N):
        if not S.members or len(S.members) == S.size():
            raise DegenerateSet("model sets must be neither empty nor the full product")
    if M.index != N.index or not M.members <= N.members:
        raise ValueError("splicing needs M inside N over the same product")
    everything = set(M.index)
    outside = next(t for t in N.universe() if t not in N.members)
    sigma = min(M.members)
    for IM in M.inessential_sets():
        for IN in N.inessential_sets():
            if IM | IN == everything:
                s1 = tuple(o if i in IM else s for i, s, o in zip(M.index, sigma, outside))
                s2 = tuple(o if i in IN else s for i, s, o in zip(M.index, s1, outside))
                return SplicingResult(False, {
                    "inessential_M": sorted(IM), "inessential_N": sorted(IN),
                    "glued": s2, "outside": outside,
                })
    return SplicingResult(True)


def model_set_of(f, names=None) -> ModelSet:
    """Models of ``f`` as a subset of the product of {False, True} per atom."""
    names = tuple(sorted(names or atoms(f)))
    tt = TruthTable(names)
    t = tt.table(f)
    members = []
    for k in range(tt.rows):
        if t >> k & 1:
            row = tt.row(k)
            members.append(tuple(row[n] for n in names))
    return ModelSet(names, {n: (False, True) for n in names}, members)


# ---------------------------------------------------------------------------
# normal forms


def _literal(f) -> bool:
    return isinstance(f, (Atom, Top, Bot)) or (isinstance(f, Not) and isinstance(f.arg, Atom))


def _nnf(f, positive=True):
    if isinstance(f, Atom):
        return f if positive else Not(f)
    if isinstance(f, Top):
        return TOP if positive else BOT
    if isinstance(f, Bot):
        return BOT if positive else TOP
    if isinstance(f, Not):
        return _nnf(f.arg, not positive)
    parts = [_nnf(a, positive) for a in f.args]
    if isinstance(f, And) == positive:
        return make_and(parts)
    return make_or(parts)


def _terms(f):
    """DNF of an NNF formula as a list of literal lists."""
    if isinstance(f, Or):
        out = []
        for a in f.args:
            out.extend(_terms(a))
        return out
    if isinstance(f, And):
        out = [[]]
        for a in f.args:
            out = [t + u for t in out for u in _terms(a)]
        return out
    return [[f]]


def _from_terms(terms):
    return make_or([make_and(t) for t in terms]) if terms else BOT


def dnf(f):
    """An equivalent disjunction of conjunctions of literals."""
    return _from_terms(_terms(_nnf(f)))


def dnf_terms(f) -> list:
    """Terms of a formula already in DNF; raises :class:`NotDNF` otherwise."""
    terms = f.args if isinstance(f, Or) else (f,)
    out = []
    for t in terms:
        lits = t.args if isinstance(t, And) else (t,)
        if not all(_literal(x) for x in lits):
            raise NotDNF("expected a disjunction of conjunctions of literals")
        out.append(list(lits))
    return out


def _negate_literal(x):
    if isinstance(x, Not):
        return x.arg
    if isinstance(x, Top):
        return BOT
    if isinstance(x, Bot):
        return TOP
    return Not(x)


def negate_dnf(f):
    """Negate a DNF formula into DNF by choosing one literal per term.

    Each choice of a literal from every term contributes the conjunction of
    the negated choices.
    """
    terms = dnf_terms(f)
    out = [[_negate_literal(x) for x in choice] for choice in product(*terms)]
    return _from_terms(out)


# ---------------------------------------------------------------------------
# enumeration and random formulas


def formulas_by_depth(names, depth, with_constants=True) -> dict:
    """One representative formula per truth table, for formulas up to ``depth``.

    Depth 0 holds atoms (and the constants); each further level applies
    negation and binary conjunction or disjunction.  Returns a mapping from
    truth table to the first formula (in generation order) producing it.
    """
    tt = TruthTable(names)
    seen = {}
    level = [Atom(n) for n in tt.names] + ([TOP, BOT] if with_constants else [])
    for f in level:
        seen.setdefault(tt.table(f), f)
    for _ in range(depth):
        reps = list(seen.items())
        new = {}
        for t, f in reps:
            new.setdefault(tt.full ^ t, Not(f))
        for (t1, f1), (t2, f2) in product(reps, repeat=2):
            new.setdefault(t1 & t2, And((f1, f2)))
            new.setdefault(t1 | t2, Or((f1, f2)))
        for t, f in new.items():
            seen.setdefault(t, f)
    return seen


def random_formula(rng: random.Random, names, depth):
    if depth == 0 or rng.random() < 0.25:
        return Atom(rng.choice(list(names)))
    kind = rng.choice(("not", "and", "or"))
    if kind == "not":
        return Not(random_formula(rng, names, depth - 1))
    parts = tuple(random_formula(rng, names, depth - 1) for _ in range(rng.randint(2, 3)))
    return And(parts) if kind == "and" else Or(parts)
