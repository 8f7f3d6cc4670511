"""Abstract size: filters, ideals and preference-generated smallness.

Subsets of a :class:`PrefStructure` universe are handled internally as
bitmasks over the sorted universe.  Public functions accept and return
ordinary sets.

A preference pair ``(better, worse)`` means ``better`` is preferred to
``worse`` and removes it from the minimal set: ``mu(A)`` keeps the members
of A not beaten by another member of A.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product


class SizeError(ValueError):
    pass


class EmptySet(SizeError):
    pass


class UnknownBase(SizeError):
    pass


class InvalidFamily(SizeError):
    pass


SMALL, BIG, MEDIUM = "small", "big", "medium"


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _submasks(mask):
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class PrefStructure:
    """A finite universe with a preference relation.

    The relation need not be transitive.  Construction fails when some
    nonempty subset has no minimal element (a cycle of preferences).
    """

    def __init__(self, universe, prefers=()):
        self.universe = tuple(sorted(universe))
        self.index = {x: i for i, x in enumerate(self.universe)}
        self.prefers = frozenset(prefers)
        n = len(self.universe)
        killers = [0] * n
        for better, worse in self.prefers:
            if better not in self.index or worse not in self.index:
                raise SizeError(f"pair ({better!r}, {worse!r}) leaves the universe")
            killers[self.index[worse]] |= 1 << self.index[better]
        self.killers = killers
        self.full = (1 << n) - 1
        self.mu_table = [self._mu(m) for m in range(self.full + 1)]
        for m in range(1, self.full + 1):
            if not self.mu_table[m]:
                raise SizeError(f"no minimal element in {sorted(self.to_set(m))}")

    def _mu(self, m):
        out = 0
        for i in _bits(m):
            if not (self.killers[i] & m):
                out |= 1 << i
        return out

    def mask(self, A) -> int:
        m = 0
        for x in A:
            if x not in self.index:
                raise SizeError(f"{x!r} is not in the universe")
            m |= 1 << self.index[x]
        return m

    def to_set(self, m) -> frozenset:
        return frozenset(self.universe[i] for i in _bits(m))

    def beats(self, a, b) -> bool:
        return (a, b) in self.prefers


def mu(PS: PrefStructure, A) -> frozenset:
    """Members of A not beaten by any other member of A."""
    m = PS.mask(A)
    if not m:
        raise EmptySet("mu of the empty set")
    return PS.to_set(PS.mu_table[m])


@dataclass
class RelationProps:
    transitive: bool
    smooth: bool
    ranked: bool
    witnesses: dict = field(default_factory=dict)


def relation_props(PS: PrefStructure) -> RelationProps:
    """Transitivity, smoothness and rankedness, with a witness for each failure."""
    U = PS.universe
    rel = PS.prefers
    witnesses = {}
    transitive = True
    for a, b, c in product(U, repeat=3):
        if (a, b) in rel and (b, c) in rel and (a, c) not in rel:
            transitive = False
            witnesses["transitive"] = (a, b, c)
            break
    smooth = True
    for m in range(1, PS.full + 1):
        best = PS.mu_table[m]
        for i in _bits(m & ~best):
            if not (PS.killers[i] & best):
                smooth = False
                witnesses["smooth"] = (sorted(PS.to_set(m)), U[i])
                break
        if not smooth:
            break
    ranked = True
    for x, x2 in combinations(U, 2):
        if (x, x2) in rel or (x2, x) in rel:
            continue
        for y in U:
            if y in (x, x2):
                continue
            if ((x, y) in rel) != ((x2, y) in rel) or ((y, x) in rel) != ((y, x2) in rel):
                ranked = False
                witnesses["ranked"] = (x, x2, y)
                break
        if not ranked:
            break
    return RelationProps(transitive, smooth, ranked, witnesses)


# ---------------------------------------------------------------------------
# ideal families


class IdealFamily:
    """Small, big and medium subsets of each base set.

    Either generated by a preference structure (a subset is small when it
    misses every minimal element and big when it contains all of them) or
    given explicitly as a mapping from base sets to their small subsets.
    """

    def __init__(self, PS: PrefStructure | None = None, ideals=None, universe=None):
        if PS is not None:
            self.PS = PS
            self.universe = PS.universe
            self._ideals = None
        else:
            self.PS = None
            self.universe = tuple(sorted(universe or set().union(*map(set, ideals))))
            index = {x: i for i, x in enumerate(self.universe)}
            to_mask = lambda s: sum(1 << index[x] for x in s)
            self._ideals = {}
            for base, smalls in ideals.items():
                self._ideals[to_mask(base)] = frozenset(to_mask(s) for s in smalls)
            self._check_explicit()
        self.index = {x: i for i, x in enumerate(self.universe)}
        self.full = (1 << len(self.universe)) - 1

    @classmethod
    def principal(cls, PS):
        return cls(PS=PS)

    def _check_explicit(self):
        for X, smalls in self._ideals.items():
            if not X:
                raise InvalidFamily("base sets must be nonempty")
            if X in smalls or 0 not in smalls:
                raise InvalidFamily("ideal must contain the empty set and not the base")
            for A in smalls:
                if A & ~X:
                    raise InvalidFamily("small sets must lie inside their base")
                for B in _submasks(A):
                    if B not in smalls:
                        raise InvalidFamily("ideal not closed under subsets")
                for B in smalls:
                    if A | B not in smalls:
                        raise InvalidFamily("ideal not closed under finite unions")

    def mask(self, A) -> int:
        try:
            return sum(1 << self.index[x] for x in set(A))
        except KeyError as exc:
            raise SizeError(f"{exc.args[0]!r} is not in the universe") from None

    def to_set(self, m) -> frozenset:
        return frozenset(self.universe[i] for i in _bits(m))

    def bases(self):
        if self._ideals is None:
            return range(1, self.full + 1)
        return sorted(self._ideals)

    def has_base(self, X) -> bool:
        if self._ideals is None:
            return X != 0
        return X in self._ideals

    def small_m(self, A, X) -> bool:
        if A & ~X or not self.has_base(X):
            return False
        if self._ideals is None:
            return not (A & self.PS.mu_table[X])
        return A in self._ideals[X]

    def big_m(self, A, X) -> bool:
        if A & ~X or not self.has_base(X):
            return False
        if self._ideals is None:
            m = self.PS.mu_table[X]
            return A & m == m
        return (X & ~A) in self._ideals[X]

    def classify_m(self, A, X) -> str:
        if self.small_m(A, X):
            return SMALL
        if self.big_m(A, X):
            return BIG
        return MEDIUM


def classify(IF: IdealFamily, X, A) -> str:
    """``small``, ``big`` or ``medium`` for A as a subset of base X."""
    Xm, Am = IF.mask(X), IF.mask(A)
    if not IF.has_base(Xm):
        raise UnknownBase(f"{sorted(X)} is not a base of this family")
    if Am & ~Xm:
        raise SizeError("A must be a subset of X")
    return IF.classify_m(Am, Xm)


# ---------------------------------------------------------------------------
# size comparison


def _lt(IF, A, B, X):
    return IF.small_m(A, X) and IF.big_m(B, X)


def _lt_prime(IF, A, B, X):
    if IF.big_m(B, X):
        return not IF.big_m(A, X) and not (A & ~X)
    if IF.classify_m(B, X) == MEDIUM and not (B & ~X):
        return IF.small_m(A, X)
    return False


@dataclass
class SizeVerdict:
    relation: str
    base: frozenset
    chain: list | None = None


def size_compare(IF: IdealFamily, A, B, base=None, relation="<") -> bool:
    """Compare two sets inside a base set (``A | B`` by default).

    ``relation`` is ``"<"`` (A small, B big), ``"<'"`` (A small and B not
    small, or A medium and B big) or ``"small-in"`` (A small in B; the base
    is ignored).
    """
    A, B = IF.mask(A), IF.mask(B)
    if relation == "small-in":
        return IF.small_m(A, B)
    X = IF.mask(base) if base is not None else A | B
    if relation == "<":
        return _lt(IF, A, B, X)
    if relation == "<'":
        return _lt_prime(IF, A, B, X)
    raise ValueError(f"unknown relation {relation!r}")


def size_chain(IF: IdealFamily, A, B, n, relation="small-in"):
    """Find a chain A = A0, A1, ..., An = B of length ``n`` or return None.

    ``relation`` is ``"small-in"`` or ``"<"`` (each step using its own union
    as base).  Intermediate sets range over all subsets of the universe.
    """
    A, B = IF.mask(A), IF.mask(B)

    def step(x, y):
        if relation == "small-in":
            return IF.small_m(x, y)
        return _lt(IF, x, y, x | y)

    frontier = {A: [A]}
    for k in range(n):
        nxt = {}
        targets = [B] if k == n - 1 else range(IF.full + 1)
        for cur, path in frontier.items():
            for y in targets:
                if y not in nxt and step(cur, y):
                    nxt[y] = path + [y]
        frontier = nxt
    if B in frontier:
        return [sorted(IF.to_set(m)) for m in frontier[B]]
    return None


def size_verdict(IF: IdealFamily, A, B, base=None) -> SizeVerdict:
    """The strongest relation that holds from A to B."""
    X = frozenset(base) if base is not None else frozenset(A) | frozenset(B)
    if size_compare(IF, A, B, relation="small-in"):
        return SizeVerdict("small-in", X)
    if size_compare(IF, A, B, X, "<"):
        return SizeVerdict("<", X)
    if size_compare(IF, A, B, X, "<'"):
        return SizeVerdict("<'", X)
    return SizeVerdict("incomparable", X)


# ---------------------------------------------------------------------------
# coherence


@dataclass
class CoherenceReport:
    verdicts: dict
    witnesses: dict
    cross_checks: dict


def coherence_report(IF: IdealFamily) -> CoherenceReport:
    """Check the coherence laws of a family and, if principal, the mu laws.

    Every law quantifies over the declared bases (all nonempty subsets for
    a principal family).  The report also confirms the known equivalences
    between the two groups of laws.
    """
    bases = list(IF.bases())
    base_set = set(bases)
    verdicts, witnesses = {}, {}

    def record(name, witness):
        verdicts[name] = witness is None
        if witness is not None:
            witnesses[name] = witness

    def show(*ms):
        return [sorted(IF.to_set(m)) for m in ms]

    def find_coh1():
        for X in bases:
            for Y in bases:
                if X & ~Y:
                    continue
                for A in _submasks(X):
                    if IF.small_m(A, X) and not IF.small_m(A, Y):
                        return show(X, Y, A)
        return None

    def find_coh2():
        for Y in bases:
            for X in _submasks(Y):
                if X not in base_set or not IF.big_m(X, Y):
                    continue
                for A in _submasks(Y):
                    if IF.small_m(A, Y) and not IF.small_m(A & X, X):
                        return show(X, Y, A)
        return None

    def find_coh2a():
        for B in bases:
            smalls = [Z for Z in _submasks(B) if IF.small_m(Z, B)]
            for Z in smalls:
                for Z2 in smalls:
                    rest = B & ~Z2
                    if rest in base_set and not IF.small_m(Z & ~Z2, rest):
                        return show(Z, Z2, B)
        return None

    def find_coh_rk():
        for Y in bases:
            for X in _submasks(Y):
                if X not in base_set or IF.small_m(X, Y):
                    continue
                for A in _submasks(Y):
                    if IF.small_m(A, Y) and not IF.small_m(A & X, X):
                        return show(X, Y, A)
        return None

    record("Coh1", find_coh1())
    record("Coh2", find_coh2())
    record("Coh2a", find_coh2a())
    record("Coh-RK", find_coh_rk())
    cross = {"Coh2 iff Coh2a": verdicts["Coh2"] == verdicts["Coh2a"]}

    if IF.PS is not None:
        mt = IF.PS.mu_table

        def find_mu(law):
            for Y in bases:
                for X in _submasks(Y):
                    if not X:
                        continue
                    if law == "muPR" and mt[Y] & X & ~mt[X]:
                        return show(X, Y)
                    if law == "muCUM" and mt[Y] & ~X == 0 and mt[X] != mt[Y]:
                        return show(X, Y)
                    if law == "muRK" and mt[Y] & X and mt[Y] & X != mt[X]:
                        return show(X, Y)
            return None

        for law in ("muPR", "muCUM", "muRK"):
            record(law, find_mu(law))
        v = verdicts
        cross["Coh1 iff muPR"] = v["Coh1"] == v["muPR"]
        cross["muCUM implies Coh2"] = not v["muCUM"] or v["Coh2"]
        cross["Coh1 and Coh2 imply muCUM"] = not (v["Coh1"] and v["Coh2"]) or v["muCUM"]
        cross["muRK implies Coh-RK"] = not v["muRK"] or v["Coh-RK"]
        cross["Coh1 and Coh-RK imply muRK"] = not (v["Coh1"] and v["Coh-RK"]) or v["muRK"]
    return CoherenceReport(verdicts, witnesses, cross)


def choice_report(choice, universe) -> CoherenceReport:
    """Check the mu laws for an arbitrary choice function.

    ``choice`` maps a nonempty frozenset to a subset of it.  Reports
    ``mu-subset`` (choice within the set), ``muPR``, ``muCUM`` and
    ``mu-eq`` (X within Y and choice(Y) meeting X gives
    choice(X) = choice(Y) & X).
    """
    universe = sorted(universe)
    subsets = [frozenset(c) for k in range(1, len(universe) + 1)
               for c in combinations(universe, k)]
    table = {S: frozenset(choice(S)) for S in subsets}
    verdicts, witnesses = {}, {}

    def first(cond):
        for Y in subsets:
            for X in subsets:
                if X <= Y and cond(X, Y):
                    return [sorted(X), sorted(Y)]
        return None

    checks = {
        "mu-subset": first(lambda X, Y: X == Y and not table[X] <= X),
        "muPR": first(lambda X, Y: not (table[Y] & X <= table[X])),
        "muCUM": first(lambda X, Y: table[Y] <= X and table[X] != table[Y]),
        "mu-eq": first(lambda X, Y: bool(table[Y] & X) and table[X] != table[Y] & X),
    }
    for name, w in checks.items():
        verdicts[name] = w is None
        if w is not None:
            witnesses[name] = w
    return CoherenceReport(verdicts, witnesses, {})


# ---------------------------------------------------------------------------
# generators


def random_smooth(rng: random.Random, n: int, density=0.35) -> PrefStructure:
    """A random transitive acyclic preference on ``n`` points (hence smooth)."""
    names = [f"u{i}" for i in range(n)]
    perm = names[:]
    rng.shuffle(perm)
    pairs = set()
    for i, j in combinations(range(n), 2):
        if rng.random() < density:
            pairs.add((perm[i], perm[j]))
    changed = True
    while changed:
        changed = False
        for a, b in list(pairs):
            for c, d in list(pairs):
                if b == c and (a, d) not in pairs:
                    pairs.add((a, d))
                    changed = True
    return PrefStructure(names, pairs)


def random_ranked(rng: random.Random, n: int, levels=None) -> PrefStructure:
    """Random ranks; a point beats every point of a higher rank number."""
    names = [f"u{i}" for i in range(n)]
    levels = levels or max(1, n)
    rank = {x: rng.randrange(levels) for x in names}
    pairs = [(a, b) for a in names for b in names if rank[a] < rank[b]]
    return PrefStructure(names, pairs)


def gen_non_trans(k: int, closed=False) -> PrefStructure:
    """Finite cut of the chain a0 beats a, a1 beats a0, ..., plus c beats b.

    Unclosed (default), the cut keeps the non-smoothness of the infinite
    structure for k >= 1 but is not transitive.  Closed under transitivity
    it is transitive and therefore smooth.
    """
    chain = ["a"] + [f"a{i}" for i in range(k + 1)]
    pairs = {(chain[i + 1], chain[i]) for i in range(len(chain) - 1)}
    pairs.add(("c", "b"))
    if closed:
        pairs |= {(chain[j], chain[i]) for i in range(len(chain)) for j in range(i + 1, len(chain))}
    return PrefStructure(set(chain) | {"b", "c"}, pairs)


# ---------------------------------------------------------------------------
# fuzzing of the size facts


def _lt_default(IF, A, B):
    return _lt(IF, A, B, A | B)


def _lt_prime_default(IF, A, B):
    return _lt_prime(IF, A, B, A | B)


def _fact_checks():
    """Each check takes (IF, rng, full) and returns None (vacuous), True or False."""
    checks = {}

    def rand(rng, full):
        return rng.randint(0, full)

    def sub_of(rng, m):
        return m & rng.randint(0, m) if m else 0

    def nochange(IF, rng, full):
        Y = rand(rng, full)
        X, X2 = sub_of(rng, Y), rand(rng, full)
        if not X or not Y or not IF.small_m(X ^ X2, X | X2):
            return None
        return IF.classify_m(X, Y) == IF.classify_m(X2, Y | X2)

    def nochange2(IF, rng, full):
        X, X2, Y = rand(rng, full), rand(rng, full), rand(rng, full)
        if not X or not IF.small_m(X & ~Y, X) or not IF.small_m(X ^ X2, X | X2):
            return None
        return IF.classify_m(X, Y | X) == IF.classify_m(X2, Y | X2)

    def nochange3(IF, rng, full):
        X, Y, Y2 = rand(rng, full), rand(rng, full), rand(rng, full)
        if not X or not (Y | Y2) or not IF.small_m(X & ~Y, X) or not IF.small_m(Y ^ Y2, Y | Y2):
            return None
        return IF.classify_m(X, Y | X) == IF.classify_m(X, Y2 | X)

    def subset(IF, rng, full):
        X2 = rand(rng, full)
        X, A = sub_of(rng, X2), rand(rng, full)
        if not X or not IF.big_m(X, X2):
            return None
        return IF.big_m(X & A, X) == IF.big_m(X2 & A, X2)

    def subset2(IF, rng, full):
        X, Y = rand(rng, full), rand(rng, full)
        X2, Y2 = sub_of(rng, X), sub_of(rng, Y)
        if not X or not Y or not IF.big_m(X2, X) or not IF.big_m(Y2, Y):
            return None
        vals = {_lt_default(IF, a, b) for a, b in ((X, Y), (X2, Y), (X, Y2), (X2, Y2))}
        return len(vals) == 1

    def tweety(IF, rng, full):
        X, Y, Z = rand(rng, full), rand(rng, full), rand(rng, full)
        if not X or not Y:
            return None
        if not (IF.small_m(X & ~Y, X) and IF.small_m(X & Z, X) and IF.small_m(Y & ~Z, Y)):
            return None
        return IF.small_m(X, X | Y)

    def lt_trans(IF, rng, full):
        X, Y, Z = rand(rng, full), rand(rng, full), rand(rng, full)
        if not (_lt_default(IF, X, Y) and _lt_default(IF, Y, Z)):
            return None
        return _lt_default(IF, X, Z)

    def size1(IF, rng, full):
        # one random instance of each listed item; vacuous items are skipped
        A, B, C, D = (rand(rng, full) for _ in range(4))
        outcomes = []
        s, lt = IF.small_m, lambda a, b: _lt_default(IF, a, b)
        if s(A, B) and s(B, C):
            outcomes.append(s(A, C))
        if s(A, B):
            outcomes.append(not s(B, A))
        if A & ~B == 0 and lt(B, C):
            outcomes.append(lt(A, C))
        if lt(A, B) and B & ~C == 0:
            outcomes.append(lt(A, C))
        if lt(A, B):
            outcomes.append(not lt(B, A))
        if lt(A, B) and lt(B, C) and lt(C, D):
            outcomes.append(lt(A, D))
        if lt(A, B):
            outcomes.append(s(A & B, B))
        if s(A & B, A | B) and s(A & ~B, A) and A:
            outcomes.append(s(A & B, B))
        return None if not outcomes else all(outcomes)

    def trans_rank(IF, rng, full):
        X, Y, Z = rand(rng, full), rand(rng, full), rand(rng, full)
        if not (_lt_prime_default(IF, X, Y) and _lt_prime_default(IF, Y, Z)):
            return None
        return _lt_prime_default(IF, X, Z)

    checks["nochange"] = nochange
    checks["nochange2"] = nochange2
    checks["nochange3"] = nochange3
    checks["subset"] = subset
    checks["subset2"] = subset2
    checks["tweety"] = tweety
    checks["lt-transitive"] = lt_trans
    checks["size1"] = size1
    checks["trans-rank"] = trans_rank
    return checks


FACT_CHECKS = _fact_checks()
SMOOTH_SUITES = ("nochange", "nochange2", "nochange3", "subset", "subset2",
                 "tweety", "lt-transitive", "size1")
RANKED_SUITES = ("trans-rank",)


@dataclass
class FuzzReport:
    suite: str
    structures: int
    instances: int
    non_vacuous: int
    counterexamples: list


def fact_fuzz(suite, structures=10_000, max_universe=7, seed=0, tuples=20) -> FuzzReport:
    """Sample random structures and check one fact on random set tuples.

    Smooth facts run on random transitive acyclic preferences, the
    ranked fact on random ranked preferences.  Every structure gets its own
    sub-seed so any counterexample can be replayed.
    """
    if suite not in FACT_CHECKS:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(FACT_CHECKS)}")
    check = FACT_CHECKS[suite]
    master = random.Random(seed)
    instances = non_vacuous = 0
    bad = []
    for _ in range(structures):
        sub_seed = master.randrange(2**32)
        rng = random.Random(sub_seed)
        n = rng.randint(1, max_universe)
        if suite in RANKED_SUITES:
            PS = random_ranked(rng, n)
        else:
            PS = random_smooth(rng, n, rng.choice((0.2, 0.4, 0.6)))
        IF = IdealFamily.principal(PS)
        for _ in range(tuples):
            instances += 1
            outcome = check(IF, rng, PS.full)
            if outcome is None:
                continue
            non_vacuous += 1
            if not outcome:
                bad.append({"seed": sub_seed, "prefers": sorted(PS.prefers)})
                break
    return FuzzReport(suite, structures, instances, non_vacuous, bad)
