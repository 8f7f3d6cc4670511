"""Denotation systems, their graphs, acceptable valuations and paradox tests.

A denotation system assigns to every atom ``s`` a formula ``d(s)`` over the
atoms.  A valuation is acceptable when every atom has the value of its
denotation.  Atoms without a denotation ("free" atoms, typically the
frontier of a finite truncation of an infinite structure) are
unconstrained.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

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
    evaluate,
    make_and,
    make_or,
    render,
    substitute,
)


class YabloError(ValueError):
    pass


class UnknownAtom(YabloError):
    pass


class BudgetExceeded(YabloError):
    pass


class NotSimplyConnected(YabloError):
    pass


class NotYabloLike(YabloError):
    pass


class NotACell(YabloError):
    def __init__(self, condition, pair=None):
        super().__init__(condition if pair is None else f"{condition} (paths {pair[0]} and {pair[1]})")
        self.condition = condition
        self.pair = pair


POS, NEG, BOTH = "+", "-", "+-"


def natural_key(name):
    """Sort key that orders ``Y2`` before ``Y10``."""
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.findall(r"\d+|\D+", name)]


def _sorted(names):
    return sorted(names, key=natural_key)


# ---------------------------------------------------------------------------
# systems and graphs


class DenotationSystem:
    """Atoms with denotations plus free atoms.

    ``d`` maps atom names to formulas; ``free`` lists atoms that have no
    denotation.  Every atom used in a denotation must be declared one way
    or the other.
    """

    def __init__(self, d, free=()):
        self.d = dict(d)
        self.free = frozenset(free)
        if self.free & set(self.d):
            raise YabloError(f"atoms both free and denoted: {_sorted(self.free & set(self.d))}")
        declared = set(self.d) | self.free
        for s, f in self.d.items():
            missing = atoms(f) - declared
            if missing:
                raise UnknownAtom(f"d({s}) uses undeclared atoms {_sorted(missing)}")
        self.atoms = tuple(_sorted(declared))

    @classmethod
    def with_frontier(cls, d):
        """Declare every referenced but undenoted atom as free."""
        used = frozenset().union(*(atoms(f) for f in d.values())) if d else frozenset()
        return cls(d, used - set(d))

    def __repr__(self):
        return f"DenotationSystem({len(self.d)} denoted, free={_sorted(self.free)})"

    def lines(self):
        out = [f"{s} = {render(self.d[s])}" for s in self.atoms if s in self.d]
        out += [f"free {s}" for s in self.atoms if s in self.free]
        return out


@dataclass
class DiGraph:
    """Directed graph with a sign label on every edge."""

    vertices: tuple
    edges: dict = field(default_factory=dict)

    def succ(self, x):
        return [v for (u, v) in self.edges if u == x]

    def pred(self, x):
        return [u for (u, v) in self.edges if v == x]

    def edge_lines(self):
        return [f"{u} {v} {s}" for (u, v), s in sorted(self.edges.items(), key=lambda e: (natural_key(e[0][0]), natural_key(e[0][1])))]


def _polarities(f, positive=True, out=None):
    out = {} if out is None else out
    if isinstance(f, Atom):
        out.setdefault(f.name, set()).add(POS if positive else NEG)
    elif isinstance(f, Not):
        _polarities(f.arg, not positive, out)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            _polarities(a, positive, out)
    return out


def induced_graph(sys: DenotationSystem) -> DiGraph:
    """Edge s -> t whenever t occurs in d(s), signed by its polarity."""
    edges = {}
    for s in sys.atoms:
        if s not in sys.d:
            continue
        pol = _polarities(sys.d[s])
        for t in _sorted(pol):
            signs = pol[t]
            edges[(s, t)] = BOTH if len(signs) == 2 else next(iter(signs))
    return DiGraph(sys.atoms, edges)


def is_acceptable(sys: DenotationSystem, v) -> bool:
    return all(bool(v[s]) == evaluate(f, v) for s, f in sys.d.items())


def simplify(f):
    """Fold constants through negation, conjunction and disjunction."""
    if isinstance(f, Not):
        a = simplify(f.arg)
        if isinstance(a, Top):
            return BOT
        if isinstance(a, Bot):
            return TOP
        return Not(a)
    if isinstance(f, And):
        parts = [simplify(a) for a in f.args]
        if any(isinstance(p, Bot) for p in parts):
            return BOT
        parts = [p for p in parts if not isinstance(p, Top)]
        return make_and(parts) if parts else TOP
    if isinstance(f, Or):
        parts = [simplify(a) for a in f.args]
        if any(isinstance(p, Top) for p in parts):
            return TOP
        parts = [p for p in parts if not isinstance(p, Bot)]
        return make_or(parts) if parts else BOT
    return f


def _const(b):
    return TOP if b else BOT


def percolate(sys: DenotationSystem, fixed=None):
    """Propagate forced truth values until nothing changes.

    An atom is forced once its denotation simplifies to a constant after
    substituting the values already forced.  Returns the system of the
    remaining atoms (with forced atoms substituted away) and the partial
    valuation of the forced ones.  ``fixed`` pins free atoms to values
    before propagation starts.
    """
    forced = dict(fixed or {})
    d = dict(sys.d)
    changed = True
    while changed:
        changed = False
        consts = {a: _const(b) for a, b in forced.items()}
        for s in list(d):
            if s in forced:
                continue
            f = simplify(substitute(d[s], consts))
            d[s] = f
            if isinstance(f, (Top, Bot)):
                forced[s] = isinstance(f, Top)
                consts[s] = f
                changed = True
    consts = {a: _const(b) for a, b in forced.items()}
    rest = {s: simplify(substitute(f, consts)) for s, f in d.items() if s not in forced}
    free = sys.free - set(forced)
    return DenotationSystem(rest, free), forced


# ---------------------------------------------------------------------------
# brute force


def _np_eval(f, cols, size):
    if isinstance(f, Atom):
        return cols[f.name]
    if isinstance(f, Top):
        return np.ones(size, dtype=bool)
    if isinstance(f, Bot):
        return np.zeros(size, dtype=bool)
    if isinstance(f, Not):
        return ~_np_eval(f.arg, cols, size)
    parts = (_np_eval(a, cols, size) for a in f.args)
    out = next(parts).copy()
    for p in parts:
        if isinstance(f, And):
            out &= p
        else:
            out |= p
    return out


def _brute(sys: DenotationSystem, chunk=1 << 16):
    """Yield acceptable valuations in lexicographic order (False before True).

    Atoms are taken in natural order, the first atom varying slowest.
    """
    names = sys.atoms
    n = len(names)
    total = 1 << n
    for start in range(0, total, chunk):
        k = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cols = {a: ((k >> (n - 1 - i)) & 1).astype(bool) for i, a in enumerate(names)}
        ok = np.ones(len(k), dtype=bool)
        for s, f in sys.d.items():
            ok &= cols[s] == _np_eval(f, cols, len(k))
            if not ok.any():
                break
        for idx in np.flatnonzero(ok):
            yield {a: bool(cols[a][idx]) for a in names}


def _search(sys: DenotationSystem, budget, fixed):
    """Acceptable valuations agreeing with ``fixed``, least first.

    Pinned atoms are treated as free constants during percolation and
    search; their own equations are re-checked on every candidate.
    """
    fixed = dict(fixed or {})
    for a in fixed:
        if a not in sys.atoms:
            raise UnknownAtom(f"unknown atom {a!r}")
    base = DenotationSystem({s: f for s, f in sys.d.items() if s not in fixed}, sys.free | set(fixed))
    rest, forced = percolate(base, fixed)
    if len(rest.atoms) > budget:
        raise BudgetExceeded(f"{len(rest.atoms)} undetermined atoms exceed the budget of {budget}")
    for v in _brute(rest):
        full = {**forced, **v}
        if is_acceptable(sys, full):
            yield {a: full[a] for a in sys.atoms}


def find_acceptable(sys: DenotationSystem, budget=24, fixed=None):
    """The lexicographically least acceptable valuation, or None.

    Percolation runs first; the atoms it leaves undetermined are searched
    exhaustively, and ``budget`` bounds their number.  ``fixed`` pins some
    atoms to given values.
    """
    return next(_search(sys, budget, fixed), None)


def all_acceptable(sys: DenotationSystem, budget=24, fixed=None):
    return list(_search(sys, budget, fixed))


# ---------------------------------------------------------------------------
# simply connected systems


def is_simply_connected(g: DiGraph) -> bool:
    """True when the underlying undirected multigraph has no cycle.

    Loops and pairs of opposite edges count as cycles.
    """
    parent = {v: v for v in g.vertices}

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        if u == v:
            return False
        ru, rv = root(u), root(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _drop_inessential(f):
    names = atoms(f)
    if not names:
        return f
    tt = TruthTable(names)
    table = tt.table(f)
    if table in (0, tt.full):
        return _const(table != 0)
    keep = tt.essential(table)
    dead = {a: TOP for a in names - keep}
    return simplify(substitute(f, dead)) if dead else f


def solve_simply_connected(sys: DenotationSystem, seed=True):
    """Acceptable valuation of a system whose graph is simply connected.

    Inessential atoms are first replaced by TOP in each denotation (which
    erases their edges) and constants are propagated, repeatedly, until
    every denotation depends on all its atoms and none is constant.  Each remaining
    component is then entered at its least atom with value ``seed``; the
    constraint of every atom is visited once, and its unassigned atoms get
    the lexicographically least values satisfying it.  Because the graph
    is a forest, no constraint is ever entered with two assigned atoms, so
    this never fails.
    """
    if not is_simply_connected(induced_graph(sys)):
        raise NotSimplyConnected("the induced graph has an undirected cycle")
    rest, value = sys, {}
    while True:
        cleaned = DenotationSystem({s: _drop_inessential(f) for s, f in rest.d.items()}, rest.free)
        rest, more = percolate(cleaned)
        value.update(more)
        if not more:
            break
    factors = {s: (s, tuple(_sorted(atoms(f)))) for s, f in rest.d.items()}
    member_of = {a: [] for a in rest.atoms}
    for s, (_, succ) in factors.items():
        member_of[s].append(s)
        for t in succ:
            member_of[t].append(s)
    done = set()
    for start in rest.atoms:
        if start in value:
            continue
        value[start] = seed
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for head in member_of[a]:
                if head in done:
                    continue
                done.add(head)
                scope = [head, *factors[head][1]]
                open_ = [x for x in _sorted(set(scope)) if x not in value]
                for bits in product((False, True), repeat=len(open_)):
                    trial = {**value, **dict(zip(open_, bits))}
                    if trial[head] == evaluate(rest.d[head], trial):
                        value.update(zip(open_, bits))
                        queue.extend(open_)
                        break
                else:
                    raise RuntimeError(f"constraint of {head} cannot be met")
    out = {a: value[a] for a in sys.atoms}
    if not is_acceptable(sys, out):
        raise RuntimeError("constructed valuation is not acceptable")
    return out


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass
class HomomorphismResult:
    ok: bool
    violation: tuple | None = None

    def __bool__(self):
        return self.ok


def homomorphism_check(G: DiGraph, H: DiGraph, f) -> HomomorphismResult:
    """Check that every edge xy of G maps to an edge f(x)f(y) of H."""
    for x in G.vertices:
        if x not in f:
            raise YabloError(f"map is undefined on {x!r}")
    for u, v in G.edges:
        if (f[u], f[v]) not in H.edges:
            return HomomorphismResult(False, (u, v))
    return HomomorphismResult(True)


# ---------------------------------------------------------------------------
# generators


def _neg_conj(names):
    return make_and([Not(Atom(n)) for n in names]) if names else TOP


def gen_yablo(n) -> DenotationSystem:
    """Finite truncation Y1..Yn with d(Yi) the conjunction of all later negations."""
    if n < 1:
        raise ValueError("n must be positive")
    return DenotationSystem({f"Y{i}": _neg_conj([f"Y{j}" for j in range(i + 1, n + 1)]) for i in range(1, n + 1)})


def yg_prime_name(i, j, k):
    return f"Y{i}_{j}_{k}"


def gen_yg_prime(levels) -> DenotationSystem:
    """Yablo truncation with every long arrow factored through positive chains.

    Yi points negatively to Y(i+1) and to the chain start (i, j, i+1) for
    each j >= i+2; the chain (i, j, k) points positively to (i, j, k+1) and
    its last node (i, j, j-1) to Yj.
    """
    if levels < 2:
        raise ValueError("levels must be at least 2")
    n = levels
    d = {}
    for i in range(1, n + 1):
        refs = [Not(Atom(f"Y{i + 1}"))] if i < n else []
        refs += [Not(Atom(yg_prime_name(i, j, i + 1))) for j in range(i + 2, n + 1)]
        d[f"Y{i}"] = make_and(refs) if refs else TOP
        for j in range(i + 2, n + 1):
            for k in range(i + 1, j):
                nxt = yg_prime_name(i, j, k + 1) if k + 1 < j else f"Y{j}"
                d[yg_prime_name(i, j, k)] = Atom(nxt)
    return DenotationSystem(d)


def yg_collapse(levels) -> dict:
    """Map Yk and every chain node (i, j, k) to the chain node Lk."""
    f = {}
    for i in range(1, levels + 1):
        f[f"Y{i}"] = f"L{i}"
        for j in range(i + 2, levels + 1):
            for k in range(i + 1, j):
                f[yg_prime_name(i, j, k)] = f"L{k}"
    return f


def gen_yg_double_prime(n) -> DenotationSystem:
    """The collapsed chain L1..Ln with d(Lk) = !L(k+1) and d(Ln) = TOP."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return DenotationSystem({f"L{k}": Not(Atom(f"L{k + 1}")) if k < n else TOP for k in range(1, n + 1)})


CHAIN_CODES = "pnTF"


def gen_chain(spec: str) -> DenotationSystem:
    """Chain x1..xn where code i is p (x(i+1)), n (!x(i+1)), T or F.

    A reference past the end becomes a free atom.
    """
    d = {}
    for i, c in enumerate(spec, start=1):
        nxt = Atom(f"x{i + 1}")
        if c == "p":
            d[f"x{i}"] = nxt
        elif c == "n":
            d[f"x{i}"] = Not(nxt)
        elif c == "T":
            d[f"x{i}"] = TOP
        elif c == "F":
            d[f"x{i}"] = BOT
        else:
            raise ValueError(f"unknown chain code {c!r}")
    return DenotationSystem.with_frontier(d)


def gen_ya(with_last=True) -> DenotationSystem:
    """Five nodes x0..x4 with all forward arrows negative.

    Without ``with_last`` the arrow x0 -> x4 is left out.
    """
    edges = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    if not with_last:
        edges.remove((0, 4))
    d = {f"x{i}": _neg_conj([f"x{j}" for a, j in edges if a == i]) for i in range(5)}
    return DenotationSystem(d)


# ---------------------------------------------------------------------------
# schemas over the naturals


@dataclass(frozen=True)
class Rule:
    """One conjunct of a family template.

    ``offset``: the node ``family`` at index i + ``shift``.
    ``all_greater``: every node of ``family`` with index above i.
    """

    kind: str
    family: str
    sign: str = NEG
    shift: int = 0


@dataclass(frozen=True)
class Family:
    name: str
    start: int
    rules: tuple


class SchemaGraph:
    """Finitely many families of nodes indexed by the naturals."""

    def __init__(self, families):
        self.families = {f.name: f for f in families}
        for f in families:
            for r in f.rules:
                if r.family not in self.families:
                    raise YabloError(f"family {f.name} refers to unknown family {r.family}")
                if r.kind not in ("offset", "all_greater"):
                    raise YabloError(f"unknown rule kind {r.kind!r}")
                if r.sign not in (POS, NEG):
                    raise YabloError(f"rule sign must be + or -, got {r.sign!r}")
                if r.kind == "offset" and r.family == f.name and r.shift < 1:
                    raise YabloError(f"family {f.name} refers to itself at offset {r.shift}")

    def denotation(self, fam, i, horizon):
        """d(F_i) truncated at ``horizon`` (index bound per family)."""
        parts = []
        for r in self.families[fam].rules:
            g = self.families[r.family]
            if r.kind == "offset":
                idx = [i + r.shift]
            else:
                idx = range(max(i + 1, g.start), horizon[r.family] + 1)
            for j in idx:
                lit = Atom(f"{g.name}{j}")
                parts.append(lit if r.sign == POS else Not(lit))
        return make_and(parts) if parts else TOP

    def unfold(self, depth=None, horizon=None) -> DenotationSystem:
        """Finite truncation; references past the horizon become free atoms.

        ``depth`` keeps indices start..start+depth of every family;
        ``horizon`` gives the last index per family explicitly.
        """
        if horizon is None:
            horizon = {f.name: f.start + depth for f in self.families.values()}
        d = {}
        for f in self.families.values():
            for i in range(f.start, horizon[f.name] + 1):
                d[f"{f.name}{i}"] = self.denotation(f.name, i, horizon)
        return DenotationSystem.with_frontier(d)


def yablo_schema() -> SchemaGraph:
    return SchemaGraph([Family("Y", 0, (Rule("all_greater", "Y", NEG),))])


def procrastination_schema() -> SchemaGraph:
    return SchemaGraph([
        Family("Y", 1, (Rule("offset", "Y", NEG, 1), Rule("offset", "X", POS, 2))),
        Family("X", 3, (Rule("offset", "Y", NEG, 0), Rule("offset", "X", POS, 1))),
    ])


def gen_procrastination(n=None):
    """The schema itself, or its truncation Y1..Yn, X3..X(n+1) when n is given."""
    sch = procrastination_schema()
    if n is None:
        return sch
    return sch.unfold(horizon={"Y": n, "X": n + 1})


@dataclass
class UniformCheck:
    acceptable: bool
    family: str | None = None
    reason: str = ""


def schema_check_uniform(sch: SchemaGraph, assignment) -> UniformCheck:
    """Check a valuation that is constant on each family.

    Every conjunct of a template (an offset reference or a nonempty
    all-greater block) takes the signed value of its family, so each
    family equation reduces to a single boolean comparison.
    """
    for f in sch.families.values():
        rhs = True
        for r in f.rules:
            val = assignment[r.family]
            rhs = rhs and (val if r.sign == POS else not val)
        if rhs != assignment[f.name]:
            return UniformCheck(False, f.name, f"{f.name} is {assignment[f.name]} but its denotation evaluates to {rhs}")
    return UniformCheck(True)


@dataclass
class Refutation:
    refuted: bool
    depth: int | None = None


def refute(sch: SchemaGraph, atom, value, max_depth=4, budget=24) -> Refutation:
    """Search truncations of growing depth for one where ``atom=value`` fails.

    Frontier atoms are free, so a truncation without an acceptable valuation
    extending ``atom=value`` rules it out for the whole schema.
    """
    for depth in range(1, max_depth + 1):
        sys = sch.unfold(depth)
        if atom not in sys.atoms:
            continue
        if find_acceptable(sys, budget, fixed={atom: value}) is None:
            return Refutation(True, depth)
    return Refutation(False)


# ---------------------------------------------------------------------------
# transitive conjunction-of-negations graphs


@dataclass
class TransAndNotResult:
    paradoxical: bool
    culprit: str | None = None
    valuation: dict | None = None


def _succ_masks(vertices, edges):
    pos = {v: i for i, v in enumerate(vertices)}
    masks = [0] * len(vertices)
    for u, v in edges:
        masks[pos[u]] |= 1 << pos[v]
    return masks


def _yablo_like_graph(g):
    if isinstance(g, DenotationSystem):
        if g.free:
            raise NotYabloLike(f"free atoms {_sorted(g.free)} have no denotation")
        for s, f in g.d.items():
            lits = f.args if isinstance(f, And) else (f,)
            if not (isinstance(f, Top) or all(isinstance(x, Not) and isinstance(x.arg, Atom) for x in lits)):
                raise NotYabloLike(f"d({s}) is not a conjunction of negated atoms")
        g = induced_graph(g)
    if any(s != NEG for s in g.edges.values()):
        raise NotYabloLike("all edges must be negative")
    return g


def transandnot_batch(masks: np.ndarray):
    """Vectorised criterion on rows of successor bitmasks.

    Returns a boolean array: True where some node has successors that all
    have successors (the system is then paradoxical).
    """
    masks = np.asarray(masks, dtype=np.int64)
    n = masks.shape[1]
    nonempty = masks != 0
    bits = (nonempty * (1 << np.arange(n))).sum(axis=1)
    culprit = nonempty & ((masks & ~bits[:, None]) == 0)
    return culprit.any(axis=1)


def kernel_exists_batch(masks: np.ndarray):
    """Brute force over all valuations of conjunction-of-negation systems.

    A valuation V (bitmask of true nodes) is acceptable when each node is
    true exactly when none of its successors is true.
    """
    masks = np.asarray(masks, dtype=np.int64)
    n = masks.shape[1]
    found = np.zeros(len(masks), dtype=bool)
    for v in range(1 << n):
        implied = np.zeros(len(masks), dtype=np.int64)
        for x in range(n):
            implied |= ((masks[:, x] & v) == 0).astype(np.int64) << x
        found |= implied == v
    return found


def transandnot(g) -> TransAndNotResult:
    """Decide a transitive graph whose denotations are conjunctions of negations.

    Paradoxical exactly when some node has successors and each of them has
    successors too.  Otherwise nodes without successors are true and all
    others false.
    """
    if isinstance(g, SchemaGraph):
        return _transandnot_schema(g)
    g = _yablo_like_graph(g)
    succ = {v: set(g.succ(v)) for v in g.vertices}
    for u in g.vertices:
        for v in succ[u]:
            missing = succ[v] - succ[u]
            if missing:
                raise NotYabloLike(f"not transitive: {u}->{v}->{_sorted(missing)[0]} without {u}->{_sorted(missing)[0]}")
    for x in _sorted(g.vertices):
        if succ[x] and all(succ[y] for y in succ[x]):
            return TransAndNotResult(True, culprit=x)
    val = {x: not succ[x] for x in g.vertices}
    for x in g.vertices:
        if val[x] != all(not val[y] for y in succ[x]):
            raise RuntimeError("canonical valuation is not acceptable")
    return TransAndNotResult(False, valuation=val)


def _transandnot_schema(sch: SchemaGraph) -> TransAndNotResult:
    for f in sch.families.values():
        if any(r.sign != NEG for r in f.rules):
            raise NotYabloLike(f"family {f.name} has a positive reference")
    sys = sch.unfold(6)
    g = induced_graph(sys)
    inside = set(sys.d)
    succ = {v: set(g.succ(v)) for v in g.vertices}
    for u in inside:
        for v in succ[u] & inside:
            if (succ[v] & inside) - succ[u]:
                raise NotYabloLike(f"schema is not transitive at {u}->{v}")
    has_rules = {name: bool(f.rules) for name, f in sch.families.items()}
    for f in sch.families.values():
        if f.rules and all(has_rules[r.family] for r in f.rules):
            return TransAndNotResult(True, culprit=f"{f.name}{f.start}")
    assignment = {name: not rules for name, rules in has_rules.items()}
    if not schema_check_uniform(sch, assignment).acceptable:
        raise RuntimeError("canonical valuation is not acceptable")
    return TransAndNotResult(False, valuation=assignment)


def natural_posets(k):
    """Strict orders on 0..k-1 that only relate smaller to larger indices.

    Returned as tuples of successor bitmasks.
    """
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    out = []
    for chosen in range(1 << len(pairs)):
        succ = [0] * k
        for b, (i, j) in enumerate(pairs):
            if chosen >> b & 1:
                succ[i] |= 1 << j
        if all((succ[j] & ~succ[i]) == 0 for i in range(k) for j in range(k) if succ[i] >> j & 1):
            out.append(tuple(succ))
    return out


def transitive_relations(n):
    """Successor bitmasks of transitive relations on n nodes, up to relabelling.

    A transitive relation splits into blocks: clusters of mutually related
    nodes (complete, loops included) and single nodes without a loop.  The
    blocks carry a strict order, and any relation can be relabelled so
    that blocks are contiguous and ordered compatibly with their indices.
    Every transitive relation on n nodes is isomorphic to at least one row.
    """
    rows = []
    for cuts in range(1 << (n - 1)):
        sizes, run = [], 1
        for b in range(n - 1):
            if cuts >> b & 1:
                sizes.append(run)
                run = 1
            else:
                run += 1
        sizes.append(run)
        k = len(sizes)
        starts = [sum(sizes[:i]) for i in range(k)]
        block_mask = [((1 << sizes[i]) - 1) << starts[i] for i in range(k)]
        singles = [i for i in range(k) if sizes[i] == 1]
        for order in natural_posets(k):
            for loops in range(1 << len(singles)):
                looped = {b for t, b in enumerate(singles) if loops >> t & 1} | {i for i in range(k) if sizes[i] > 1}
                succ = [0] * n
                for i in range(k):
                    m = block_mask[i] if i in looped else 0
                    for j in range(k):
                        if order[i] >> j & 1:
                            m |= block_mask[j]
                    for x in range(starts[i], starts[i] + sizes[i]):
                        succ[x] = m
                rows.append(succ)
    return np.array(rows, dtype=np.int64)


def system_from_masks(masks) -> DenotationSystem:
    n = len(masks)
    return DenotationSystem({f"v{i}": _neg_conj([f"v{j}" for j in range(n) if masks[i] >> j & 1]) for i in range(n)})


# ---------------------------------------------------------------------------
# random systems


def random_loop_free(rng, n, max_succ=3, depth=2, free_prob=0.5) -> DenotationSystem:
    """Random acyclic system: atoms only refer to atoms later in a shuffled order.

    Atoms without successors are free or constant.
    """
    from ordlogic.relevance import random_formula

    names = [f"a{i}" for i in range(n)]
    rng.shuffle(names)
    d, free = {}, []
    for i, s in enumerate(names):
        later = names[i + 1:]
        k = rng.randint(0, min(max_succ, len(later)))
        if k:
            d[s] = random_formula(rng, rng.sample(later, k), depth)
        elif rng.random() < free_prob:
            free.append(s)
        else:
            d[s] = rng.choice((TOP, BOT))
    return DenotationSystem(d, free)


def random_forest(rng, n, depth=2, free_prob=0.1) -> DenotationSystem:
    """Random system whose induced graph is a forest of random trees.

    Tree edges get a random direction; each atom's denotation is a random
    formula over its out-neighbours, and a sink is a constant or free.
    """
    from ordlogic.relevance import random_formula

    names = [f"t{i}" for i in range(n)]
    out = {s: [] for s in names}
    for i in range(1, n):
        if rng.random() < 0.15:
            continue
        j = rng.randrange(i)
        u, v = (names[i], names[j]) if rng.random() < 0.5 else (names[j], names[i])
        out[u].append(v)
    d, free = {}, []
    for s in names:
        if out[s]:
            f = random_formula(rng, out[s], depth)
            missing = set(out[s]) - atoms(f)
            if missing:
                f = make_and([f, *[Or((Atom(m), Not(Atom(m)))) for m in _sorted(missing)]]) if rng.random() < 0.5 else make_or([f, *[Atom(m) for m in _sorted(missing)]])
            d[s] = f
        elif rng.random() < free_prob:
            free.append(s)
        else:
            d[s] = rng.choice((TOP, BOT))
    return DenotationSystem(d, free)


# ---------------------------------------------------------------------------
# labelled and valued paths


@dataclass(frozen=True)
class LabelledPath:
    nodes: tuple
    signs: tuple

    def __str__(self):
        out = [self.nodes[0]]
        for s, v in zip(self.signs, self.nodes[1:]):
            out.append(f"->{s} {v}")
        return " ".join(out)


@dataclass(frozen=True)
class ValuedPath:
    path: LabelledPath
    seed: str
    values: tuple

    def __str__(self):
        out = [f"{self.path.nodes[0]}{self.values[0]}"]
        for s, v, val in zip(self.path.signs, self.path.nodes[1:], self.values[1:]):
            out.append(f"->{s} {v}{val}")
        return " ".join(out)

    def opposite(self):
        return value_path(self.path, _flip(self.seed))


def _flip(sign):
    return NEG if sign == POS else POS


def labelled_paths(sys, origin, max_len=None):
    """Maximal paths from ``origin``, with every +- edge split in two.

    Successors are visited in natural order, + before -.  Paths stop at a
    node without successors or after ``max_len`` edges.
    """
    g = sys if isinstance(sys, DiGraph) else induced_graph(sys)
    if origin not in g.vertices:
        raise UnknownAtom(f"unknown origin {origin!r}")
    if max_len is None:
        max_len = len(g.vertices)
    succ = {v: [] for v in g.vertices}
    for (u, v), s in g.edges.items():
        succ[u].append((v, s))
    for u in succ:
        succ[u].sort(key=lambda e: natural_key(e[0]))
    out = []

    def walk(nodes, signs):
        steps = succ[nodes[-1]]
        if not steps or len(signs) >= max_len:
            out.append(LabelledPath(tuple(nodes), tuple(signs)))
            return
        for v, s in steps:
            for label in ((POS, NEG) if s == BOTH else (s,)):
                walk(nodes + [v], signs + [label])

    walk([origin], [])
    return out


def value_path(p: LabelledPath, seed) -> ValuedPath:
    """Propagate ``seed`` along the path: + keeps the sign, - flips it."""
    if seed not in (POS, NEG):
        raise ValueError("seed must be '+' or '-'")
    vals = [seed]
    for s in p.signs:
        vals.append(vals[-1] if s == POS else _flip(vals[-1]))
    return ValuedPath(p, seed, tuple(vals))


def parse_path(text) -> LabelledPath:
    """Read ``x ->+ y ->- z`` back into a labelled path."""
    toks = text.split()
    nodes, signs = [toks[0]], []
    for arrow, node in zip(toks[1::2], toks[2::2]):
        if arrow not in ("->+", "->-"):
            raise ValueError(f"bad arrow {arrow!r}")
        signs.append(arrow[2])
        nodes.append(node)
    return LabelledPath(tuple(nodes), tuple(signs))


@dataclass
class PairReport:
    first: int
    second: int
    diverge: str
    meet: str
    negatives: tuple
    agree: dict

    @property
    def contradictory(self):
        return not all(self.agree.values())


@dataclass
class CellReport:
    is_cell: bool
    contradictory: bool
    pairs: list
    contradictory_seeds: tuple = ()


def _pair_report(i, j, p, q):
    k = 0
    while k < min(len(p.signs), len(q.signs)) and p.nodes[k + 1] == q.nodes[k + 1] and p.signs[k] == q.signs[k]:
        k += 1
    if k == len(p.signs) or k == len(q.signs):
        raise NotACell("the paths never diverge", (i, j))
    later_q = {v: t for t, v in enumerate(q.nodes) if t > k}
    meet = next(((t, later_q[v]) for t, v in enumerate(p.nodes) if t > k and v in later_q), None)
    if meet is None:
        raise NotACell("the paths do not meet again", (i, j))
    a, b = meet
    if p.nodes[a:] != q.nodes[b:] or p.signs[a:] != q.signs[b:]:
        raise NotACell("the paths diverge again after meeting", (i, j))
    negs = (p.signs[:a].count(NEG), q.signs[:b].count(NEG))
    agree = {}
    for seed in (POS, NEG):
        vp, vq = value_path(p, seed), value_path(q, seed)
        agree[seed] = vp.values[a] == vq.values[b]
        if agree[seed] != (negs[0] % 2 == negs[1] % 2):
            raise RuntimeError("sign disagreement does not match parity")
    return PairReport(i, j, p.nodes[k], p.nodes[a], negs, agree)


def cell_analyze(paths) -> CellReport:
    """Validate a set of labelled paths as a cell and find contradictions.

    Any two paths must share their origin, split at some node, and meet
    again with identical continuations.  For each seed and pair the
    values at the meeting node are compared; they disagree exactly when the
    numbers of negative steps before the meeting node differ in parity.
    """
    paths = [parse_path(p) if isinstance(p, str) else p for p in paths]
    if len(paths) < 2:
        raise NotACell("a cell needs at least two paths")
    if len({p.nodes[0] for p in paths}) != 1:
        raise NotACell("the paths have different origins")
    reports = [_pair_report(i, j, paths[i], paths[j]) for i, j in combinations(range(len(paths)), 2)]
    seeds = tuple(s for s in (POS, NEG) if any(not r.agree[s] for r in reports))
    return CellReport(True, bool(seeds), reports, seeds)


# ---------------------------------------------------------------------------
# odd loops of contradictions


@dataclass
class OddLoopResult:
    consistent: bool
    coloring: dict | None = None
    odd_cycle: list | None = None

    def render(self):
        return "-".join(self.odd_cycle) if self.odd_cycle else ""


def oddloop_check(items, pairs) -> OddLoopResult:
    """Test whether the contradiction graph is bipartite.

    If not, a shortest odd cycle is returned, closed (first item repeated
    at the end).  The cycle starts with the latest listed pair on it, read
    in the order it was given, so the witness shows which added
    contradiction closed the loop.
    """
    items = list(items)
    pairs = list(pairs)
    adj = {x: [] for x in items}
    for a, b in pairs:
        if a not in adj or b not in adj:
            raise UnknownAtom(f"pair ({a}, {b}) uses an undeclared item")
        adj[a].append(b)
        adj[b].append(a)
    color = {}
    bipartite = True
    for s in items:
        if s in color:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    bipartite = False
    if bipartite:
        return OddLoopResult(True, coloring=color)
    best = None
    for s in items:
        dist, parent = {s: 0}, {s: None}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w], parent[w] = dist[u] + 1, u
                    queue.append(w)
        for u in items:
            for w in adj[u]:
                if u in dist and w in dist and dist[u] == dist[w]:
                    pu, pw = [u], [w]
                    while pu[-1] is not None:
                        pu.append(parent[pu[-1]])
                    while pw[-1] is not None:
                        pw.append(parent[pw[-1]])
                    pu, pw = pu[:-1], pw[:-1]
                    while len(pu) > 1 and len(pw) > 1 and pu[-2] == pw[-2]:
                        pu.pop()
                        pw.pop()
                    cycle = list(reversed(pu)) + pw[:-1]
                    cycle.append(cycle[0])
                    if best is None or len(cycle) < len(best):
                        best = cycle
    return OddLoopResult(False, odd_cycle=_orient(best, pairs))


def _orient(cycle, pairs):
    """Rotate a closed cycle to begin with its latest listed pair."""
    latest = {}
    for k, (a, b) in enumerate(pairs):
        latest[frozenset((a, b))] = (k, a)
    ring = cycle[:-1]
    n = len(ring)
    i = max(range(n), key=lambda t: latest[frozenset((ring[t], ring[(t + 1) % n]))][0])
    first = latest[frozenset((ring[i], ring[(i + 1) % n]))][1]
    if ring[i] == first:
        out = [ring[(i + t) % n] for t in range(n)]
    else:
        out = [ring[(i + 1 - t) % n] for t in range(n)]
    return out + [out[0]]
