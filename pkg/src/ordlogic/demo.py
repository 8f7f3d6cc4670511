"""Registry of worked examples replayed by ``ordlogic demo examples``.

Each entry pairs a descriptive label with a function computing a value
rendered as text and the expected text.  The expected strings are stored
here once; the tests and the CLI both read them from this registry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ordlogic import analogy, order_measure as om, order_ops as ops, relevance, reliability, size_logic as sl, yablo
from ordlogic.formula import parse, render
from ordlogic.order_core import build_poset, disjoint, inclusion_poset, min_max, with_bounds


def fmt(s) -> str:
    return "{" + ",".join(sorted(s)) + "}"


def frac(q) -> str:
    return reliability.render(Fraction(q))


# ---------------------------------------------------------------------------
# shared example structures


def diamond():
    return with_bounds(["a", "b"])


def antichain3():
    return with_bounds(["x", "y", "z"])


def refined_pair():
    """x below x' and an unrelated y."""
    return with_bounds(["x", "x'", "y"], [("x", "x'")])


def joined_pair():
    """a and b below ab, with an unrelated c."""
    return with_bounds(["a", "b", "c", "ab"], [("a", "ab"), ("b", "ab")])


def shared_base():
    """d below both b and c, with an unrelated a."""
    return with_bounds(["a", "b", "c", "d"], [("d", "b"), ("d", "c")])


def uneven_branches():
    """a, c of height one and b below b'."""
    return with_bounds(["a", "b", "b'", "c"], [("b", "b'")])


def two_chains():
    """a below a' and b below b'."""
    return with_bounds(["a", "a'", "b", "b'"], [("a", "a'"), ("b", "b'")])


def covered_pair():
    """x and y both below b."""
    return with_bounds(["x", "y", "b"], [("x", "b"), ("y", "b")])


def gappy_inclusion():
    P, names = inclusion_poset([set(), {"a"}, {"b", "d"}, {"a", "b", "c"}, {"a", "b", "c", "d"}])
    return P, names


def two_branch_inclusion():
    P, names = inclusion_poset([set(), {"a"}, {"a", "a'"}, {"b"}, {"b", "b'"}, {"a", "a'", "b", "b'"}])
    return P, names


def chain_poset(names):
    return build_poset(names, list(zip(names, names[1:])), names[0], names[-1])


def value_system():
    return yablo.DenotationSystem(
        {"x0": parse("!x1 | x2 | x4"), "x1": parse("x2"), "x2": parse("x3 & !x3"), "x3": parse("x4")},
        free=["x4"],
    )


def combination_case():
    return analogy.case_from_dict({
        "objects": ["x", "x1", "y", "y1"],
        "unary": ["P", "Q", "R", "S", "R2", "S2"],
        "known": {"P(x)": True, "P(x1)": True, "R(y)": True, "R(y1)": False,
                  "R2(y1)": True, "R2(y)": False, "Q(x)": True, "Q(x1)": False},
        "facts": ["P(x)", "P(x1)", "Q(x)", "Q(x1)"],
        "maps": {
            "alpha": {"x": "y", "x1": "y1", "P": "R", "Q": "S"},
            "beta": {"x": "y", "x1": "y1", "P": "R2", "Q": "S2"},
            "combined": {"combine": ["alpha", "beta"], "left": ["x"], "right": ["x1"]},
        },
        "queries": ["S(y)", "S2(y1)", "S(y1)"],
    })


THERMOMETERS = {"t1": 20, "t2": 19, "t3": 21, "t4": 30}


def thermometer_rounds(variant2_weights="rho"):
    state = reliability.AggregatorState.fresh(list(THERMOMETERS))
    first = reliability.run_round(state, THERMOMETERS)
    cfg = reliability.RoundConfig(variants=frozenset({2}), weights=variant2_weights)
    second = reliability.run_round(state, THERMOMETERS, cfg)
    return first, second


# ---------------------------------------------------------------------------
# the ledger


@dataclass
class DemoEntry:
    label: str
    compute: Callable[[], str]
    expected: str


@dataclass
class LedgerRow:
    label: str
    computed: str
    expected: str
    ok: bool


def _order_entries():
    D, A, R43, R48 = diamond(), antichain3(), refined_pair(), joined_pair()
    S, H, C = shared_base(), uneven_branches(), covered_pair()
    return [
        DemoEntry("diamond: top meet a, plain", lambda: fmt(ops.meet(D, {"top"}, {"a"})), "{a,bot}"),
        DemoEntry("diamond: top meet a, primed", lambda: fmt(ops.meet(D, {"top"}, {"a"}, ops.PRIMED)), "{a}"),
        DemoEntry("diamond: bottom join a, plain", lambda: fmt(ops.join(D, {"bot"}, {"a"})), "{a,top}"),
        DemoEntry("diamond: bottom join a, primed", lambda: fmt(ops.join(D, {"bot"}, {"a"}, ops.PRIMED)), "{a}"),
        DemoEntry("diamond: negation of a, plain", lambda: fmt(ops.neg(D, {"a"})), "{b,bot}"),
        DemoEntry("diamond: negation of a, primed", lambda: fmt(ops.neg(D, {"a"}, ops.PRIMED)), "{b}"),
        DemoEntry("diamond: max of {a,b,bot}", lambda: fmt(min_max(D, {"a", "b", "bot"}, "max")), "{a,b}"),
        DemoEntry("diamond: top minus a, primed", lambda: fmt(ops.minus(D, "top", "a", ops.PRIMED)), "{b}"),
        DemoEntry("diamond: top meet1 {a,b}", lambda: fmt(ops.alt_op(D, {"top"}, {"a", "b"}, "meet1")), "{bot}"),
        DemoEntry("diamond: bottom join1 {a,b}", lambda: fmt(ops.alt_op(D, {"bot"}, {"a", "b"}, "join1")), "{top}"),
        DemoEntry("antichain: x meet y", lambda: fmt(ops.meet(A, {"x"}, {"y"})), "{bot}"),
        DemoEntry("antichain: y join z", lambda: fmt(ops.join(A, {"y"}, {"z"})), "{top}"),
        DemoEntry("antichain: x meet (y join z), plain and primed",
                  lambda: fmt(ops.meet(A, {"x"}, ops.join(A, {"y"}, {"z"}))) + " "
                  + fmt(ops.meet(A, {"x"}, ops.join(A, {"y"}, {"z"}, ops.PRIMED), ops.PRIMED)),
                  "{bot,x} {x}"),
        DemoEntry("antichain: (x meet y) join (x meet z), plain and primed",
                  lambda: fmt(ops.join(A, ops.meet(A, {"x"}, {"y"}), ops.meet(A, {"x"}, {"z"}))) + " "
                  + fmt(ops.join(A, ops.meet(A, {"x"}, {"y"}, ops.PRIMED), ops.meet(A, {"x"}, {"z"}, ops.PRIMED), ops.PRIMED)),
                  "{bot,top,x,y,z} {bot}"),
        DemoEntry("refined pair: double primed negation of x",
                  lambda: fmt(ops.neg(R43, ops.neg(R43, {"x"}, ops.PRIMED), ops.PRIMED)), "{x'}"),
        DemoEntry("refined pair: primed negation of bottom", lambda: fmt(ops.neg(R43, {"bot"}, ops.PRIMED)), "{top}"),
        DemoEntry("joined pair: negation of a", lambda: fmt(ops.neg(R48, {"a"})), "{b,bot,c}"),
        DemoEntry("joined pair: a and b disjoint, a and ab not",
                  lambda: f"{disjoint(R48, 'a', 'b')} {disjoint(R48, 'a', 'ab')}", "True False"),
        DemoEntry("joined pair: signed a join sup(neg a)",
                  lambda: _signed(R48, "join", ops.SignedSet(frozenset({"a"})),
                                  ops.SignedSet(ops.neg(R48, {"a"}), "sup")),
                  "inf{top}"),
        DemoEntry("covered pair: signed x join sup(neg x)",
                  lambda: _signed(C, "join", ops.SignedSet(frozenset({"x"})),
                                  ops.SignedSet(ops.neg(C, {"x"}), "sup")),
                  "inf{b,top}"),
        DemoEntry("shared base: neg1 of b, then neg1 again",
                  lambda: fmt(ops.alt_op(S, {"b"}, which="neg1")) + " "
                  + fmt(ops.alt_op(S, ops.alt_op(S, {"b"}, which="neg1"), which="neg1")),
                  "{a,bot} {a,b,bot,c,d,top}"),
        DemoEntry("uneven branches: height-filtered negation of c", lambda: fmt(om.dd_op(H, {"c"}, which="neg2p")), "{b'}"),
        DemoEntry("uneven branches: heights of b' and a",
                  lambda: " ".join(str(om.heights(H)[x]) for x in ("b'", "a")), "2 1"),
    ]


def _signed(P, op, A, B=None):
    r = ops.signed_apply(P, op, A, B)
    return r.tag + fmt(r.base)


def _measure_entries():
    D = diamond()
    G, gn = gappy_inclusion()
    T, tn = two_branch_inclusion()
    C2 = two_chains()

    def pair_sum(P, x):
        p = om.prob(P, {x})
        q = om.prob(P, ops.neg(P, {x}, ops.PRIMED))
        return f"{p} + {q}"

    def seq(high):
        P1 = chain_poset(["0", high])
        P2 = chain_poset(["0'", "1'"])
        _, ht = om.product_order(P1, P2, {"0": 0, high: int(high)}, {"0'": 0, "1'": 1})
        return str(ht[f"({high},1')"])

    set_a = gn[frozenset({"a"})]
    set_aa = tn[frozenset({"a", "a'"})]
    return [
        DemoEntry("diamond: P(a) + P(primed neg a)", lambda: pair_sum(D, "a"), "1/2 + 1/2"),
        DemoEntry("gappy inclusion family: P({a}) + P(primed neg {a})", lambda: pair_sum(G, set_a), "1/3 + 1/3"),
        DemoEntry("two-branch inclusion family: P({a,a'}) + P(primed neg {a,a'})",
                  lambda: pair_sum(T, set_aa), "2/3 + 2/3"),
        DemoEntry("two chains, summed heights: P(a'), P(neg a'), P(a' meet neg a'), P(a' join' neg' a')",
                  lambda: " ".join(str(x) for x in (
                      om.prob(C2, {"a'"}, "sum"),
                      om.prob(C2, ops.neg(C2, {"a'"}), "sum"),
                      om.prob(C2, ops.meet(C2, {"a'"}, ops.neg(C2, {"a'"})), "sum"),
                      om.prob(C2, ops.join(C2, {"a'"}, ops.neg(C2, {"a'"}, ops.PRIMED), ops.PRIMED), "sum"),
                  )),
                  "2/9 1/3 0 1/3"),
        DemoEntry("sum-ordered product {0,1} x {0',1'}: height of top", lambda: seq("1"), "2"),
        DemoEntry("sum-ordered product {0,2} x {0',1'}: height of top", lambda: seq("2"), "3"),
        DemoEntry("mean of {a,b} and {b,c}: interior-lex optimum",
                  lambda: " ".join(fmt(c.members) for c in om.set_mean([{"a", "b"}, {"b", "c"}], "interior_lex")[1]),
                  "{b}"),
        DemoEntry("mean of {a,b} and {b,c}: exterior-lex optimum",
                  lambda: " ".join(fmt(c.members) for c in om.set_mean([{"a", "b"}, {"b", "c"}], "exterior_lex")[1]),
                  "{a,b,c}"),
    ]


def _size_entries():
    chain_abc = sl.PrefStructure("abc", {("c", "b"), ("b", "a")})
    F = sl.IdealFamily.principal(chain_abc)
    trans_no_rank = sl.PrefStructure(["x1", "x2", "x3", "x4", "y"], {("x4", "x2"), ("y", "x3"), ("y", "x1")})
    return [
        DemoEntry("c over b over a: {a} < {b} inside {a,b}",
                  lambda: str(sl.size_compare(F, {"a"}, {"b"}, {"a", "b"})), "True"),
        DemoEntry("c over b over a: {a} < {b} inside {a,b,c}",
                  lambda: str(sl.size_compare(F, {"a"}, {"b"}, {"a", "b", "c"})), "False"),
        DemoEntry("c over b over a: {a} < {c} inside {a,b,c}",
                  lambda: str(sl.size_compare(F, {"a"}, {"c"}, {"a", "b", "c"})), "True"),
        DemoEntry("c over b over a: {a} and {c} inside {a,c}",
                  lambda: f"{sl.classify(F, {'a', 'c'}, {'a'})} {sl.classify(F, {'a', 'c'}, {'c'})}", "medium medium"),
        DemoEntry("transitive unranked structure: mu of {x2,x3,x4}",
                  lambda: fmt(sl.mu(trans_no_rank, {"x2", "x3", "x4"})), "{x3,x4}"),
        DemoEntry("transitive unranked structure: transitive, smooth, ranked",
                  lambda: " ".join(str(x) for x in _props(trans_no_rank)), "True True False"),
    ]


def _props(PS):
    p = sl.relation_props(PS)
    return p.transitive, p.smooth, p.ranked


def _logic_entries():
    def ess(text):
        return fmt(relevance.essential_vars(parse(text)).r)

    def model_ess(rows):
        M = relevance.ModelSet(("p", "q"), {"p": (False, True), "q": (False, True)}, rows)
        return fmt(M.essential())

    T, F = True, False
    return [
        DemoEntry("p & (q | !q): essential atoms", lambda: ess("p & (q | !q)"), "{p}"),
        DemoEntry("(a | !a) & b: essential atoms", lambda: ess("(a | !a) & b"), "{b}"),
        DemoEntry("nested model sets {pq}, {pq,p!q}, {pq,p!q,!p!q}: essential coordinates",
                  lambda: " ".join(model_ess(r) for r in ([(T, T)], [(T, T), (T, F)], [(T, T), (T, F), (F, F)])),
                  "{p,q} {p} {p,q}"),
        DemoEntry("p & q -> p", lambda: _impl("p & q", "p"), "relevant_valid {p}"),
        DemoEntry("p & !p -> q", lambda: _impl("p & !p", "q"), "degenerate_valid {}"),
        DemoEntry("negation of (a & b) | (c & d) in normal form",
                  lambda: render(relevance.negate_dnf(parse("a & b | c & d"))),
                  "!a & !c | !a & !d | !b & !c | !b & !d"),
    ]


def _impl(a, b):
    v = relevance.classify_implication(parse(a), parse(b))
    return f"{v.verdict} {fmt(v.shared)}"


def _yablo_entries():
    sysv = value_system()

    def yablo_valuation(n):
        vals = yablo.all_acceptable(yablo.gen_yablo(n))
        return " ".join("".join("T" if v[f"Y{i}"] else "F" for i in range(1, n + 1)) for v in vals)

    return [
        DemoEntry("liar system: acceptable valuations",
                  lambda: str(yablo.find_acceptable(yablo.DenotationSystem({"s": parse("!s")})) is not None), "False"),
        DemoEntry("five-node Yablo truncation: acceptable valuations", lambda: yablo_valuation(5), "FFFFT"),
        DemoEntry("value system: edge list", lambda: "; ".join(yablo.induced_graph(sysv).edge_lines()),
                  "x0 x1 -; x0 x2 +; x0 x4 +; x1 x2 +; x2 x3 +-; x3 x4 +"),
        DemoEntry("value system: labelled paths from x0",
                  lambda: " | ".join(str(p) for p in yablo.labelled_paths(sysv, "x0")),
                  "x0 ->- x1 ->+ x2 ->+ x3 ->+ x4 | x0 ->- x1 ->+ x2 ->- x3 ->+ x4 | "
                  "x0 ->+ x2 ->+ x3 ->+ x4 | x0 ->+ x2 ->- x3 ->+ x4 | x0 ->+ x4"),
        DemoEntry("value system: first path valued from +",
                  lambda: str(yablo.value_path(yablo.labelled_paths(sysv, "x0")[0], "+")),
                  "x0+ ->- x1- ->+ x2- ->+ x3- ->+ x4-"),
        DemoEntry("value system: direct path valued from -",
                  lambda: str(yablo.value_path(yablo.labelled_paths(sysv, "x0")[-1], "-")), "x0- ->+ x4-"),
        DemoEntry("delaying schema: all false accepted, Y1 true refuted",
                  lambda: f"{yablo.schema_check_uniform(yablo.procrastination_schema(), {'Y': False, 'X': False}).acceptable} "
                  f"{yablo.refute(yablo.procrastination_schema(), 'Y1', True).refuted}",
                  "True True"),
        DemoEntry("Yablo schema: criterion verdict",
                  lambda: _tan(yablo.transandnot(yablo.yablo_schema())), "paradoxical Y0"),
        DemoEntry("triple-indexed graph collapses onto the level chain",
                  lambda: str(yablo.homomorphism_check(yablo.induced_graph(yablo.gen_yg_prime(5)),
                                                       yablo.induced_graph(yablo.gen_yg_double_prime(5)),
                                                       yablo.yg_collapse(5)).ok),
                  "True"),
        DemoEntry("opposite arrows x ->+ y, x ->- y: contradictory cell",
                  lambda: str(yablo.cell_analyze(["x ->+ y", "x ->- y"]).contradictory), "True"),
        DemoEntry("three-way closure A-b, A-C, b-C: odd cycle",
                  lambda: yablo.oddloop_check("AaBbCcDd", [("A", "a"), ("B", "b"), ("C", "c"), ("D", "d"),
                                                            ("A", "B"), ("B", "C"), ("A", "b")]).render(),
                  "A-b-B-A"),
    ]


def _tan(r):
    return f"paradoxical {r.culprit}" if r.paradoxical else "consistent"


def _agent_entries():
    def first():
        r, _ = thermometer_rounds()
        return f"{r.m} " + " ".join(str(r.rho[a]) for a in THERMOMETERS)

    def second():
        _, r = thermometer_rounds()
        return str(r.m)

    def combined():
        case = combination_case()
        best = case.space.best(case.facts, case.knowledge)
        answers = analogy.sceptical_consequence(case.space, case.knowledge, case.facts, case.queries)
        return " ".join(best) + " " + " ".join(f"{a.query}={a.value}" for a in answers)

    return [
        DemoEntry("thermometers 20,19,21,30: mean and reliabilities", first, "45/2 2/3 2/3 2/3 1/3"),
        DemoEntry("thermometers: reliability-weighted second mean", second, "150/7"),
        DemoEntry("combined analogy: best map and sceptical answers", combined,
                  "combined S(y)=True S2(y1)=False S(y1)=None"),
    ]


GROUPS = {
    "order": _order_entries,
    "measure": _measure_entries,
    "size": _size_entries,
    "logic": _logic_entries,
    "yablo": _yablo_entries,
    "agents": _agent_entries,
}


def registry(groups=None) -> list:
    """Worked examples, optionally restricted to some of :data:`GROUPS`."""
    return [e for g in (groups or GROUPS) for e in GROUPS[g]()]


def run_ledger(entries=None) -> list:
    rows = []
    for e in entries if entries is not None else registry():
        try:
            got = e.compute()
        except Exception as exc:  # a crashing entry is a failing entry
            got = f"error: {type(exc).__name__}: {exc}"
        rows.append(LedgerRow(e.label, got, e.expected, got == e.expected))
    return rows
