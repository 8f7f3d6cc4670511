"""Command line interface.

Every subcommand builds a :class:`Report` holding verdicts and witnesses.
Plain output prints the report's text lines; ``--json`` prints the report
as JSON with the fields ``command``, ``inputs_digest``, ``verdicts`` and
``witnesses``.

Exit codes: 0 success, 1 negative analysis result (for example a
paradoxical system or a failing fuzz suite), 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from ordlogic import analogy, demo, fileio, order_measure as om, order_ops as ops, relevance, reliability
from ordlogic import size_logic as sl
from ordlogic import yablo
from ordlogic.formula import FormulaSyntaxError, TooManyAtoms, parse, render
from ordlogic.order_core import OrderError
from ordlogic.order_expr import ExprError, eval_text

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    digest: str
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)
    code: int = OK

    def as_json(self) -> str:
        data = {
            "command": self.command,
            "inputs_digest": self.digest,
            "verdicts": _plain(self.verdicts),
            "witnesses": _plain(self.witnesses),
        }
        return json.dumps(data, indent=2, sort_keys=True)


def _plain(x):
    """Turn results into JSON-ready values; rationals become ``p/q`` strings."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _digest(command, args, files=()):
    h = hashlib.sha256(command.encode())
    for key in sorted(vars(args)):
        if key in ("json", "func", "file", "system", "scenario", "case", "distances"):
            continue
        h.update(f"{key}={getattr(args, key)!r}\n".encode())
    for text in files:
        h.update(text.encode())
    return h.hexdigest()


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def fmt(s) -> str:
    return demo.fmt(s)


def _names(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ORDLOGIC_SEED")
    if env is None:
        raise UsageError("this command is randomized: pass --seed or set ORDLOGIC_SEED")
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"ORDLOGIC_SEED must be an integer, not {env!r}") from None


# ---------------------------------------------------------------------------
# poset


def cmd_poset_op(args):
    text = _read(args.file)
    P = fileio.load_poset(text)
    r = eval_text(P, args.expr, signed=args.signed)
    rep = Report("poset op", _digest("poset op", args, [text]))
    rep.verdicts = {"result": sorted(r.base), "tag": r.tag}
    rep.witnesses = {"core": sorted(r.core(P)), "nested_tags": r.nested}
    shown = fmt(r.base) if r.tag == ops.PLAIN else f"{r.tag}{fmt(r.base)}"
    rep.lines = [f"{args.expr} = {shown}"]
    if r.nested:
        rep.lines.append("note: an operand was already tagged; tags were normalized after this step")
    return rep


def cmd_poset_audit(args):
    text = _read(args.file)
    P = fileio.load_poset(text)
    report = ops.law_audit(P, args.set_size)
    rep = Report("poset audit", _digest("poset audit", args, [text]))
    for r in report.results:
        key = f"{r.law}/{r.variant}"
        rep.verdicts[key] = "holds" if r.holds else "fails"
        if not r.holds:
            rep.witnesses[key] = r.witness
        line = f"{key}: {rep.verdicts[key]}"
        if not r.holds:
            w = r.witness
            inst = " ".join(fmt(x) for x in w["instance"])
            line += f"  {'instance ' + inst + ': ' if inst else ''}{fmt(w['left'])} vs {fmt(w['right'])}"
        rep.lines.append(line)
    return rep


def cmd_poset_show(args):
    text = _read(args.file)
    P = fileio.load_poset(text)
    rep = Report("poset show", _digest("poset show", args, [text]))
    rep.verdicts = {"elements": len(P.elements), "pairs": len(P.lt)}
    rep.witnesses = {"canonical": fileio.save_poset(P)}
    rep.lines = fileio.save_poset(P).splitlines()
    return rep


# ---------------------------------------------------------------------------
# measure


def cmd_measure(args):
    files = []
    rep = Report(f"measure {args.report}", "")
    if args.report in ("heights", "prob", "translate"):
        if not args.file:
            raise UsageError(f"--report {args.report} needs --file")
        text = _read(args.file)
        files.append(text)
        P = fileio.load_poset(text)
    if args.report == "heights":
        prof = om.height_profile(P)
        for x in P.ordered:
            rep.verdicts[x] = {"ht": prof.ht[x], "t": prof.t[x], "rht": prof.rht[x],
                               "ratio": prof.ratio[x], "pr": prof.pr[x]}
            rep.lines.append(f"{x}: ht={prof.ht[x]} t={prof.t[x]} rht={reliability.render(prof.rht[x])} "
                             f"ratio={reliability.render(prof.ratio[x])} pr={reliability.render(prof.pr[x])}")
    elif args.report == "prob":
        if not args.set:
            raise UsageError("--report prob needs --set")
        members = eval_text(P, args.set).base if args.expr_set else frozenset(_names(args.set))
        p = om.prob(P, members, args.mode)
        rep.verdicts = {"P": p}
        rep.witnesses = {"set": sorted(members), "mode": args.mode}
        rep.lines = [f"P({fmt(members)}) = {reliability.render(p)}  [{args.mode}]"]
    elif args.report == "translate":
        st = om.size_translation(P)
        for x in P.ordered:
            rep.verdicts[x] = {"size": st.size(x), "relative": st.relative(x)}
            rep.witnesses[x] = sorted(st.sets[x])
            rep.lines.append(f"{x}: {fmt(st.sets[x])} size={st.size(x)} relative={reliability.render(st.relative(x))}")
    elif args.report == "core":
        if not args.distances or not args.subset:
            raise UsageError("--report core needs --distances and --subset")
        text = _read(args.distances)
        files.append(text)
        points, d = fileio.load_distances(text)
        X = frozenset(_names(args.subset))
        unknown = X - set(points)
        if unknown:
            raise UsageError(f"unknown points {sorted(unknown)}")
        table = om.depth_table(points, X, d)
        c = om.core(points, X, d, args.m)
        layers, peeled = om.core_layers(points, X, d)
        rep.verdicts = {"core": sorted(c), "peeled_core": sorted(peeled)}
        rep.witnesses = {"depth": table, "layers": [sorted(l) for l in layers]}
        rep.lines = [f"depth {x} = {table[x]}" for x in sorted(table)]
        rep.lines += [f"layer {i}: {fmt(l)}" for i, l in enumerate(layers)]
        rep.lines += [f"core (m={args.m}) = {fmt(c)}", f"peeled core = {fmt(peeled)}"]
    elif args.report == "mean":
        if not args.sets:
            raise UsageError("--report mean needs --sets, e.g. 'a,b;b,c'")
        sets = [frozenset(_names(s)) for s in args.sets.split(";")]
        scheme = args.scheme
        if scheme == "weighted":
            scheme = ("weighted", Fraction(args.wi), Fraction(args.we))
        cands, optima = om.set_mean(sets, scheme, _names(args.universe or ""))
        for c in cands:
            rep.lines.append(f"Z={fmt(c.members)} interior={list(c.interior)} exterior={list(c.exterior)}")
        rep.lines.append("optimum: " + " ".join(fmt(c.members) for c in optima))
        rep.verdicts = {"optima": [sorted(c.members) for c in optima]}
        rep.witnesses = {"rows": [{"Z": sorted(c.members), "interior": c.interior, "exterior": c.exterior}
                                  for c in cands]}
    rep.digest = _digest(rep.command, args, files)
    return rep


# ---------------------------------------------------------------------------
# sizelogic


def cmd_size_fuzz(args):
    seed = _seed(args)
    suites = list(sl.FACT_CHECKS) if args.suite == "all" else [args.suite]
    rep = Report("sizelogic fuzz", _digest("sizelogic fuzz", args, [str(seed)]))
    for suite in suites:
        if suite not in sl.FACT_CHECKS:
            raise UsageError(f"unknown suite {suite!r}; choose from {sorted(sl.FACT_CHECKS)} or all")
        r = sl.fact_fuzz(suite, args.seeds, args.max_universe, seed, args.tuples)
        rep.verdicts[suite] = {"counterexamples": len(r.counterexamples), "structures": r.structures,
                               "non_vacuous": r.non_vacuous}
        if r.counterexamples:
            rep.witnesses[suite] = r.counterexamples[:5]
            rep.code = NEGATIVE
        rep.lines.append(f"{suite}: {len(r.counterexamples)} counterexamples on {r.structures} structures "
                         f"({r.non_vacuous} non-vacuous instances)")
    return rep


def cmd_size_props(args):
    text = _read(args.file)
    PS = fileio.load_relation(text)
    p = sl.relation_props(PS)
    rep = Report("sizelogic props", _digest("sizelogic props", args, [text]))
    rep.verdicts = {"transitive": p.transitive, "smooth": p.smooth, "ranked": p.ranked}
    rep.witnesses = dict(p.witnesses)
    rep.lines = [f"{k}: {v}" for k, v in rep.verdicts.items()]
    for k, w in p.witnesses.items():
        rep.lines.append(f"{k} witness: {w}")
    if args.mu:
        A = frozenset(_names(args.mu))
        m = sl.mu(PS, A)
        rep.verdicts["mu"] = sorted(m)
        rep.lines.append(f"mu({fmt(A)}) = {fmt(m)}")
    return rep


def cmd_size_compare(args):
    text = _read(args.file)
    PS = fileio.load_relation(text)
    IF = sl.IdealFamily.principal(PS)
    A, B = frozenset(_names(args.left)), frozenset(_names(args.right))
    base = frozenset(_names(args.base)) if args.base else None
    v = sl.size_verdict(IF, A, B, base)
    rep = Report("sizelogic compare", _digest("sizelogic compare", args, [text]))
    rep.verdicts = {"relation": v.relation}
    rep.witnesses = {"base": sorted(v.base), "left": sl.classify(IF, v.base, A),
                     "right": sl.classify(IF, v.base, B)}
    rep.lines = [f"{fmt(A)} vs {fmt(B)} in {fmt(v.base)}: {v.relation}",
                 f"{fmt(A)} is {rep.witnesses['left']}, {fmt(B)} is {rep.witnesses['right']}"]
    return rep


# ---------------------------------------------------------------------------
# relevance


def cmd_rel_check(args):
    if "->" not in args.formula:
        raise UsageError("expected 'ANTECEDENT -> CONSEQUENT'")
    left, right = args.formula.split("->", 1)
    try:
        phi = parse(left)
    except FormulaSyntaxError as e:
        raise UsageError(f"antecedent: {e}") from None
    try:
        psi = parse(right)
    except FormulaSyntaxError as e:
        raise UsageError(f"consequent: {e}") from None
    v = relevance.classify_implication(phi, psi)
    rep = Report("relevance check", _digest("relevance check", args))
    rep.verdicts = {"verdict": v.verdict, "shared": sorted(v.shared)}
    rep.lines = [f"{render(phi)} -> {render(psi)}: {v.verdict}"]
    if v.verdict == "relevant_valid":
        rep.lines.append(f"shared essential atoms: {fmt(v.shared)}")
    if v.countermodel is not None:
        rep.witnesses = {"countermodel": v.countermodel}
        rep.lines.append("countermodel: " + " ".join(f"{k}={'T' if b else 'F'}" for k, b in sorted(v.countermodel.items())))
        rep.code = NEGATIVE
    return rep


def cmd_rel_essential(args):
    try:
        f = parse(args.formula)
    except FormulaSyntaxError as e:
        raise UsageError(str(e)) from None
    p = relevance.essential_vars(f)
    rep = Report("relevance essential", _digest("relevance essential", args))
    rep.verdicts = {"classification": p.classification, "essential": sorted(p.r)}
    rep.witnesses = {"atoms": sorted(p.s), "inessential": sorted(p.s - p.r)}
    rep.lines = [f"{render(f)}: {p.classification}", f"essential: {fmt(p.r)}", f"inessential: {fmt(p.s - p.r)}"]
    return rep


def cmd_rel_dnf(args):
    try:
        f = parse(args.formula)
    except FormulaSyntaxError as e:
        raise UsageError(str(e)) from None
    d = relevance.dnf(f)
    n = relevance.negate_dnf(d)
    rep = Report("relevance dnf", _digest("relevance dnf", args))
    rep.verdicts = {"dnf": render(d), "negation": render(n)}
    rep.lines = [f"dnf: {render(d)}", f"negation: {render(n)}"]
    return rep


# ---------------------------------------------------------------------------
# yablo


def _valuation_text(v):
    return " ".join(f"{k}={'T' if v[k] else 'F'}" for k in yablo._sorted(v))


def _solve(system, solver, budget):
    """Returns (solver used, valuation or None, culprit or None)."""
    if solver == "auto":
        try:
            r = yablo.transandnot(system)
            return "criterion", r.valuation, r.culprit
        except yablo.NotYabloLike:
            pass
        if yablo.is_simply_connected(yablo.induced_graph(system)):
            return "simply", yablo.solve_simply_connected(system), None
        solver = "brute"
    if solver == "criterion":
        r = yablo.transandnot(system)
        return "criterion", r.valuation, r.culprit
    if solver == "simply":
        if not yablo.is_simply_connected(yablo.induced_graph(system)):
            raise yablo.NotSimplyConnected("the induced graph has an undirected cycle")
        return "simply", yablo.solve_simply_connected(system), None
    return "brute", yablo.find_acceptable(system, budget), None


def cmd_yablo_analyze(args):
    text = _read(args.system)
    system = fileio.load_system(text)
    used, val, culprit = _solve(system, args.solver, args.budget)
    rep = Report("yablo analyze", _digest("yablo analyze", args, [text]))
    rep.verdicts = {"status": "consistent" if val is not None else "paradoxical", "solver": used}
    if val is not None:
        rep.witnesses = {"valuation": val}
        rep.lines = ["consistent", f"valuation: {_valuation_text(val)}"]
    else:
        rep.code = NEGATIVE
        rep.lines = ["paradoxical"]
        if culprit:
            rep.witnesses = {"culprit": culprit}
            rep.lines.append(f"culprit: {culprit}")
    rep.lines.append(f"solver: {used}")
    return rep


def cmd_yablo_graph(args):
    text = _read(args.system)
    g = yablo.induced_graph(fileio.load_system(text))
    rep = Report("yablo graph", _digest("yablo graph", args, [text]))
    rep.verdicts = {"vertices": len(g.vertices), "edges": len(g.edges),
                    "simply_connected": yablo.is_simply_connected(g)}
    rep.witnesses = {"edges": g.edge_lines()}
    rep.lines = g.edge_lines()
    return rep


def cmd_yablo_gen(args):
    if args.n is not None and args.n < 1:
        raise UsageError("--n must be positive")
    kind = args.kind
    if kind == "yablo":
        system = yablo.gen_yablo(args.n or 5)
    elif kind == "ygprime":
        system = yablo.gen_yg_prime(args.n or 5)
    elif kind == "chain":
        codes = args.codes or "n" * (args.n or 4)
        if set(codes) - set(yablo.CHAIN_CODES):
            raise UsageError(f"chain codes must be from {yablo.CHAIN_CODES!r}")
        system = yablo.gen_chain(codes)
    else:
        system = yablo.gen_procrastination(args.n or 4)
    rep = Report("yablo gen", _digest("yablo gen", args))
    g = yablo.induced_graph(system)
    rep.verdicts = {"atoms": len(system.atoms), "edges": len(g.edges)}
    if args.graph:
        rep.lines = g.edge_lines()
        rep.witnesses = {"edges": g.edge_lines()}
    else:
        rep.lines = system.lines()
        rep.witnesses = {"system": system.lines()}
    return rep


def cmd_yablo_paths(args):
    text = _read(args.system)
    system = fileio.load_system(text)
    if args.origin not in system.atoms:
        raise UsageError(f"unknown origin {args.origin!r}")
    paths = yablo.labelled_paths(system, args.origin, args.max_len)
    rep = Report("yablo paths", _digest("yablo paths", args, [text]))
    rep.verdicts = {"paths": len(paths)}
    rep.witnesses = {"labelled": [str(p) for p in paths]}
    rep.lines = [str(p) for p in paths]
    if args.valued:
        valued = [str(yablo.value_path(p, s)) for s in "+-" for p in paths]
        rep.witnesses["valued"] = valued
        rep.lines += valued
    return rep


def cmd_yablo_cell(args):
    r = yablo.cell_analyze(args.paths)
    rep = Report("yablo cell", _digest("yablo cell", args))
    rep.verdicts = {"cell": r.is_cell, "contradictory": r.contradictory}
    rep.witnesses = {"contradictory_seeds": list(r.contradictory_seeds),
                     "pairs": [{"diverge": p.diverge, "meet": p.meet, "negatives": list(p.negatives),
                                "agree": p.agree} for p in r.pairs]}
    rep.lines = [f"cell: {r.is_cell}", f"contradictory: {r.contradictory}"]
    if r.contradictory_seeds:
        rep.lines.append("contradictory seeds: " + " ".join(r.contradictory_seeds))
    return rep


def cmd_yablo_oddloop(args):
    pairs = []
    for tok in _names(args.pairs):
        if tok.count("-") != 1:
            raise UsageError(f"pair {tok!r} must look like A-B")
        pairs.append(tuple(tok.split("-")))
    items = sorted({x for p in pairs for x in p} | set(_names(args.items or "")))
    r = yablo.oddloop_check(items, pairs)
    rep = Report("yablo oddloop", _digest("yablo oddloop", args))
    rep.verdicts = {"consistent": r.consistent}
    if r.consistent:
        rep.witnesses = {"coloring": r.coloring}
        rep.lines = ["consistent", "coloring: " + " ".join(f"{k}={v}" for k, v in sorted(r.coloring.items()))]
    else:
        rep.witnesses = {"odd_cycle": list(r.odd_cycle)}
        rep.lines = ["odd cycle", r.render()]
        rep.code = NEGATIVE
    return rep


# ---------------------------------------------------------------------------
# reliability and analogy


def cmd_reliability(args):
    text = _read(args.scenario)
    scn = fileio.load_scenario(text)
    cfg = reliability.RoundConfig(
        variants=frozenset(args.variant or [1]),
        policy=args.policy,
        weights=args.weights,
        lam=Fraction(args.lam),
        threshold=Fraction(args.threshold) if args.threshold is not None else None,
        use_channels=args.use_channels,
    )
    book = reliability.OpinionBook(lam=Fraction(args.lam))
    state, results, opinions, monitors = reliability.run_scenario(scn, cfg, book)
    rep = Report("reliability simulate", _digest("reliability simulate", args, [text]))
    rounds = []
    for i, r in enumerate(results, start=1):
        rounds.append({"m": r.m, "delta": r.delta, "weights": r.weights, "rho": r.rho,
                       "flagged": list(r.flagged), "skipped": list(r.skipped)})
        rep.lines.append(f"round {i}: m = {reliability.render(r.m)}, mean deviation = {reliability.render(r.delta)}")
        for a in scn.agents:
            if a in r.rho:
                mark = " flagged" if a in r.flagged else ""
                rep.lines.append(f"  {a}: weight {r.weights.get(a, 0)}, rho {r.rho_before[a]} -> {r.rho[a]}{mark}")
    ops_out = []
    for o in opinions:
        ops_out.append({"source": o.source, "target": o.target, "polarity": o.polarity,
                        "rho": o.rho_after, "flag": o.flag})
        flag = f" [{o.flag}]" if o.flag else ""
        rep.lines.append(f"opinion {o.source} on {o.target}: {o.polarity or 'neutral'}, "
                         f"rho {o.rho_before} -> {o.rho_after}{flag}")
    cycles = []
    for mon in monitors:
        for group in mon.proposals(state):
            cycles.append({"group": list(group["group"]), "rho": group["rho"]})
            rep.lines.append(f"cycle through {', '.join(group['group'])}: propose merging with rho {group['rho']}")
    rep.lines.append("final rho: " + " ".join(f"{a}={state.rho[a]}" for a in scn.agents))
    rep.verdicts = {"m": state.m, "rho": state.rho}
    rep.witnesses = {"rounds": rounds, "opinions": ops_out, "cycles": cycles}
    return rep


def cmd_analogy(args):
    text = _read(args.case)
    case = fileio.load_case(text)
    rep = Report("analogy run", _digest("analogy run", args, [text]))
    supports = {}
    for name in sorted(case.space.maps):
        s = analogy.supports(case.space.maps[name], case.facts, case.knowledge)
        supports[name] = {"plus": list(s.plus), "minus": list(s.minus), "question": list(s.question)}
        rep.lines.append(f"{name}: +{fmt(s.plus)} -{fmt(s.minus)} ?{fmt(s.question)}")
    try:
        answers = analogy.sceptical_consequence(case.space, case.knowledge, case.facts, case.queries)
    except analogy.EmptySpace:
        rep.verdicts = {"best": []}
        rep.witnesses = {"supports": supports}
        rep.lines.append("no best map")
        rep.code = NEGATIVE
        return rep
    best = case.space.best(case.facts, case.knowledge)
    rep.lines.append("best: " + " ".join(best))
    for a in answers:
        shown = "undecided" if a.value is None else str(a.value)
        rep.lines.append(f"{a.query}: {shown}")
    rep.verdicts = {"best": list(best), "answers": {a.query: a.value for a in answers}}
    rep.witnesses = {"supports": supports, "per_map": {a.query: a.per_map for a in answers}}
    return rep


def cmd_demo(args):
    rows = demo.run_ledger()
    rep = Report("demo examples", _digest("demo examples", args))
    failed = [r for r in rows if not r.ok]
    rep.verdicts = {"entries": len(rows), "passed": len(rows) - len(failed)}
    rep.witnesses = {"ledger": [{"label": r.label, "computed": r.computed, "expected": r.expected, "pass": r.ok}
                                for r in rows]}
    rep.lines = [f"{'PASS' if r.ok else 'FAIL'}  {r.label}: {r.computed}"
                 + ("" if r.ok else f" (expected {r.expected})") for r in rows]
    rep.lines.append(f"{len(rows) - len(failed)}/{len(rows)} entries match")
    if failed:
        rep.code = NEGATIVE
    return rep


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized commands (else ORDLOGIC_SEED)")

    p = argparse.ArgumentParser(prog="ordlogic", description="Orders, sizes, relevance and self-reference.")
    sub = p.add_subparsers(dest="group", required=True)

    def add(parent, name, func, help_):
        sp = parent.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    poset = sub.add_parser("poset", help="operators on finite posets").add_subparsers(dest="action", required=True)
    sp = add(poset, "op", cmd_poset_op, "evaluate an operator expression")
    sp.add_argument("--file", required=True)
    sp.add_argument("--expr", required=True)
    sp.add_argument("--signed", action="store_true", help="use tag-aware operators throughout")
    sp = add(poset, "audit", cmd_poset_audit, "check the Boolean laws")
    sp.add_argument("--file", required=True)
    sp.add_argument("--set-size", type=int, default=1)
    sp = add(poset, "show", cmd_poset_show, "print the canonical form of a poset file")
    sp.add_argument("--file", required=True)

    sp = sub.add_parser("measure", parents=[common], help="heights, probabilities, translations, cores, means")
    sp.set_defaults(func=cmd_measure)
    sp.add_argument("--report", required=True, choices=["heights", "prob", "translate", "core", "mean"])
    sp.add_argument("--file")
    sp.add_argument("--set", help="comma separated elements (prob)")
    sp.add_argument("--expr-set", action="store_true", help="read --set as an operator expression")
    sp.add_argument("--mode", choices=["maxht", "sum"], default="maxht")
    sp.add_argument("--distances", help="CSV distance matrix (core)")
    sp.add_argument("--subset", help="comma separated points (core)")
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--sets", help="sets separated by ';', members by ',' (mean)")
    sp.add_argument("--universe", help="extra candidate members (mean)")
    sp.add_argument("--scheme", default="interior_lex",
                    choices=["interior_lex", "exterior_lex", "squared", "equalized", "weighted"])
    sp.add_argument("--wi", default="2")
    sp.add_argument("--we", default="1")

    size = sub.add_parser("sizelogic", help="size comparisons and fact fuzzing").add_subparsers(dest="action", required=True)
    sp = add(size, "fuzz", cmd_size_fuzz, "fuzz one fact suite (or all)")
    sp.add_argument("--suite", required=True)
    sp.add_argument("--seeds", type=int, default=10_000, help="number of random structures")
    sp.add_argument("--max-universe", type=int, default=7)
    sp.add_argument("--tuples", type=int, default=20)
    sp = add(size, "props", cmd_size_props, "properties of a preference relation")
    sp.add_argument("--file", required=True)
    sp.add_argument("--mu", help="comma separated set whose minimal elements to print")
    sp = add(size, "compare", cmd_size_compare, "compare the sizes of two sets")
    sp.add_argument("--file", required=True)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--base")

    rel = sub.add_parser("relevance", help="essential atoms and relevant implication").add_subparsers(dest="action", required=True)
    sp = add(rel, "check", cmd_rel_check, "classify an implication 'A -> B'")
    sp.add_argument("formula")
    sp = add(rel, "essential", cmd_rel_essential, "essential atoms of a formula")
    sp.add_argument("formula")
    sp = add(rel, "dnf", cmd_rel_dnf, "disjunctive normal form and its negation")
    sp.add_argument("formula")

    yab = sub.add_parser("yablo", help="self-referential denotation systems").add_subparsers(dest="action", required=True)
    sp = add(yab, "analyze", cmd_yablo_analyze, "find an acceptable valuation")
    sp.add_argument("system")
    sp.add_argument("--solver", choices=["auto", "brute", "simply", "criterion"], default="auto")
    sp.add_argument("--budget", type=int, default=24)
    sp = add(yab, "graph", cmd_yablo_graph, "edge list with signs")
    sp.add_argument("system")
    sp = add(yab, "gen", cmd_yablo_gen, "generate a system")
    sp.add_argument("kind", choices=["yablo", "ygprime", "chain", "procrastination"])
    sp.add_argument("--n", type=int)
    sp.add_argument("--codes", help="chain codes from 'pnTF'")
    sp.add_argument("--graph", action="store_true", help="print the edge list instead of the system")
    sp = add(yab, "paths", cmd_yablo_paths, "maximal labelled paths from an atom")
    sp.add_argument("system")
    sp.add_argument("--origin", required=True)
    sp.add_argument("--max-len", type=int)
    sp.add_argument("--valued", action="store_true")
    sp = add(yab, "cell", cmd_yablo_cell, "analyze paths such as 'x ->+ y'")
    sp.add_argument("paths", nargs="+")
    sp = add(yab, "oddloop", cmd_yablo_oddloop, "look for odd cycles among contradiction pairs")
    sp.add_argument("--pairs", required=True, help="comma separated pairs such as A-B,B-C")
    sp.add_argument("--items")

    rl = sub.add_parser("reliability", help="reliability of agents").add_subparsers(dest="action", required=True)
    sp = add(rl, "simulate", cmd_reliability, "play a scenario file")
    sp.add_argument("scenario")
    sp.add_argument("--policy", choices=["example", "proportional", "none"], default="example")
    sp.add_argument("--variant", type=int, action="append", choices=[1, 2, 3, 4])
    sp.add_argument("--weights", choices=["rho", "replicate"], default="rho")
    sp.add_argument("--lam", default="1/4")
    sp.add_argument("--threshold")
    sp.add_argument("--use-channels", action="store_true")

    an = sub.add_parser("analogy", help="reasoning by analogy").add_subparsers(dest="action", required=True)
    sp = add(an, "run", cmd_analogy, "run a case file")
    sp.add_argument("case")

    dm = sub.add_parser("demo", help="replay the worked examples").add_subparsers(dest="action", required=True)
    add(dm, "examples", cmd_demo, "print the example ledger")
    return p


INPUT_ERRORS = (
    UsageError, fileio.ParseError, fileio.InvariantViolation, OrderError, ExprError, FormulaSyntaxError,
    TooManyAtoms, yablo.YabloError, reliability.ReliabilityError, analogy.AnalogyError, sl.SizeError,
    om.DegenerateSet, relevance.DegenerateSet, relevance.NotDNF,
)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else OK
    try:
        rep = args.func(args)
    except INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    if args.json:
        print(rep.as_json())
    else:
        for line in rep.lines:
            print(line)
    return rep.code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
