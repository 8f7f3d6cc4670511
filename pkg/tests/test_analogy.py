from fractions import Fraction

import pytest

from ordlogic import analogy as an
from ordlogic.demo import combination_case
from ordlogic.formula import render

SIG = an.Signature({"x", "y"}, {"P", "Q"}, {"B"})


def test_ground_atoms():
    assert an.split_ground("B(x, y)") == ("B", ("x", "y"))
    assert SIG.ground_atoms(["P"]) == ["P(x)", "P(y)"]
    with pytest.raises(an.AnalogyError):
        SIG.check_atom("P(x,y)")
    with pytest.raises(an.SymbolOutsideDomain):
        SIG.kind("Z")


def test_parse_ground_formula():
    f = an.parse_ground("P(x) & !B(x, y)")
    assert render(f) == "P(x) & !B(x,y)"


def test_three_valued_evaluation():
    v = an.KnowledgeState({"P(x)": True})
    assert v.value("P(x) | Q(x)") is True
    assert v.value("!P(x) & Q(x)") is False
    assert v.value("Q(x)") is None


def test_map_validity():
    with pytest.raises(an.AnalogyError):
        an.AnalogyMap(SIG, {"x": "P"})
    with pytest.raises(an.InjectivityViolation):
        an.AnalogyMap(SIG, {"x": "y", "y": "y"})
    alpha = an.AnalogyMap(SIG, {"x": "y", "P": "Q"})
    assert alpha.image("P(x)") == "Q(y)"
    with pytest.raises(an.SymbolOutsideDomain):
        alpha.image("Q(x)")


def test_supports_and_conjecture():
    alpha = an.AnalogyMap(SIG, {"x": "y", "y": "x", "P": "P", "Q": "Q"})
    v = an.KnowledgeState({"P(x)": True, "P(y)": True, "Q(x)": True, "Q(y)": False})
    s = an.supports(alpha, ["P(x)", "Q(x)"], v)
    assert s.plus == ("P(x)",) and s.minus == ("Q(x)",) and s.question == ()
    with pytest.raises(an.NotInQuestionSupport):
        an.conjecture(alpha, "P(x)", v)
    beta = an.AnalogyMap(SIG, {"x": "y", "P": "Q"})
    c = an.conjecture(beta, "P(x)", an.KnowledgeState({"P(x)": True}))
    assert (c.formula, c.value) == ("Q(y)", True)


def test_combine_without_splitter():
    a = an.AnalogyMap(SIG, {"x": "y"})
    b = an.AnalogyMap(SIG, {"P": "Q"})
    assert an.combine(a, b).image("P(x)") == "Q(y)"
    with pytest.raises(an.OverlapConflict):
        an.combine(a, an.AnalogyMap(SIG, {"x": "x"}))


def test_combined_map_wins_and_answers():
    case = combination_case()
    assert case.space.best(case.facts, case.knowledge) == ["combined"]
    answers = an.sceptical_consequence(case.space, case.knowledge, case.facts, case.queries)
    assert [(a.query, a.value) for a in answers] == [("S(y)", True), ("S2(y1)", False), ("S(y1)", None)]


def test_declared_preference():
    case = combination_case()
    space = an.AnalogySpace(case.space.maps, {("alpha", "combined"), ("alpha", "beta")})
    assert space.best(case.facts, case.knowledge) == ["alpha"]
    with pytest.raises(an.AnalogyError):
        an.AnalogySpace(case.space.maps, {("alpha", "beta"), ("beta", "alpha")})
    with pytest.raises(an.EmptySpace):
        an.AnalogySpace({})


def test_support_degree():
    assert an.support_degree(3, 0, 0) == Fraction(3, 4)
    assert an.check_support_monotone() is None
    assert an.check_support_monotone(lambda n, r, s: Fraction(n)) is not None
    with pytest.raises(an.AnalogyError):
        an.support_degree(-1, 0, 0)


def test_mu_report_passthrough():
    assert all(an.mu_property_report(lambda S: {min(S)}, "ab").verdicts.values())
