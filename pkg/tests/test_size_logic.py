import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordlogic import size_logic as sl

ABC = sl.PrefStructure("abc", {("c", "b"), ("b", "a")})


def test_mu_picks_unbeaten_points():
    assert sl.mu(ABC, {"a", "b"}) == {"b"}
    assert sl.mu(ABC, {"a", "c"}) == {"a", "c"}
    with pytest.raises(sl.EmptySet):
        sl.mu(ABC, set())


def test_mu_without_ranking():
    PS = sl.PrefStructure(["x1", "x2", "x3", "x4", "y"], {("x4", "x2"), ("y", "x3"), ("y", "x1")})
    assert sl.mu(PS, {"x2", "x3", "x4"}) == {"x3", "x4"}
    props = sl.relation_props(PS)
    assert props.transitive and not props.ranked
    assert "ranked" in props.witnesses


def test_non_transitive_chain_props():
    props = sl.relation_props(ABC)
    assert not props.transitive
    assert props.witnesses["transitive"] == ("c", "b", "a")


def test_cut_chain_smoothness():
    assert not sl.relation_props(sl.gen_non_trans(2)).smooth
    closed = sl.relation_props(sl.gen_non_trans(2, closed=True))
    assert closed.transitive and closed.smooth


def test_size_comparison_depends_on_base():
    F = sl.IdealFamily.principal(ABC)
    assert sl.size_compare(F, {"a"}, {"b"}, {"a", "b"})
    assert not sl.size_compare(F, {"a"}, {"b"}, {"a", "b", "c"})
    assert sl.size_compare(F, {"a"}, {"c"}, {"a", "b", "c"})
    assert sl.classify(F, {"a", "c"}, {"a"}) == sl.MEDIUM
    assert sl.classify(F, {"a", "c"}, {"c"}) == sl.MEDIUM


def test_size_verdict_and_chain():
    F = sl.IdealFamily.principal(ABC)
    assert sl.size_verdict(F, {"a"}, {"a", "b"}).relation == "small-in"
    assert sl.size_verdict(F, {"a"}, {"c"}).relation == "incomparable"
    chain = sl.size_chain(F, {"a"}, {"a", "b", "c"}, 1)
    assert chain == [["a"], ["a", "b", "c"]]


def test_classify_errors():
    F = sl.IdealFamily.principal(ABC)
    with pytest.raises(sl.SizeError):
        sl.classify(F, {"a"}, {"b"})
    with pytest.raises(sl.SizeError):
        sl.classify(F, {"a"}, {"z"})
    E = sl.IdealFamily(ideals={frozenset("ab"): [set(), {"a"}]})
    with pytest.raises(sl.UnknownBase):
        sl.classify(E, {"a"}, {"a"})
    assert sl.classify(E, {"a", "b"}, {"b"}) == sl.BIG


def test_explicit_family_must_be_an_ideal():
    with pytest.raises(sl.InvalidFamily):
        sl.IdealFamily(ideals={frozenset("ab"): [{"a"}]})
    with pytest.raises(sl.InvalidFamily):
        sl.IdealFamily(ideals={frozenset("ab"): [set(), {"a"}, {"b"}]})


def test_principal_family_is_coherent_for_smooth_preferences():
    PS = sl.random_smooth(random.Random(3), 5, 0.5)
    report = sl.coherence_report(sl.IdealFamily.principal(PS))
    assert report.verdicts["Coh1"] and report.verdicts["muPR"] and report.verdicts["muCUM"]
    assert all(report.cross_checks.values())


def test_explicit_family_breaking_coherence():
    ideals = {frozenset("ab"): [set(), {"a"}], frozenset("abc"): [set()]}
    report = sl.coherence_report(sl.IdealFamily(ideals=ideals))
    assert not report.verdicts["Coh1"]
    assert report.witnesses["Coh1"] == [["a", "b"], ["a", "b", "c"], ["a"]]


def test_choice_function_laws():
    report = sl.choice_report(lambda S: {min(S)}, "abc")
    assert all(report.verdicts.values())
    report = sl.choice_report(lambda S: S if len(S) == 3 else {min(S)}, "abc")
    assert not report.verdicts["muPR"]


@given(st.integers(0, 10_000), st.integers(1, 6))
def test_random_smooth_structures_are_smooth(seed, n):
    props = sl.relation_props(sl.random_smooth(random.Random(seed), n, 0.5))
    assert props.transitive and props.smooth


@given(st.integers(0, 10_000), st.integers(1, 6))
def test_random_ranked_structures_are_ranked(seed, n):
    props = sl.relation_props(sl.random_ranked(random.Random(seed), n))
    assert props.ranked and props.transitive and props.smooth


@given(st.integers(0, 10_000), st.integers(1, 6), st.data())
def test_mu_is_nonempty_and_inside(seed, n, data):
    PS = sl.random_smooth(random.Random(seed), n, 0.5)
    A = data.draw(st.sets(st.sampled_from(PS.universe), min_size=1))
    m = sl.mu(PS, A)
    assert m and m <= A


@pytest.mark.parametrize("suite", sl.SMOOTH_SUITES + sl.RANKED_SUITES)
def test_fuzz_suites_find_no_counterexample(suite):
    report = sl.fact_fuzz(suite, structures=200, seed=1)
    assert report.counterexamples == []
    assert report.non_vacuous > 0


def test_fuzz_is_reproducible():
    a = sl.fact_fuzz("tweety", structures=50, seed=9)
    b = sl.fact_fuzz("tweety", structures=50, seed=9)
    assert (a.instances, a.non_vacuous) == (b.instances, b.non_vacuous)


def test_fuzz_rejects_unknown_suite():
    with pytest.raises(ValueError):
        sl.fact_fuzz("nope", structures=1)
