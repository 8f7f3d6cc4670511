import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordlogic import demo
from ordlogic.order_core import EmptyOperand, with_bounds
from ordlogic.order_ops import PLAIN, PRIMED, SignedSet, alt_op, join, law_audit, meet, minus, neg, signed_apply
from strategies import bounded_posets, element_sets


def test_top_and_bottom_against_an_atom():
    D = demo.diamond()
    assert meet(D, {"top"}, {"a"}) == {"bot", "a"}
    assert meet(D, {"top"}, {"a"}, PRIMED) == {"a"}
    assert join(D, {"bot"}, {"a"}) == {"top", "a"}
    assert join(D, {"bot"}, {"a"}, PRIMED) == {"a"}
    assert neg(D, {"a"}) == {"bot", "b"}
    assert neg(D, {"a"}, PRIMED) == {"b"}
    assert minus(D, "top", "a", PRIMED) == {"b"}


def test_self_meet_is_downset():
    P = demo.two_chains()
    assert meet(P, {"a'"}, {"a'"}) == P.downset("a'")


def test_antichain_meets_and_joins():
    A = demo.antichain3()
    assert meet(A, {"x"}, {"y"}) == {"bot"}
    assert join(A, {"y"}, {"z"}) == {"top"}
    assert join(A, {"top"}, {"top"}, PRIMED) == {"top"}


def test_double_primed_negation_moves_up():
    P = demo.refined_pair()
    assert neg(P, neg(P, {"x"}, PRIMED), PRIMED) == {"x'"}
    assert neg(P, {"bot"}, PRIMED) == {"top"}


def test_difference_examples():
    D = demo.diamond()
    assert minus(D, "a", "a") == {"bot"}
    assert minus(D, "bot", "b") == {"bot"}


def test_alternative_operators():
    D = demo.diamond()
    assert alt_op(D, {"top"}, {"a", "b"}, "meet1") == {"bot"}
    assert alt_op(D, {"bot"}, {"a", "b"}, "join1") == {"top"}
    S = demo.shared_base()
    once = alt_op(S, {"b"}, which="neg1")
    assert once == {"bot", "a"}
    assert alt_op(S, once, which="neg1") == S.elements


def test_alternative_negation_is_not_antitone():
    S = demo.shared_base()
    pairs = [(X, Y) for X in ({"b"}, {"a"}, {"d"}) for Y in ({"b", "a"}, {"b", "d"}, {"a", "d"})
             if set(X) <= set(Y)]
    assert any(not alt_op(S, Y, which="neg1") <= alt_op(S, X, which="neg1") for X, Y in pairs)


def test_signed_join_with_negation():
    P = demo.joined_pair()
    r = signed_apply(P, "join", SignedSet(frozenset({"a"})), SignedSet(neg(P, {"a"}), "sup"))
    assert (r.tag, r.base) == ("inf", {"top"})
    C = demo.covered_pair()
    r = signed_apply(C, "join", SignedSet(frozenset({"x"})), SignedSet(neg(C, {"x"}), "sup"))
    assert (r.tag, r.base) == ("inf", {"b", "top"})


def test_empty_operands_rejected():
    D = demo.diamond()
    with pytest.raises(EmptyOperand):
        meet(D, set(), {"a"})
    with pytest.raises(EmptyOperand):
        neg(D, set())


def test_audit_antichain_distributivity_witness():
    report = law_audit(demo.antichain3())
    for variant, left, right in ((PLAIN, ["bot", "x"], ["bot", "top", "x", "y", "z"]), (PRIMED, ["x"], ["bot"])):
        r = report.verdict("distributivity-meet-over-join", variant)
        assert not r.holds
        hit = [f for f in r.failures if f["instance"] == [["x"], ["y"], ["z"]]]
        assert hit and hit[0]["left"] == left and hit[0]["right"] == right


def test_audit_two_chain_primed_laws_all_hold():
    # plain results are whole down- or up-sets, so as literal sets they can
    # differ from the single element a Boolean algebra would give
    report = law_audit(with_bounds([]))
    assert [r.law for r in report.failures() if r.variant == PRIMED] == []
    assert report.verdict("double-negation", PLAIN).failures[0]["left"] == ["bot", "top"]


def test_audit_diamond_primed_double_negation():
    r = law_audit(demo.diamond()).verdict("double-negation", PRIMED)
    assert r.holds


@given(bounded_posets(max_inner=4), st.data())
def test_meet_with_own_negation_is_bottom(P, data):
    X = data.draw(element_sets(P))
    assert meet(P, X, neg(P, X)) == {P.bottom}


@given(bounded_posets(max_inner=4), st.data())
def test_difference_is_meet_with_negation(P, data):
    x = data.draw(st.sampled_from(sorted(P.elements)))
    y = data.draw(st.sampled_from(sorted(P.elements)))
    assert minus(P, x, y) == meet(P, {x}, neg(P, {y}))


@given(bounded_posets(max_inner=4), st.data())
def test_monotonicity_suite(P, data):
    from ordlogic.order_core import set_compare

    X = data.draw(element_sets(P))
    X2 = X | data.draw(element_sets(P))
    Y = data.draw(element_sets(P))
    assert set_compare(P, meet(P, X, Y), meet(P, X2, Y))
    assert set_compare(P, neg(P, X2), neg(P, X))
    x = data.draw(st.sampled_from(sorted(P.elements)))
    for bigger in P.upset(x):
        assert set_compare(P, neg(P, {bigger}), neg(P, {x}))


@given(bounded_posets(max_inner=3))
def test_associativity_on_random_bounded_posets(P):
    report = law_audit(P)
    for law in ("associativity-meet", "associativity-join"):
        for variant in (PLAIN, PRIMED):
            assert report.verdict(law, variant).holds
