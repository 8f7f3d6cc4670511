from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordlogic import demo
from ordlogic import order_measure as om
from ordlogic.order_core import build_poset, with_bounds
from ordlogic.order_ops import PRIMED, join, meet, neg
from strategies import bounded_posets, element_sets, posets

CUBE = [f"{i:03b}" for i in range(8)]


def test_heights_with_a_longer_branch():
    P = with_bounds(["a", "a'", "b"], [("a", "a'")])
    ht = om.heights(P)
    assert (ht["a'"], ht["b"], ht["bot"]) == (2, 1, 0)


def test_profile_on_two_element_chain():
    prof = om.height_profile(with_bounds([]))
    assert prof.ratio == {"bot": 0, "top": 1}
    assert prof.rht["top"] == 1


def test_profile_needs_bounds():
    with pytest.raises(om.UnboundedPoset):
        om.height_profile(build_poset("ab", [("a", "b")]))


def test_height_filtered_operators():
    H = demo.uneven_branches()
    assert om.dd_op(H, {"c"}, which="neg2p") == {"b'"}
    assert om.dd_op(H, {"bot"}, which="neg2p") == {"top"}
    assert om.dd_op(demo.diamond(), {"top"}, {"a"}, "meet2p") == {"a"}


def test_probability_of_an_element_and_its_negation():
    D = demo.diamond()
    assert om.prob(D, {"a"}) + om.prob(D, neg(D, {"a"}, PRIMED)) == 1
    P, names = demo.gappy_inclusion()
    a = names[frozenset("a")]
    assert om.prob(P, {a}) == Fraction(1, 3)
    assert om.prob(P, neg(P, {a}, PRIMED)) == Fraction(1, 3)
    T, names = demo.two_branch_inclusion()
    aa = names[frozenset({"a", "a'"})]
    assert om.prob(T, {aa}) == om.prob(T, neg(T, {aa}, PRIMED)) == Fraction(2, 3)


def test_summed_height_probabilities():
    P = demo.two_chains()
    na = neg(P, {"a'"})
    assert om.prob(P, {"a'"}, "sum") == Fraction(2, 9)
    assert om.prob(P, na, "sum") == Fraction(3, 9)
    assert om.prob(P, meet(P, {"a'"}, na), "sum") == 0
    assert om.prob(P, join(P, {"a'"}, neg(P, {"a'"}, PRIMED), PRIMED), "sum") == Fraction(3, 9)
    assert om.prob(P, P.elements, "sum") == 1


def test_empty_set_probability_rejected():
    with pytest.raises(om.EmptySet):
        om.prob(demo.diamond(), set())


def test_independence():
    D = demo.diamond()
    assert om.independence(D, {"a"}, {"top"})
    assert not om.independence(D, {"a"}, {"b"})


def test_sum_ordered_products():
    for high, expected in (("1", 2), ("2", 3)):
        P1 = demo.chain_poset(["0", high])
        P2 = demo.chain_poset(["0'", "1'"])
        _, ht = om.product_order(P1, P2, {"0": 0, high: int(high)}, {"0'": 0, "1'": 1})
        assert ht[f"({high},1')"] == expected
    single = build_poset(["p"], [])
    Q, ht = om.product_order(single, single, {"p": 0}, {"p": 0})
    assert ht == {"(p,p)": 0}


def test_translation_of_a_chain():
    st_ = om.size_translation(demo.chain_poset(["bot", "a", "top"]))
    assert st_.sets["bot"] == frozenset()
    assert len(st_.sets["a"]) == 1 and len(st_.sets["top"]) == 2
    assert st_.sets["a"] < st_.sets["top"]


def test_translation_of_a_diamond():
    st_ = om.size_translation(demo.diamond())
    assert [st_.size(x) for x in ("bot", "a", "b")] == [0, 1, 1]
    assert st_.size("top") >= 2


@given(posets(max_size=7))
def test_translation_turns_order_into_inclusion(P):
    S = om.size_translation(P).sets
    for x in P.elements:
        for y in P.elements:
            if P.less(x, y):
                assert S[x] < S[y]
            elif x != y and not P.comparable(x, y):
                assert not S[x] <= S[y]


def test_core_on_the_cube():
    d = om.hamming
    X = [p for p in CUBE if p != "111"]
    depth = om.depth_table(CUBE, X, d)
    assert depth["000"] == 3 and depth["011"] == 1
    assert om.core(CUBE, X, d) == {"000", "001", "010", "100"}
    layers, core = om.core_layers(CUBE, X, d)
    assert [len(l) for l in layers] == [3, 3, 1]
    assert core == {"000", "001", "010", "100"}


def test_equal_depth_core_is_everything():
    X = ["000", "001", "010", "011"]
    assert om.core(CUBE, X, om.hamming) == set(X)


def test_degenerate_core_input():
    with pytest.raises(om.DegenerateSet):
        om.core(CUBE, CUBE, om.hamming)


@given(st.sets(st.sampled_from(CUBE), min_size=1, max_size=7))
def test_layers_partition_and_deepen(X):
    layers, _ = om.core_layers(CUBE, X, om.hamming)
    assert frozenset().union(*layers) == X
    assert sum(len(l) for l in layers) == len(X)
    table = om.depth_table(CUBE, X, om.hamming)
    limit = Fraction(max(table.values()), 2)
    assert om.core(CUBE, X, om.hamming) == {x for x in X if table[x] >= limit}


def test_mean_rows_and_optima():
    cands, best = om.set_mean([{"a", "b"}, {"b", "c"}], "interior_lex", universe={"d"})
    rows = {demo.fmt(c.members): (c.interior, c.exterior) for c in cands}
    assert rows["{b}"] == ((0, 0), (1, 1))
    assert rows["{a,b,c}"] == ((1, 1), (0, 0))
    assert [c.members for c in best] == [{"b"}]
    _, best = om.set_mean([{"a", "b"}, {"b", "c"}], "exterior_lex")
    assert [c.members for c in best] == [{"a", "b", "c"}]


def test_mean_schemes_run():
    sets = [{"a", "b"}, {"b", "c"}, {"c"}]
    for scheme in ("squared", "equalized", ("weighted", 2, 1)):
        _, best = om.set_mean(sets, scheme)
        assert best
    _, best = om.set_mean([{"a"}, {"b"}], "interior_lex", multiplicity=[3, 1])
    assert best


def test_revision_mean():
    d = lambda a, b: abs(a - b)
    assert om.revision_mean([{1, 2}, {1, 2}], d) == {1, 2}
    assert om.revision_mean([{0}, {3, 10}], d) == {0, 3}
    assert om.revision_mean([{0}, {1}], lambda a, b: 0 if a == b else 1) == {0, 1}


def test_similarity_and_uncertainty():
    D = demo.diamond()
    assert om.similarity(D, "a", "a") == 1
    assert om.uncertainty(D, "a") == 1
    assert om.uncertainty(demo.chain_poset(["p", "q", "r"]), "q") == 0
    assert om.downset_size(D, "top") == 3


@given(bounded_posets(max_inner=4), st.data())
def test_meets_lie_below_and_joins_above(P, data):
    X = data.draw(element_sets(P))
    Y = data.draw(element_sets(P))
    ht = om.heights(P)
    m = meet(P, X, Y)
    assert max(ht[z] for z in m) <= min(max(ht[x] for x in X), max(ht[y] for y in Y))
    j = join(P, X, Y)
    assert min(ht[z] for z in j) >= max(min(ht[x] for x in X), min(ht[y] for y in Y))
