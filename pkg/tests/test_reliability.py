from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordlogic import reliability as rl
from ordlogic.demo import THERMOMETERS

F = Fraction


def fresh():
    return rl.AggregatorState.fresh(list(THERMOMETERS))


def test_first_round_mean_and_policy():
    r = rl.run_round(fresh(), THERMOMETERS)
    assert r.m == F(45, 2)
    assert r.delta == F(15, 4)
    assert [r.rho[a] for a in THERMOMETERS] == [F(2, 3)] * 3 + [F(1, 3)]


def test_weighted_second_round():
    state = fresh()
    rl.run_round(state, THERMOMETERS)
    r = rl.run_round(state, THERMOMETERS, rl.RoundConfig(variants=frozenset({2})))
    assert r.m == F(150, 7)
    assert rl.render(r.m) == "150/7 (21.4286)"


def test_replicated_weights_give_the_same_mean():
    state = fresh()
    rl.run_round(state, THERMOMETERS)
    r = rl.run_round(state, THERMOMETERS, rl.RoundConfig(variants=frozenset({2}), weights="replicate"))
    assert r.weights == {"t1": 2, "t2": 2, "t3": 2, "t4": 1}
    assert r.m == F(150, 7)


def test_inertia_folds_in_history():
    state = fresh()
    rl.run_round(state, {"t1": 10})
    r = rl.run_round(state, {"t1": 20}, rl.RoundConfig(variants=frozenset({3})))
    assert r.m == 15 and r.t == 2


def test_flagging_restricts_decreases():
    state = fresh()
    r = rl.run_round(state, THERMOMETERS, rl.RoundConfig(variants=frozenset({4})))
    assert r.flagged == ()
    assert r.skipped == ("t4",)
    assert state.rho["t4"] == F(1, 2)


def test_threshold_skips_small_deviations():
    state = fresh()
    rl.run_round(state, THERMOMETERS, rl.RoundConfig(threshold=F(10)))
    assert set(state.rho.values()) == {F(1, 2)}


def test_round_errors():
    with pytest.raises(rl.NoReadings):
        rl.run_round(fresh(), {})
    with pytest.raises(rl.UnknownAgent):
        rl.run_round(fresh(), {"t9": 1})
    with pytest.raises(rl.ReliabilityError):
        rl.run_round(fresh(), THERMOMETERS, rl.RoundConfig(policy="nope"))


@given(st.dictionaries(st.sampled_from(list(THERMOMETERS)), st.integers(-50, 50), min_size=1),
       st.sampled_from(["example", "proportional", "none"]))
def test_reliabilities_stay_in_unit_interval(readings, policy):
    state = fresh()
    for variants in ({1}, {2}, {2, 3}, {2, 4}):
        rl.run_round(state, readings, rl.RoundConfig(variants=frozenset(variants), policy=policy))
    assert all(0 <= v <= 1 for v in state.rho.values())


def test_exact_inputs():
    assert rl.as_fraction(0.1) == F(1, 10)
    assert rl.as_fraction("3/4") == F(3, 4)


def test_channels():
    assert rl.channel_combine(F(1, 2), F(1, 2)) == F(1, 4)
    b = rl.channel_breakdown(F(1, 2), F(1, 2), F(1, 9))
    assert b.exact and (b.rho, b.rho_c) == (F(1, 3), F(1, 3)) and b.remainder == 0
    b = rl.channel_breakdown(F(1, 2), F(1, 2), F(1, 8))
    assert not b.exact and abs(b.remainder) < F(1, 10**5)
    with pytest.raises(rl.ZeroCombined):
        rl.channel_breakdown(0, F(1, 2), F(1, 4))
    with pytest.raises(rl.ReliabilityError):
        rl.channel_combine(2, F(1, 2))


def test_channel_weights_in_rounds():
    state = rl.AggregatorState.fresh(["a", "b"], channels={"a": F(1, 2)})
    r = rl.run_round(state, {"a": 0, "b": 3}, rl.RoundConfig(variants=frozenset({2}), use_channels=True))
    assert r.weights == {"a": F(1, 4), "b": F(1, 2)}
    assert r.m == 2


def test_broadcast_ring_reports_cycle():
    net = {"A": ["B"], "B": ["C"], "C": ["A"]}
    mon = rl.simulate_broadcast(net, "A", 1)
    assert mon.cycles == [("A", "B", "C")]
    state = rl.AggregatorState.fresh("ABC")
    assert mon.proposals(state) == [{"group": ("A", "B", "C"), "rho": F(1, 2)}]


def test_broadcast_suppression():
    net = {"A": ["B"], "B": ["A", "C"], "C": []}
    mon = rl.simulate_broadcast(net, "A", 1, suppress_seen=True)
    assert not mon.cycles
    assert [e.kind for e in mon.events] == ["forwarded", "suppressed", "forwarded"]
    with pytest.raises(rl.UnknownAgent):
        rl.simulate_broadcast(net, "Z", 1)


def test_mutual_praise_is_flagged():
    state = rl.AggregatorState.fresh("AB")
    book = rl.OpinionBook()
    results = []
    for _ in range(3):
        results.append(rl.peer_opinion(state, "A", "B", 1, book))
        results.append(rl.peer_opinion(state, "B", "A", 1, book))
    assert results[-1].flag == "cronyism"
    assert results[-2].flag is None
    assert results[0].weight == F(1, 8)


def test_mutual_attacks_are_flagged():
    state = rl.AggregatorState.fresh("AB")
    book = rl.OpinionBook(k=1)
    rl.peer_opinion(state, "A", "B", 0, book)
    assert rl.peer_opinion(state, "B", "A", 0, book).flag == "infighting"


def test_opinion_errors():
    state = rl.AggregatorState.fresh("AB")
    with pytest.raises(rl.ReliabilityError):
        rl.peer_opinion(state, "A", "A", 1, rl.OpinionBook())
    with pytest.raises(rl.ReliabilityError):
        rl.peer_opinion(state, "A", "B", 2, rl.OpinionBook())


def test_scenario_from_dict():
    scn = rl.Scenario.from_dict({
        "agents": ["t1", "t2"],
        "rounds": [{"readings": {"t1": 1, "t2": 3}}],
        "opinions": [{"source": "t1", "target": "t2", "value": "1/2"}],
    })
    state, results, opinions, monitors = rl.run_scenario(scn)
    assert results[0].m == 2 and monitors == []
    assert opinions[0].polarity == "attack" and opinions[0].rho_after == F(23, 36)
    with pytest.raises(rl.ReliabilityError):
        rl.Scenario.from_dict({})
