from pathlib import Path

import pytest
from hypothesis import given

from ordlogic import fileio, yablo
from ordlogic.order_core import Poset
from strategies import posets

DATA = Path(__file__).parent / "data"


def read(name):
    return (DATA / name).read_text()


def test_poset_file_round_trip():
    P = fileio.load_poset(read("diamond.poset"))
    assert isinstance(P, Poset) and P.bottom == "bot" and P.top == "top"
    text = fileio.save_poset(P)
    assert fileio.save_poset(fileio.load_poset(text)) == text


@given(posets(max_size=6))
def test_saved_posets_reload_identically(P):
    text = fileio.save_poset(P)
    Q = fileio.load_poset(text)
    assert fileio.save_poset(Q) == text
    assert all(P.less(a, b) == Q.less(a, b) for a in P.elements for b in P.elements)


def test_poset_errors():
    with pytest.raises(fileio.InvariantViolation) as info:
        fileio.load_poset(read("cycle.poset"))
    assert info.value.invariant == "CycleDetected"
    with pytest.raises(fileio.ParseError) as info:
        fileio.load_poset(read("typo.poset"))
    assert info.value.column == 1
    with pytest.raises(fileio.InvariantViolation):
        fileio.load_poset("elt a\nelt a\n")
    with pytest.raises(fileio.InvariantViolation):
        fileio.load_poset("elt a\ntop z\n")


def test_system_round_trip():
    sys_ = fileio.load_system(read("value.sys"))
    text = fileio.save_system(sys_)
    assert fileio.save_system(fileio.load_system(text)) == text
    assert "x4" in sys_.free


def test_system_errors():
    with pytest.raises(fileio.InvariantViolation) as info:
        fileio.load_system(read("undeclared.sys"))
    assert info.value.invariant == "UnknownAtom"
    with pytest.raises(fileio.ParseError) as info:
        fileio.load_system(read("badsyntax.sys"))
    assert (info.value.line, info.value.column) == (1, 9)
    with pytest.raises(fileio.ParseError):
        fileio.load_system("just words\n")
    with pytest.raises(fileio.InvariantViolation):
        fileio.load_system("a = TOP\na = BOT\n")


def test_system_files_round_trip_generated_systems():
    for sys_ in (yablo.gen_yablo(5), yablo.gen_yg_prime(4), yablo.gen_chain("pnTF")):
        text = fileio.save_system(sys_)
        again = fileio.load_system(text)
        assert again.d == sys_.d and again.free == sys_.free


def test_relations():
    PS = fileio.load_relation(read("stepwise.rel"))
    assert PS.beats("c", "b") and not PS.beats("c", "a")
    with pytest.raises(fileio.ParseError):
        fileio.load_relation("prefer a b\n")


def test_scenarios_and_cases():
    scn = fileio.load_scenario(read("thermometers.toml"))
    assert len(scn.rounds) == 2
    case = fileio.load_case(read("combined.toml"))
    assert "combined" in case.space.maps
    with pytest.raises(fileio.ParseError) as info:
        fileio.load_scenario(read("broken.toml"))
    assert info.value.line >= 1
    with pytest.raises(fileio.InvariantViolation):
        fileio.load_scenario('agents = ["a"]\n[[rounds]]\nreadings = {a = "x"}\n')
    with pytest.raises(fileio.InvariantViolation):
        fileio.load_case('objects = ["x"]\nunary = ["x"]\n')


def test_distances():
    points, d = fileio.load_distances(read("cube.csv"))
    assert len(points) == 8 and d("000", "111") == 3
    with pytest.raises(fileio.InvariantViolation):
        fileio.load_distances("p,a,b\na,0,1\nb,2,0\n")
    with pytest.raises(fileio.ParseError):
        fileio.load_distances("p,a\na,0,1\n")
    with pytest.raises(fileio.ParseError):
        fileio.load_distances("")
