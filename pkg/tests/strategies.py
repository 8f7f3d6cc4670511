"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from ordlogic.order_core import build_poset, with_bounds

NAMES = "abcdefgh"


@st.composite
def order_pairs(draw, n):
    """Pairs i<j over a shuffled naming, so the closure is always acyclic."""
    names = draw(st.permutations(NAMES[:n]))
    pairs = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    return list(NAMES[:n]), pairs


@st.composite
def posets(draw, min_size=1, max_size=6):
    n = draw(st.integers(min_size, max_size))
    elems, pairs = draw(order_pairs(n))
    return build_poset(elems, pairs)


@st.composite
def bounded_posets(draw, max_inner=5):
    n = draw(st.integers(0, max_inner))
    elems, pairs = draw(order_pairs(n))
    return with_bounds(elems, pairs)


@st.composite
def element_sets(draw, P, min_size=1):
    elems = sorted(P.elements)
    return frozenset(draw(st.lists(st.sampled_from(elems), min_size=min_size, max_size=len(elems), unique=True)))
