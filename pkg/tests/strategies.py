"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from vrkunneth import AbelianGroup, FiniteMetricSpace, make_graph


@st.composite
def graphs(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return make_graph(n, [p for p, k in zip(pairs, keep) if k])


@st.composite
def metrics(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    vals = st.fractions(min_value=0, max_value=2, max_denominator=6)
    d = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = draw(vals)
    return FiniteMetricSpace(n, tuple(map(tuple, d)))


groups = st.builds(
    AbelianGroup.from_orders,
    st.integers(0, 3),
    st.lists(st.integers(2, 36), max_size=4),
)

int_matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                           min_size=m, max_size=m)))
