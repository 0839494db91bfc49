from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from oracles import as_pair_edges, brute_tuple_count, strong_product_edges
from strategies import graphs, metrics
from vrkunneth import (
    FiniteMetricSpace,
    Graph,
    ResourceLimitError,
    Threshold,
    circle_metric,
    complete,
    cycle,
    make_graph,
    max_metric_product,
    relation_equals,
    relation_from_metric,
    strong_product,
    tuple_count,
)
from vrkunneth import relations
from vrkunneth.relations import parse_rational, product_relation, surjections


def test_make_graph_cycle():
    g = make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert g.num_edges == 4
    assert relation_equals(g, cycle(4))


def test_make_graph_dedups_symmetric_pairs():
    g = make_graph(3, [(0, 1), (1, 0)])
    assert g.edges == [(0, 1)]


def test_make_graph_drops_self_loops():
    g = make_graph(2, [(0, 0)])
    assert g.num_edges == 0 and g.n == 2


def test_make_graph_rejects_out_of_range():
    with pytest.raises(ValueError):
        make_graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        make_graph(0, [])


def test_directed_adjacency_rejected():
    with pytest.raises(ValueError, match="directed"):
        Graph.from_adjacency([[0, 1], [0, 0]])


def test_strong_product_examples():
    assert relation_equals(strong_product(complete(2), complete(2)), complete(4))
    assert strong_product(complete(2), complete(2)).num_edges == 6
    assert relation_equals(strong_product(cycle(4), complete(1)), cycle(4))
    c = strong_product(cycle(4), cycle(4))
    assert (c.n, c.num_edges) == (16, 64)
    assert all(c.degree(v) == 8 for v in range(16))


def test_strong_product_matches_clause_enumeration():
    g, h = cycle(4), cycle(5)
    assert as_pair_edges(strong_product(g, h), h.n) == strong_product_edges(g, h)


def test_product_vertex_cap(monkeypatch):
    monkeypatch.setattr(relations, "MAX_VERTICES", 10)
    with pytest.raises(ResourceLimitError):
        strong_product(cycle(4), cycle(4))


@given(graphs(), graphs())
def test_strong_product_is_product_relation(g, h):
    assert relation_equals(strong_product(g, h), product_relation(g, h))


@given(graphs(max_n=5), graphs(max_n=5))
def test_strong_product_commutes_up_to_permutation(g, h):
    gh, hg = strong_product(g, h), strong_product(h, g)
    assert gh.n == g.n * h.n
    swap = lambda a: (a % h.n) * g.n + a // h.n  # noqa: E731
    assert {frozenset({swap(u), swap(v)}) for u, v in gh.edges} == \
        {frozenset(e) for e in hg.edges}


def test_relation_from_metric_examples():
    m = circle_metric(4)
    assert relation_equals(relation_from_metric(m, Threshold(Fraction(1, 4))), cycle(4))
    assert relation_from_metric(m, Threshold(Fraction(1, 4), "open")).num_edges == 0
    assert relation_equals(relation_from_metric(m, Threshold(m.diameter())), complete(4))


@given(metrics(), st.fractions(0, 2, max_denominator=6), st.fractions(0, 2, max_denominator=6))
def test_threshold_monotone(m, r1, r2):
    lo, hi = sorted((r1, r2))
    a = set(relation_from_metric(m, Threshold(lo)).edges)
    b = set(relation_from_metric(m, Threshold(hi)).edges)
    assert a <= b


def test_max_metric_product_examples():
    p = FiniteMetricSpace(1, ((0,),))
    assert max_metric_product(p, p).n == 1
    a = FiniteMetricSpace(2, ((0, Fraction(1, 4)), (Fraction(1, 4), 0)))
    b = FiniteMetricSpace(2, ((0, Fraction(1, 2)), (Fraction(1, 2), 0)))
    m = max_metric_product(a, b)
    assert m.dist[0][3] == Fraction(1, 2)
    c4 = circle_metric(4)
    t = Threshold(Fraction(1, 4))
    assert relation_equals(relation_from_metric(max_metric_product(c4, c4), t),
                           strong_product(cycle(4), cycle(4)))


@given(metrics(), metrics(), st.fractions(0, 2, max_denominator=6), st.sampled_from(["closed", "open"]))
def test_threshold_commutes_with_products(a, b, r, mode):
    t = Threshold(r, mode)
    lhs = relation_from_metric(max_metric_product(a, b), t)
    rhs = strong_product(relation_from_metric(a, t), relation_from_metric(b, t))
    assert relation_equals(lhs, rhs)


def test_relation_equals_examples():
    assert not relation_equals(cycle(4), complete(4))
    assert relation_equals(cycle(5), cycle(5))
    with pytest.raises(ValueError):
        relation_equals(cycle(4), cycle(5))


def test_metric_validation():
    with pytest.raises(ValueError, match="asymmetric"):
        FiniteMetricSpace(2, ((0, 1), (2, 0)))
    with pytest.raises(ValueError, match="negative"):
        FiniteMetricSpace(2, ((0, -1), (-1, 0)))
    with pytest.raises(ValueError):
        FiniteMetricSpace(2, ((1, 1), (1, 0)))


@pytest.mark.parametrize("text, value", [
    ("3/8", Fraction(3, 8)), ("0.375", Fraction(3, 8)), ("2", Fraction(2)), (" 1/3 ", Fraction(1, 3)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["nan", "inf", "", "1/0", "abc"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_float_threshold_rejected():
    with pytest.raises(TypeError):
        Threshold(0.25)


@pytest.mark.parametrize("n", [1, 3, 5])
@pytest.mark.parametrize("k", [0, 1, 3])
def test_tuple_count_complete(n, k):
    assert tuple_count(complete(n), k) == n ** (k + 1)


@pytest.mark.parametrize("k", [1, 2, 4])
def test_tuple_count_edgeless(k):
    assert tuple_count(make_graph(5, []), k) == 5


def test_tuple_count_c4():
    assert brute_tuple_count(cycle(4), 1) == 12
    assert tuple_count(cycle(4), 1) == 12


def test_surjections():
    assert [surjections(4, s) for s in range(5)] == [0, 1, 14, 36, 24]


@given(graphs(max_n=5), st.integers(0, 3))
def test_tuple_count_matches_brute_force(g, k):
    assert tuple_count(g, k) == brute_tuple_count(g, k)


@given(graphs(max_n=4), graphs(max_n=4), st.integers(0, 4))
def test_tuple_count_multiplicative(g, h, k):
    assert tuple_count(strong_product(g, h), k) == tuple_count(g, k) * tuple_count(h, k)


def test_relabelled_graph_same_tuple_count():
    g = make_graph(5, [(0, 1), (1, 2), (2, 0), (3, 4)])
    for perm in list(permutations(range(5)))[:20]:
        h = make_graph(5, [(perm[u], perm[v]) for u, v in g.edges])
        assert tuple_count(h, 2) == tuple_count(g, 2)
