import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from vrkunneth import (
    SpaceRecipe,
    Threshold,
    barycentric_flag,
    build_flag_complex,
    chain_complex,
    circle_metric,
    complete,
    cycle,
    erdos_renyi,
    homology_at,
    load_distance_matrix,
    load_edge_list,
    power_cycle,
    relation_equals,
    relation_from_metric,
    rp2_flag,
)
from vrkunneth.algebra import Z, ZERO
from vrkunneth.spaces import RP2_TRIANGLES, ParseError, edgeless, write_edge_list


def test_generator_errors():
    with pytest.raises(ValueError):
        cycle(2)
    with pytest.raises(ValueError):
        power_cycle(6, 3)
    with pytest.raises(ValueError):
        power_cycle(5, 0)
    with pytest.raises(ValueError):
        circle_metric(0)
    with pytest.raises(ValueError):
        erdos_renyi(4, "3/2", 0)


def test_power_cycle_edges():
    assert relation_equals(power_cycle(5, 1), cycle(5))
    assert power_cycle(8, 3).num_edges == 24
    assert all(power_cycle(9, 4).degree(v) == 8 for v in range(9))
    assert relation_equals(power_cycle(9, 4), complete(9))


@given(st.integers(3, 14), st.data())
def test_power_cycle_is_thresholded_circle(n, data):
    k = data.draw(st.integers(1, (n - 1) // 2))
    g = relation_from_metric(circle_metric(n), Threshold(Fraction(k, n)))
    assert relation_equals(g, power_cycle(n, k))


def test_circle_metric_values():
    m = circle_metric(8)
    assert m.dist[0][3] == Fraction(3, 8) and m.dist[1][7] == Fraction(1, 4)
    assert m.diameter() == Fraction(1, 2)


def test_barycentric_hexagon():
    g = barycentric_flag([(0, 1), (1, 2), (0, 2)])
    assert g.n == 6 and g.num_edges == 6
    c = chain_complex(build_flag_complex(g, 2))
    assert [homology_at(c, q) for q in range(3)] == [Z, Z, ZERO]


def test_barycentric_rejects_degenerate_input():
    with pytest.raises(ValueError):
        barycentric_flag([()])
    with pytest.raises(ValueError):
        barycentric_flag([(0, 0, 1)])


def test_rp2_fixture():
    g = rp2_flag()
    assert relation_equals(g, barycentric_flag(RP2_TRIANGLES))
    # every edge of the 6-vertex model lies in exactly two triangles
    for e in combinations(range(6), 2):
        assert sum(set(e) <= set(t) for t in RP2_TRIANGLES) == 2
    assert build_flag_complex(g, 3).f_vector == (31, 90, 60, 0)


def test_erdos_renyi_frozen():
    g = erdos_renyi(6, "1/2", 42)
    assert g.edges == [(0, 2), (0, 3), (0, 4), (1, 4), (1, 5), (2, 3), (2, 4), (3, 4), (3, 5)]
    assert erdos_renyi(6, "1/2", 42).edges == g.edges
    assert erdos_renyi(5, 0, 1).num_edges == 0
    assert relation_equals(erdos_renyi(5, 1, 1), complete(5))


def test_erdos_renyi_draw_order():
    rng = random.Random(7)
    expected = [e for e in combinations(range(7), 2) if rng.random() < Fraction(1, 3)]
    assert erdos_renyi(7, "1/3", 7).edges == expected


def test_load_edge_list(tmp_path):
    p = tmp_path / "c4.txt"
    p.write_text("# a square\n4\n0 1\n1 2\n2 3  # last but one\n3 0\n")
    assert relation_equals(load_edge_list(p), cycle(4))


def test_edge_list_roundtrip(tmp_path):
    p = tmp_path / "g.txt"
    with open(p, "w") as fh:
        write_edge_list(power_cycle(8, 3), fh)
    assert relation_equals(load_edge_list(p), power_cycle(8, 3))


@pytest.mark.parametrize("text, line", [
    ("3\n0 1\n1 3\n", 3),
    ("3\n0 1 2\n", 2),
    ("x\n", 1),
    ("3\n0 a\n", 2),
    ("", 0),
])
def test_edge_list_errors(tmp_path, text, line):
    p = tmp_path / "bad.txt"
    p.write_text(text)
    with pytest.raises(ParseError) as info:
        load_edge_list(p)
    assert info.value.line == line


def test_load_distance_matrix(tmp_path):
    p = tmp_path / "d.txt"
    p.write_text("3\n0 1/4 0.5\n1/4 0 3/8\n0.5 3/8 0\n")
    m = load_distance_matrix(p)
    assert m.dist[1][2] == Fraction(3, 8) and m.dist[0][2] == Fraction(1, 2)


@pytest.mark.parametrize("text, match", [
    ("2\n0 1\n2 0\n", "asymmetric"),
    ("2\n0 -1\n-1 0\n", "negative"),
    ("2\n0 1\n", "rows"),
    ("2\n0 1\n1 0 4\n", "entries"),
    ("2\n0 nan\nnan 0\n", "bad.txt:2"),
])
def test_distance_matrix_errors(tmp_path, text, match):
    p = tmp_path / "bad.txt"
    p.write_text(text)
    with pytest.raises(ParseError, match=match):
        load_distance_matrix(p)


def test_recipes(tmp_path):
    assert relation_equals(SpaceRecipe("cycle", ("4",)).build(), cycle(4))
    assert SpaceRecipe("circle", ("8",)).is_metric
    assert SpaceRecipe("power_cycle", ("8", "3")).describe() == "power_cycle(8, 3)"
    assert SpaceRecipe("rp2").describe() == "rp2"
    with pytest.raises(ValueError):
        SpaceRecipe("torus").build()


def test_edgeless():
    c = chain_complex(build_flag_complex(edgeless(4), 1))
    assert homology_at(c, 0).rank == 4
