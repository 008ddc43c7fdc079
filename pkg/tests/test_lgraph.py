import itertools
import pickle

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cyclotomic_lgraphs.families import cylinder, t2k4
from cyclotomic_lgraphs.lgraph import (
    ANY_CHARGE, CHARGED, FormPattern, LGraph, LGraphError, disjoint_union,
    find_induced_form, matches_form, single_vertex,
)

from helpers import RINGS, random_graph

graphs = st.builds(
    lambda d, n, seed: random_graph(__import__("random").Random(seed), d, n),
    st.sampled_from(RINGS), st.integers(1, 7), st.integers(0, 10**6),
)


def test_rejects_bad_input():
    with pytest.raises(LGraphError):
        LGraph(-2, [])
    with pytest.raises(LGraphError):
        LGraph(-2, [2])
    with pytest.raises(LGraphError):
        LGraph(-2, [0, 0], {(0, 1): (3, 0)})  # norm 9
    with pytest.raises(LGraphError):
        LGraph(-2, [0, 0], {(0, 0): 1})
    with pytest.raises(LGraphError):
        LGraph(-2, [0, 0], [(0, 1, 1), (1, 0, 1)])


def test_lower_triangle_edges_are_conjugated():
    g = LGraph(-2, [0, 0], {(1, 0): (1, 1)})
    assert g.entry(0, 1) == (1, -1)
    assert g.entry(1, 0) == (1, 1)


@given(graphs)
def test_matrix_is_hermitian(g):
    m = g.complex_matrix
    assert np.allclose(m, m.conj().T)


@given(graphs)
def test_weighted_degree_oracle(g):
    m = g.complex_matrix
    for v in range(g.n):
        expect = sum(abs(m[v, u]) ** 2 for u in range(g.n) if u != v) + abs(m[v, v])
        assert g.weighted_degree(v) == round(expect)


@given(graphs)
def test_components_partition_vertices(g):
    parts = g.component_vertices()
    assert sorted(v for c in parts for v in c) == list(range(g.n))
    assert g.is_connected() == (len(parts) == 1)
    for a, b in itertools.combinations(parts, 2):
        assert all(g.entry(u, v) == (0, 0) for u in a for v in b)


@given(graphs)
def test_json_and_pickle_round_trip(g):
    assert LGraph.from_json(g.to_json()) == g
    assert pickle.loads(pickle.dumps(g)) == g


@given(graphs)
def test_delete_then_add_restores(g):
    if g.n < 2:
        return
    v = g.n - 1
    h = g.delete_vertex(v)
    col = [g.entry(i, v) for i in range(v)]
    assert h.add_vertex(g.charges[v], col) == g


def test_from_dict_validation():
    with pytest.raises(LGraphError):
        LGraph.from_dict({"d": -2, "charges": [0, 0], "edges": [[1, 0, [1, 0]]]})
    with pytest.raises(LGraphError):
        LGraph.from_dict({"d": -2, "n": 3, "charges": [0, 0]})
    with pytest.raises(LGraphError):
        LGraph.from_dict({"charges": [0]})


def test_disjoint_union_and_dot():
    g = disjoint_union(single_vertex(-7, 1), LGraph(-7, [0, 0], {(0, 1): (0, 1)}))
    assert g.n == 3 and len(g.components()) == 2
    dot = g.to_dot("demo")
    assert dot.startswith("graph demo {") and "v1 -- v2" in dot


def test_cylinder_form_inside_toral_graph():
    # the first eight vertices of T_10^4 carry a cylinder of length 4
    g = t2k4(5, -2)
    p = cylinder(4)
    assert matches_form(g, p, tuple(range(8)))
    assert find_induced_form(g, p)


def test_form_pattern_validation():
    with pytest.raises(LGraphError):
        FormPattern.build(2, None, {(0, 0): 1})
    with pytest.raises(LGraphError):
        FormPattern.build(2, None, {(0, 1): 5})
    p = FormPattern.build(2, [CHARGED, ANY_CHARGE], {(1, 0): 2})
    assert p.allowed_weights(0, 1) == {2}


def test_induced_form_brute_force():
    # oracle: try every injective map
    import random

    rng = random.Random(5)
    p = FormPattern.build(3, [ANY_CHARGE] * 3, {(0, 1): 1, (1, 2): {1, 2}})
    for _ in range(20):
        g = random_graph(rng, -7, 5, 0.5)
        brute = [e for e in itertools.permutations(range(g.n), 3) if matches_form(g, p, e)]
        assert sorted(find_induced_form(g, p)) == sorted(brute)
