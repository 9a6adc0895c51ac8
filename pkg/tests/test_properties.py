import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from rstre import DisorderSample, decompose, no_repeat_prob_exact
from rstre.disorder import path_fixture
from rstre.oracles import SmallWeightedGraph, km_distance_tail, matrix_tree_determinant, enumerate_spanning_trees
from rstre.spanning import assemble_tree, is_spanning_tree

edge_lists = st.integers(2, 30).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=40)))


@given(edge_lists)
@settings(max_examples=60, deadline=None)
def test_decomposition_invariants(data):
    n, raw = data
    edges = sorted({(min(a, b), max(a, b)) for a, b in raw if a != b})
    d = decompose(DisorderSample.from_edges(n, edges))
    assert d.sizes.sum() == n
    assert np.all(np.diff(d.sizes) <= 0)
    assert np.all(d.diameters <= d.sizes - 1)
    assert d.excess.sum() == len(edges) - n


@given(edge_lists, st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_assembled_tree_spans(data, seed):
    n, raw = data
    edges = sorted({(min(a, b), max(a, b)) for a, b in raw if a != b})
    s = DisorderSample.from_edges(n, edges)
    t = assemble_tree(s, decompose(s, compute_diameters=False), seed)
    assert is_spanning_tree(n, t.edges)
    assert t.diameter() <= n - 1


@given(st.lists(st.integers(1, 9), min_size=1, max_size=12), st.integers(0, 14))
@settings(max_examples=80, deadline=None)
def test_no_repeat_probability_bounds(sizes, k):
    p = no_repeat_prob_exact(sizes, k, exact=True)
    assert 0 <= p <= 1
    assert no_repeat_prob_exact(sizes, k + 1, exact=True) <= p


@given(st.integers(2, 40))
def test_km_tail_is_distribution(m):
    tails = [km_distance_tail(m, L, exact=True) for L in range(1, m + 1)]
    assert tails[0] == 1 and tails[-1] == 0
    assert all(a >= b for a, b in zip(tails, tails[1:]))


@given(st.integers(2, 6), st.lists(st.floats(0.1, 10.0), min_size=15, max_size=15))
@settings(max_examples=40, deadline=None)
def test_matrix_tree_matches_enumeration(m, ws):
    w = np.zeros((m, m))
    it = iter(ws)
    for i in range(m):
        for j in range(i + 1, m):
            w[i, j] = w[j, i] = next(it)
    g = SmallWeightedGraph(w)
    z = enumerate_spanning_trees(g).partition_function
    assert abs(float(matrix_tree_determinant(g)) - z) <= 1e-9 * z


@given(st.lists(st.integers(1, 6), min_size=1, max_size=8), st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_heavy_edges_kept_in_tree_components(sizes, seed):
    s = path_fixture(sizes)
    d = decompose(s, compute_diameters=False)
    t = assemble_tree(s, d, seed)
    assert t.edge_set() >= {tuple(e) for e in s.heavy_edges.tolist()}
