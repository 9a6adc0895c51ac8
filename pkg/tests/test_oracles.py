from fractions import Fraction

import numpy as np
import pytest

from rstre import (
    SmallWeightedGraph,
    balanced_ratio,
    bottleneck_ratio_exact,
    effective_resistance,
    enumerate_spanning_trees,
    km_distance_tail,
    laplacian_walk_sample,
    ust_edge_probability,
)
from rstre.errors import InvalidArgumentError, NoSpanningTreeError, SizeLimitError
from rstre.oracles import (
    connected_atlas_graphs,
    excess_diameter_violations,
    laplacian_walk_samples,
    matrix_tree_determinant,
    random_connected_graph,
)

K3 = SmallWeightedGraph.complete(3)
K3_W = SmallWeightedGraph.from_edges(3, [(0, 1, 2.0), (1, 2), (0, 2)])
PATH3 = SmallWeightedGraph.from_edges(3, [(0, 1), (1, 2)])


def test_enumeration_counts():
    assert len(enumerate_spanning_trees(K3)) == 3
    assert enumerate_spanning_trees(K3).partition_function == 3
    assert enumerate_spanning_trees(K3_W).partition_function == 5
    assert len(enumerate_spanning_trees(PATH3)) == 1
    assert len(enumerate_spanning_trees(SmallWeightedGraph.complete(6))) == 6 ** 4


def test_enumeration_errors():
    with pytest.raises(NoSpanningTreeError):
        enumerate_spanning_trees(SmallWeightedGraph.from_edges(3, [(0, 1)]))
    with pytest.raises(SizeLimitError):
        enumerate_spanning_trees(SmallWeightedGraph.complete(12))


def test_effective_resistance():
    assert effective_resistance(SmallWeightedGraph.from_edges(2, [(0, 1, 4.0)]), 0, 1) == pytest.approx(0.25)
    assert effective_resistance(K3, 0, 1) == pytest.approx(2 / 3)
    assert effective_resistance(PATH3, 0, 2) == pytest.approx(2)
    assert effective_resistance(K3, 0, 1, exact=True) == Fraction(2, 3)
    with pytest.raises(InvalidArgumentError):
        effective_resistance(K3, 1, 1)


def test_edge_probability():
    assert ust_edge_probability(K3, (0, 1)) == pytest.approx(2 / 3)
    assert ust_edge_probability(PATH3, (1, 2)) == pytest.approx(1)
    assert ust_edge_probability(K3_W, (0, 1)) == pytest.approx(4 / 5)
    with pytest.raises(InvalidArgumentError):
        ust_edge_probability(PATH3, (0, 2))


def test_matrix_tree_determinant():
    rng = np.random.default_rng(3)
    for _ in range(10):
        g = random_connected_graph(6, rng)
        assert matrix_tree_determinant(g) == pytest.approx(enumerate_spanning_trees(g).partition_function)
    # Cayley
    assert matrix_tree_determinant(SmallWeightedGraph.complete(7), exact=True) == 7 ** 5


def test_km_tail_values():
    assert km_distance_tail(3, 2, exact=True) == Fraction(1, 3)
    assert km_distance_tail(9, 1) == 1.0
    assert km_distance_tail(4, 3, exact=True) == Fraction(1, 8)
    assert km_distance_tail(5, 5) == 0.0
    with pytest.raises(InvalidArgumentError):
        km_distance_tail(1, 1)


def test_laplacian_walk():
    assert all(laplacian_walk_sample(2, s) == 1 for s in range(20))
    x = laplacian_walk_samples(3, 100_000, seed=5)
    p = np.mean(x >= 2)
    assert abs(p - 1 / 3) < 3 * np.sqrt(2 / 9 / 100_000)
    y = laplacian_walk_samples(9, 5000, seed=6)
    assert y.min() >= 1 and y.max() <= 8


def test_bottleneck_values():
    assert bottleneck_ratio_exact(SmallWeightedGraph.complete(2)) == 0.5
    assert bottleneck_ratio_exact(SmallWeightedGraph.complete(4)) == pytest.approx(0.4)
    with pytest.raises(SizeLimitError):
        bottleneck_ratio_exact(SmallWeightedGraph.complete(20))


@pytest.mark.parametrize("n", [4, 6, 8])
@pytest.mark.parametrize("gamma", [-1.0, 0.0, 1.0])
def test_bottleneck_lower_bound(n, gamma):
    w = np.ones((n, n)) - np.eye(n)
    w[0, 1] = w[1, 0] = float(n) ** (1 + gamma)
    phi = bottleneck_ratio_exact(SmallWeightedGraph(w))
    assert phi >= 1 / (6 * (2 / 3 + 2 * float(n) ** gamma))


def test_balanced_ratio():
    assert balanced_ratio(SmallWeightedGraph.complete(5)) == 1.0
    assert balanced_ratio(SmallWeightedGraph.from_edges(3, [(0, 1, 5.0), (1, 2), (0, 2)])) == 3.0
    star = SmallWeightedGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert balanced_ratio(star) == 3.0


def test_inclusion_sums_to_tree_size():
    rng = np.random.default_rng(8)
    g = random_connected_graph(6, rng)
    assert sum(ust_edge_probability(g, e) for e in g.edges()) == pytest.approx(5)


def test_excess_diameter_small_atlas():
    total = sum(excess_diameter_violations(edges, m) for m, edges in connected_atlas_graphs(5))
    assert total == 0
