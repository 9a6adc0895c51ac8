from collections import Counter

import numpy as np
import pytest

from rstre import (
    DisorderSample,
    WeightedTree,
    aldous_broder_contracted,
    assemble_lower_bound_path,
    assemble_tree,
    contract,
    decompose,
    path_containment_violation,
    sample_disorder,
    tree_diameter,
    tree_distance,
    wilson_ust,
)
from rstre.disorder import path_fixture
from rstre.errors import InvalidArgumentError, NotApplicableError, PartialCoverError
from rstre.spanning import (
    ContractedWalkTrace,
    aldous_broder_tree,
    is_spanning_tree,
    wilson_batch,
)


def _freq(sample, count, seed=1):
    parents = wilson_batch(sample, seed, count)
    return Counter(WeightedTree.from_parents(p).edge_set() for p in parents)


def test_wilson_uniform_on_k3():
    freq = _freq(DisorderSample.from_edges(3, [], gamma=-1.0), 30000)
    assert len(freq) == 3
    for c in freq.values():
        assert abs(c / 30000 - 1 / 3) < 0.015


def test_wilson_weighted_k3():
    sample = DisorderSample.from_edges(3, [(0, 1)], heavy_weight=2.0)
    freq = _freq(sample, 50000)
    # a tree's weight is 2 when it keeps the heavy edge
    for tree, c in freq.items():
        expect = 2 / 5 if (0, 1) in tree else 1 / 5
        assert abs(c / 50000 - expect) < 0.015


def test_wilson_two_vertices():
    t = wilson_ust(DisorderSample.from_edges(2, []), seed=4)
    assert t.edge_set() == {(0, 1)}


def test_wilson_single_vertex():
    t = wilson_ust(DisorderSample.from_edges(1, []), seed=4)
    assert len(t.edges) == 0 and t.diameter() == 0


def test_tree_metrics():
    star = WeightedTree.from_edges(5, [(0, i) for i in range(1, 5)])
    path = WeightedTree.from_edges(6, [(i, i + 1) for i in range(5)])
    assert tree_diameter(star) == 2
    assert tree_diameter(path) == 5
    assert tree_diameter(WeightedTree.from_edges(1, [])) == 0
    assert tree_distance(path, 2, 2) == 0
    assert tree_distance(path, 2, 3) == 1
    assert tree_distance(WeightedTree.from_edges(4, [(0, 1), (1, 2), (2, 3)]), 0, 3) == 3
    with pytest.raises(InvalidArgumentError):
        tree_distance(path, 0, 6)


def test_from_edges_rejects_cycle():
    with pytest.raises(InvalidArgumentError):
        WeightedTree.from_edges(3, [(0, 1), (1, 0)])
    assert not is_spanning_tree(4, [(0, 1), (1, 2), (0, 2)])


@pytest.mark.parametrize("n,gamma", [(1, 5.0), (2, 5.0), (400, 5.0), (2000, 5.0), (400, 1.0)])
def test_assembled_trees_valid(n, gamma):
    s = sample_disorder(n, gamma, seed=n)
    d = decompose(s, compute_diameters=False)
    t = assemble_tree(s, d, seed=2)
    assert t.is_valid()
    # heavy components stay connected through their own edges
    assert not path_containment_violation(s, t, d)
    ab, _ = aldous_broder_tree(s, d, seed=3)
    assert ab.is_valid()


def test_single_component_contraction():
    d = decompose(path_fixture([6]))
    tree, trace = aldous_broder_contracted(contract(d), d, 0, seed=1)
    assert tree.n == 1 and len(tree.edges) == 0
    assert trace.covered


def test_all_singletons_contraction():
    d = decompose(DisorderSample.from_edges(5, []))
    tree, trace = aldous_broder_contracted(contract(d), d, 0, seed=1)
    assert tree.is_valid() and trace.covered
    # entry and exit coincide inside a singleton
    assert np.all(trace.entry_vertex[:-1] == trace.exit_vertex[:-1])


def test_contracted_step_frequencies():
    d = decompose(path_fixture([5, 3, 3, 2, 1, 1]))
    g = contract(d)
    counts = np.zeros(g.num_vertices)
    seed = 0
    while counts.sum() < 100_000:
        _, trace = aldous_broder_contracted(g, d, 0, seed=seed, max_steps=10**6)
        counts += np.bincount(trace.visited[1:], minlength=g.num_vertices)
        seed += 1
    p = d.sizes / d.n
    z = np.abs(counts / counts.sum() - p) / np.sqrt(p * (1 - p) / counts.sum())
    assert z.max() < 3.5


def test_partial_cover_carries_trace():
    d = decompose(DisorderSample.from_edges(50, []))
    with pytest.raises(PartialCoverError) as info:
        aldous_broder_contracted(contract(d), d, 0, seed=1, max_steps=5)
    assert isinstance(info.value.trace, ContractedWalkTrace)
    assert not info.value.trace.covered


def _trace(visited, entry, exit_, repeat):
    return ContractedWalkTrace(np.array(visited), np.array(entry), np.array(exit_), repeat, True)


def test_lower_bound_path_cases():
    d = decompose(path_fixture([3, 1, 1]))
    # singleton visits contribute nothing
    assert assemble_lower_bound_path(_trace([1, 2, 1], [3, 4, 3], [3, 4, -1], 2), d) == 0
    # enter the path 0-1-2 at one end, leave at the other
    assert assemble_lower_bound_path(_trace([0, 1, 0], [0, 3, 1], [2, 3, -1], 2), d) == 2
    # immediate repeat: one term
    assert assemble_lower_bound_path(_trace([0, 0], [1, 0], [0, -1], 1), d) == 1
    with pytest.raises(NotApplicableError):
        assemble_lower_bound_path(_trace([0, 1, 2], [0, 3, 4], [0, 3, -1], None), d)


def test_lower_bound_below_diameter():
    for t in range(20):
        s = sample_disorder(1024, 5.0, seed=100 + t)
        d = decompose(s, compute_diameters=False)
        tree, trace = aldous_broder_tree(s, d, seed=t)
        if trace.first_repeat_index is not None:
            assert assemble_lower_bound_path(trace, d) <= tree.diameter()


def test_path_containment_cases():
    singletons = DisorderSample.from_edges(6, [])
    d = decompose(singletons)
    t = wilson_ust(singletons, seed=1)
    assert not path_containment_violation(singletons, t, d)
    whole = path_fixture([5])
    d = decompose(whole)
    light = WeightedTree.from_edges(5, [(0, 2), (2, 4), (1, 3), (3, 0)])
    assert path_containment_violation(whole, light, d)
    heavy = WeightedTree.from_edges(5, [(i, i + 1) for i in range(4)])
    assert not path_containment_violation(whole, heavy, d)


def test_assembled_tree_matches_direct_sampler_on_fixture():
    sample = path_fixture([3, 2], gamma=5.0)
    d = decompose(sample, compute_diameters=False)
    direct = _freq(sample, 20000, seed=8)
    assembled = Counter(assemble_tree(sample, d, seed=s).edge_set() for s in range(20000))
    keys = set(direct) | set(assembled)
    tv = 0.5 * sum(abs(direct[k] - assembled[k]) / 20000 for k in keys)
    assert tv < 0.03
