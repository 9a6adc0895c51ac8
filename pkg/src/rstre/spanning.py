"""Spanning trees of the disordered complete graph.

Two samplers produce trees of K_n under the product-weight law:

* :func:`wilson_ust` runs Wilson's algorithm directly on K_n, drawing each
  walk step in O(1) expected time from the two-valued weights.
* :func:`assemble_tree` builds the tree component by component: uniform
  trees inside the heavy components, joined by a uniform spanning tree of
  the contracted multigraph.  It needs no walk inside K_n, so it stays
  cheap when the heavy weight is astronomically large.

The contracted Aldous-Broder walk records where it enters and leaves each
component, which gives the lower bound on the tree diameter computed by
:func:`assemble_lower_bound_path`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import ceil, log

import numpy as np

from ._backend import kernels
from .disorder import ComponentDecomposition, ContractedGraph, DisorderSample, _csr_from_edges
from .errors import InvalidArgumentError, NotApplicableError, PartialCoverError, RstreError
from .seeds import SeedStream

STEP_LIMIT = 1


def default_max_steps(n: int) -> int:
    return 50 * n * max(1, ceil(log(n + 1)))


@dataclass(frozen=True, eq=False)
class WeightedTree:
    """A spanning tree of ``{0, .., n-1}`` given by its ``n - 1`` edges."""

    n: int
    edges: np.ndarray

    @classmethod
    def from_parents(cls, parents):
        parents = np.asarray(parents, dtype=np.int64)
        child = np.flatnonzero(parents >= 0)
        edges = np.stack([child, parents[child]], axis=1)
        return cls(len(parents), edges)

    @classmethod
    def from_edges(cls, n, edges):
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        tree = cls(int(n), edges)
        if not tree.is_valid():
            raise InvalidArgumentError("edges do not form a spanning tree")
        return tree

    @cached_property
    def adjacency(self):
        """``(indptr, indices)`` neighbour lists in CSR form."""
        return _csr_from_edges(self.n, self.edges)

    def neighbors(self, v) -> np.ndarray:
        indptr, indices = self.adjacency
        return indices[indptr[v]:indptr[v + 1]]

    def edge_set(self) -> frozenset:
        return frozenset((int(min(a, b)), int(max(a, b))) for a, b in self.edges)

    def is_valid(self) -> bool:
        return is_spanning_tree(self.n, self.edges)

    def diameter(self) -> int:
        return tree_diameter(self)

    def distance(self, u, v) -> int:
        return tree_distance(self, u, v)

    def distances_from(self, u) -> np.ndarray:
        indptr, indices = self.adjacency
        return kernels.bfs_distances(indptr, indices, int(u))


def is_spanning_tree(n, edges) -> bool:
    """Edge count n - 1, endpoints in range and no cycle (union-find)."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if len(edges) != n - 1:
        return False
    if len(edges) and (edges.min() < 0 or edges.max() >= n):
        return False
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges.tolist():
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def tree_diameter(t: WeightedTree) -> int:
    indptr, indices = t.adjacency
    return int(kernels.tree_diameter(indptr, indices))


def tree_distance(t: WeightedTree, u, v) -> int:
    for x in (u, v):
        if not 0 <= x < t.n:
            raise InvalidArgumentError(f"vertex {x} outside [0, {t.n})")
    if u == v:
        return 0
    return int(t.distances_from(u)[v])


# ---------------------------------------------------------------- samplers

def wilson_batch(sample: DisorderSample, seed, count, max_steps=None) -> np.ndarray:
    """``count`` independent trees as a ``(count, n)`` parent array
    (root 0 has parent -1)."""
    n = sample.n
    if max_steps is None:
        max_steps = np.iinfo(np.int64).max
    indptr, indices = sample.adjacency
    parents, _, status = kernels.wilson_two_valued(
        n, indptr, indices, sample.heavy_weight, int(seed), int(count), int(max_steps))
    if status == STEP_LIMIT:
        raise RstreError(f"Wilson walk exceeded {max_steps} steps")
    return parents


def wilson_ust(sample: DisorderSample, seed, max_steps=None) -> WeightedTree:
    """Exact draw from the product-weight spanning-tree law on K_n.

    Walks step to a heavy neighbour with probability proportional to the
    heavy block's total weight, otherwise to a uniform non-neighbour found
    by rejection.  The expected time is the sum of the loop-erased walk
    lengths, which blows up when heavy components trap the walk; use
    :func:`assemble_tree` for large ``gamma``.
    """
    return WeightedTree.from_parents(wilson_batch(sample, seed, 1, max_steps)[0])


def assemble_tree(sample: DisorderSample, decomp: ComponentDecomposition, seed,
                  max_steps=None) -> WeightedTree:
    """Spanning tree from per-component trees joined through the contracted graph.

    Tree components keep their edges, other components get a uniform
    spanning tree of their heavy subgraph (Wilson, rooted at their smallest
    vertex), and components are joined by a Wilson tree of the contracted
    multigraph in which each contracted step leaves from a uniform vertex
    of its component and lands on a uniform vertex of the target.

    Conditional on every component's tree restriction being connected, the
    product-weight law factorises into exactly these pieces, so the result
    is exact up to that event (whose probability vanishes as the heavy
    weight grows).
    """
    n = sample.n
    if max_steps is None:
        max_steps = np.iinfo(np.int64).max
    edges, status = kernels.assemble_contracted(
        n, decomp.labels, decomp.sizes, decomp.offsets, decomp.members,
        decomp.indptr, decomp.indices, decomp.excess, int(seed), int(max_steps))
    if status == STEP_LIMIT:
        raise RstreError(f"tree assembly exceeded {max_steps} steps")
    return WeightedTree(n, edges)


# ---------------------------------------------------------------- contracted walk

@dataclass(frozen=True, eq=False)
class ContractedWalkTrace:
    """Path of the component-level walk.

    ``entry_vertex[i]`` is where the walk entered ``visited[i]`` and
    ``exit_vertex[i]`` where it left it (-1 for the final position).
    ``first_repeat_index`` is the 0-based index of the first revisit.
    """

    visited: np.ndarray
    entry_vertex: np.ndarray
    exit_vertex: np.ndarray
    first_repeat_index: int | None
    covered: bool

    @property
    def t_1(self) -> int | None:
        """First repeat time counted from 1."""
        return None if self.first_repeat_index is None else self.first_repeat_index + 1


def _first_repeat(seq) -> int | None:
    seen = set()
    for i, c in enumerate(seq.tolist()):
        if c in seen:
            return i
        seen.add(c)
    return None


def aldous_broder_contracted(g: ContractedGraph, decomp: ComponentDecomposition, start, seed,
                             max_steps=None):
    """Aldous-Broder on the contracted multigraph.

    Each step moves from A to B with probability ``|C_B| / n`` (staying put
    via the self-loop included).  Returns ``(tree, trace)`` where ``tree``
    is a :class:`WeightedTree` on the contracted vertices built from
    first-entrance edges.  Raises :class:`PartialCoverError` carrying the
    trace when ``max_steps`` runs out first.
    """
    k = g.num_vertices
    if not 0 <= start < k:
        raise InvalidArgumentError(f"start {start} outside [0, {k})")
    parent, _, _, trace = _contracted_walk(g.n, decomp, start, seed, max_steps)
    return WeightedTree.from_parents(parent), trace


def _contracted_walk(n, decomp, start, seed, max_steps):
    if max_steps is None:
        max_steps = default_max_steps(n)
    visited, entry, exit_, parent, t_exit, t_entry, covered = kernels.aldous_broder_contracted(
        n, decomp.labels, decomp.sizes, decomp.offsets, decomp.members,
        int(start), int(seed), int(max_steps))
    trace = ContractedWalkTrace(visited, entry, exit_, _first_repeat(visited), bool(covered))
    if not covered:
        raise PartialCoverError(
            f"walk did not cover {decomp.num_components} components in {max_steps} steps", trace)
    return parent, t_exit, t_entry, trace


def aldous_broder_tree(sample: DisorderSample, decomp: ComponentDecomposition, seed,
                       max_steps=None):
    """Full spanning tree whose inter-component edges come from the
    contracted Aldous-Broder walk.

    Inside components the edges are those of :func:`assemble_tree`; each
    component other than the start one is attached by the edge the walk
    used to enter it first.  Returns ``(tree, trace)``; the walk starts in
    the component of vertex 0.
    """
    streams = SeedStream(seed)
    n = sample.n
    inner = assemble_tree(sample, decomp, streams.child("inner")).edges[: n - decomp.num_components]
    start = decomp.component_of(0)
    parent, t_exit, t_entry, trace = _contracted_walk(
        n, decomp, start, streams.child("walk"), max_steps)
    joined = np.flatnonzero(parent >= 0)
    bridges = np.stack([t_exit[joined], t_entry[joined]], axis=1)
    return WeightedTree(n, np.concatenate([inner, bridges]).astype(np.int64)), trace


def assemble_lower_bound_path(trace: ContractedWalkTrace, decomp: ComponentDecomposition) -> int:
    """Sum of in-component distances between entry and exit points over the
    components visited before the first repeat."""
    r = trace.first_repeat_index
    if r is None:
        raise NotApplicableError("trace has no repeated component")
    total = 0
    for i in range(r):
        u, v = int(trace.entry_vertex[i]), int(trace.exit_vertex[i])
        if u != v:
            total += decomp.distance(u, v)
    return total


# ---------------------------------------------------------------- structural checks

def path_containment_violation(sample: DisorderSample, t: WeightedTree,
                               decomp: ComponentDecomposition) -> bool:
    """True iff the tree path between two vertices of one heavy component
    uses a light edge.

    A light tree edge separates two same-component vertices exactly when
    some component's vertices fail to be connected by heavy tree edges.
    Heavy tree edges lie inside components and form a forest, so that
    happens iff there are fewer than ``n - K`` of them (K = number of
    components).  With heavy weight 1 every edge counts as light.
    """
    if sample.heavy_weight == 1.0:
        return bool(np.any(decomp.sizes >= 2))
    heavy = sum(1 for a, b in t.edges.tolist() if sample.is_heavy(a, b))
    return heavy < sample.n - decomp.num_components
