"""Two-point edge disorder on K_n and the Erdős–Rényi graph of heavy edges.

Vertices are ``0 .. n-1``.  An edge is *heavy* (weight ``n**(1 + gamma)``)
independently with probability ``1/n`` and has weight 1 otherwise.  Only the
heavy edges are stored; the light ones are implicit.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ._backend import kernels
from .errors import InvalidArgumentError

DEFAULT_DIAMETER_CAP = 4096


def _csr_from_edges(n, edges):
    """Symmetric adjacency in CSR form with sorted neighbour lists."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    rows = np.concatenate([edges[:, 0], edges[:, 1]])
    cols = np.concatenate([edges[:, 1], edges[:, 0]])
    order = np.lexsort((cols, rows))
    indices = np.ascontiguousarray(cols[order])
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
    return indptr, indices


def _canonical_edges(n, edges):
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if edges.size and (edges.min() < 0 or edges.max() >= n):
        raise InvalidArgumentError(f"edge endpoint outside [0, {n})")
    if np.any(edges[:, 0] == edges[:, 1]):
        raise InvalidArgumentError("self-loops are not edges of K_n")
    lo = np.minimum(edges[:, 0], edges[:, 1])
    hi = np.maximum(edges[:, 0], edges[:, 1])
    keys = lo * n + hi
    uniq = np.unique(keys)
    if len(uniq) != len(keys):
        raise InvalidArgumentError("duplicate edge")
    out = np.stack([uniq // n, uniq % n], axis=1) if n else np.zeros((0, 2), np.int64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class DisorderSample:
    """A realisation of the weights on K_n, stored as its heavy-edge set.

    ``heavy_edges`` is an ``(m, 2)`` array of pairs ``u < v`` in
    lexicographic order.
    """

    n: int
    gamma: float
    heavy_edges: np.ndarray
    master_seed: int | None = None
    weight_override: float | None = None

    @classmethod
    def from_edges(cls, n, edges, gamma=5.0, master_seed=None, heavy_weight=None):
        """Build from an explicit edge list.  ``heavy_weight`` replaces
        ``n**(1 + gamma)`` when given (small exact fixtures)."""
        if n < 1:
            raise InvalidArgumentError("n must be at least 1")
        if heavy_weight is not None and heavy_weight <= 0:
            raise InvalidArgumentError("heavy weight must be positive")
        return cls(int(n), float(gamma), _canonical_edges(n, edges), master_seed,
                   None if heavy_weight is None else float(heavy_weight))

    @property
    def heavy_weight(self) -> float:
        if self.weight_override is not None:
            return self.weight_override
        return float(self.n) ** (1.0 + self.gamma)

    @property
    def num_heavy(self) -> int:
        return len(self.heavy_edges)

    @cached_property
    def adjacency(self):
        """``(indptr, indices)`` of the heavy graph."""
        return _csr_from_edges(self.n, self.heavy_edges)

    def is_heavy(self, u, v) -> bool:
        if u == v:
            return False
        indptr, indices = self.adjacency
        lo, hi = indptr[u], indptr[u + 1]
        pos = lo + np.searchsorted(indices[lo:hi], v)
        return bool(pos < hi and indices[pos] == v)

    def weight(self, u, v) -> float:
        if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
            raise InvalidArgumentError(f"({u}, {v}) is not an edge of K_{self.n}")
        return self.heavy_weight if self.is_heavy(u, v) else 1.0

    def dense_weights(self) -> np.ndarray:
        """Full weight matrix; only for small n."""
        w = np.ones((self.n, self.n))
        np.fill_diagonal(w, 0.0)
        if self.num_heavy:
            a, b = self.heavy_edges[:, 0], self.heavy_edges[:, 1]
            w[a, b] = w[b, a] = self.heavy_weight
        return w


def sample_disorder(n, gamma, seed, edge_probability=None) -> DisorderSample:
    """Draw the heavy-edge set: each of the C(n, 2) pairs independently with
    probability ``1/n`` (or ``edge_probability``).

    The count is Binomial(C(n,2), p); that many distinct pairs are then drawn
    uniformly, rejecting duplicates, so the cost is linear in the number of
    heavy edges rather than in n**2.
    """
    if n < 1:
        raise InvalidArgumentError("n must be at least 1")
    n = int(n)
    p = 1.0 / n if edge_probability is None else float(edge_probability)
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError("edge probability must lie in [0, 1]")
    rng = np.random.default_rng(int(seed) & ((1 << 64) - 1))
    pairs = comb(n, 2)
    m = int(rng.binomial(pairs, p)) if pairs else 0
    keys = np.zeros(0, dtype=np.int64)
    while len(keys) < m:
        need = m - len(keys)
        i = rng.integers(0, n, size=need)
        j = rng.integers(0, n - 1, size=need)
        j += j >= i
        keys = np.union1d(keys, np.minimum(i, j) * n + np.maximum(i, j))
    edges = np.stack([keys // n, keys % n], axis=1).astype(np.int64)
    edges.setflags(write=False)
    return DisorderSample(n, float(gamma), edges, int(seed))


@dataclass(frozen=True, eq=False)
class ComponentDecomposition:
    """Components of the heavy graph, largest first.

    Equal sizes are ordered by their smallest vertex.  ``members`` lists the
    vertices component by component (ascending inside each), delimited by
    ``offsets``.  ``diameters`` is None when they were not requested.
    """

    n: int
    labels: np.ndarray
    sizes: np.ndarray
    offsets: np.ndarray
    members: np.ndarray
    excess: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    diameters: np.ndarray | None = None
    diameter_exact: np.ndarray | None = None

    @property
    def num_components(self) -> int:
        return len(self.sizes)

    def component(self, i) -> np.ndarray:
        return self.members[self.offsets[i]:self.offsets[i + 1]]

    @property
    def components(self) -> list[np.ndarray]:
        return [self.component(i) for i in range(self.num_components)]

    def component_of(self, v) -> int:
        return int(self.labels[v])

    def is_tree(self, i) -> bool:
        return bool(self.excess[i] == -1)

    def distances_from(self, v) -> np.ndarray:
        """BFS distances inside the heavy graph (-1 outside v's component)."""
        return kernels.bfs_distances(self.indptr, self.indices, int(v))

    def distance(self, u, v) -> int:
        if self.labels[u] != self.labels[v]:
            raise InvalidArgumentError(f"{u} and {v} lie in different components")
        return int(self.distances_from(u)[v])


def _order_components(n, raw, count):
    sizes = np.bincount(raw, minlength=count)
    _, first = np.unique(raw, return_index=True)
    order = np.lexsort((first, -sizes))
    rank = np.empty(count, dtype=np.int64)
    rank[order] = np.arange(count)
    return rank[raw], sizes[order]


def decompose_graph(n, edges, *, compute_diameters=True, diameter_cap=DEFAULT_DIAMETER_CAP,
                    adjacency=None) -> ComponentDecomposition:
    """Component decomposition of the simple graph ``([n], edges)``."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    indptr, indices = adjacency if adjacency is not None else _csr_from_edges(n, edges)
    graph = csr_matrix((np.ones(len(indices), dtype=np.int8), indices, indptr), shape=(n, n))
    count, raw = connected_components(graph, directed=False)
    labels, sizes = _order_components(n, raw.astype(np.int64), count)
    members = np.argsort(labels, kind="stable").astype(np.int64)
    offsets = np.zeros(count + 1, dtype=np.int64)
    np.cumsum(sizes, out=offsets[1:])
    edge_count = np.bincount(labels[edges[:, 0]], minlength=count) if len(edges) else np.zeros(count, np.int64)
    excess = (edge_count - sizes).astype(np.int64)
    diameters = exact = None
    if compute_diameters:
        diameters, exact = kernels.component_diameters(
            indptr, indices, offsets, members, excess, int(diameter_cap))
    for arr in (labels, sizes, offsets, members, excess):
        arr.setflags(write=False)
    return ComponentDecomposition(
        n=n, labels=labels, sizes=sizes.astype(np.int64), offsets=offsets, members=members,
        excess=excess, indptr=indptr, indices=indices,
        diameters=diameters, diameter_exact=exact,
    )


def decompose(sample: DisorderSample, *, compute_diameters=True,
              diameter_cap=DEFAULT_DIAMETER_CAP) -> ComponentDecomposition:
    """Components of the heavy graph of ``sample`` with sizes, excesses and
    (optionally) diameters.

    Diameters are exact for trees (double BFS) and for cyclic components of
    at most ``diameter_cap`` vertices (BFS from every vertex); larger cyclic
    components get the double-BFS lower bound with ``diameter_exact`` False.
    """
    return decompose_graph(sample.n, sample.heavy_edges, compute_diameters=compute_diameters,
                           diameter_cap=diameter_cap, adjacency=sample.adjacency)


@dataclass(frozen=True)
class ContractedGraph:
    """Components collapsed to single vertices.

    Between components A != B the weight is ``|C_A| |C_B|`` (one unit edge
    per vertex pair); all self-loops at A are merged into one loop of
    weight ``|C_A|**2``.
    """

    sizes: tuple
    n: int

    @property
    def num_vertices(self) -> int:
        return len(self.sizes)

    def weight(self, a, b) -> int:
        return self.sizes[a] * self.sizes[b]

    def total_weight(self, a) -> int:
        return self.sizes[a] * self.n

    def transition_probability(self, a, b) -> float:
        return self.weight(a, b) / self.total_weight(a)


def contract(decomp: ComponentDecomposition) -> ContractedGraph:
    return ContractedGraph(tuple(int(s) for s in decomp.sizes), decomp.n)


def union_top_k(decomp: ComponentDecomposition, k: int):
    """Vertices of the ``k`` largest components and their count."""
    if not 1 <= k <= decomp.num_components:
        raise InvalidArgumentError(f"k must lie in [1, {decomp.num_components}], got {k}")
    vertices = np.sort(decomp.members[:decomp.offsets[k]])
    return vertices, int(decomp.offsets[k])


def path_fixture(sizes, gamma=5.0) -> DisorderSample:
    """Heavy graph made of disjoint paths with the given vertex counts,
    laid out on consecutive labels.  Useful as a fixed decomposition."""
    sizes = [int(s) for s in sizes]
    if not sizes or min(sizes) < 1:
        raise InvalidArgumentError("sizes must be positive")
    edges, start = [], 0
    for s in sizes:
        edges.extend((v, v + 1) for v in range(start, start + s - 1))
        start += s
    return DisorderSample.from_edges(start, edges, gamma)
