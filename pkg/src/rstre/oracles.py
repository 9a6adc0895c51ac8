"""Brute-force and closed-form ground truths on small graphs.

Everything here is slow by design and independent of the samplers: spanning
trees are enumerated outright, resistances come from linear solves, and the
bottleneck ratio from visiting every vertex subset.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, fsum

import numpy as np

from .errors import InvalidArgumentError, NoSpanningTreeError, SizeLimitError

ENUMERATION_LIMIT = 10
COMBINATION_LIMIT = 3_000_000
SUBSET_LIMIT = 16
EXACT_ARITHMETIC_LIMIT = 8
_CHUNK = 20_000


@dataclass(frozen=True, eq=False)
class SmallWeightedGraph:
    """Dense symmetric weight matrix; a zero entry means no edge."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise InvalidArgumentError("weights must be a square matrix")
        if not np.array_equal(w, w.T):
            raise InvalidArgumentError("weights must be symmetric")
        if np.any(w < 0) or np.any(np.diag(w) != 0):
            raise InvalidArgumentError("weights must be nonnegative with zero diagonal")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def m(self) -> int:
        return self.weights.shape[0]

    @classmethod
    def complete(cls, m, weight=1.0):
        w = np.full((m, m), float(weight))
        np.fill_diagonal(w, 0.0)
        return cls(w)

    @classmethod
    def from_edges(cls, m, weighted_edges):
        """``weighted_edges``: iterable of ``(u, v)`` or ``(u, v, w)``."""
        w = np.zeros((m, m))
        for e in weighted_edges:
            u, v = e[0], e[1]
            val = e[2] if len(e) > 2 else 1.0
            if u == v:
                raise InvalidArgumentError("self-loops are not allowed")
            w[u, v] = w[v, u] = val
        return cls(w)

    def edges(self) -> list[tuple[int, int]]:
        iu, ju = np.nonzero(np.triu(self.weights, 1))
        return list(zip(iu.tolist(), ju.tolist()))

    def degrees(self) -> np.ndarray:
        return self.weights.sum(axis=1)

    def is_connected(self) -> bool:
        m = self.m
        seen = np.zeros(m, dtype=bool)
        seen[0] = True
        stack = [0]
        while stack:
            u = stack.pop()
            for v in np.flatnonzero(self.weights[u] > 0):
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        return bool(seen.all())

    def laplacian(self) -> np.ndarray:
        return np.diag(self.degrees()) - self.weights


@dataclass(frozen=True)
class TreeEnumeration:
    trees: list  # [(frozenset of (u, v) with u < v, weight product)]
    partition_function: float

    def __len__(self):
        return len(self.trees)


def _tree_mask(edge_arr, m, combos):
    """Which rows of ``combos`` (indices into ``edge_arr``) are spanning
    trees: the reduced signed incidence matrix has determinant +-1 exactly
    for trees and 0 otherwise."""
    t = len(combos)
    inc = np.zeros((t, m, m - 1))
    rows = np.arange(t)[:, None]
    cols = np.arange(m - 1)[None, :]
    u = edge_arr[combos, 0]
    v = edge_arr[combos, 1]
    inc[rows, u, cols] = 1.0
    inc[rows, v, cols] = -1.0
    det = np.linalg.det(inc[:, 1:, :])
    return np.abs(det) > 0.5


def _spanning_tree_combos(g: SmallWeightedGraph):
    m = g.m
    if m > ENUMERATION_LIMIT:
        raise SizeLimitError(f"enumeration supports at most {ENUMERATION_LIMIT} vertices")
    edges = g.edges()
    if m == 1:
        return np.zeros((0, 2), np.int64), np.zeros((1, 0), np.int64)
    if not g.is_connected():
        raise NoSpanningTreeError("graph is disconnected")
    total = comb(len(edges), m - 1)
    if total > COMBINATION_LIMIT:
        raise SizeLimitError(f"{total} edge subsets exceed the enumeration limit")
    edge_arr = np.array(edges, dtype=np.int64)
    it = combinations(range(len(edges)), m - 1)
    found = []
    while True:
        chunk = np.array(list(_take(it, _CHUNK)), dtype=np.int64).reshape(-1, m - 1)
        if not len(chunk):
            break
        found.append(chunk[_tree_mask(edge_arr, m, chunk)])
    return edge_arr, np.concatenate(found)


def _take(it, k):
    for _, x in zip(range(k), it):
        yield x


def spanning_tree_edge_arrays(g: SmallWeightedGraph) -> np.ndarray:
    """All spanning trees as an array of shape (count, m - 1, 2)."""
    edge_arr, combos = _spanning_tree_combos(g)
    return edge_arr[combos] if len(edge_arr) else np.zeros((1, 0, 2), np.int64)


def enumerate_spanning_trees(g: SmallWeightedGraph) -> TreeEnumeration:
    """Every spanning tree with its weight product, and their sum Z."""
    trees = spanning_tree_edge_arrays(g)
    out = []
    for t in trees:
        pairs = frozenset((int(a), int(b)) for a, b in t)
        weight = float(np.prod([g.weights[a, b] for a, b in pairs])) if pairs else 1.0
        out.append((pairs, weight))
    return TreeEnumeration(out, fsum(w for _, w in out))


def _fraction_det(mat) -> Fraction:
    a = [[Fraction(x) for x in row] for row in mat]
    k = len(a)
    det = Fraction(1)
    for c in range(k):
        piv = next((r for r in range(c, k) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, k):
            f = a[r][c] / a[c][c]
            if f:
                for j in range(c, k):
                    a[r][j] -= f * a[c][j]
    return det


def matrix_tree_determinant(g: SmallWeightedGraph, exact=None):
    """Z as the determinant of the weighted Laplacian with row and column 0
    removed.  Exact rational arithmetic by default up to 8 vertices."""
    if exact is None:
        exact = g.m <= EXACT_ARITHMETIC_LIMIT
    reduced = g.laplacian()[1:, 1:]
    if g.m == 1:
        return Fraction(1) if exact else 1.0
    if exact:
        return _fraction_det(reduced.tolist())
    return float(np.linalg.det(reduced))


def _fraction_solve(mat, rhs):
    k = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(mat, rhs)]
    for c in range(k):
        piv = next(r for r in range(c, k) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        for r in range(k):
            if r != c and a[r][c] != 0:
                f = a[r][c] / a[c][c]
                for j in range(c, k + 1):
                    a[r][j] -= f * a[c][j]
    return [a[r][k] / a[r][r] for r in range(k)]


def effective_resistance(g: SmallWeightedGraph, u, v, exact=False):
    """Resistance between u and v with conductances w(e), from the
    Laplacian grounded at v."""
    if u == v:
        raise InvalidArgumentError("effective resistance needs u != v")
    if not g.is_connected():
        raise NoSpanningTreeError("graph is disconnected")
    keep = [i for i in range(g.m) if i != v]
    reduced = g.laplacian()[np.ix_(keep, keep)]
    rhs = np.zeros(len(keep))
    iu = keep.index(u)
    rhs[iu] = 1.0
    if exact:
        return _fraction_solve(reduced.tolist(), rhs.tolist())[iu]
    return float(np.linalg.solve(reduced, rhs)[iu])


def edge_inclusion_pair(g: SmallWeightedGraph, e):
    """P(e in T) by enumeration and by ``w(e) R_eff``."""
    u, v = e
    if u == v or g.weights[u, v] <= 0:
        raise InvalidArgumentError(f"{e} is not an edge")
    enum = enumerate_spanning_trees(g)
    key = (min(u, v), max(u, v))
    by_enum = fsum(w for t, w in enum.trees if key in t) / enum.partition_function
    by_resistance = g.weights[u, v] * effective_resistance(g, u, v)
    return by_enum, by_resistance


def ust_edge_probability(g: SmallWeightedGraph, e, tol=1e-10) -> float:
    by_enum, by_resistance = edge_inclusion_pair(g, e)
    if abs(by_enum - by_resistance) >= tol:
        raise AssertionError(f"enumeration {by_enum!r} and w*R_eff {by_resistance!r} disagree")
    return by_enum


def km_distance_tail(m, L, exact=False):
    """P(d_T(u, v) >= L) for fixed u != v in a uniform spanning tree of K_m."""
    if m < 2:
        raise InvalidArgumentError("m must be at least 2")
    if L < 1:
        raise InvalidArgumentError("L must be at least 1")
    if L > m - 1:
        return Fraction(0) if exact else 0.0
    out = Fraction(1)
    for k in range(1, L):
        out *= Fraction(m - k - 1, m)
    return out if exact else float(out)


def laplacian_walk_samples(m, count, seed) -> np.ndarray:
    """Tree-path lengths between two vertices of K_m: after reaching length
    L the path continues with probability ``(m - L - 1) / m``."""
    if m < 2:
        raise InvalidArgumentError("m must be at least 2")
    rng = np.random.default_rng(int(seed) & ((1 << 64) - 1))
    lengths = np.ones(count, dtype=np.int64)
    alive = np.ones(count, dtype=bool)
    for length in range(1, m - 1):
        go = rng.random(count) < (m - length - 1) / m
        alive &= go
        lengths += alive
        if not alive.any():
            break
    return lengths


def laplacian_walk_sample(m, seed) -> int:
    return int(laplacian_walk_samples(m, 1, seed)[0])


def _subset_masks(m):
    """Subsets containing vertex 0, one row per subset."""
    codes = np.arange(1 << (m - 1), dtype=np.int64)
    bits = (codes[:, None] >> np.arange(m - 1)) & 1
    return np.concatenate([np.ones((len(codes), 1), dtype=bool), bits.astype(bool)], axis=1)


def bottleneck_ratio_exact(g: SmallWeightedGraph) -> float:
    """min over nonempty S with pi(S) <= 1/2 of
    ``w(S, S^c) / (2 (w(S, S^c) + w(S, S)))``."""
    m = g.m
    if m > SUBSET_LIMIT:
        raise SizeLimitError(f"subset enumeration supports at most {SUBSET_LIMIT} vertices")
    if m < 2:
        raise InvalidArgumentError("need at least 2 vertices")
    w = g.weights
    deg = w.sum(axis=1)
    total = deg.sum()
    masks = _subset_masks(m)
    best = np.inf
    for side in (masks, ~masks[:-1]):  # the last row is all of V
        x = side.astype(np.float64)
        vol = x @ deg
        inner = np.einsum("si,ij,sj->s", x, w, x) / 2.0
        boundary = vol - 2.0 * inner
        ok = vol <= total / 2.0
        if ok.any():
            best = min(best, float(np.min(boundary[ok] / (2.0 * (boundary[ok] + inner[ok])))))
    return best


def balanced_ratio(g: SmallWeightedGraph) -> float:
    """Largest over smallest weighted degree."""
    if g.m < 2:
        raise InvalidArgumentError("need at least 2 vertices")
    deg = g.degrees()
    return float(deg.max() / deg.min())


# ---------------------------------------------------------------- structural checks

def _graph_diameter(adj: np.ndarray) -> np.ndarray:
    """Hop diameters of a batch of graphs given as boolean (b, m, m)."""
    b, m, _ = adj.shape
    big = m + 1
    dist = np.where(adj, 1, big).astype(np.int64)
    idx = np.arange(m)
    dist[:, idx, idx] = 0
    for _ in range(m):
        step = np.min(dist[:, :, :, None] + dist[:, None, :, :], axis=2)
        if np.array_equal(step, dist):
            break
        dist = step
    return dist.reshape(b, -1).max(axis=1)


def excess_diameter_violations(graph_edges, m) -> int:
    """Spanning trees T of the connected graph H violating
    ``diam(T) <= 2 (k + 2) diam(H) + k + 1`` with ``k = |E(H)| - |V(H)|``."""
    g = SmallWeightedGraph.from_edges(m, graph_edges)
    k = len(graph_edges) - m
    adj_h = g.weights[None] > 0
    diam_h = int(_graph_diameter(adj_h)[0])
    trees = spanning_tree_edge_arrays(g)
    bound = 2 * (k + 2) * diam_h + k + 1
    bad = 0
    for lo in range(0, len(trees), _CHUNK):
        chunk = trees[lo:lo + _CHUNK]
        adj = np.zeros((len(chunk), m, m), dtype=bool)
        r = np.arange(len(chunk))[:, None]
        adj[r, chunk[:, :, 0], chunk[:, :, 1]] = True
        adj[r, chunk[:, :, 1], chunk[:, :, 0]] = True
        bad += int(np.sum(_graph_diameter(adj) > bound))
    return bad


def connected_atlas_graphs(max_nodes=7):
    """(m, edge list) for every connected graph on 2..max_nodes vertices up
    to isomorphism."""
    import networkx as nx
    from networkx.generators.atlas import graph_atlas_g

    for h in graph_atlas_g():
        m = h.number_of_nodes()
        if 2 <= m <= max_nodes and nx.is_connected(h):
            yield m, [tuple(e) for e in h.edges()]


def random_connected_graph(m, rng, density=0.6, low=0.1, high=10.0) -> SmallWeightedGraph:
    """Random spanning tree plus random extra edges, weights log-uniform in
    ``[low, high]``."""
    order = rng.permutation(m)
    w = np.zeros((m, m))

    def draw():
        return float(np.exp(rng.uniform(np.log(low), np.log(high))))

    for i in range(1, m):
        a, b = order[i], order[rng.integers(0, i)]
        w[a, b] = w[b, a] = draw()
    for a in range(m):
        for b in range(a + 1, m):
            if w[a, b] == 0 and rng.random() < density:
                w[a, b] = w[b, a] = draw()
    return SmallWeightedGraph(w)
