"""Critical branching processes and the exploration of G(n, p) components.

The exploration reveals edges only when it needs them: the vertex being
explored gets a Binomial number of new neighbours among the unseen
vertices, and a Bernoulli(p) edge to each other active vertex, which is
where cycles come from.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import sqrt

import numpy as np

from ._backend import kernels
from .errors import InvalidArgumentError


def default_height_cap(n: int) -> int:
    return max(1, int(10 * sqrt(n)))


@dataclass(frozen=True, eq=False)
class BPRun:
    """Generation sizes ``Z_0 = 1, Z_1, ...`` up to extinction or the cap."""

    generation_sizes: np.ndarray
    capped: bool

    @property
    def height(self) -> int:
        return len(self.generation_sizes) - 1

    @property
    def total_progeny(self) -> int:
        return int(self.generation_sizes.sum())


def simulate_bp(n, height_cap, seed) -> BPRun:
    """Galton-Watson tree with Binomial(n, 1/n) offspring.

    Generation k is drawn as Binomial(n Z_{k-1}, 1/n), the sum of the
    parents' offspring counts.
    """
    if n < 1 or height_cap < 1:
        raise InvalidArgumentError("n and height_cap must be at least 1")
    gens, capped = kernels.bp_generations(int(n), int(height_cap), int(seed))
    return BPRun(gens, bool(capped))


def bp_heights(n, runs, height_cap, seed):
    """Heights and capped flags of ``runs`` independent trees."""
    if n < 1 or height_cap < 1:
        raise InvalidArgumentError("n and height_cap must be at least 1")
    return kernels.bp_heights(int(n), int(runs), int(height_cap), int(seed))


def height_tail(heights, capped, ks):
    """``{k: (P(ht > k), stderr)}`` over all runs.

    A capped run stopped at the cap with generations still alive, so it
    exceeds every k below its recorded height; asking about k at or above
    the cap of a capped run is undefined and raises.
    """
    h = np.asarray(heights)
    capped = np.asarray(capped, dtype=bool)
    floor = int(h[capped].min()) if capped.any() else None
    out = {}
    for k in ks:
        if floor is not None and k >= floor:
            raise InvalidArgumentError(f"k={k} is not below the height cap {floor}")
        p = float(np.mean(h > k))
        out[k] = (p, sqrt(p * (1 - p) / len(h)))
    return out


# ---------------------------------------------------------------- exploration

@dataclass(frozen=True, eq=False)
class ExplorationLog:
    """Trace of one exploration run.

    ``active_sizes[t]`` is the number of active vertices after step t
    (index 0 is the initial state), ``eta[t-1]`` the number of unseen
    vertices activated at step t.  ``cycle_edges_found`` counts edges found
    between the explored vertex and other active vertices, over the start
    component only.
    """

    active_sizes: np.ndarray
    eta: np.ndarray
    component_of_start: list
    cycle_edges_found: int
    steps: int
    explored_order: list


class _Unseen:
    """Unseen vertices with O(1) uniform removal and in-order scanning."""

    def __init__(self, order):
        self.items = list(order)
        self.where = {v: i for i, v in enumerate(self.items)}
        self.order = order
        self.scan = 0

    def __len__(self):
        return len(self.items)

    def remove(self, v):
        i = self.where.pop(v)
        last = self.items.pop()
        if last != v:
            self.items[i] = last
            self.where[last] = i

    def first(self):
        while self.order[self.scan] not in self.where:
            self.scan += 1
        return self.order[self.scan]


def explore_component(n, p, start, seed, full_run=False) -> ExplorationLog:
    """Breadth-by-rank exploration of G(n, p) from ``start``.

    The vertex order lists ``start`` first and the others by label.  At each
    step the first active vertex (or, with none active, the first unseen
    one) is explored: it gains an edge to each other active vertex with
    probability p and Binomial(#unseen, p) uniformly chosen unseen
    neighbours, which become active.  Without ``full_run`` the run stops
    when the start component is exhausted.
    """
    if n < 1:
        raise InvalidArgumentError("n must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError("p must lie in [0, 1]")
    if not 0 <= start < n:
        raise InvalidArgumentError(f"start {start} outside [0, {n})")
    rng = np.random.default_rng(int(seed) & ((1 << 64) - 1))
    order = [start] + [v for v in range(n) if v != start]
    rank = {v: i for i, v in enumerate(order)}
    unseen = _Unseen(order)
    unseen.remove(start)
    active = [0]  # heap of ranks
    active_sizes = [1]
    etas = []
    explored = []
    component = None
    cycles = 0
    t = 0
    while active or len(unseen):
        t += 1
        if active:
            u = order[heapq.heappop(active)]
            back = int(np.count_nonzero(rng.random(len(active)) < p)) if active else 0
        else:
            if component is None:
                component = list(explored)
                if not full_run:
                    t -= 1
                    break
            u = unseen.first()
            unseen.remove(u)
            back = 0
        if component is None:
            cycles += back
        eta = int(rng.binomial(len(unseen), p)) if len(unseen) else 0
        if eta:
            picks = rng.choice(len(unseen), size=eta, replace=False)
            chosen = [unseen.items[i] for i in picks]
            for v in chosen:
                unseen.remove(v)
                heapq.heappush(active, rank[v])
        explored.append(u)
        etas.append(eta)
        active_sizes.append(len(active))
    if component is None:
        component = list(explored)
    return ExplorationLog(
        active_sizes=np.array(active_sizes, dtype=np.int64),
        eta=np.array(etas, dtype=np.int64),
        component_of_start=sorted(component),
        cycle_edges_found=cycles,
        steps=t,
        explored_order=explored,
    )


@dataclass(frozen=True)
class SizeRow:
    j: int
    count: int
    probability: float
    stderr: float
    cycle_free_fraction: float


@dataclass(frozen=True)
class ComponentStatistics:
    n: int
    trials: int
    rows: list
    same_component: float
    same_component_stderr: float


def exploration_sample(n, trials, seed, p=None):
    """``(sizes, has_cycle, contains_second)`` for the component of the
    first vertex over independent graphs."""
    if n < 1:
        raise InvalidArgumentError("n must be at least 1")
    p = 1.0 / n if p is None else float(p)
    return kernels.exploration_trials(int(n), p, int(trials), int(seed))


def component_statistics(n, trials, j_max, seed) -> ComponentStatistics:
    """Size law and cycle-free fraction of the first vertex's component in
    G(n, 1/n) for sizes up to ``j_max``, plus how often the second vertex
    shares it.  Requires ``j_max**5 <= n``."""
    if j_max < 1 or j_max ** 5 > n:
        raise InvalidArgumentError(f"j_max must lie in [1, n^(1/5)], got {j_max} for n={n}")
    sizes, cyc, second = exploration_sample(n, trials, seed)
    rows = []
    for j in range(1, j_max + 1):
        hit = sizes == j
        count = int(hit.sum())
        prob = count / trials
        free = 1.0 - float(cyc[hit].mean()) if count else float("nan")
        rows.append(SizeRow(j, count, prob, sqrt(prob * (1 - prob) / trials), free))
    same = float(second.mean())
    return ComponentStatistics(n, trials, rows, same, sqrt(same * (1 - same) / trials))


# ---------------------------------------------------------------- domination

def domination_sample(n, trials, seed, p=None, height_cap=None):
    """``(component diameters, BP heights, capped)`` for coupled trials.

    The breadth-first exploration of the first vertex's component is
    embedded in a Binomial(n, p) branching process: each explored vertex
    has its real unseen neighbours plus Binomial(n - #unseen, p) phantom
    children, and phantoms reproduce on their own, so BFS level j never
    outgrows generation j.
    """
    if n < 2:
        raise InvalidArgumentError("n must be at least 2")
    p = 1.0 / n if p is None else float(p)
    cap = default_height_cap(n) if height_cap is None else int(height_cap)
    return kernels.domination_trials(int(n), p, int(trials), cap, int(seed))


def coupled_domination_trial(n, seed, p=None, height_cap=None):
    """``(diam C(x), 2 * ht, diam C(x) <= 2 * ht)`` for one coupled trial."""
    diam, height, _ = domination_sample(n, 1, seed, p, height_cap)
    d, h2 = int(diam[0]), 2 * int(height[0])
    return d, h2, d <= h2
