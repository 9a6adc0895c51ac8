"""Named verification suites: each check pits an implementation against an
independent oracle (enumeration, closed form or exact recursion) and
reports the measured value next to its threshold.

``budget`` scales every Monte Carlo sample count; values below 1 run a
reduced version that is flagged in the report.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, exp, log, sqrt

import numpy as np

from .branching import bp_heights, component_statistics, domination_sample, height_tail
from .disorder import DisorderSample, decompose, path_fixture, sample_disorder, union_top_k
from .experiments import (
    ExperimentConfig,
    estimate_exponent,
    large_gamma_scale,
    median_ratio_spread,
    run_diameter_sweep,
    small_gamma_scale,
)
from .oracles import (
    SmallWeightedGraph,
    balanced_ratio,
    bottleneck_ratio_exact,
    connected_atlas_graphs,
    edge_inclusion_pair,
    enumerate_spanning_trees,
    excess_diameter_violations,
    km_distance_tail,
    laplacian_walk_samples,
    matrix_tree_determinant,
    random_connected_graph,
    ust_edge_probability,
)
from .sampling import first_repeat_times, no_repeat_prob_exact, repeat_envelope, repeat_probe
from .seeds import SeedStream
from .spanning import (
    aldous_broder_contracted,
    aldous_broder_tree,
    assemble_lower_bound_path,
    assemble_tree,
    is_spanning_tree,
    path_containment_violation,
    wilson_batch,
)
from .disorder import contract

# Constants the theory leaves unspecified, calibrated once by desk runs and
# frozen here (see the project notes for the calibration values).
SIZE_LAW_CONSTANT = 0.3          # j^{3/2} P(|C(1)| = j) observed ~0.38-0.41
SAME_COMPONENT_CONSTANT = 0.5    # n^{1/3} P(C(1) = C(2)) observed <= 0.17
BP_TAIL_CONSTANT = 3.0           # k P(ht > k) observed ~1.5-1.9
KM_MEAN_CONSTANT = 0.7           # E d / sqrt(m): 1.13 at m = 100, 0.707 at m = 2
COMPONENT_SIZE_FACTOR = 10.0     # |C_1| / n^{2/3} quantiles within [1/A, A]
COMPONENT_DIAMETER_FACTOR = 10.0
MAX_EXCESS_MEDIAN = 5
BP_HEIGHT_CAP = 2000

SUITES = ("oracles", "lemmas", "scaling")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: object
    threshold: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: measured={_fmt(self.measured)} threshold={self.threshold} ({self.seconds:.1f}s)"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt(x)}" for k, x in v.items()) + "}"
    return str(v)


def _scaled(full, budget, minimum=1):
    return max(minimum, int(round(full * budget)))


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        res = fn(*args, **kwargs)
        return CheckResult(res.name, bool(res.passed), res.measured, res.threshold,
                           time.perf_counter() - start)
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _ecdf_tail(values, ls):
    values = np.asarray(values)
    return np.array([np.mean(values >= L) for L in ls])


# ---------------------------------------------------------------- exact fixtures

def _k3_weighted():
    return SmallWeightedGraph.from_edges(3, [(0, 1, 2.0), (1, 2, 1.0), (0, 2, 1.0)])


@_timed
def check_kirchhoff_k3(seed=0, budget=1.0):
    """Unit K_3: every edge is in 2 of the 3 trees."""
    g = SmallWeightedGraph.complete(3)
    by_enum, by_res = edge_inclusion_pair(g, (0, 1))
    ok = abs(by_enum - 2 / 3) < 1e-12 and abs(by_res - 2 / 3) < 1e-12
    return CheckResult("kirchhoff_k3", ok, [by_enum, by_res], "both == 2/3")


@_timed
def check_weighted_k3(seed=0, budget=1.0):
    """K_3 with weights (2, 1, 1): Z = 5, heavy edge kept with probability 4/5."""
    g = _k3_weighted()
    z = enumerate_spanning_trees(g).partition_function
    p = ust_edge_probability(g, (0, 1))
    det = matrix_tree_determinant(g)
    ok = z == 5.0 and det == 5 and abs(p - 0.8) < 1e-12
    return CheckResult("weighted_k3", ok, [z, float(det), p], "Z = det = 5, P = 4/5")


def _random_graphs(seed, count, max_m):
    rng = np.random.default_rng(SeedStream(seed).child("random-graphs"))
    return [random_connected_graph(int(rng.integers(2, max_m + 1)), rng) for _ in range(count)]


@_timed
def check_matrix_tree(seed=0, budget=1.0):
    """Enumerated Z equals the exact Laplacian cofactor on m <= 8."""
    worst = 0.0
    for g in _random_graphs(seed, 20, 8):
        z = enumerate_spanning_trees(g).partition_function
        det = float(matrix_tree_determinant(g, exact=True))
        worst = max(worst, abs(z - det) / det)
    return CheckResult("matrix_tree", worst < 1e-10, worst, "relative error < 1e-10")


@_timed
def check_kirchhoff_random(seed=0, budget=1.0):
    """|enumeration - w(e) R_eff| < 1e-10 on every edge of 50 random graphs,
    and the inclusion probabilities sum to m - 1."""
    worst = worst_sum = 0.0
    for g in _random_graphs(seed, 50, 7):
        total = 0.0
        for e in g.edges():
            by_enum, by_res = edge_inclusion_pair(g, e)
            worst = max(worst, abs(by_enum - by_res))
            total += by_enum
        worst_sum = max(worst_sum, abs(total - (g.m - 1)))
    ok = worst < 1e-10 and worst_sum < 1e-9
    return CheckResult("kirchhoff_random", ok, [worst, worst_sum],
                       "|enum - wR| < 1e-10, |sum - (m-1)| < 1e-9")


@_timed
def check_bottleneck_fixtures(seed=0, budget=1.0):
    k4 = bottleneck_ratio_exact(SmallWeightedGraph.complete(4))
    k2 = bottleneck_ratio_exact(SmallWeightedGraph.complete(2))
    bal = balanced_ratio(SmallWeightedGraph.complete(5))
    k3 = balanced_ratio(SmallWeightedGraph.from_edges(3, [(0, 1, 5.0), (1, 2), (0, 2)]))
    ok = abs(k4 - 0.4) < 1e-15 and k2 == 0.5 and bal == 1.0 and k3 == 3.0
    return CheckResult("bottleneck_fixtures", ok, [k4, k2, bal, k3], "0.4, 0.5, 1, 3 exactly")


@_timed
def check_bottleneck_bound(seed=0, budget=1.0):
    """Phi >= 1 / (6 (2/3 + B n^gamma)) with B = 2 for K_n carrying one
    heavy edge (excess -1, so max(excess, 2) = 2)."""
    worst = np.inf
    for n in (4, 6, 8, 12):
        for gamma in (-1.0, -0.5, 0.0, 1.0, 2.0):
            w = np.ones((n, n))
            np.fill_diagonal(w, 0.0)
            w[0, 1] = w[1, 0] = float(n) ** (1 + gamma)
            phi = bottleneck_ratio_exact(SmallWeightedGraph(w))
            worst = min(worst, phi * 6 * (2 / 3 + 2 * float(n) ** gamma))
    return CheckResult("bottleneck_bound", worst >= 1.0, worst, "min Phi / bound >= 1")


@_timed
def check_km_tail_exact(seed=0, budget=1.0):
    """The closed form against tree enumeration on K_3..K_6, plus that it
    is a distribution on {1, .., m-1}."""
    worst = 0.0
    for m in range(3, 7):
        trees = enumerate_spanning_trees(SmallWeightedGraph.complete(m)).trees
        dist = []
        for edges, _ in trees:
            adj = {v: [] for v in range(m)}
            for a, b in edges:
                adj[a].append(b)
                adj[b].append(a)
            depth, stack = {0: 0}, [0]
            while stack:
                u = stack.pop()
                for v in adj[u]:
                    if v not in depth:
                        depth[v] = depth[u] + 1
                        stack.append(v)
            dist.append(depth[1])
        for L in range(1, m + 1):
            exact = Fraction(sum(d >= L for d in dist), len(dist))
            if exact != km_distance_tail(m, L, exact=True):
                worst = max(worst, abs(float(exact) - km_distance_tail(m, L)))
                worst = max(worst, 1.0)
    mass_ok = all(
        sum(km_distance_tail(m, L, exact=True) - km_distance_tail(m, L + 1, exact=True)
            for L in range(1, m)) == 1
        for m in range(2, 30))
    monotone = all(km_distance_tail(m, L) >= km_distance_tail(m, L + 1)
                   for m in range(2, 30) for L in range(1, m))
    ok = worst == 0.0 and mass_ok and monotone and km_distance_tail(3, 2, exact=True) == Fraction(1, 3)
    return CheckResult("km_tail_exact", ok, worst, "exact match, mass 1, non-increasing")


@_timed
def check_no_repeat_exact(seed=0, budget=1.0):
    """k! e_k(p) against direct sums: (1/2, 1/4, 1/4) at k = 2 and the
    365-day birthday product at k = 23."""
    a = no_repeat_prob_exact([2, 1, 1], 2, exact=True)
    b = no_repeat_prob_exact([1] * 365, 23)
    birthday = float(np.prod([1 - j / 365 for j in range(23)]))
    ok = a == Fraction(5, 8) and abs(b - birthday) < 1e-12 and abs(b - 0.4927) < 5e-5
    return CheckResult("no_repeat_exact", ok, [float(a), b], "5/8 and birthday product ~0.4927")


# ---------------------------------------------------------------- sampler laws

def _tree_key(n, parents_row):
    return frozenset((min(c, int(p)), max(c, int(p))) for c, p in enumerate(parents_row) if p >= 0)


@_timed
def check_ust_law(seed=0, budget=1.0, samples=100_000):
    """Wilson frequencies on K_4 with one edge of weight 9 against the
    enumerated law."""
    samples = _scaled(samples, budget, 1000)
    sample = DisorderSample.from_edges(4, [(0, 1)], heavy_weight=9.0)
    law = {t: w for t, w in enumerate_spanning_trees(SmallWeightedGraph(sample.dense_weights())).trees}
    z = sum(law.values())
    parents = wilson_batch(sample, SeedStream(seed).child("ust-law"), samples)
    counts = {}
    for row in parents.tolist():
        key = _tree_key(4, row)
        counts[key] = counts.get(key, 0) + 1
    valid = set(counts) <= set(law)
    dev = max(abs(counts.get(t, 0) / samples - w / z) for t, w in law.items())
    return CheckResult("ust_law_k4", valid and dev < 0.01, dev, "max |freq - P| < 0.01")


def _depths(parents, target):
    """Distance from ``target`` to the root 0 in each parent row."""
    rows = np.arange(len(parents))
    cur = np.full(len(parents), target)
    depth = np.zeros(len(parents), dtype=np.int64)
    while True:
        alive = cur != 0
        if not alive.any():
            return depth
        depth += alive
        cur = np.where(alive, parents[rows, cur], 0)


@_timed
def check_km_law_wilson(seed=0, budget=1.0, samples=100_000, m=8):
    """Distance between two fixed vertices of a uniform tree of K_m."""
    samples = _scaled(samples, budget, 1000)
    sample = DisorderSample.from_edges(m, [], gamma=-1.0)
    parents = wilson_batch(sample, SeedStream(seed).child("km-law"), samples)
    ls = range(1, m + 1)
    emp = _ecdf_tail(_depths(parents, 1), ls)
    exact = np.array([km_distance_tail(m, L) for L in ls])
    dev = float(np.max(np.abs(emp - exact)))
    return CheckResult(f"km_law_wilson_m{m}", dev < 0.01, dev, "max tail deviation < 0.01")


@_timed
def check_km_law_walk(seed=0, budget=1.0, samples=100_000):
    samples = _scaled(samples, budget, 1000)
    devs = {}
    for m in (3, 8):
        x = laplacian_walk_samples(m, samples, SeedStream(seed).child("km-walk", m))
        ls = range(1, m + 1)
        emp = _ecdf_tail(x, ls)
        devs[m] = float(np.max(np.abs(emp - [km_distance_tail(m, L) for L in ls])))
        if m == 3:
            devs["P3(d>=2)"] = float(emp[1])
    ok = max(devs[3], devs[8]) < 0.01 and abs(devs["P3(d>=2)"] - 1 / 3) < 0.01
    return CheckResult("km_law_walk", ok, devs, "max tail deviation < 0.01 at m = 3, 8; P3(d>=2) ~ 1/3")


@_timed
def check_km_mean(seed=0, budget=1.0, samples=100_000):
    """E[d] >= C sqrt(m): exact sums for m = 2..1000 and a Monte Carlo mean
    at m = 100 (lower 3-sigma bound)."""
    ratios = [sum(km_distance_tail(m, L) for L in range(1, m)) / sqrt(m) for m in (2, 8, 32, 100, 400, 1000)]
    x = laplacian_walk_samples(100, _scaled(samples, budget, 1000), SeedStream(seed).child("km-mean"))
    mc = (x.mean() - 3 * x.std() / sqrt(len(x))) / 10.0
    ok = min(ratios) >= KM_MEAN_CONSTANT and mc >= KM_MEAN_CONSTANT
    return CheckResult("km_mean", ok, [min(ratios), mc], f">= {KM_MEAN_CONSTANT}")


def _fixed_size_lists(seed, count=20):
    rng = np.random.default_rng(SeedStream(seed).child("repeat-fixtures"))
    return [rng.integers(1, 21, size=int(rng.integers(2, 31))).tolist() for _ in range(count)]


@_timed
def check_repeat_oracle(seed=0, budget=1.0, streams=100_000):
    """Empirical P(t_1 > k) for k <= 10 on 20 fixed decompositions, and the
    birthday fixture at k = 23, within 3 standard errors."""
    streams = _scaled(streams, budget, 1000)
    worst = 0.0
    fixtures = _fixed_size_lists(seed) + [[1] * 365]
    for i, sizes in enumerate(fixtures):
        decomp = decompose(path_fixture(sizes), compute_diameters=False)
        t1 = first_repeat_times(decomp, streams, SeedStream(seed).child("repeat-oracle", i))
        ks = [23] if len(sizes) == 365 else range(1, 11)
        for k in ks:
            exact = no_repeat_prob_exact(sizes, k)
            emp = float(np.mean(t1 > k))
            se = sqrt(max(exact * (1 - exact), 1e-300) / streams)
            z = abs(emp - exact) / se if exact * (1 - exact) > 0 else (0.0 if emp == exact else np.inf)
            worst = max(worst, z)
    return CheckResult("repeat_oracle", worst <= 3.0, worst, "max |z| <= 3")


@_timed
def check_contracted_step_law(seed=0, budget=1.0, steps=100_000):
    """One-step frequencies of the contracted walk against |C_B| / n."""
    sample = path_fixture([5, 3, 3, 2, 1, 1])
    decomp = decompose(sample, compute_diameters=False)
    g = contract(decomp)
    steps = _scaled(steps, budget, 1000)
    counts = np.zeros(g.num_vertices)
    for rep in range(8):
        # the walk stops at cover, so gather steps from several runs
        while counts.sum() < steps * (rep + 1) / 8:
            _, trace = aldous_broder_contracted(g, decomp, 0, SeedStream(seed).child("step", int(counts.sum())),
                                                max_steps=steps)
            nxt = trace.visited[1:]
            counts += np.bincount(nxt, minlength=g.num_vertices)
            break
    total = counts.sum()
    probs = decomp.sizes / decomp.n
    z = np.abs(counts / total - probs) / np.sqrt(probs * (1 - probs) / total)
    return CheckResult("contracted_step_law", float(z.max()) <= 3.0, float(z.max()), "max |z| <= 3")


@_timed
def check_walk_stream_coupling(seed=0, budget=1.0, runs=20_000):
    """Component sequence of the contracted walk vs independent size-biased
    draws: per-position marginals for the first 5 steps."""
    sample = path_fixture([6, 4, 3, 2, 2, 1, 1, 1])
    decomp = decompose(sample, compute_diameters=False)
    g = contract(decomp)
    runs = _scaled(runs, budget, 500)
    pos = 5
    counts = np.zeros((pos, g.num_vertices))
    streams = SeedStream(seed)
    for r in range(runs):
        # start from a size-biased component so every position shares one law
        start = int(decomp.labels[int(np.random.default_rng(streams.child("start", r)).integers(decomp.n))])
        _, trace = aldous_broder_contracted(g, decomp, start, streams.child("walk", r), max_steps=10_000)
        seq = trace.visited[:pos]
        counts[np.arange(len(seq)), seq] += 1
    probs = decomp.sizes / decomp.n
    totals = counts.sum(axis=1, keepdims=True)
    z = np.abs(counts / totals - probs) / np.sqrt(probs * (1 - probs) / totals)
    return CheckResult("walk_stream_coupling", float(z.max()) <= 3.5, float(z.max()),
                       "max |z| <= 3.5 over 40 cells")


@_timed
def check_tree_validity(seed=0, budget=1.0, trials=50):
    """Edge count, connectivity and acyclicity for every sampler."""
    trials = _scaled(trials, budget, 5)
    ok = True
    for t in range(trials):
        s = SeedStream(seed).spawn("validity", t)
        for n, gamma in ((1, 5.0), (2, 5.0), (50, -1.0), (300, 5.0)):
            sample = sample_disorder(n, gamma, s.child("d", n))
            decomp = decompose(sample, compute_diameters=False)
            trees = [assemble_tree(sample, decomp, s.child("a", n)).edges,
                     aldous_broder_tree(sample, decomp, s.child("b", n))[0].edges]
            if gamma < 0 or n <= 2:
                trees.append(wilson_batch(sample, s.child("w", n), 1)[0])
            for tr in trees:
                edges = tr if tr.ndim == 2 else np.stack(
                    [np.flatnonzero(tr >= 0), tr[tr >= 0]], axis=1)
                ok &= is_spanning_tree(n, edges)
    return CheckResult("tree_validity", ok, ok, "all trees valid")


@_timed
def check_excess_diameter(seed=0, budget=1.0):
    """diam(T) <= 2(k+2) diam(H) + k + 1 for every spanning tree T of every
    connected graph H on at most 7 vertices."""
    max_nodes = 7 if budget >= 1 else 6
    graphs = violations = 0
    for m, edges in connected_atlas_graphs(max_nodes):
        violations += excess_diameter_violations(edges, m)
        graphs += 1
    return CheckResult(f"excess_diameter_m{max_nodes}", violations == 0,
                       {"graphs": graphs, "violations": violations}, "0 violations")


@_timed
def check_lower_bound_path(seed=0, budget=1.0, trials=200, n=4096):
    """Entry-to-exit distances summed up to the first repeat never exceed
    the diameter of the tree built from the same walk."""
    trials = _scaled(trials, budget, 10)
    bad = 0
    for t in range(trials):
        s = SeedStream(seed).spawn("lower-bound", t)
        sample = sample_disorder(n, 5.0, s.child("disorder"))
        decomp = decompose(sample, compute_diameters=False)
        tree, trace = aldous_broder_tree(sample, decomp, s.child("walk"))
        bad += tree.diameter() < assemble_lower_bound_path(trace, decomp)
    return CheckResult("lower_bound_path", bad == 0, bad, "0 failures")


def _direct_wilson_diameters(n, gamma, trials, seed):
    out = []
    for t in range(trials):
        s = SeedStream(seed).spawn("wilson-direct", t)
        sample = sample_disorder(n, gamma, s.child("disorder"))
        parents = wilson_batch(sample, s.child("tree"), 1)[0]
        out.append((sample, np.stack([np.flatnonzero(parents >= 0), parents[parents >= 0]], axis=1)))
    return out


@_timed
def check_path_containment(seed=0, budget=1.0, trials=1000, n=10, gamma=5.0):
    """Light edges on tree paths inside a heavy component: frequency under
    the exact sampler at most n^{4-gamma} plus 3 standard errors."""
    from .spanning import WeightedTree

    trials = _scaled(trials, budget, 50)
    hits = 0
    for sample, edges in _direct_wilson_diameters(n, gamma, trials, seed):
        decomp = decompose(sample, compute_diameters=False)
        hits += path_containment_violation(sample, WeightedTree(n, edges), decomp)
    bound = float(n) ** (4 - gamma)
    freq = hits / trials
    limit = bound + 3 * sqrt(bound * (1 - bound) / trials)
    return CheckResult("path_containment", freq <= limit, freq, f"<= {limit:.4g}")


@_timed
def check_cross_sampler(seed=0, budget=1.0, trials=500, n=10, gamma=5.0):
    """Direct Wilson vs contracted assembly at small n (where Wilson can
    still escape the heavy components): median diameters within 10%, and
    whole-tree laws within 0.03 total variation."""
    from .spanning import WeightedTree

    trials = _scaled(trials, budget, 50)
    direct, assembled = [], []
    for t, (sample, edges) in enumerate(_direct_wilson_diameters(n, gamma, trials, seed)):
        decomp = decompose(sample, compute_diameters=False)
        direct.append(WeightedTree(n, edges).diameter())
        assembled.append(assemble_tree(sample, decomp, SeedStream(seed).child("cross", t)).diameter())
    md, ma = float(np.median(direct)), float(np.median(assembled))
    rel = abs(md - ma) / md
    # one fixed disorder with few likely trees: both samplers against the
    # enumerated law
    sample = path_fixture([3, 2], gamma)
    decomp = decompose(sample, compute_diameters=False)
    law = dict(enumerate_spanning_trees(SmallWeightedGraph(sample.dense_weights())).trees)
    z = sum(law.values())
    reps = _scaled(20_000, budget, 2000)
    direct_counts, assembled_counts = {}, {}
    for row in wilson_batch(sample, SeedStream(seed).child("cross-wilson"), reps).tolist():
        k = _tree_key(sample.n, row)
        direct_counts[k] = direct_counts.get(k, 0) + 1
    for r in range(reps):
        k = assemble_tree(sample, decomp, SeedStream(seed).child("cross-asm", r)).edge_set()
        assembled_counts[k] = assembled_counts.get(k, 0) + 1
    tv = {}
    for name, counts in (("wilson", direct_counts), ("assembled", assembled_counts)):
        keys = set(law) | set(counts)
        tv[name] = 0.5 * sum(abs(counts.get(k, 0) / reps - law.get(k, 0.0) / z) for k in keys)
    ok = rel < 0.10 and max(tv.values()) < 0.03
    return CheckResult("cross_sampler", ok,
                       {"median_wilson": md, "median_assembled": ma, "tv_wilson": tv["wilson"],
                        "tv_assembled": tv["assembled"]},
                       "median rel. diff < 0.10, TV to exact law < 0.03")


# ---------------------------------------------------------------- branching

@_timed
def check_bp_domination(seed=0, budget=1.0, trials=100_000, n=10_000):
    trials = _scaled(trials, budget, 1000)
    diam, height, _ = domination_sample(n, trials, SeedStream(seed).child("domination"))
    held = float(np.mean(diam <= 2 * height))
    return CheckResult("bp_domination", held == 1.0, held, "fraction == 1")


@_timed
def check_bp_tail(seed=0, budget=1.0, runs=100_000, n=10_000):
    """k P(ht > k) <= C_BP for k in {10, 100, 1000}.  Runs that hit the
    height cap count as exceeding every k below the cap."""
    runs = _scaled(runs, budget, 1000)
    heights, capped = bp_heights(n, runs, BP_HEIGHT_CAP, SeedStream(seed).child("bp-tail"))
    tails = height_tail(heights, capped, (10, 100, 1000))
    scaled = {k: k * p for k, (p, _) in tails.items()}
    return CheckResult("bp_tail", max(scaled.values()) <= BP_TAIL_CONSTANT, scaled,
                       f"k P(ht > k) <= {BP_TAIL_CONSTANT}")


@_timed
def check_bp_small(seed=0, budget=1.0, runs=100_000):
    """n = 2: P(height >= 1) = 1 - (1/2)^2 = 3/4 within 3 standard errors."""
    runs = _scaled(runs, budget, 1000)
    heights, _ = bp_heights(2, runs, 1000, SeedStream(seed).child("bp-small"))
    p = float(np.mean(heights >= 1))
    z = abs(p - 0.75) / sqrt(0.75 * 0.25 / runs)
    return CheckResult("bp_two", z <= 3, p, "3/4 within 3 SE")


@_timed
def check_component_law(seed=0, budget=1.0, trials=100_000, n=100_000):
    """Size law j^{3/2} P(|C(1)| = j) >= c for 2 <= j <= 10 and cycle-free
    fraction >= 0.95 for j <= 10; P(|C(1)| = 1) = (1 - 1/n)^{n-1} within
    3 SE."""
    trials = _scaled(trials, budget, 2000)
    stats = component_statistics(n, trials, 10, SeedStream(seed).child("component-law"))
    scaled = min(r.probability * r.j ** 1.5 for r in stats.rows if r.j >= 2)
    free = min(r.cycle_free_fraction for r in stats.rows if r.count)
    isolated = (1 - 1 / n) ** (n - 1)
    z = abs(stats.rows[0].probability - isolated) / sqrt(isolated * (1 - isolated) / trials)
    ok = scaled >= SIZE_LAW_CONSTANT and free >= 0.95 and z <= 3
    return CheckResult("component_law", ok, {"min_scaled": scaled, "min_cycle_free": free, "z_isolated": z},
                       f"scaled >= {SIZE_LAW_CONSTANT}, cycle-free >= 0.95, |z| <= 3")


@_timed
def check_same_component(seed=0, budget=1.0, trials=100_000):
    trials = _scaled(trials, budget, 2000)
    vals = {}
    for n in (1000, 10_000, 100_000):
        stats = component_statistics(n, trials, 1, SeedStream(seed).child("same-component", n))
        vals[n] = stats.same_component * n ** (1 / 3)
    ok = max(vals.values()) <= SAME_COMPONENT_CONSTANT
    return CheckResult("same_component", ok, vals, f"n^(1/3) P <= {SAME_COMPONENT_CONSTANT}")


# ---------------------------------------------------------------- heavy graph

@_timed
def check_heavy_count(seed=0, budget=1.0, trials=2000, n=101):
    trials = _scaled(trials, budget, 200)
    counts = np.array([sample_disorder(n, 5.0, SeedStream(seed).child("heavy", t)).num_heavy
                       for t in range(trials)])
    mean = comb(n, 2) / n
    z = abs(counts.mean() - mean) / (counts.std(ddof=1) / sqrt(trials))
    return CheckResult("heavy_count_mean", z <= 3, float(counts.mean()), f"{mean} within 3 SE")


def _decomps(n, trials, seed, label, diameters=True):
    for t in range(trials):
        sample = sample_disorder(n, 5.0, SeedStream(seed).child(label, t))
        yield decompose(sample, compute_diameters=diameters)


@_timed
def check_heavy_components(seed=0, budget=1.0, trials=200, n=100_000):
    """Largest component of order n^{2/3}, the top (log n)^3 components
    holding n^{2/3} log n vertices, bounded maximal excess and component
    diameters of order n^{1/3}."""
    trials = _scaled(trials, budget, 20)
    k = ceil(log(n) ** 3)
    c1, top, excess, diam = [], [], [], {}
    for d in _decomps(n, trials, seed, "heavy-components"):
        c1.append(d.sizes[0] / n ** (2 / 3))
        top.append(union_top_k(d, min(k, d.num_components))[1] >= n ** (2 / 3) * log(n))
        excess.append(int(d.excess.max()))
        diam.setdefault(n, []).append(d.diameters.max() / n ** (1 / 3))
    small = max(1000, n // 10)
    for d in _decomps(small, trials, seed, "heavy-components-small"):
        diam.setdefault(small, []).append(d.diameters.max() / small ** (1 / 3))
    lo, hi = np.quantile(c1, [0.05, 0.95])
    a = COMPONENT_SIZE_FACTOR
    dq = {m: float(np.quantile(v, 0.95)) for m, v in diam.items()}
    measured = {"c1_q05": float(lo), "c1_q95": float(hi), "top_k_fraction": float(np.mean(top)),
                "excess_median": float(np.median(excess)), "diam_q95": dq}
    ok = (1 / a <= lo and hi <= a and np.mean(top) >= 0.9
          and np.median(excess) <= MAX_EXCESS_MEDIAN and max(dq.values()) <= COMPONENT_DIAMETER_FACTOR)
    return CheckResult("heavy_components", ok, measured,
                       f"c1 in [1/{a:g}, {a:g}], top-k >= 0.9, excess median <= {MAX_EXCESS_MEDIAN}, "
                       f"diam q95 <= {COMPONENT_DIAMETER_FACTOR:g}")


# ---------------------------------------------------------------- repeat times

@_timed
def check_repeat_envelope(seed=0, budget=1.0, trials=200, n=100_000):
    """Mean over disorders of the exact P(t_1 > ceil(r / s_n)) against
    exp(-r^2 / 2) - 0.05."""
    trials = _scaled(trials, budget, 20)
    probes = {0.5: [], 1.0: []}
    for d in _decomps(n, trials, seed, "envelope", diameters=False):
        for r in probes:
            probes[r].append(repeat_probe(d, r))
    means = {r: float(np.mean(v)) for r, v in probes.items()}
    ok = all(means[r] >= repeat_envelope(r) - 0.05 for r in means)
    return CheckResult("repeat_envelope", ok, means, "mean >= exp(-r^2/2) - 0.05 at r = 0.5, 1")


@_timed
def check_repeat_tightness(seed=0, budget=1.0, trials=200):
    """Median of t_1 / n^{1/3} varies by less than a factor 2 across n; the
    outer quartiles are reported alongside."""
    trials = _scaled(trials, budget, 20)
    quart = {}
    for n in (1000, 10_000, 100_000):
        t1 = []
        for t, d in enumerate(_decomps(n, trials, seed, f"tightness-{n}", diameters=False)):
            t1.append(first_repeat_times(d, 1, SeedStream(seed).child("tightness-stream", n * 1000 + t))[0])
        quart[n] = np.quantile(np.array(t1) / n ** (1 / 3), [0.25, 0.5, 0.75])
    spread = [max(q[i] for q in quart.values()) / min(q[i] for q in quart.values()) for i in range(3)]
    medians = {n: float(q[1]) for n, q in quart.items()}
    return CheckResult("repeat_tightness", spread[1] < 2.0, {"medians": medians, "quartile_spread": spread},
                       "median max/min < 2")


# ---------------------------------------------------------------- diameter scaling

FULL_GRID = (4096, 8192, 16384, 32768, 65536)
REDUCED_GRID = (1024, 2048, 4096)


def _diameter_records(gamma, seed, budget, trials, threads):
    grid = FULL_GRID if budget >= 1 else REDUCED_GRID
    cfg = ExperimentConfig(mode="diameter", n_grid=grid, gamma=gamma,
                           trials_per_n=_scaled(trials, budget, 10), master_seed=seed,
                           sampler="contracted-assembly" if gamma > 0 else "wilson", threads=threads)
    return run_diameter_sweep(cfg)


@_timed
def check_diameter_large_gamma(seed=0, budget=1.0, trials=200, threads=1):
    recs = _diameter_records(5.0, seed, budget, trials, threads)
    meds, spread = median_ratio_spread(recs, "diameter", large_gamma_scale)
    slope, _, se = estimate_exponent(recs)
    flagged = sum(r.flagged for r in recs)
    ok = spread < 3.0 and 0.30 < slope < 0.45
    return CheckResult("diameter_gamma5", ok,
                       {"median_ratio": meds, "spread": spread, "slope": slope, "slope_se": se,
                        "flagged": flagged}, "spread < 3, slope in (0.30, 0.45)")


@_timed
def check_diameter_small_gamma(seed=0, budget=1.0, trials=200, threads=1):
    recs = _diameter_records(-1.0, seed, budget, trials, threads)
    meds, spread = median_ratio_spread(recs, "diameter", small_gamma_scale)
    slope, _, se = estimate_exponent(recs)
    flagged = sum(r.flagged for r in recs)
    ok = spread < 2.0 and 0.45 < slope < 0.55
    return CheckResult("diameter_gamma_minus1", ok,
                       {"median_ratio": meds, "spread": spread, "slope": slope, "slope_se": se,
                        "flagged": flagged}, "spread < 2, slope in (0.45, 0.55)")


SUITE_CHECKS = {
    "oracles": (check_kirchhoff_k3, check_weighted_k3, check_matrix_tree, check_kirchhoff_random,
                check_bottleneck_fixtures, check_bottleneck_bound, check_km_tail_exact,
                check_no_repeat_exact),
    "lemmas": (check_ust_law, check_km_law_wilson, check_km_law_walk, check_km_mean,
               check_repeat_oracle, check_contracted_step_law, check_walk_stream_coupling,
               check_tree_validity, check_excess_diameter, check_lower_bound_path,
               check_path_containment, check_cross_sampler, check_bp_domination, check_bp_tail,
               check_bp_small, check_component_law, check_same_component),
    "scaling": (check_heavy_count, check_heavy_components, check_repeat_envelope,
                check_repeat_tightness, check_diameter_large_gamma, check_diameter_small_gamma),
}


def run_suite(suite, seed=0, budget=1.0, emit=print, threads=1):
    """Run every check of ``suite``, emitting one line each; returns the
    list of results."""
    if suite not in SUITE_CHECKS:
        raise KeyError(suite)
    if budget < 1:
        emit(f"== reduced-budget run (budget={budget:g}); thresholds are those of the full run ==")
    results = []
    for check in SUITE_CHECKS[suite]:
        kwargs = {"threads": threads} if "threads" in check.__code__.co_varnames else {}
        res = check(seed=seed, budget=budget, **kwargs)
        emit(res.line())
        results.append(res)
    return results
