"""Pure-Python implementations of the hot kernels.

Every function here has a twin of the same name and signature in the
compiled ``_ckernels`` module.  Both consume the same xoshiro256** stream in
the same order, so for a given seed they return identical results; the
compiled module is only faster.
"""
from math import floor, log, log1p

import numpy as np

MASK64 = (1 << 64) - 1

# status codes shared with the compiled kernels
OK = 0
STEP_LIMIT = 1


class Xoshiro256:
    """xoshiro256** seeded through splitmix64."""

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed):
        x = int(seed) & MASK64
        state = []
        for _ in range(4):
            x = (x + 0x9E3779B97F4A7C15) & MASK64
            z = x
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
            state.append(z ^ (z >> 31))
        self.s0, self.s1, self.s2, self.s3 = state

    def next64(self):
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        r = (s1 * 5) & MASK64
        r = ((r << 7) | (r >> 57)) & MASK64
        result = (r * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return result

    def random(self):
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next64() >> 11) * (1.0 / 9007199254740992.0)

    def below(self, m):
        """Unbiased integer in [0, m) (Lemire's multiply-shift rejection)."""
        prod = self.next64() * m
        low = prod & MASK64
        if low < m:
            threshold = ((1 << 64) - m) % m
            while low < threshold:
                prod = self.next64() * m
                low = prod & MASK64
        return prod >> 64

    def binomial(self, trials, p):
        """Binomial(trials, p) by geometric skipping; O(trials * p) draws."""
        if trials <= 0 or p <= 0.0:
            return 0
        if p >= 1.0:
            return trials
        logq = log1p(-p)
        successes = 0
        pos = 0
        while True:
            gap = log(1.0 - self.random()) / logq
            if gap >= trials - pos:
                return successes
            pos += floor(gap) + 1
            successes += 1


def rng_sample(seed, kind, count, arg1=0, arg2=0.0):
    """Raw generator output, used to pin down backend parity."""
    rng = Xoshiro256(seed)
    if kind == 0:
        return np.array([rng.next64() for _ in range(count)], dtype=np.uint64)
    if kind == 1:
        return np.array([rng.random() for _ in range(count)], dtype=np.float64)
    if kind == 2:
        return np.array([rng.below(arg1) for _ in range(count)], dtype=np.int64)
    if kind == 3:
        return np.array([rng.binomial(arg1, arg2) for _ in range(count)], dtype=np.int64)
    raise ValueError(f"unknown kind {kind}")


# ---------------------------------------------------------------- Wilson

def _is_heavy_neighbor(indices, lo, hi, v):
    # binary search in the sorted slice indices[lo:hi]
    while lo < hi:
        mid = (lo + hi) >> 1
        w = indices[mid]
        if w < v:
            lo = mid + 1
        elif w > v:
            hi = mid
        else:
            return True
    return False


def wilson_two_valued(n, indptr, indices, heavy_weight, seed, count, max_steps):
    """Wilson's algorithm on K_n whose edges weigh ``heavy_weight`` (listed in
    the CSR arrays) or 1.  Returns ``(parents, steps, status)`` with
    ``parents`` of shape (count, n), rooted at vertex 0."""
    rng = Xoshiro256(seed)
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    parents = np.full((count, n), -1, dtype=np.int64)
    total_steps = 0
    for s in range(count):
        in_tree = [False] * n
        nxt = [-1] * n
        in_tree[0] = True
        steps = 0
        for start in range(n):
            u = start
            while not in_tree[u]:
                lo, hi = indptr[u], indptr[u + 1]
                h = hi - lo
                light = n - 1 - h
                if h > 0 and (light == 0 or rng.random() * (h * heavy_weight + light) < h * heavy_weight):
                    v = indices[lo + rng.below(h)]
                else:
                    while True:
                        v = rng.below(n)
                        if v != u and not _is_heavy_neighbor(indices, lo, hi, v):
                            break
                nxt[u] = v
                u = v
                steps += 1
                if steps > max_steps:
                    return parents, total_steps + steps, STEP_LIMIT
            u = start
            while not in_tree[u]:
                in_tree[u] = True
                u = nxt[u]
        total_steps += steps
        parents[s, :] = nxt
        parents[s, 0] = -1
    return parents, total_steps, OK


def assemble_contracted(n, labels, sizes, offsets, members, indptr, indices, excess, seed, max_steps):
    """Spanning tree of K_n built from per-component uniform spanning trees
    joined by a uniform spanning tree of the contracted multigraph.

    Returns ``(edges, status)`` with ``edges`` of shape (n - 1, 2).
    """
    rng = Xoshiro256(seed)
    labels = [int(x) for x in labels]
    sizes = [int(x) for x in sizes]
    offsets = [int(x) for x in offsets]
    members = [int(x) for x in members]
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    excess = [int(x) for x in excess]
    k = len(sizes)
    edges = np.zeros((max(n - 1, 0), 2), dtype=np.int64)
    e = 0
    steps = 0
    in_tree = [False] * n
    nxt = [-1] * n
    for c in range(k):
        size = sizes[c]
        if size == 1:
            continue
        lo_m, hi_m = offsets[c], offsets[c + 1]
        if excess[c] == -1:
            for i in range(lo_m, hi_m):
                u = members[i]
                for j in range(indptr[u], indptr[u + 1]):
                    v = indices[j]
                    if u < v:
                        edges[e, 0] = u
                        edges[e, 1] = v
                        e += 1
            continue
        root = members[lo_m]
        in_tree[root] = True
        for i in range(lo_m, hi_m):
            start = members[i]
            u = start
            while not in_tree[u]:
                lo = indptr[u]
                v = indices[lo + rng.below(indptr[u + 1] - lo)]
                nxt[u] = v
                u = v
                steps += 1
                if steps > max_steps:
                    return edges, STEP_LIMIT
            u = start
            while not in_tree[u]:
                in_tree[u] = True
                edges[e, 0] = u
                edges[e, 1] = nxt[u]
                e += 1
                u = nxt[u]
    # Wilson on the contracted graph; self-loops are erased immediately
    comp_in_tree = [False] * k
    comp_next = [-1] * k
    exit_v = [-1] * k
    entry_v = [-1] * k
    comp_in_tree[labels[0]] = True
    for c in range(k):
        a = c
        while not comp_in_tree[a]:
            x = rng.below(n)
            b = labels[x]
            steps += 1
            if steps > max_steps:
                return edges, STEP_LIMIT
            if b == a:
                continue
            comp_next[a] = b
            entry_v[a] = x
            exit_v[a] = members[offsets[a] + rng.below(sizes[a])]
            a = b
        a = c
        while not comp_in_tree[a]:
            comp_in_tree[a] = True
            edges[e, 0] = exit_v[a]
            edges[e, 1] = entry_v[a]
            e += 1
            a = comp_next[a]
    return edges, OK


def aldous_broder_contracted(n, labels, sizes, offsets, members, start, seed, max_steps):
    """Lazy walk on the contracted multigraph until every component is seen.

    Returns ``(visited, entry, exit, tree_parent, tree_exit, tree_entry,
    covered)``.  ``entry[i]``/``exit[i]`` are the original vertices where the
    walk entered and left ``visited[i]``; the exit of the final position is
    -1.  ``tree_*`` describe the first-entrance tree on components.
    """
    rng = Xoshiro256(seed)
    labels = [int(x) for x in labels]
    sizes = [int(x) for x in sizes]
    offsets = [int(x) for x in offsets]
    members = [int(x) for x in members]
    k = len(sizes)
    seen = [False] * k
    tree_parent = np.full(k, -1, dtype=np.int64)
    tree_exit = np.full(k, -1, dtype=np.int64)
    tree_entry = np.full(k, -1, dtype=np.int64)
    visited = [start]
    entry = [members[offsets[start] + rng.below(sizes[start])]]
    exits = []
    seen[start] = True
    remaining = k - 1
    a = start
    steps = 0
    while remaining > 0 and steps < max_steps:
        x = rng.below(n)
        b = labels[x]
        v = members[offsets[a] + rng.below(sizes[a])]
        exits.append(v)
        visited.append(b)
        entry.append(x)
        steps += 1
        if not seen[b]:
            seen[b] = True
            remaining -= 1
            tree_parent[b] = a
            tree_exit[b] = v
            tree_entry[b] = x
        a = b
    exits.append(-1)
    return (
        np.array(visited, dtype=np.int64),
        np.array(entry, dtype=np.int64),
        np.array(exits, dtype=np.int64),
        tree_parent,
        tree_exit,
        tree_entry,
        remaining == 0,
    )


# ---------------------------------------------------------------- BFS

def bfs_distances(indptr, indices, source):
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    dist[source] = 0
    queue = [source]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        du = dist[u] + 1
        for j in range(indptr[u], indptr[u + 1]):
            v = indices[j]
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def _farthest(indptr, indices, source, dist, stamp_list, queue):
    # BFS restricted to the component of source; returns (vertex, ecc)
    queue.clear()
    queue.append(source)
    dist[source] = 0
    stamp_list.append(source)
    head = 0
    far, ecc = source, 0
    while head < len(queue):
        u = queue[head]
        head += 1
        du = dist[u] + 1
        for j in range(indptr[u], indptr[u + 1]):
            v = indices[j]
            if dist[v] < 0:
                dist[v] = du
                stamp_list.append(v)
                queue.append(v)
                if du > ecc:
                    far, ecc = v, du
    return far, ecc


def _reset(dist, touched):
    for v in touched:
        dist[v] = -1
    touched.clear()


def tree_diameter(indptr, indices):
    """Exact diameter of a tree by double BFS."""
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    n = len(indptr) - 1
    if n <= 1:
        return 0
    dist = [-1] * n
    touched, queue = [], []
    far, _ = _farthest(indptr, indices, 0, dist, touched, queue)
    _reset(dist, touched)
    _, ecc = _farthest(indptr, indices, far, dist, touched, queue)
    return ecc


def component_diameters(indptr, indices, offsets, members, excess, cap):
    """Per-component diameters.  Trees use double BFS, other components BFS
    from every vertex unless larger than ``cap``, in which case the double
    BFS lower bound is returned and ``exact`` is False."""
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    offsets = [int(x) for x in offsets]
    members = [int(x) for x in members]
    k = len(offsets) - 1
    n = len(indptr) - 1
    diam = np.zeros(k, dtype=np.int64)
    exact = np.ones(k, dtype=np.bool_)
    dist = [-1] * n
    touched, queue = [], []
    for c in range(k):
        lo, hi = offsets[c], offsets[c + 1]
        size = hi - lo
        if size == 1:
            continue
        if size == 2:
            diam[c] = 1
            continue
        if excess[c] == -1 or size > cap:
            far, _ = _farthest(indptr, indices, members[lo], dist, touched, queue)
            _reset(dist, touched)
            _, ecc = _farthest(indptr, indices, far, dist, touched, queue)
            _reset(dist, touched)
            diam[c] = ecc
            if excess[c] != -1:
                exact[c] = False
            continue
        best = 0
        for i in range(lo, hi):
            _, ecc = _farthest(indptr, indices, members[i], dist, touched, queue)
            _reset(dist, touched)
            if ecc > best:
                best = ecc
        diam[c] = best
    return diam, exact


# ---------------------------------------------------------------- streams

def size_biased_stream(labels, n_components, max_len, seed):
    """Components of uniform vertices until the first repeat (inclusive) or
    ``max_len`` draws."""
    rng = Xoshiro256(seed)
    n = len(labels)
    seen = [False] * n_components
    out = []
    for _ in range(max_len):
        c = int(labels[rng.below(n)])
        out.append(c)
        if seen[c]:
            break
        seen[c] = True
    return np.array(out, dtype=np.int64)


def first_repeat_times(labels, n_components, n_streams, max_len, seed):
    """First repeat index t_1 (1-based) for independent streams; 0 when no
    repeat happened within ``max_len`` draws."""
    rng = Xoshiro256(seed)
    labels = [int(x) for x in labels]
    n = len(labels)
    stamp = [0] * n_components
    out = np.zeros(n_streams, dtype=np.int64)
    for s in range(n_streams):
        mark = s + 1
        for i in range(1, max_len + 1):
            c = labels[rng.below(n)]
            if stamp[c] == mark:
                out[s] = i
                break
            stamp[c] = mark
    return out


def no_repeat_dp(probs, k):
    """k! e_k(p) via g_j <- g_j + j p_i g_{j-1}; every g_j stays in [0, 1]."""
    g = np.zeros(k + 1, dtype=np.float64)
    g[0] = 1.0
    js = np.arange(1, k + 1, dtype=np.float64)
    top = 0
    for p in np.asarray(probs, dtype=np.float64):
        top = min(top + 1, k)
        g[1:top + 1] += js[:top] * p * g[0:top]
    return float(g[k])


# ---------------------------------------------------------------- exploration

def exploration_trials(n, p, trials, seed):
    """Explore the component of vertex 1 in G(n, p) with lazily revealed
    edges.  Returns ``(sizes, has_cycle, contains_second)``."""
    rng = Xoshiro256(seed)
    sizes = np.zeros(trials, dtype=np.int64)
    has_cycle = np.zeros(trials, dtype=np.bool_)
    second = np.zeros(trials, dtype=np.bool_)
    for s in range(trials):
        active = 1
        unseen = n - 1
        second_unseen = n >= 2
        cyc = False
        inside = False
        t = 0
        while active > 0:
            t += 1
            active -= 1
            if rng.binomial(active, p) > 0:
                cyc = True
            eta = rng.binomial(unseen, p)
            if second_unseen and eta > 0:
                if rng.below(unseen) < eta:
                    second_unseen = False
                    inside = True
            unseen -= eta
            active += eta
        sizes[s] = t
        has_cycle[s] = cyc
        second[s] = inside
    return sizes, has_cycle, second


def _bp_run(rng, n, height_cap, gens):
    p = 1.0 / n
    z = 1
    gens.clear()
    gens.append(1)
    while z > 0 and len(gens) <= height_cap:
        z = rng.binomial(n * z, p)
        if z > 0:
            gens.append(z)
    height = len(gens) - 1
    capped = z > 0 and height >= height_cap
    return height, capped


def bp_generations(n, height_cap, seed):
    rng = Xoshiro256(seed)
    gens = []
    _, capped = _bp_run(rng, n, height_cap, gens)
    return np.array(gens, dtype=np.int64), capped


def bp_heights(n, runs, height_cap, seed):
    rng = Xoshiro256(seed)
    heights = np.zeros(runs, dtype=np.int64)
    capped = np.zeros(runs, dtype=np.bool_)
    gens = []
    for s in range(runs):
        heights[s], capped[s] = _bp_run(rng, n, height_cap, gens)
    return heights, capped


def _all_pairs_diameter(adj):
    size = len(adj)
    best = 0
    dist = [-1] * size
    for src in range(size):
        for i in range(size):
            dist[i] = -1
        dist[src] = 0
        queue = [src]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        ecc = dist[queue[-1]]
        if ecc > best:
            best = ecc
    return best


def domination_trials(n, p, trials, height_cap, seed):
    """Breadth-first exploration of C(x) in G(n, p) coupled with a
    Bin(n, p) branching process that contains it level by level.

    Each explored vertex gets its real unseen neighbours plus
    Bin(n - unseen, p) extra "ghost" children; ghosts reproduce with
    Bin(n, p).  Returns ``(diameters, heights, capped)``.
    """
    rng = Xoshiro256(seed)
    diam = np.zeros(trials, dtype=np.int64)
    heights = np.zeros(trials, dtype=np.int64)
    capped = np.zeros(trials, dtype=np.bool_)
    for s in range(trials):
        adj = [[]]
        level = [0]
        ghosts = [0]
        unseen = n - 1
        head = 0
        while head < len(adj):
            v = head
            head += 1
            lv = level[v]
            n_active = len(adj) - head
            back = rng.binomial(n_active, p)
            if back > 0:
                chosen = []
                while len(chosen) < back:
                    w = head + rng.below(n_active)
                    if w not in chosen:
                        chosen.append(w)
                for w in chosen:
                    adj[v].append(w)
                    adj[w].append(v)
            eta = rng.binomial(unseen, p)
            extra = rng.binomial(n - unseen, p)
            unseen -= eta
            while len(ghosts) <= lv + 1:
                ghosts.append(0)
            ghosts[lv + 1] += extra
            for _ in range(eta):
                w = len(adj)
                adj.append([v])
                adj[v].append(w)
                level.append(lv + 1)
        real_height = level[-1]
        j = 0
        height = 0
        hit_cap = False
        while True:
            alive = ghosts[j] > 0 if j < len(ghosts) else False
            if j <= real_height or alive:
                height = j
            else:
                break
            if j >= height_cap and j >= real_height:
                hit_cap = True
                break
            if alive:
                births = rng.binomial(n * ghosts[j], p)
                while len(ghosts) <= j + 1:
                    ghosts.append(0)
                ghosts[j + 1] += births
            j += 1
        diam[s] = _all_pairs_diameter(adj)
        heights[s] = height
        capped[s] = hit_cap
    return diam, heights, capped
