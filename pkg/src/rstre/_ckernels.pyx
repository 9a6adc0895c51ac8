# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twins of the functions in ``_pykernels``.

Same signatures, same random stream consumption, same results.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport log, log1p, floor
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free, calloc

cnp.import_array()

cdef extern from *:
    """
    typedef struct { uint64_t s[4]; } rstre_rng;

    static inline uint64_t rstre_rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static inline void rstre_seed(rstre_rng *r, uint64_t seed) {
        uint64_t x = seed;
        for (int i = 0; i < 4; i++) {
            x += 0x9E3779B97F4A7C15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            r->s[i] = z ^ (z >> 31);
        }
    }

    static inline uint64_t rstre_next(rstre_rng *r) {
        uint64_t *s = r->s;
        uint64_t result = rstre_rotl(s[1] * 5, 7) * 9;
        uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rstre_rotl(s[3], 45);
        return result;
    }

    static inline double rstre_random(rstre_rng *r) {
        return (double)(rstre_next(r) >> 11) * (1.0 / 9007199254740992.0);
    }

    static inline uint64_t rstre_below(rstre_rng *r, uint64_t m) {
        __uint128_t prod = (__uint128_t)rstre_next(r) * m;
        uint64_t low = (uint64_t)prod;
        if (low < m) {
            uint64_t threshold = (0 - m) % m;
            while (low < threshold) {
                prod = (__uint128_t)rstre_next(r) * m;
                low = (uint64_t)prod;
            }
        }
        return (uint64_t)(prod >> 64);
    }

    static inline int64_t rstre_binomial(rstre_rng *r, int64_t trials, double p) {
        if (trials <= 0 || p <= 0.0) return 0;
        if (p >= 1.0) return trials;
        double logq = log1p(-p);
        int64_t successes = 0, pos = 0;
        for (;;) {
            double gap = log(1.0 - rstre_random(r)) / logq;
            if (gap >= (double)(trials - pos)) return successes;
            pos += (int64_t)floor(gap) + 1;
            successes += 1;
        }
    }
    """
    ctypedef struct rstre_rng:
        uint64_t s[4]
    void rstre_seed(rstre_rng *r, uint64_t seed) nogil
    uint64_t rstre_next(rstre_rng *r) nogil
    double rstre_random(rstre_rng *r) nogil
    uint64_t rstre_below(rstre_rng *r, uint64_t m) nogil
    int64_t rstre_binomial(rstre_rng *r, int64_t trials, double p) nogil

cdef enum:
    OK = 0
    STEP_LIMIT = 1

ctypedef int64_t i64


cdef inline uint64_t _seed64(object seed):
    return <uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF)


def rng_sample(seed, int kind, Py_ssize_t count, arg1=0, double arg2=0.0):
    cdef rstre_rng rng
    rstre_seed(&rng, _seed64(seed))
    cdef Py_ssize_t i
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] u
    cdef cnp.ndarray[cnp.float64_t, ndim=1] f
    cdef cnp.ndarray[cnp.int64_t, ndim=1] k
    if kind == 0:
        u = np.empty(count, dtype=np.uint64)
        for i in range(count):
            u[i] = rstre_next(&rng)
        return u
    if kind == 1:
        f = np.empty(count, dtype=np.float64)
        for i in range(count):
            f[i] = rstre_random(&rng)
        return f
    if kind == 2:
        k = np.empty(count, dtype=np.int64)
        for i in range(count):
            k[i] = <i64>rstre_below(&rng, <uint64_t>arg1)
        return k
    if kind == 3:
        k = np.empty(count, dtype=np.int64)
        for i in range(count):
            k[i] = rstre_binomial(&rng, <i64>arg1, arg2)
        return k
    raise ValueError(f"unknown kind {kind}")


# ---------------------------------------------------------------- Wilson

cdef inline bint _is_heavy_neighbor(const i64[:] indices, i64 lo, i64 hi, i64 v) noexcept nogil:
    cdef i64 mid, w
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


def wilson_two_valued(i64 n, const i64[:] indptr, const i64[:] indices, double heavy_weight,
                      seed, Py_ssize_t count, i64 max_steps):
    cdef rstre_rng rng
    rstre_seed(&rng, _seed64(seed))
    parents_arr = np.full((count, n), -1, dtype=np.int64)
    cdef i64[:, :] parents = parents_arr
    cdef char *in_tree = <char *>malloc(n * sizeof(char))
    cdef i64 *nxt = <i64 *>malloc(n * sizeof(i64))
    cdef i64 total_steps = 0, steps, start, u, v, lo, hi, h, light, i
    cdef Py_ssize_t s
    cdef int status = OK
    cdef double hw
    try:
        with nogil:
            for s in range(count):
                for i in range(n):
                    in_tree[i] = 0
                    nxt[i] = -1
                in_tree[0] = 1
                steps = 0
                for start in range(n):
                    u = start
                    while not in_tree[u]:
                        lo = indptr[u]
                        hi = indptr[u + 1]
                        h = hi - lo
                        light = n - 1 - h
                        hw = <double>h * heavy_weight
                        if h > 0 and (light == 0 or rstre_random(&rng) * (hw + <double>light) < hw):
                            v = indices[lo + <i64>rstre_below(&rng, <uint64_t>h)]
                        else:
                            while True:
                                v = <i64>rstre_below(&rng, <uint64_t>n)
                                if v != u and not _is_heavy_neighbor(indices, lo, hi, v):
                                    break
                        nxt[u] = v
                        u = v
                        steps += 1
                        if steps > max_steps:
                            status = STEP_LIMIT
                            break
                    if status != OK:
                        break
                    u = start
                    while not in_tree[u]:
                        in_tree[u] = 1
                        u = nxt[u]
                if status != OK:
                    total_steps += steps
                    break
                total_steps += steps
                for i in range(n):
                    parents[s, i] = nxt[i]
                parents[s, 0] = -1
    finally:
        free(in_tree)
        free(nxt)
    return parents_arr, total_steps, status


def assemble_contracted(i64 n, const i64[:] labels, const i64[:] sizes, const i64[:] offsets,
                        const i64[:] members, const i64[:] indptr, const i64[:] indices,
                        const i64[:] excess, seed, i64 max_steps):
    cdef rstre_rng rng
    rstre_seed(&rng, _seed64(seed))
    cdef i64 k = sizes.shape[0]
    edges_arr = np.zeros((max(n - 1, 0), 2), dtype=np.int64)
    cdef i64[:, :] edges = edges_arr
    cdef char *in_tree = <char *>calloc(n, sizeof(char))
    cdef i64 *nxt = <i64 *>malloc(n * sizeof(i64))
    cdef char *comp_in_tree = <char *>calloc(k, sizeof(char))
    cdef i64 *comp_next = <i64 *>malloc(k * sizeof(i64))
    cdef i64 *exit_v = <i64 *>malloc(k * sizeof(i64))
    cdef i64 *entry_v = <i64 *>malloc(k * sizeof(i64))
    cdef i64 e = 0, steps = 0, c, size, lo_m, hi_m, i, j, u, v, lo, root, start, a, b, x
    cdef int status = OK
    try:
        with nogil:
            for c in range(k):
                size = sizes[c]
                if size == 1:
                    continue
                lo_m = offsets[c]
                hi_m = offsets[c + 1]
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
                in_tree[root] = 1
                for i in range(lo_m, hi_m):
                    start = members[i]
                    u = start
                    while not in_tree[u]:
                        lo = indptr[u]
                        v = indices[lo + <i64>rstre_below(&rng, <uint64_t>(indptr[u + 1] - lo))]
                        nxt[u] = v
                        u = v
                        steps += 1
                        if steps > max_steps:
                            status = STEP_LIMIT
                            break
                    if status != OK:
                        break
                    u = start
                    while not in_tree[u]:
                        in_tree[u] = 1
                        edges[e, 0] = u
                        edges[e, 1] = nxt[u]
                        e += 1
                        u = nxt[u]
                if status != OK:
                    break
            if status == OK:
                comp_in_tree[labels[0]] = 1
                for c in range(k):
                    a = c
                    while not comp_in_tree[a]:
                        x = <i64>rstre_below(&rng, <uint64_t>n)
                        b = labels[x]
                        steps += 1
                        if steps > max_steps:
                            status = STEP_LIMIT
                            break
                        if b == a:
                            continue
                        comp_next[a] = b
                        entry_v[a] = x
                        exit_v[a] = members[offsets[a] + <i64>rstre_below(&rng, <uint64_t>sizes[a])]
                        a = b
                    if status != OK:
                        break
                    a = c
                    while not comp_in_tree[a]:
                        comp_in_tree[a] = 1
                        edges[e, 0] = exit_v[a]
                        edges[e, 1] = entry_v[a]
                        e += 1
                        a = comp_next[a]
    finally:
        free(in_tree)
        free(nxt)
        free(comp_in_tree)
        free(comp_next)
        free(exit_v)
        free(entry_v)
    return edges_arr, status


def aldous_broder_contracted(i64 n, const i64[:] labels, const i64[:] sizes, const i64[:] offsets,
                             const i64[:] members, i64 start, seed, i64 max_steps):
    cdef rstre_rng rng
    rstre_seed(&rng, _seed64(seed))
    cdef i64 k = sizes.shape[0]
    tree_parent_arr = np.full(k, -1, dtype=np.int64)
    tree_exit_arr = np.full(k, -1, dtype=np.int64)
    tree_entry_arr = np.full(k, -1, dtype=np.int64)
    cdef i64[:] tree_parent = tree_parent_arr
    cdef i64[:] tree_exit = tree_exit_arr
    cdef i64[:] tree_entry = tree_entry_arr
    cdef char *seen = <char *>calloc(k, sizeof(char))
    cdef i64 cap = 1024
    cdef i64 *visited = <i64 *>malloc(cap * sizeof(i64))
    cdef i64 *entry = <i64 *>malloc(cap * sizeof(i64))
    cdef i64 *exits = <i64 *>malloc(cap * sizeof(i64))
    cdef i64 length = 1, remaining = k - 1, a = start, steps = 0, x, b, v
    cdef i64 *tmp
    try:
        visited[0] = start
        entry[0] = members[offsets[start] + <i64>rstre_below(&rng, <uint64_t>sizes[start])]
        seen[start] = 1
        with nogil:
            while remaining > 0 and steps < max_steps:
                if length + 1 >= cap:
                    cap *= 2
                    tmp = <i64 *>malloc(cap * sizeof(i64))
                    for x in range(length):
                        tmp[x] = visited[x]
                    free(visited)
                    visited = tmp
                    tmp = <i64 *>malloc(cap * sizeof(i64))
                    for x in range(length):
                        tmp[x] = entry[x]
                    free(entry)
                    entry = tmp
                    tmp = <i64 *>malloc(cap * sizeof(i64))
                    for x in range(length):
                        tmp[x] = exits[x]
                    free(exits)
                    exits = tmp
                x = <i64>rstre_below(&rng, <uint64_t>n)
                b = labels[x]
                v = members[offsets[a] + <i64>rstre_below(&rng, <uint64_t>sizes[a])]
                exits[length - 1] = v
                visited[length] = b
                entry[length] = x
                length += 1
                steps += 1
                if not seen[b]:
                    seen[b] = 1
                    remaining -= 1
                    tree_parent[b] = a
                    tree_exit[b] = v
                    tree_entry[b] = x
                a = b
        exits[length - 1] = -1
        visited_arr = np.array(<i64[:length]>visited, dtype=np.int64)
        entry_arr = np.array(<i64[:length]>entry, dtype=np.int64)
        exit_arr = np.array(<i64[:length]>exits, dtype=np.int64)
    finally:
        free(seen)
        free(visited)
        free(entry)
        free(exits)
    return (visited_arr, entry_arr, exit_arr, tree_parent_arr, tree_exit_arr,
            tree_entry_arr, remaining == 0)


# ---------------------------------------------------------------- BFS

def bfs_distances(const i64[:] indptr, const i64[:] indices, i64 source):
    cdef i64 n = indptr.shape[0] - 1
    dist_arr = np.full(n, -1, dtype=np.int64)
    cdef i64[:] dist = dist_arr
    cdef i64 *queue = <i64 *>malloc(max(n, 1) * sizeof(i64))
    cdef i64 head = 0, tail = 1, u, v, j, du
    try:
        with nogil:
            dist[source] = 0
            queue[0] = source
            while head < tail:
                u = queue[head]
                head += 1
                du = dist[u] + 1
                for j in range(indptr[u], indptr[u + 1]):
                    v = indices[j]
                    if dist[v] < 0:
                        dist[v] = du
                        queue[tail] = v
                        tail += 1
    finally:
        free(queue)
    return dist_arr


cdef i64 _farthest(const i64[:] indptr, const i64[:] indices, i64 source, i64 *dist,
                   i64 *queue, i64 *far_out) noexcept nogil:
    # BFS over the component of source; leaves dist set on queue[0:tail]
    cdef i64 head = 0, tail = 1, u, v, j, du, far = source, ecc = 0
    dist[source] = 0
    queue[0] = source
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u] + 1
        for j in range(indptr[u], indptr[u + 1]):
            v = indices[j]
            if dist[v] < 0:
                dist[v] = du
                queue[tail] = v
                tail += 1
                if du > ecc:
                    far = v
                    ecc = du
    far_out[0] = far
    return tail


cdef inline void _reset(i64 *dist, i64 *queue, i64 tail) noexcept nogil:
    cdef i64 i
    for i in range(tail):
        dist[queue[i]] = -1


def tree_diameter(const i64[:] indptr, const i64[:] indices):
    cdef i64 n = indptr.shape[0] - 1
    if n <= 1:
        return 0
    cdef i64 *dist = <i64 *>malloc(n * sizeof(i64))
    cdef i64 *queue = <i64 *>malloc(n * sizeof(i64))
    cdef i64 i, far, tail, ecc
    try:
        with nogil:
            for i in range(n):
                dist[i] = -1
            tail = _farthest(indptr, indices, 0, dist, queue, &far)
            _reset(dist, queue, tail)
            tail = _farthest(indptr, indices, far, dist, queue, &far)
            ecc = dist[far]
    finally:
        free(dist)
        free(queue)
    return ecc


def component_diameters(const i64[:] indptr, const i64[:] indices, const i64[:] offsets,
                        const i64[:] members, const i64[:] excess, i64 cap):
    cdef i64 k = offsets.shape[0] - 1
    cdef i64 n = indptr.shape[0] - 1
    diam_arr = np.zeros(k, dtype=np.int64)
    exact_arr = np.ones(k, dtype=np.bool_)
    cdef i64[:] diam = diam_arr
    cdef cnp.uint8_t[:] exact = exact_arr.view(np.uint8)
    cdef i64 *dist = <i64 *>malloc(max(n, 1) * sizeof(i64))
    cdef i64 *queue = <i64 *>malloc(max(n, 1) * sizeof(i64))
    cdef i64 c, lo, hi, size, far, tail, best, i
    try:
        with nogil:
            for i in range(n):
                dist[i] = -1
            for c in range(k):
                lo = offsets[c]
                hi = offsets[c + 1]
                size = hi - lo
                if size == 1:
                    continue
                if size == 2:
                    diam[c] = 1
                    continue
                if excess[c] == -1 or size > cap:
                    tail = _farthest(indptr, indices, members[lo], dist, queue, &far)
                    _reset(dist, queue, tail)
                    tail = _farthest(indptr, indices, far, dist, queue, &far)
                    diam[c] = dist[far]
                    _reset(dist, queue, tail)
                    if excess[c] != -1:
                        exact[c] = False
                    continue
                best = 0
                for i in range(lo, hi):
                    tail = _farthest(indptr, indices, members[i], dist, queue, &far)
                    if dist[far] > best:
                        best = dist[far]
                    _reset(dist, queue, tail)
                diam[c] = best
    finally:
        free(dist)
        free(queue)
    return diam_arr, exact_arr


# ---------------------------------------------------------------- streams

def size_biased_stream(const i64[:] labels, i64 n_components, i64 max_len, seed):
    cdef rstre_rng rng
    rstre_seed(&rng, _seed64(seed))
    cdef i64 n = labels.shape[0]
    cdef char *seen = <char *>calloc(n_components, sizeof(char))
    out_arr = np.zeros(max_len, dtype=np.int64)
    cdef i64[:] out = out_arr
    cdef i64 i, c, length = 0
    try:
        with nogil:
            for i in range(max_len):
                c = labels[<i64>rstre_below(&rng, <uint64_t>n)]
                out[i] = c
                length += 1
                if seen[c]:
                    break
                seen[c] = 1
    finally:
        free(seen)
    return out_arr[:length].copy()


def first_repeat_times(const i64[:] labels, i64 n_components, i64 n_streams, i64 max_len, seed):
    cdef rstre_rng rng
    rstre_seed(&rng, _seed64(seed))
    cdef i64 n = labels.shape[0]
    cdef i64 *stamp = <i64 *>calloc(n_components, sizeof(i64))
    out_arr = np.zeros(n_streams, dtype=np.int64)
    cdef i64[:] out = out_arr
    cdef i64 s, i, c, mark
    try:
        with nogil:
            for s in range(n_streams):
                mark = s + 1
                for i in range(1, max_len + 1):
                    c = labels[<i64>rstre_below(&rng, <uint64_t>n)]
                    if stamp[c] == mark:
                        out[s] = i
                        break
                    stamp[c] = mark
    finally:
        free(stamp)
    return out_arr


def no_repeat_dp(probs, i64 k):
    cdef const double[:] p = np.ascontiguousarray(probs, dtype=np.float64)
    cdef double *g = <double *>calloc(k + 1, sizeof(double))
    cdef i64 m = p.shape[0], i, j, top = 0
    cdef double pi, result
    try:
        with nogil:
            g[0] = 1.0
            for i in range(m):
                pi = p[i]
                top = top + 1 if top + 1 < k else k
                j = top
                while j >= 1:
                    g[j] = g[j] + (<double>j * pi) * g[j - 1]
                    j -= 1
            result = g[k]
    finally:
        free(g)
    return result


# ---------------------------------------------------------------- exploration

def exploration_trials(i64 n, double p, i64 trials, seed):
    cdef rstre_rng rng
    rstre_seed(&rng, _seed64(seed))
    sizes_arr = np.zeros(trials, dtype=np.int64)
    cyc_arr = np.zeros(trials, dtype=np.bool_)
    second_arr = np.zeros(trials, dtype=np.bool_)
    cdef i64[:] sizes = sizes_arr
    cdef cnp.uint8_t[:] has_cycle = cyc_arr.view(np.uint8)
    cdef cnp.uint8_t[:] second = second_arr.view(np.uint8)
    cdef i64 s, active, unseen, t, eta
    cdef bint second_unseen, cyc, inside
    with nogil:
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
                if rstre_binomial(&rng, active, p) > 0:
                    cyc = True
                eta = rstre_binomial(&rng, unseen, p)
                if second_unseen and eta > 0:
                    if <i64>rstre_below(&rng, <uint64_t>unseen) < eta:
                        second_unseen = False
                        inside = True
                unseen -= eta
                active += eta
            sizes[s] = t
            has_cycle[s] = cyc
            second[s] = inside
    return sizes_arr, cyc_arr, second_arr


cdef i64 _bp_run(rstre_rng *rng, i64 n, i64 height_cap, i64 *gens, bint *capped) noexcept nogil:
    # gens needs room for height_cap + 1 entries; returns the height
    cdef double p = 1.0 / <double>n
    cdef i64 z = 1, length = 1
    gens[0] = 1
    while z > 0 and length <= height_cap:
        z = rstre_binomial(rng, n * z, p)
        if z > 0:
            gens[length] = z
            length += 1
    capped[0] = z > 0 and length - 1 >= height_cap
    return length - 1


def bp_generations(i64 n, i64 height_cap, seed):
    cdef rstre_rng rng
    rstre_seed(&rng, _seed64(seed))
    cdef i64 *gens = <i64 *>malloc((height_cap + 1) * sizeof(i64))
    cdef bint capped
    cdef i64 h
    try:
        with nogil:
            h = _bp_run(&rng, n, height_cap, gens, &capped)
        out = np.array(<i64[:h + 1]>gens, dtype=np.int64)
    finally:
        free(gens)
    return out, bool(capped)


def bp_heights(i64 n, i64 runs, i64 height_cap, seed):
    cdef rstre_rng rng
    rstre_seed(&rng, _seed64(seed))
    heights_arr = np.zeros(runs, dtype=np.int64)
    capped_arr = np.zeros(runs, dtype=np.bool_)
    cdef i64[:] heights = heights_arr
    cdef cnp.uint8_t[:] capped = capped_arr.view(np.uint8)
    cdef i64 *gens = <i64 *>malloc((height_cap + 1) * sizeof(i64))
    cdef bint cap_flag
    cdef i64 s
    try:
        with nogil:
            for s in range(runs):
                heights[s] = _bp_run(&rng, n, height_cap, gens, &cap_flag)
                capped[s] = cap_flag
    finally:
        free(gens)
    return heights_arr, capped_arr


cdef class _Growable:
    # int64 buffer with amortised append; used by the domination kernel
    cdef i64 *data
    cdef i64 size
    cdef i64 cap

    def __cinit__(self):
        self.cap = 64
        self.size = 0
        self.data = <i64 *>malloc(self.cap * sizeof(i64))

    def __dealloc__(self):
        free(self.data)

    cdef void clear(self) noexcept nogil:
        self.size = 0

    cdef void push(self, i64 x) noexcept nogil:
        cdef i64 *tmp
        cdef i64 i
        if self.size == self.cap:
            self.cap *= 2
            tmp = <i64 *>malloc(self.cap * sizeof(i64))
            for i in range(self.size):
                tmp[i] = self.data[i]
            free(self.data)
            self.data = tmp
        self.data[self.size] = x
        self.size += 1

    cdef void ensure(self, i64 length) noexcept nogil:
        # grow to ``length`` entries, zero-filled
        while self.size < length:
            self.push(0)


def domination_trials(i64 n, double p, i64 trials, i64 height_cap, seed):
    cdef rstre_rng rng
    rstre_seed(&rng, _seed64(seed))
    diam_arr = np.zeros(trials, dtype=np.int64)
    heights_arr = np.zeros(trials, dtype=np.int64)
    capped_arr = np.zeros(trials, dtype=np.bool_)
    cdef i64[:] diam = diam_arr
    cdef i64[:] heights = heights_arr
    cdef cnp.uint8_t[:] capped = capped_arr.view(np.uint8)
    # component graph as an edge list (src, dst) in both directions
    cdef _Growable esrc = _Growable()
    cdef _Growable edst = _Growable()
    cdef _Growable level = _Growable()
    cdef _Growable ghosts = _Growable()
    cdef _Growable chosen = _Growable()
    cdef _Growable deg = _Growable()
    cdef i64 s, unseen, head, v, lv, n_active, back, w, eta, extra, q, nv, j, height
    cdef i64 real_height, births, ne, src, best, tail, far, i
    cdef bint alive, hit_cap, dup
    cdef i64 *indptr
    cdef i64 *indices
    cdef i64 *fill
    cdef i64 *dist
    cdef i64 *queue
    for s in range(trials):
        esrc.clear()
        edst.clear()
        level.clear()
        ghosts.clear()
        level.push(0)
        ghosts.push(0)
        nv = 1
        unseen = n - 1
        head = 0
        with nogil:
            while head < nv:
                v = head
                head += 1
                lv = level.data[v]
                n_active = nv - head
                back = rstre_binomial(&rng, n_active, p)
                if back > 0:
                    chosen.clear()
                    while chosen.size < back:
                        w = head + <i64>rstre_below(&rng, <uint64_t>n_active)
                        dup = False
                        for i in range(chosen.size):
                            if chosen.data[i] == w:
                                dup = True
                                break
                        if not dup:
                            chosen.push(w)
                    for i in range(chosen.size):
                        w = chosen.data[i]
                        esrc.push(v)
                        edst.push(w)
                        esrc.push(w)
                        edst.push(v)
                eta = rstre_binomial(&rng, unseen, p)
                extra = rstre_binomial(&rng, n - unseen, p)
                unseen -= eta
                ghosts.ensure(lv + 2)
                ghosts.data[lv + 1] += extra
                for q in range(eta):
                    w = nv
                    nv += 1
                    level.push(lv + 1)
                    esrc.push(v)
                    edst.push(w)
                    esrc.push(w)
                    edst.push(v)
            real_height = level.data[nv - 1]
            j = 0
            height = 0
            hit_cap = False
            while True:
                alive = ghosts.data[j] > 0 if j < ghosts.size else False
                if j <= real_height or alive:
                    height = j
                else:
                    break
                if j >= height_cap and j >= real_height:
                    hit_cap = True
                    break
                if alive:
                    births = rstre_binomial(&rng, n * ghosts.data[j], p)
                    ghosts.ensure(j + 2)
                    ghosts.data[j + 1] += births
                j += 1
            # all-pairs BFS on the explored component
            ne = esrc.size
            indptr = <i64 *>calloc(nv + 1, sizeof(i64))
            indices = <i64 *>malloc(max(ne, 1) * sizeof(i64))
            fill = <i64 *>calloc(nv, sizeof(i64))
            dist = <i64 *>malloc(nv * sizeof(i64))
            queue = <i64 *>malloc(nv * sizeof(i64))
            for i in range(ne):
                indptr[esrc.data[i] + 1] += 1
            for i in range(nv):
                indptr[i + 1] += indptr[i]
            for i in range(ne):
                src = esrc.data[i]
                indices[indptr[src] + fill[src]] = edst.data[i]
                fill[src] += 1
            best = 0
            for src in range(nv):
                for i in range(nv):
                    dist[i] = -1
                dist[src] = 0
                queue[0] = src
                head = 0
                tail = 1
                while head < tail:
                    v = queue[head]
                    head += 1
                    for i in range(indptr[v], indptr[v + 1]):
                        w = indices[i]
                        if dist[w] < 0:
                            dist[w] = dist[v] + 1
                            queue[tail] = w
                            tail += 1
                if dist[queue[tail - 1]] > best:
                    best = dist[queue[tail - 1]]
            free(indptr)
            free(indices)
            free(fill)
            free(dist)
            free(queue)
        diam[s] = best
        heights[s] = height
        capped[s] = hit_cap
    return diam_arr, heights_arr, capped_arr
