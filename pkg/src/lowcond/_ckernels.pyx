# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels over 64-bit adjacency masks.

Same contract as ``lowcond._pykernels``. Graphs with more than 64 vertices
do not fit a machine word and are handed to the pure-Python versions.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

from lowcond import _pykernels as _py

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    MAXN = 64


cdef inline uint64_t _reach(const uint64_t* adj, uint64_t start, uint64_t blocked) noexcept nogil:
    cdef uint64_t seen = start & ~blocked
    cdef uint64_t frontier = seen
    cdef uint64_t nxt
    while frontier:
        nxt = 0
        while frontier:
            nxt |= adj[__builtin_ctzll(frontier)]
            frontier &= frontier - 1
        nxt &= ~(seen | blocked)
        seen |= nxt
        frontier = nxt
    return seen


cdef int _load(adj, uint64_t* buf) except -2:
    cdef Py_ssize_t n = len(adj)
    cdef Py_ssize_t i
    if n > MAXN:
        return -1
    for i in range(n):
        buf[i] = adj[i]
    return <int>n


def reach(adj, start, blocked):
    cdef uint64_t buf[MAXN]
    if _load(adj, buf) < 0:
        return _py.reach(adj, start, blocked)
    return _reach(buf, start, blocked)


def separates(adj, a_mask, b_mask, s_mask):
    cdef uint64_t buf[MAXN]
    if _load(adj, buf) < 0:
        return _py.separates(adj, a_mask, b_mask, s_mask)
    cdef uint64_t b = b_mask
    return (_reach(buf, a_mask, s_mask) & b) == 0


def min_vertex_cut(adj, int a, int b):
    cdef uint64_t buf[MAXN]
    cdef int n = _load(adj, buf)
    if n < 0:
        return _py.min_vertex_cut(adj, a, b)
    cdef int size = 2 * n
    cdef int big = n + 1
    cdef int* cap = <int*>malloc(size * size * sizeof(int))
    cdef int* parent = <int*>malloc(size * sizeof(int))
    cdef int* queue = <int*>malloc(size * sizeof(int))
    if cap == NULL or parent == NULL or queue == NULL:
        free(cap); free(parent); free(queue)
        raise MemoryError()
    cdef int v, u, x, y, head, tail, bottleneck, flow = 0
    cdef int source = 2 * a + 1
    cdef int sink = 2 * b
    cdef uint64_t nbrs
    cdef uint64_t cut = 0
    try:
        for x in range(size * size):
            cap[x] = 0
        for v in range(n):
            cap[(2 * v) * size + 2 * v + 1] = big if (v == a or v == b) else 1
            nbrs = buf[v]
            while nbrs:
                u = __builtin_ctzll(nbrs)
                cap[(2 * v + 1) * size + 2 * u] = big
                nbrs &= nbrs - 1
        while True:
            for x in range(size):
                parent[x] = -1
            parent[source] = source
            queue[0] = source
            head = 0
            tail = 1
            while head < tail and parent[sink] < 0:
                x = queue[head]
                head += 1
                for y in range(size):
                    if cap[x * size + y] > 0 and parent[y] < 0:
                        parent[y] = x
                        queue[tail] = y
                        tail += 1
            if parent[sink] < 0:
                break
            bottleneck = big
            y = sink
            while y != source:
                x = parent[y]
                if cap[x * size + y] < bottleneck:
                    bottleneck = cap[x * size + y]
                y = x
            y = sink
            while y != source:
                x = parent[y]
                cap[x * size + y] -= bottleneck
                cap[y * size + x] += bottleneck
                y = x
            flow += bottleneck
        for v in range(n):
            if parent[2 * v] >= 0 and parent[2 * v + 1] < 0:
                cut |= (<uint64_t>1) << v
    finally:
        free(cap)
        free(parent)
        free(queue)
    return flow, cut


def first_witness(adj, int a, int b, int k):
    cdef uint64_t buf[MAXN]
    cdef int n = _load(adj, buf)
    if n < 0:
        return _py.first_witness(adj, a, b, k)
    cdef int cand[MAXN]
    cdef int idx[MAXN]
    cdef int m = 0
    cdef int v, i, j
    for v in range(n):
        if v != a and v != b:
            cand[m] = v
            m += 1
    if k < 0 or k > m:
        return -1, 0
    cdef uint64_t a_bit = (<uint64_t>1) << a
    cdef uint64_t b_bit = (<uint64_t>1) << b
    cdef uint64_t mask
    cdef long long tested = 0
    for i in range(k):
        idx[i] = i
    with nogil:
        while True:
            mask = 0
            for i in range(k):
                mask |= (<uint64_t>1) << cand[idx[i]]
            tested += 1
            if (_reach(buf, a_bit, mask) & b_bit) == 0:
                break
            i = k - 1
            while i >= 0 and idx[i] == i + m - k:
                i -= 1
            if i < 0:
                mask = 0
                tested = -tested
                break
            idx[i] += 1
            for j in range(i + 1, k):
                idx[j] = idx[j - 1] + 1
    if tested < 0:
        return -1, -tested
    return mask, tested
