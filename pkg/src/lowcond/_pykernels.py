"""Pure-Python graph kernels over bitmask adjacency.

A graph on ``n`` vertices is a sequence ``adj`` of ``n`` ints where bit ``j``
of ``adj[i]`` is set iff ``i ~ j``. Vertex sets are ints used as bitmasks.
The compiled module ``_ckernels`` exports the same four functions with the
same semantics; this module is the fallback and the reference.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

__all__ = ["reach", "separates", "min_vertex_cut", "first_witness"]


def reach(adj: Sequence[int], start: int, blocked: int) -> int:
    """Mask of vertices reachable from ``start`` without entering ``blocked``."""
    seen = start & ~blocked
    frontier = seen
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= adj[low.bit_length() - 1]
            frontier ^= low
        nxt &= ~(seen | blocked)
        seen |= nxt
        frontier = nxt
    return seen


def separates(adj: Sequence[int], a_mask: int, b_mask: int, s_mask: int) -> bool:
    return not (reach(adj, a_mask, s_mask) & b_mask)


def min_vertex_cut(adj: Sequence[int], a: int, b: int) -> tuple[int, int]:
    """Minimum ``a``-``b`` vertex cut of a graph where ``a`` and ``b`` are not adjacent.

    Unit-capacity max flow on the vertex-split digraph: vertex ``v`` becomes
    ``2v`` (in) and ``2v + 1`` (out). Returns ``(size, cut_mask)``; the cut
    read off the final residual graph is a minimum separator.
    """
    n = len(adj)
    big = n + 1
    size = 2 * n
    cap = [[0] * size for _ in range(size)]
    for v in range(n):
        cap[2 * v][2 * v + 1] = big if v in (a, b) else 1
        nbrs = adj[v]
        while nbrs:
            low = nbrs & -nbrs
            u = low.bit_length() - 1
            cap[2 * v + 1][2 * u] = big
            nbrs ^= low
    source, sink = 2 * a + 1, 2 * b
    flow = 0
    while True:
        parent = [-1] * size
        parent[source] = source
        queue = deque([source])
        while queue and parent[sink] < 0:
            x = queue.popleft()
            row = cap[x]
            for y in range(size):
                if row[y] > 0 and parent[y] < 0:
                    parent[y] = x
                    queue.append(y)
        if parent[sink] < 0:
            break
        bottleneck = big
        y = sink
        while y != source:
            x = parent[y]
            bottleneck = min(bottleneck, cap[x][y])
            y = x
        y = sink
        while y != source:
            x = parent[y]
            cap[x][y] -= bottleneck
            cap[y][x] += bottleneck
            y = x
        flow += bottleneck
    # parent >= 0 marks the residual-reachable side of the last search
    cut = 0
    for v in range(n):
        if parent[2 * v] >= 0 and parent[2 * v + 1] < 0:
            cut |= 1 << v
    return flow, cut


def first_witness(adj: Sequence[int], a: int, b: int, k: int) -> tuple[int, int]:
    """First size-``k`` subset of ``V - {a, b}`` separating ``a`` from ``b``.

    Subsets are visited in lexicographic order of their sorted index tuples
    (the order of ``itertools.combinations``). Returns ``(mask, tested)``
    where ``mask`` is ``-1`` when no subset separates and ``tested`` counts
    the subsets examined.
    """
    n = len(adj)
    cand = [v for v in range(n) if v != a and v != b]
    m = len(cand)
    if k < 0 or k > m:
        return -1, 0
    a_bit, b_bit = 1 << a, 1 << b
    idx = list(range(k))
    tested = 0
    while True:
        mask = 0
        for i in idx:
            mask |= 1 << cand[i]
        tested += 1
        if not (reach(adj, a_bit, mask) & b_bit):
            return mask, tested
        i = k - 1
        while i >= 0 and idx[i] == i + m - k:
            i -= 1
        if i < 0:
            return -1, tested
        idx[i] += 1
        for j in range(i + 1, k):
            idx[j] = idx[j - 1] + 1
