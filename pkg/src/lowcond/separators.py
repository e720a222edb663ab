"""Minimal separators and the separability order, degree and degree two.

The minimum size of an (a, b) separator is a minimum vertex cut, so it is
computed by max flow on the vertex-split digraph rather than by enumerating
minimal separators. A minimum cut is automatically a minimal separator,
which is what the witness in :class:`SeparabilityReport` carries.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from lowcond import kernels
from lowcond.errors import DomainError
from lowcond.graph import UndirectedGraph, connected_components, iter_bits

__all__ = [
    "INFINITE",
    "Infinite",
    "SeparabilityReport",
    "is_separator",
    "is_minimal_separator",
    "minimal_separators",
    "min_separator_size",
    "minimum_separator",
    "minimal_separator_near",
    "separability_order",
    "separability_report",
    "degree",
    "degree_of",
    "degree_two",
    "degree_two_of",
    "MAX_ENUMERATION_VERTICES",
]

MAX_ENUMERATION_VERTICES = 16


@functools.total_ordering
class Infinite:
    """Separability order of a complete graph. Larger than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        if other is self or isinstance(other, (int, float)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash("lowcond.INFINITE")

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"

    def __reduce__(self):
        return (Infinite, ())


INFINITE = Infinite()


def _pair(g: UndirectedGraph, alpha, beta) -> tuple[int, int]:
    a, b = g.index(alpha), g.index(beta)
    if a == b:
        raise DomainError("separators are defined for two distinct vertices")
    if g.masks[a] >> b & 1:
        raise DomainError(f"adjacent pair has no separator: {alpha!r} ~ {beta!r}")
    return a, b


def _subset_mask(g: UndirectedGraph, S: Iterable, a: int, b: int) -> int:
    s = g.mask_of(S)
    if s >> a & 1 or s >> b & 1:
        raise DomainError("S must not contain the pair being separated")
    return s


def is_separator(g: UndirectedGraph, alpha, beta, S: Iterable = ()) -> bool:
    a, b = _pair(g, alpha, beta)
    s = _subset_mask(g, S, a, b)
    return kernels.separates(g.masks, 1 << a, 1 << b, s)


def _is_minimal(adj, a: int, b: int, s: int) -> bool:
    side_a = kernels.reach(adj, 1 << a, s)
    if side_a >> b & 1:
        return False
    side_b = kernels.reach(adj, 1 << b, s)
    for v in iter_bits(s):
        if not (adj[v] & side_a and adj[v] & side_b):
            return False
    return True


def is_minimal_separator(g: UndirectedGraph, alpha, beta, S: Iterable = ()) -> bool:
    """True iff ``S`` separates and each member touches both sides.

    Every vertex of a minimal separator has a neighbour in the component of
    ``alpha`` and one in the component of ``beta`` once ``S`` is removed,
    and conversely.
    """
    a, b = _pair(g, alpha, beta)
    s = _subset_mask(g, S, a, b)
    return _is_minimal(g.masks, a, b, s)


def minimal_separators(
    g: UndirectedGraph, alpha, beta, *, max_vertices: int = MAX_ENUMERATION_VERTICES
) -> set[frozenset]:
    """All minimal (alpha, beta) separators; empty iff the pair is disconnected.

    Exhaustive over subsets of ``V - {alpha, beta}``, hence the vertex cap.
    """
    a, b = _pair(g, alpha, beta)
    if len(g) > max_vertices:
        raise DomainError(f"minimal separator enumeration capped at {max_vertices} vertices")
    adj = g.masks
    if not kernels.reach(adj, 1 << a, 0) >> b & 1:
        return set()
    cand = [v for v in range(len(g)) if v != a and v != b]
    found = set()
    for r in range(len(cand) + 1):
        for combo in itertools.combinations(cand, r):
            s = 0
            for v in combo:
                s |= 1 << v
            if _is_minimal(adj, a, b, s):
                found.add(g.labels_of(s))
    return found


def minimum_separator(g: UndirectedGraph, alpha, beta) -> frozenset:
    """A separator of minimum size (empty for a disconnected pair)."""
    a, b = _pair(g, alpha, beta)
    _, cut = kernels.min_vertex_cut(g.masks, a, b)
    return g.labels_of(cut)


def min_separator_size(g: UndirectedGraph, alpha, beta) -> int:
    """``min |S|`` over minimal separators; 0 when the pair is disconnected."""
    a, b = _pair(g, alpha, beta)
    size, _ = kernels.min_vertex_cut(g.masks, a, b)
    return size


def minimal_separator_near(g: UndirectedGraph, alpha, beta) -> frozenset:
    """The minimal separator inside the neighbourhood of ``alpha``.

    Removing ``alpha`` and its neighbours leaves ``beta`` in some component
    ``C``; the neighbourhood of ``C`` is a minimal separator contained in
    ``N(alpha)``. Its members all have degree at least 2.
    """
    a, b = _pair(g, alpha, beta)
    adj = g.masks
    if not kernels.reach(adj, 1 << a, 0) >> b & 1:
        raise DomainError(f"no separator needed: {alpha!r} and {beta!r} lie in different components")
    closed = adj[a] | (1 << a)
    comp = kernels.reach(adj, 1 << b, closed)
    boundary = 0
    for v in iter_bits(comp):
        boundary |= adj[v]
    return g.labels_of(boundary & ~comp)


def _nonadjacent_pairs(g: UndirectedGraph):
    adj = g.masks
    for a, b in itertools.combinations(range(len(g)), 2):
        if not adj[a] >> b & 1:
            yield a, b


def separability_order(g: UndirectedGraph):
    """Max over non-adjacent pairs of the minimum separator size.

    ``INFINITE`` for complete graphs (including graphs with fewer than two
    vertices, which have no non-adjacent pair).
    """
    best = None
    for a, b in _nonadjacent_pairs(g):
        size, _ = kernels.min_vertex_cut(g.masks, a, b)
        if best is None or size > best:
            best = size
    return INFINITE if best is None else best


def degree_of(g: UndirectedGraph, alpha) -> int:
    return g.degree(alpha)


def degree(g: UndirectedGraph) -> int:
    if not len(g):
        raise DomainError("degree of a graph without vertices")
    return max(row.bit_count() for row in g.masks)


def _degree_two_idx(adj, i: int) -> int:
    return sum(1 for j in iter_bits(adj[i]) if adj[j].bit_count() >= 2)


def degree_two_of(g: UndirectedGraph, alpha) -> int:
    """Number of neighbours of ``alpha`` that themselves have degree >= 2."""
    return _degree_two_idx(g.masks, g.index(alpha))


def degree_two(g: UndirectedGraph) -> int:
    if not len(g):
        raise DomainError("degree two of a graph without vertices")
    adj = g.masks
    return max(_degree_two_idx(adj, i) for i in range(len(adj)))


@dataclass(frozen=True)
class SeparabilityReport:
    so: object  # int or INFINITE
    d: int
    d2: int
    pair_orders: dict[tuple[Hashable, Hashable], int] = field(repr=False)
    witness: tuple[Hashable, Hashable, frozenset] | None
    components: list[frozenset] = field(repr=False)
    vertex_order: tuple = field(repr=False, default=())

    def to_dict(self) -> dict:
        order = {v: i for i, v in enumerate(self.vertex_order)}

        def ordered(vs):
            return [str(v) for v in sorted(vs, key=order.__getitem__)]

        doc = {
            "so": str(self.so) if self.so is INFINITE else self.so,
            "d": self.d,
            "d2": self.d2,
            "components": [ordered(c) for c in self.components],
            "pairs": [{"a": str(a), "b": str(b), "order": o} for (a, b), o in self.pair_orders.items()],
            "witness": None,
        }
        if self.witness is not None:
            a, b, sep = self.witness
            doc["witness"] = {"a": str(a), "b": str(b), "separator": ordered(sep)}
        return doc


def separability_report(g: UndirectedGraph) -> SeparabilityReport:
    """so, d and d2 of ``g`` with per-pair orders and a witness separator.

    The witness is the first pair (in vertex order) attaining ``so`` with one
    of its minimum separators; ``None`` for complete graphs.
    """
    adj = g.masks
    lab = g.vertices
    pair_orders = {}
    best, witness = None, None
    for a, b in _nonadjacent_pairs(g):
        size, cut = kernels.min_vertex_cut(adj, a, b)
        pair_orders[(lab[a], lab[b])] = size
        if best is None or size > best:
            best = size
            witness = (lab[a], lab[b], g.labels_of(cut))
    return SeparabilityReport(
        so=INFINITE if best is None else best,
        d=degree(g),
        d2=degree_two(g),
        pair_orders=pair_orders,
        witness=witness,
        components=connected_components(g),
        vertex_order=lab,
    )
