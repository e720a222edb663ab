"""Immutable undirected graphs, the edge-list format and separation tests.

Vertices carry arbitrary hashable labels and are densely indexed in
declaration order. Internally the adjacency of vertex ``i`` is an int whose
bit ``j`` is set iff ``i ~ j``; vertex sets travel as bitmasks of the same
kind, which is what the kernels in :mod:`lowcond.kernels` consume.
"""

from __future__ import annotations

import itertools
import random
from pathlib import Path
from typing import Hashable, Iterable, Iterator, Sequence

from lowcond import kernels
from lowcond.errors import DomainError, ParseError, UnknownVertexError, ValidationError

__all__ = [
    "UndirectedGraph",
    "parse_graph",
    "serialize_graph",
    "read_graph",
    "neighbors",
    "connected_components",
    "induced_subgraph",
    "separates",
    "covariance_separates",
    "complete_graph",
    "empty_graph",
    "path_graph",
    "star_graph",
    "random_graph",
    "all_graphs",
    "iter_bits",
]


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class UndirectedGraph:
    """A simple undirected graph: no loops, no multi-edges.

    >>> g = UndirectedGraph("abc", [("a", "b"), ("b", "c")])
    >>> sorted(g.neighbors("b"))
    ['a', 'c']

    Endpoints not listed in ``vertices`` are appended in order of first
    appearance. Instances never change after construction.
    """

    __slots__ = ("_labels", "_index", "_adj", "_hash")

    def __init__(
        self,
        vertices: Iterable[Hashable] = (),
        edges: Iterable[tuple[Hashable, Hashable]] = (),
    ):
        labels: list[Hashable] = []
        index: dict[Hashable, int] = {}

        def add(v):
            if v not in index:
                index[v] = len(labels)
                labels.append(v)
            return index[v]

        for v in vertices:
            add(v)
        pairs = []
        for u, v in edges:
            if u == v:
                raise ValidationError(f"loop edge at vertex {u!r}")
            pairs.append((add(u), add(v)))
        adj = [0] * len(labels)
        for i, j in pairs:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        self._labels = tuple(labels)
        self._index = index
        self._adj = tuple(adj)
        self._hash = None

    @classmethod
    def from_masks(cls, labels: Sequence[Hashable], adj: Sequence[int]) -> "UndirectedGraph":
        """Build directly from adjacency bitmasks (checked for symmetry and loops)."""
        labels = tuple(labels)
        adj = tuple(int(a) for a in adj)
        if len(labels) != len(adj) or len(set(labels)) != len(labels):
            raise ValidationError("labels must be distinct and match the adjacency rows")
        full = (1 << len(labels)) - 1
        for i, row in enumerate(adj):
            if row & ~full:
                raise ValidationError(f"row {i} references a vertex outside the graph")
            if row >> i & 1:
                raise ValidationError(f"loop edge at vertex {labels[i]!r}")
            for j in iter_bits(row):
                if not adj[j] >> i & 1:
                    raise ValidationError(f"asymmetric adjacency between {labels[i]!r} and {labels[j]!r}")
        g = cls.__new__(cls)
        g._labels = labels
        g._index = {v: i for i, v in enumerate(labels)}
        g._adj = adj
        g._hash = None
        return g

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[Hashable, ...]:
        return self._labels

    @property
    def masks(self) -> tuple[int, ...]:
        """Adjacency bitmask per vertex index."""
        return self._adj

    @property
    def full_mask(self) -> int:
        return (1 << len(self._labels)) - 1

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __iter__(self):
        return iter(self._labels)

    def index(self, v) -> int:
        try:
            return self._index[v]
        except (KeyError, TypeError):
            raise UnknownVertexError(v) from None

    def mask_of(self, vertices: Iterable[Hashable]) -> int:
        mask = 0
        for v in vertices:
            mask |= 1 << self.index(v)
        return mask

    def labels_of(self, mask: int) -> frozenset:
        return frozenset(self._labels[i] for i in iter_bits(mask))

    def sorted_labels(self, vertices: Iterable[Hashable]) -> list:
        """``vertices`` in the graph's own vertex order."""
        return [self._labels[i] for i in iter_bits(self.mask_of(vertices))]

    def has_edge(self, u, v) -> bool:
        return bool(self._adj[self.index(u)] >> self.index(v) & 1)

    def degree(self, v) -> int:
        return self._adj[self.index(v)].bit_count()

    def neighbors(self, v) -> frozenset:
        return self.labels_of(self._adj[self.index(v)])

    def edge_indices(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self._adj) for j in iter_bits(row >> (i + 1) << (i + 1))]

    def edges(self) -> list[tuple[Hashable, Hashable]]:
        """Edges as label pairs, ordered by vertex index."""
        lab = self._labels
        return [(lab[i], lab[j]) for i, j in self.edge_indices()]

    def number_of_edges(self) -> int:
        return sum(row.bit_count() for row in self._adj) // 2

    def is_complete(self) -> bool:
        full = self.full_mask
        return all(row | (1 << i) == full for i, row in enumerate(self._adj))

    def is_connected(self) -> bool:
        if not self._adj:
            return True
        return kernels.reach(self._adj, 1, 0) == self.full_mask

    def with_edges(self, edges: Iterable[tuple[Hashable, Hashable]]) -> "UndirectedGraph":
        """A new graph with ``edges`` added."""
        adj = list(self._adj)
        for u, v in edges:
            i, j = self.index(u), self.index(v)
            if i == j:
                raise ValidationError(f"loop edge at vertex {u!r}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return UndirectedGraph.from_masks(self._labels, adj)

    # -- value semantics -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self._labels == other._labels and self._adj == other._adj

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._labels, self._adj))
        return self._hash

    def __repr__(self):
        return f"UndirectedGraph(vertices={list(self._labels)!r}, edges={self.edges()!r})"


# -- edge-list format -----------------------------------------------------


def parse_graph(text: str) -> UndirectedGraph:
    """Parse the edge-list format.

    An optional first content line ``vertices: a b c`` declares vertices
    (isolated ones included). Every other non-blank line not starting with
    ``#`` holds exactly two labels. Duplicate edges collapse; loops raise
    :class:`ValidationError`.
    """
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    seen_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("vertices:"):
            if seen_content:
                raise ParseError("vertices header must come before any edge", lineno)
            vertices.extend(line[len("vertices:"):].split())
            seen_content = True
            continue
        seen_content = True
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected '<label> <label>', got {line!r}", lineno)
        u, v = parts
        if u == v:
            raise ValidationError(f"line {lineno}: loop edge at vertex {u!r}")
        edges.append((u, v))
    return UndirectedGraph(vertices, edges)


def serialize_graph(g: UndirectedGraph) -> str:
    """Canonical edge-list text; ``parse_graph`` inverts it for string labels."""
    labels = [str(v) for v in g.vertices]
    for lab in labels:
        if not lab or lab.startswith("#") or any(c.isspace() for c in lab):
            raise DomainError(f"label {lab!r} cannot be written in edge-list format")
    lines = ["vertices: " + " ".join(labels)]
    lines += [f"{labels[i]} {labels[j]}" for i, j in g.edge_indices()]
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> UndirectedGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


# -- structural queries ---------------------------------------------------


def neighbors(g: UndirectedGraph, v) -> frozenset:
    return g.neighbors(v)


def connected_components(g: UndirectedGraph) -> list[frozenset]:
    """Blocks of the partition of V into connected components.

    Ordered by their smallest vertex index.
    """
    return [g.labels_of(m) for m in component_masks(g.masks)]


def component_masks(adj: Sequence[int], within: int | None = None) -> list[int]:
    """Connected components (as masks) of the subgraph induced by ``within``."""
    if within is None:
        within = (1 << len(adj)) - 1
    blocked = ((1 << len(adj)) - 1) & ~within
    out = []
    rest = within
    while rest:
        comp = kernels.reach(adj, rest & -rest, blocked)
        out.append(comp)
        rest &= ~comp
    return out


def induced_subgraph(g: UndirectedGraph, vertices: Iterable[Hashable]) -> UndirectedGraph:
    mask = g.mask_of(vertices)
    keep = list(iter_bits(mask))
    pos = {old: new for new, old in enumerate(keep)}
    adj = []
    for old in keep:
        row = 0
        for j in iter_bits(g.masks[old] & mask):
            row |= 1 << pos[j]
        adj.append(row)
    return UndirectedGraph.from_masks([g.vertices[i] for i in keep], adj)


def _disjoint_masks(g, A, B, S) -> tuple[int, int, int]:
    a, b, s = g.mask_of(A), g.mask_of(B), g.mask_of(S)
    if not a or not b:
        raise DomainError("A and B must be non-empty")
    if a & b or a & s or b & s:
        raise DomainError("A, B and S must be pairwise disjoint")
    return a, b, s


def separates(g: UndirectedGraph, A: Iterable, B: Iterable, S: Iterable = ()) -> bool:
    """True iff every path from ``A`` to ``B`` meets ``S``."""
    a, b, s = _disjoint_masks(g, A, B, S)
    return kernels.separates(g.masks, a, b, s)


def covariance_separates(g: UndirectedGraph, A: Iterable, B: Iterable, S: Iterable = ()) -> bool:
    """Bi-directed criterion: ``V - (A | B | S)`` separates ``A`` and ``B``."""
    a, b, s = _disjoint_masks(g, A, B, S)
    return kernels.separates(g.masks, a, b, g.full_mask & ~(a | b | s))


# -- generators -----------------------------------------------------------


def _labels(n: int) -> list[str]:
    return [str(i) for i in range(1, n + 1)]


def complete_graph(n: int) -> UndirectedGraph:
    full = (1 << n) - 1
    return UndirectedGraph.from_masks(_labels(n), [full & ~(1 << i) for i in range(n)])


def empty_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_masks(_labels(n), [0] * n)


def path_graph(n: int) -> UndirectedGraph:
    lab = _labels(n)
    return UndirectedGraph(lab, zip(lab, lab[1:]))


def star_graph(leaves: int) -> UndirectedGraph:
    """Center ``"1"`` joined to leaves ``"2"``..``str(leaves + 1)``."""
    lab = _labels(leaves + 1)
    return UndirectedGraph(lab, [(lab[0], v) for v in lab[1:]])


def random_graph(n: int, p: float, rng: random.Random | int | None = None) -> UndirectedGraph:
    """Erdos-Renyi G(n, p); pairs are drawn in index order."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"edge probability {p} outside [0, 1]")
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    adj = [0] * n
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return UndirectedGraph.from_masks(_labels(n), adj)


def all_graphs(n: int) -> Iterator[UndirectedGraph]:
    """Every labeled graph on ``n`` vertices, 2**(n*(n-1)/2) of them."""
    pairs = list(itertools.combinations(range(n), 2))
    lab = _labels(n)
    for code in range(1 << len(pairs)):
        adj = [0] * n
        for bit, (i, j) in enumerate(pairs):
            if code >> bit & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        yield UndirectedGraph.from_masks(lab, adj)
