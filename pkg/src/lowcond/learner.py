"""k-graphs, k-partial graphs and the degree-two stopping rule.

In the k-graph the pair (a, b) is non-adjacent iff some conditioning set of
size exactly k makes X_a and X_b independent; in the k-partial graph the
size is at most k. :func:`learn_with_stopping` builds G_1, G_2, ... and
returns the first G_k whose degree two is at most k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable

from lowcond.errors import BudgetExceeded, DomainError
from lowcond.graph import UndirectedGraph
from lowcond.oracle import CIOracle
from lowcond.separators import degree_two

__all__ = [
    "KGraph",
    "KGraphSequence",
    "LearnReport",
    "build_k_graph",
    "build_k_partial_graph",
    "k_graph_sequence",
    "learn_with_stopping",
    "structural_hamming_distance",
    "DEFAULT_MAX_QUERIES",
]

DEFAULT_MAX_QUERIES = 10**7


@dataclass(frozen=True)
class KGraph:
    k: int
    graph: UndirectedGraph
    witnesses: dict[tuple[Hashable, Hashable], frozenset] = field(repr=False)
    queries: int
    d2: int

    def to_dict(self) -> dict:
        g = self.graph
        return {
            "k": self.k,
            "edge_count": g.number_of_edges(),
            "d2": self.d2,
            "queries": self.queries,
            "edges": [[str(a), str(b)] for a, b in g.edges()],
            "witnesses": [
                {"a": str(a), "b": str(b), "separator": [str(v) for v in g.sorted_labels(sep)]}
                for (a, b), sep in self.witnesses.items()
            ],
        }


@dataclass
class KGraphSequence:
    """G_0 .. G_K in order of k (``steps[i].k == i`` for sequences from k = 0)."""

    steps: list[KGraph] = field(default_factory=list)

    @property
    def graphs(self) -> list[UndirectedGraph]:
        return [s.graph for s in self.steps]

    def __getitem__(self, k: int) -> UndirectedGraph:
        for s in self.steps:
            if s.k == k:
                return s.graph
        raise KeyError(k)

    def __len__(self) -> int:
        return len(self.steps)

    def is_nested(self, start: int = 1) -> bool:
        """True iff E_K within ... within E_start."""
        edges = [_edge_set(s.graph) for s in self.steps if s.k >= start]
        return all(later <= earlier for earlier, later in zip(edges, edges[1:]))

    def covariance_nested(self) -> bool | None:
        """E_1 within E_0, or None when either graph is missing."""
        try:
            return _edge_set(self[1]) <= _edge_set(self[0])
        except KeyError:
            return None

    def to_dict(self) -> dict:
        return {
            "steps": [s.to_dict() for s in self.steps],
            "nested_from_1": self.is_nested(1),
            "e1_within_e0": self.covariance_nested(),
        }


@dataclass
class LearnReport:
    sequence: KGraphSequence
    stopped_at: int | None
    result: UndirectedGraph | None
    certificate: int | None
    query_count: int
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        res = None
        if self.result is not None:
            res = {
                "vertices": [str(v) for v in self.result.vertices],
                "edges": [[str(a), str(b)] for a, b in self.result.edges()],
            }
        return {
            "stopped_at": self.stopped_at,
            "certificate": self.certificate,
            "query_count": self.query_count,
            "warnings": list(self.warnings),
            "result": res,
            "sequence": self.sequence.to_dict(),
        }


def _edge_set(g: UndirectedGraph) -> set[tuple[int, int]]:
    return set(g.edge_indices())


def _check_order(oracle: CIOracle, k: int) -> int:
    p = len(oracle.vertices)
    if not 0 <= k <= p - 2:
        raise DomainError(f"conditioning order k={k} outside 0..{p - 2}")
    return p


def _build(
    oracle: CIOracle,
    orders: range,
    *,
    restrict: KGraph | None = None,
    budget: int | None = None,
    k_label: int,
) -> KGraph:
    """Delete (a, b) as soon as some order in ``orders`` yields a witness.

    ``restrict`` switches to neighbourhood search on the previous step:
    pairs it already separated stay separated with their old witness, and
    conditioning sets come from the neighbours of a, then of b, there.
    """
    p = len(oracle.vertices)
    labels = oracle.vertices
    start = oracle.query_count
    adj = [0] * p
    witnesses = {}
    for a, b in itertools.combinations(range(p), 2):
        if budget is not None and oracle.query_count - start > budget:
            raise BudgetExceeded(f"query budget of {budget} exhausted at k={k_label}")
        if restrict is not None and not restrict.graph.masks[a] >> b & 1:
            witnesses[(labels[a], labels[b])] = restrict.witnesses[(labels[a], labels[b])]
            continue
        found = None
        for k in orders:
            if restrict is None:
                found, _ = oracle.first_witness(a, b, k)
            else:
                nbrs = restrict.graph.masks
                for side in (nbrs[a] & ~(1 << b), nbrs[b] & ~(1 << a)):
                    found, _ = oracle.first_witness(a, b, k, candidates=side)
                    if found is not None:
                        break
            if found is not None:
                break
        if found is None:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        else:
            witnesses[(labels[a], labels[b])] = frozenset(labels[v] for v in range(p) if found >> v & 1)
    graph = UndirectedGraph.from_masks(labels, adj)
    return KGraph(
        k=k_label,
        graph=graph,
        witnesses=witnesses,
        queries=oracle.query_count - start,
        d2=degree_two(graph) if p else 0,
    )


def build_k_graph(oracle: CIOracle, k: int) -> UndirectedGraph:
    """Graph missing exactly the pairs with an independence witness of size ``k``."""
    _check_order(oracle, k)
    return _build(oracle, range(k, k + 1), k_label=k).graph


def build_k_partial_graph(oracle: CIOracle, k: int) -> UndirectedGraph:
    """Graph missing exactly the pairs with a witness of size at most ``k``."""
    _check_order(oracle, k)
    return _build(oracle, range(k + 1), k_label=k).graph


def k_graph_sequence(
    oracle: CIOracle,
    max_k: int | None = None,
    *,
    neighbors_only: bool = False,
    max_queries: int = DEFAULT_MAX_QUERIES,
) -> KGraphSequence:
    """G_0, ..., G_max_k from ``oracle`` (``max_k`` defaults to |V| - 2)."""
    p = len(oracle.vertices)
    if max_k is None:
        max_k = p - 2
    _check_order(oracle, max_k)
    seq = KGraphSequence()
    budget = max_queries
    start = oracle.query_count
    for k in range(max_k + 1):
        restrict = seq.steps[-1] if (neighbors_only and seq.steps) else None
        try:
            step = _build(oracle, range(k, k + 1), restrict=restrict, budget=budget, k_label=k)
        except BudgetExceeded as exc:
            exc.partial = seq
            raise
        seq.steps.append(step)
        budget = max_queries - (oracle.query_count - start)
    return seq


def learn_with_stopping(
    oracle: CIOracle,
    *,
    max_k: int | None = None,
    neighbors_only: bool = False,
    max_queries: int = DEFAULT_MAX_QUERIES,
) -> LearnReport:
    """Concentration graph from ``oracle`` via the degree-two stopping rule.

    G_0 is built for the report only. For k = 1, 2, ... the k-graph is built
    and the search stops at the first k with ``d2(G_k) <= k``. When no k up
    to ``max_k`` (default |V| - 2) qualifies, the last graph is returned with
    ``stopped_at=None`` and a warning.
    """
    p = len(oracle.vertices)
    if p < 3:
        raise DomainError(f"need at least 3 vertices for a conditioning order in 1..|V|-2, got {p}")
    if max_k is None:
        max_k = p - 2
    if not 1 <= max_k <= p - 2:
        raise DomainError(f"max_k={max_k} outside 1..{p - 2}")

    start = oracle.query_count
    seq = KGraphSequence()

    def partial_report(reason: str) -> LearnReport:
        last = seq.steps[-1].graph if seq.steps else None
        return LearnReport(seq, None, last, None, oracle.query_count - start, [reason])

    for k in range(max_k + 1):
        restrict = seq.steps[-1] if (neighbors_only and seq.steps) else None
        budget = max_queries - (oracle.query_count - start)
        try:
            step = _build(oracle, range(k, k + 1), restrict=restrict, budget=budget, k_label=k)
        except BudgetExceeded as exc:
            exc.partial = partial_report(str(exc))
            raise
        seq.steps.append(step)
        if k >= 1 and step.d2 <= k:
            return LearnReport(seq, k, step.graph, step.d2, oracle.query_count - start)

    last = seq.steps[-1]
    warning = (
        f"no k in 1..{max_k} with d2(G_k) <= k; returning G_{max_k}. Either d2 of the "
        f"true graph exceeds {p - 2} or the oracle is not perfectly Markov"
    )
    return LearnReport(seq, None, last.graph, None, oracle.query_count - start, [warning])


def structural_hamming_distance(g: UndirectedGraph, h: UndirectedGraph) -> int:
    """Number of vertex pairs adjacent in exactly one of the two graphs."""
    if set(g.vertices) != set(h.vertices):
        raise DomainError("graphs must share the same vertex set")
    if g.vertices != h.vertices:
        h = UndirectedGraph(g.vertices, h.edges())
    return sum((x ^ y).bit_count() for x, y in zip(g.masks, h.masks)) // 2
