"""Property suites over exhaustive small graphs and random larger ones.

Every check records one outcome under a property name; the harness tallies
them and keeps the smallest failing graph as a counterexample (fewest
vertices, then fewest edges).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from lowcond import kernels
from lowcond.graph import (
    UndirectedGraph,
    all_graphs,
    component_masks,
    induced_subgraph,
    iter_bits,
    random_graph,
    serialize_graph,
)
from lowcond.learner import build_k_partial_graph, k_graph_sequence, learn_with_stopping
from lowcond.oracle import CIOracle, FlippedOracle, graph_oracle
from lowcond.separators import (
    INFINITE,
    degree_two,
    is_minimal_separator,
    minimal_separator_near,
    separability_order,
    separability_report,
)

__all__ = ["PROPERTIES", "Violation", "Verdict", "check_graph", "run_suite", "corrupted_oracle"]

PROPERTIES = (
    "so_zero_iff_cliques",
    "so_infinite_iff_complete",
    "witness_attains_so",
    "pairs_within_so",
    "so_max_over_components",
    "so_at_most_degree",
    "degree_two_monotone",
    "so_at_most_degree_two",
    "maxflow_vs_bruteforce",
    "separator_near",
    "full_conditioning",
    "recovery_at_so",
    "nesting",
    "contains_true_edges",
    "partial_matches_k_graph",
    "disconnected_recovery",
    "singleton_covariance_separator",
    "zero_one_graph",
    "stopping_rule_recovery",
    "stopping_certificate",
)


@dataclass
class Violation:
    prop: str
    graph: UndirectedGraph
    detail: str

    def key(self):
        return (len(self.graph), self.graph.number_of_edges())

    def to_dict(self) -> dict:
        return {"property": self.prop, "detail": self.detail, "graph": serialize_graph(self.graph)}


@dataclass
class Verdict:
    graphs_checked: dict[str, int] = field(default_factory=dict)
    checked: dict[str, int] = field(default_factory=lambda: dict.fromkeys(PROPERTIES, 0))
    violations: dict[str, int] = field(default_factory=lambda: dict.fromkeys(PROPERTIES, 0))
    counterexample: Violation | None = None

    @property
    def passed(self) -> bool:
        return not any(self.violations.values())

    def record(self, prop: str, ok: bool, graph: UndirectedGraph, detail: str = "") -> None:
        self.checked[prop] += 1
        if ok:
            return
        self.violations[prop] += 1
        v = Violation(prop, graph, detail)
        if self.counterexample is None or v.key() < self.counterexample.key():
            self.counterexample = v

    def to_dict(self) -> dict:
        return {
            "verdict": "PASS" if self.passed else "FAIL",
            "graphs_checked": dict(self.graphs_checked),
            "properties": {
                p: {"checked": self.checked[p], "violations": self.violations[p]} for p in PROPERTIES
            },
            "counterexample": None if self.counterexample is None else self.counterexample.to_dict(),
        }


def corrupted_oracle(g: UndirectedGraph) -> CIOracle:
    """Separation oracle with one answer flipped: the first pair given all others."""
    base = graph_oracle(g)
    if len(g) < 2:
        return base
    a, b = g.vertices[:2]
    return FlippedOracle(base, [(a, b, g.vertices[2:])])


def _brute_min_cut(adj, a: int, b: int) -> int:
    n = len(adj)
    for k in range(n - 1):
        mask, _ = kernels.first_witness(adj, a, b, k)
        if mask >= 0:
            return k
    raise AssertionError("non-adjacent pair with no separator")


def _is_clique(adj, mask: int) -> bool:
    return all((adj[v] | (1 << v)) & mask == mask for v in iter_bits(mask))


def check_graph(
    g: UndirectedGraph,
    verdict: Verdict,
    rng: random.Random,
    oracle_factory: Callable[[UndirectedGraph], CIOracle] = graph_oracle,
) -> None:
    """Run every property on ``g``, recording outcomes into ``verdict``."""
    n = len(g)
    adj = g.masks
    full = g.full_mask
    rec = verdict.record
    report = separability_report(g)
    so, d, d2 = report.so, report.d, report.d2
    complete = g.is_complete()
    connected = g.is_connected()
    comps = component_masks(adj)
    nonadj = [(a, b) for a, b in itertools.combinations(range(n), 2) if not adj[a] >> b & 1]
    lab = g.vertices

    # separability order
    all_cliques = all(_is_clique(adj, c) for c in comps)
    rec("so_zero_iff_cliques", (so == 0) == (all_cliques and not complete), g, f"so={so}, component-complete={all_cliques}")
    rec("so_infinite_iff_complete", (so is INFINITE) == complete, g, f"so={so}, complete={complete}")
    if so is not INFINITE and so > 0:
        wa, wb, wsep = report.witness
        ok = len(wsep) == so and is_minimal_separator(g, wa, wb, wsep)
        rec("witness_attains_so", ok, g, f"witness {wa},{wb} | {sorted(map(str, wsep))} for so={so}")
        for a, b in nonadj:
            size, cut = kernels.min_vertex_cut(adj, a, b)
            pad = [v for v in range(n) if v not in (a, b) and not cut >> v & 1]
            s = cut
            for v in pad[: so - size]:
                s |= 1 << v
            ok = s.bit_count() == so and kernels.separates(adj, 1 << a, 1 << b, s)
            rec("pairs_within_so", ok, g, f"pair {lab[a]},{lab[b]} has no separator of size {so}")
        parts = [
            separability_order(induced_subgraph(g, g.labels_of(c)))
            for c in comps
            if not _is_clique(adj, c)
        ]
        rec("so_max_over_components", bool(parts) and so == max(parts), g, f"so={so}, component orders={parts}")

    # degree bounds
    if not complete:
        rec("so_at_most_degree", so <= d, g, f"so={so} > d={d}")
        if connected:
            rec("so_at_most_degree_two", so <= d2, g, f"so={so} > d2={d2}")
    missing = [(lab[a], lab[b]) for a, b in nonadj]
    if missing:
        bigger = g.with_edges([rng.choice(missing)])
        rec("degree_two_monotone", degree_two(bigger) >= d2, g, f"adding an edge lowered d2 from {d2}")

    # separator computations
    for a, b in nonadj:
        brute = _brute_min_cut(adj, a, b)
        rec(
            "maxflow_vs_bruteforce",
            report.pair_orders[(lab[a], lab[b])] == brute,
            g,
            f"pair {lab[a]},{lab[b]}: max-flow {report.pair_orders[(lab[a], lab[b])]} vs brute force {brute}",
        )
        if kernels.reach(adj, 1 << a, 0) >> b & 1:
            near = minimal_separator_near(g, lab[a], lab[b])
            near_mask = g.mask_of(near)
            ok = (
                near_mask & ~adj[a] == 0
                and is_minimal_separator(g, lab[a], lab[b], near)
                and all(adj[v].bit_count() >= 2 for v in iter_bits(near_mask))
            )
            rec("separator_near", ok, g, f"pair {lab[a]},{lab[b]}: {sorted(map(str, near))}")

    # covariance separation by a single vertex
    if so is not INFINITE and so < n - 2:
        for a, b in nonadj:
            ok = any(
                kernels.separates(adj, 1 << a, 1 << b, full & ~((1 << a) | (1 << b) | (1 << c)))
                for c in range(n)
                if c not in (a, b)
            )
            rec("singleton_covariance_separator", ok, g, f"pair {lab[a]},{lab[b]} has no singleton covariance separator")

    if n < 2:
        return

    oracle = oracle_factory(g)
    seq = k_graph_sequence(oracle)
    edges = [set(step.graph.edge_indices()) for step in seq.steps]
    true_edges = set(g.edge_indices())
    rec("full_conditioning", seq.steps[-1].graph == g, g, f"G_{n - 2} differs from the graph")
    if n < 3:
        return

    if connected and not complete and so >= 1:
        rec("recovery_at_so", edges[so] == true_edges, g, f"G_{so} differs from the graph")
    if not connected and not complete:
        for k in range(max(so, 1), n - 1):
            rec("disconnected_recovery", edges[k] == true_edges, g, f"G_{k} differs (so={so})")
    for j in range(1, n - 1):
        for k in range(j + 1, n - 1):
            rec("nesting", edges[k] <= edges[j], g, f"E_{k} not within E_{j}")
    for k in range(1, n - 1):
        rec("contains_true_edges", true_edges <= edges[k], g, f"E not within E_{k}")
        partial = build_k_partial_graph(oracle_factory(g), k)
        rec("partial_matches_k_graph", set(partial.edge_indices()) == edges[k], g, f"E_{k}^p differs from E_{k}")
    rec("zero_one_graph", edges[0] & edges[1] == edges[1], g, "E_0 & E_1 differs from E_1")

    learned = learn_with_stopping(oracle_factory(g))
    if complete:
        ok = learned.stopped_at is None and bool(learned.warnings) and learned.result == g
        rec("stopping_rule_recovery", ok, g, f"complete graph stopped at {learned.stopped_at}")
    elif d2 <= n - 2:
        k = learned.stopped_at
        ok = k is not None and learned.result == g and learned.certificate <= k
        rec("stopping_rule_recovery", ok, g, f"stopped_at={k}, recovered={learned.result == g}")
        if k is not None:
            res = learned.result
            so_res, d2_res = separability_order(res), degree_two(res)
            rec("stopping_certificate", so_res <= d2_res <= k, g, f"so={so_res}, d2={d2_res}, k={k}")


def _exhaustive(max_n: int) -> Iterator[tuple[str, UndirectedGraph]]:
    for n in range(2, max_n + 1):
        for g in all_graphs(n):
            yield str(n), g


def run_suite(
    vertices: int,
    trials: int,
    seed: int,
    *,
    exhaustive_max: int = 6,
    corrupt: bool = False,
    progress: Callable[[str, int], None] | None = None,
) -> Verdict:
    """Exhaustive graphs on 2..min(vertices, exhaustive_max) vertices plus
    ``trials`` random graphs on ``vertices`` vertices.

    Random graphs draw their edge probability uniformly from [0.1, 0.9].
    ``corrupt`` swaps in :func:`corrupted_oracle` to self-test the harness.
    """
    rng = random.Random(seed)
    verdict = Verdict()
    factory = corrupted_oracle if corrupt else graph_oracle

    def graphs():
        yield from _exhaustive(min(vertices, exhaustive_max))
        for _ in range(trials):
            yield f"random_{vertices}", random_graph(vertices, rng.uniform(0.1, 0.9), rng)

    for key, g in graphs():
        verdict.graphs_checked[key] = verdict.graphs_checked.get(key, 0) + 1
        check_graph(g, verdict, rng, factory)
        if progress is not None:
            progress(key, verdict.graphs_checked[key])
    return verdict

