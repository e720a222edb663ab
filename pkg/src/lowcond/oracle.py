"""Conditional-independence oracles.

An oracle answers "is X_a independent of X_b given X_S?" for vertices of a
fixed vertex set. Three backends are provided: graph separation (a
distribution perfectly Markov to a known graph, by construction), exact
Gaussian partial correlations, and a Fisher z test on sampled data.
"""

from __future__ import annotations

import csv
import itertools
import math
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Iterable, Sequence

import numpy as np
from scipy import linalg, stats

from lowcond import kernels
from lowcond.errors import (
    DomainError,
    GenerationError,
    NumericError,
    UnknownVertexError,
    ValidationError,
)
from lowcond.graph import UndirectedGraph, iter_bits, separates

__all__ = [
    "CIOracle",
    "GraphOracle",
    "GaussianOracle",
    "FisherZOracle",
    "TableOracle",
    "FlippedOracle",
    "GaussianModel",
    "TestConfig",
    "graph_oracle",
    "gaussian_oracle",
    "fisher_z_oracle",
    "generate_faithful_model",
    "partial_correlation",
    "sample",
    "read_csv",
    "write_csv",
]

CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class TestConfig:
    epsilon: float = 1e-9
    significance: float = 0.05
    sample_size: int | None = None

    __test__ = False  # keep pytest from collecting this class

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise DomainError(f"epsilon must be nonnegative, got {self.epsilon}")
        if not 0 < self.significance < 1:
            raise DomainError(f"significance must lie in (0, 1), got {self.significance}")
        if self.sample_size is not None and self.sample_size < 1:
            raise DomainError(f"sample_size must be positive, got {self.sample_size}")


class CIOracle:
    """Base class: validates queries, counts them, enumerates witnesses.

    Subclasses implement :meth:`_independent` on vertex indices and a mask
    of conditioning indices. ``query_count`` is safe to read while queries
    run on several threads.
    """

    def __init__(self, vertices: Sequence[Hashable]):
        self.vertices = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise ValidationError("oracle vertices must be distinct")
        self._count = 0
        self._lock = threading.Lock()

    @property
    def query_count(self) -> int:
        return self._count

    def _tally(self, n: int = 1) -> None:
        with self._lock:
            self._count += n

    def _idx(self, v) -> int:
        try:
            return self._index[v]
        except (KeyError, TypeError):
            raise UnknownVertexError(v) from None

    def query(self, alpha, beta, S: Iterable = ()) -> bool:
        """True when X_alpha and X_beta are independent given X_S."""
        a, b = self._idx(alpha), self._idx(beta)
        s = 0
        for v in S:
            s |= 1 << self._idx(v)
        return self.query_indices(a, b, s)

    def query_indices(self, a: int, b: int, s: int) -> bool:
        if a == b:
            raise DomainError("query needs two distinct vertices")
        if s >> a & 1 or s >> b & 1:
            raise DomainError("conditioning set must exclude the queried pair")
        if a > b:
            a, b = b, a
        self._tally()
        return bool(self._independent(a, b, s))

    def _independent(self, a: int, b: int, s: int) -> bool:
        raise NotImplementedError

    def first_witness(self, a: int, b: int, k: int, candidates: int | None = None) -> tuple[int | None, int]:
        """First size-``k`` conditioning set (as a mask) making ``a``, ``b`` independent.

        Sets are drawn from ``candidates`` (default: every other vertex) in
        lexicographic order of their sorted index tuples. Returns the mask or
        ``None`` together with the number of queries spent.
        """
        n = len(self.vertices)
        if candidates is None:
            cand = [v for v in range(n) if v != a and v != b]
        else:
            cand = [v for v in iter_bits(candidates) if v != a and v != b]
        spent = 0
        for combo in itertools.combinations(cand, k):
            s = 0
            for v in combo:
                s |= 1 << v
            spent += 1
            if self.query_indices(a, b, s):
                return s, spent
        return None, spent


class GraphOracle(CIOracle):
    """Answers by vertex separation in ``graph``.

    The induced independence model is perfectly Markov to the graph.
    Set-level questions go through :meth:`query_sets`.
    """

    def __init__(self, graph: UndirectedGraph):
        super().__init__(graph.vertices)
        self.graph = graph
        self._adj = graph.masks

    def _independent(self, a, b, s):
        return kernels.separates(self._adj, 1 << a, 1 << b, s)

    def query_sets(self, A: Iterable, B: Iterable, S: Iterable = ()) -> bool:
        self._tally()
        return separates(self.graph, A, B, S)

    def first_witness(self, a, b, k, candidates=None):
        if candidates is not None:
            return super().first_witness(a, b, k, candidates)
        mask, tested = kernels.first_witness(self._adj, a, b, k)
        self._tally(tested)
        return (None if mask < 0 else mask), tested


class TableOracle(CIOracle):
    """Independences listed explicitly; everything else is dependent.

    ``independences`` holds ``(a, b, S)`` label triples. Useful for oracles
    that are deliberately not Markov to any graph.
    """

    def __init__(self, vertices: Sequence[Hashable], independences: Iterable[tuple]):
        super().__init__(vertices)
        table = set()
        for alpha, beta, S in independences:
            a, b = sorted((self._idx(alpha), self._idx(beta)))
            s = 0
            for v in S:
                s |= 1 << self._idx(v)
            table.add((a, b, s))
        self._table = frozenset(table)

    def _independent(self, a, b, s):
        return (a, b, s) in self._table


class FlippedOracle(CIOracle):
    """Wraps another oracle and inverts its answer on selected queries."""

    def __init__(self, base: CIOracle, flips: Iterable[tuple]):
        super().__init__(base.vertices)
        self.base = base
        flipped = set()
        for alpha, beta, S in flips:
            a, b = sorted((self._idx(alpha), self._idx(beta)))
            s = 0
            for v in S:
                s |= 1 << self._idx(v)
            flipped.add((a, b, s))
        self._flips = frozenset(flipped)

    def _independent(self, a, b, s):
        answer = self.base._independent(a, b, s)
        return (not answer) if (a, b, s) in self._flips else answer


def graph_oracle(graph: UndirectedGraph) -> GraphOracle:
    return GraphOracle(graph)


# -- Gaussian models --------------------------------------------------------


def _inverse_spd(m: np.ndarray) -> np.ndarray:
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise NumericError(f"matrix is singular to working precision (condition number {cond:.3g})")
    try:
        factor = linalg.cho_factor(m, lower=True)
    except linalg.LinAlgError as exc:
        raise NumericError(f"matrix is not positive definite: {exc}") from None
    return linalg.cho_solve(factor, np.eye(m.shape[0]))


def partial_correlation(sigma: np.ndarray, alpha: int, beta: int, S: Iterable[int] = ()) -> float:
    """Partial correlation of ``alpha`` and ``beta`` given ``S`` (column indices).

    Inverts the covariance restricted to ``{alpha, beta} + S``; the result is
    ``-K[0, 1] / sqrt(K[0, 0] * K[1, 1])`` for that inverse ``K``.
    """
    S = list(S)
    if alpha == beta:
        raise DomainError("partial correlation needs two distinct variables")
    if alpha in S or beta in S:
        raise DomainError("conditioning set must exclude the pair")
    idx = [alpha, beta, *S]
    k = _inverse_spd(np.asarray(sigma, dtype=float)[np.ix_(idx, idx)])
    r = -k[0, 1] / math.sqrt(k[0, 0] * k[1, 1])
    return min(1.0, max(-1.0, float(r)))


class GaussianModel:
    """Zero-mean Gaussian given by its precision matrix.

    ``graph`` is the support of ``omega``: off-diagonal nonzeros are edges.
    """

    PD_TOL = 1e-10
    INVERSE_TOL = 1e-8

    def __init__(self, omega, graph: UndirectedGraph | None = None):
        omega = np.array(omega, dtype=float)
        if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
            raise ValidationError("precision matrix must be square")
        if not np.array_equal(omega, omega.T):
            raise ValidationError("precision matrix must be symmetric")
        p = omega.shape[0]
        if np.linalg.eigvalsh(omega).min() <= self.PD_TOL:
            raise ValidationError("precision matrix must be positive definite")
        support = [0] * p
        for i, j in zip(*np.nonzero(omega)):
            if i != j:
                support[i] |= 1 << int(j)
        if graph is None:
            graph = UndirectedGraph.from_masks([str(i) for i in range(1, p + 1)], support)
        elif len(graph) != p or tuple(support) != graph.masks:
            raise ValidationError("graph does not match the support of the precision matrix")
        sigma = _inverse_spd(omega)
        sigma = (sigma + sigma.T) / 2
        if np.abs(omega @ sigma - np.eye(p)).max() > self.INVERSE_TOL:
            raise NumericError("covariance does not invert the precision matrix to 1e-8")
        omega.setflags(write=False)
        sigma.setflags(write=False)
        self.omega = omega
        self.sigma = sigma
        self.graph = graph

    @property
    def vertices(self):
        return self.graph.vertices

    def __repr__(self):
        return f"GaussianModel(p={self.omega.shape[0]}, edges={self.graph.number_of_edges()})"


def _random_precision(graph: UndirectedGraph, low: float, high: float, rng: np.random.Generator) -> np.ndarray:
    p = len(graph)
    omega = np.zeros((p, p))
    for i, j in graph.edge_indices():
        value = rng.uniform(low, high) * rng.choice((-1.0, 1.0))
        omega[i, j] = omega[j, i] = value
    jitter = rng.uniform(0.1, 0.5, size=p)
    omega[np.diag_indices(p)] = np.abs(omega).sum(axis=1) + jitter
    return omega


def _audit(model: GaussianModel, bound: float, max_order: int) -> tuple | None:
    """First (a, b, S) whose partial correlation contradicts separation, or None."""
    g = model.graph
    adj = g.masks
    p = len(g)
    for a, b in itertools.combinations(range(p), 2):
        rest = [v for v in range(p) if v != a and v != b]
        for r in range(min(max_order, len(rest)) + 1):
            for S in itertools.combinations(rest, r):
                s = 0
                for v in S:
                    s |= 1 << v
                if kernels.separates(adj, 1 << a, 1 << b, s):
                    continue
                if abs(partial_correlation(model.sigma, a, b, S)) <= bound:
                    return a, b, S
    return None


def generate_faithful_model(
    graph: UndirectedGraph,
    magnitude_range: tuple[float, float] = (0.2, 0.8),
    seed: int = 0,
    *,
    audit_bound: float = 1e-6,
    audit_order: int | None = None,
    max_attempts: int = 100,
) -> GaussianModel:
    """Random precision matrix with support exactly ``graph``, audited for faithfulness.

    Off-diagonal entries are uniform on ``+-magnitude_range``; the diagonal is
    the absolute row sum plus a jitter from [0.1, 0.5], which makes the
    matrix diagonally dominant. The audit requires every pair and every
    conditioning set of size at most ``audit_order`` (default ``|V| - 2``)
    that fails to separate the pair to give ``|partial correlation| >
    audit_bound``. Failing draws are redrawn with seed ``seed + attempt``.
    """
    if not len(graph):
        raise DomainError("graph must have at least one vertex")
    low, high = magnitude_range
    if not 0 < low <= high < 1:
        raise DomainError(f"magnitude range must lie inside (0, 1), got {magnitude_range}")
    if audit_order is None:
        audit_order = max(len(graph) - 2, 0)
    offending = None
    for attempt in range(max_attempts):
        rng = np.random.default_rng(seed + attempt)
        model = GaussianModel(_random_precision(graph, low, high, rng), graph)
        offending = _audit(model, audit_bound, audit_order)
        if offending is None:
            return model
    a, b, S = offending
    lab = graph.vertices
    raise GenerationError(
        f"faithfulness audit failed after {max_attempts} attempts; last offender: "
        f"{lab[a]!r}, {lab[b]!r} given {[lab[v] for v in S]!r}"
    )


class GaussianOracle(CIOracle):
    """Population oracle: independent iff ``|partial correlation| <= epsilon``."""

    def __init__(self, model: GaussianModel, config: TestConfig = TestConfig()):
        super().__init__(model.vertices)
        self.model = model
        self.config = config

    def _independent(self, a, b, s):
        r = partial_correlation(self.model.sigma, a, b, iter_bits(s))
        return abs(r) <= self.config.epsilon


def gaussian_oracle(model: GaussianModel, config: TestConfig = TestConfig()) -> GaussianOracle:
    return GaussianOracle(model, config)


def sample(model: GaussianModel, n: int, seed: int) -> np.ndarray:
    """``n`` independent rows from N(0, sigma), reproducible for a fixed seed."""
    if n < 1:
        raise DomainError("sample size must be at least 1")
    try:
        chol = np.linalg.cholesky(model.sigma)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"covariance factorization failed: {exc}") from None
    z = np.random.default_rng(seed).standard_normal((n, chol.shape[0]))
    return z @ chol.T


class FisherZOracle(CIOracle):
    """Fisher z test of zero partial correlation on a data matrix.

    Independence is accepted when ``|atanh(r)| * sqrt(n - |S| - 3)`` does not
    exceed the two-sided normal critical value at ``config.significance``.
    """

    def __init__(self, data, config: TestConfig = TestConfig(), vertices: Sequence[Hashable] | None = None):
        data = np.asarray(data, dtype=float)
        if data.ndim != 2:
            raise DomainError("data must be a 2-D array (rows = samples)")
        n, p = data.shape
        if vertices is None:
            vertices = [str(i) for i in range(1, p + 1)]
        if len(vertices) != p:
            raise DomainError("one label per data column required")
        super().__init__(vertices)
        if not np.isfinite(data).all():
            raise DomainError("data contains non-finite values")
        spread = data.std(axis=0) if n else np.zeros(p)
        for j in range(p):
            if not spread[j] > 0:
                raise DomainError(f"column {vertices[j]!r} is constant")
        self.n = n
        self.config = config
        self.covariance = np.cov(data, rowvar=False).reshape(p, p)
        self.critical = float(stats.norm.ppf(1 - config.significance / 2))

    def statistic(self, r: float, order: int) -> float:
        if self.n <= order + 3:
            raise DomainError(
                f"insufficient samples for conditioning order {order}: n={self.n} must exceed {order + 3}"
            )
        if abs(r) >= 1.0:
            return math.inf
        return abs(math.atanh(r)) * math.sqrt(self.n - order - 3)

    def _independent(self, a, b, s):
        S = list(iter_bits(s))
        if self.n <= len(S) + 3:
            raise DomainError(
                f"insufficient samples for conditioning order {len(S)}: n={self.n} must exceed {len(S) + 3}"
            )
        r = partial_correlation(self.covariance, a, b, S)
        return self.statistic(r, len(S)) <= self.critical


def fisher_z_oracle(data, config: TestConfig = TestConfig(), vertices=None) -> FisherZOracle:
    return FisherZOracle(data, config, vertices)


# -- CSV ------------------------------------------------------------------------


def read_csv(path: str | Path) -> tuple[list[str], np.ndarray]:
    """Header row of labels, then one sample per row."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise ValidationError(f"{path}: empty CSV")
    header = [h.strip() for h in rows[0]]
    if len(set(header)) != len(header) or any(not h for h in header):
        raise ValidationError(f"{path}: column labels must be non-empty and distinct")
    values = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ValidationError(f"{path}: line {lineno} has {len(row)} fields, expected {len(header)}")
        try:
            values.append([float(cell) for cell in row])
        except ValueError as exc:
            raise ValidationError(f"{path}: line {lineno}: {exc}") from None
    data = np.array(values, dtype=float).reshape(len(values), len(header))
    return header, data


def write_csv(path: str | Path, labels: Sequence, data) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([str(v) for v in labels])
        for row in np.asarray(data, dtype=float):
            writer.writerow([repr(float(x)) for x in row])
