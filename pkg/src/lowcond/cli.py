"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 model generation error,
4 property failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from lowcond import kernels
from lowcond.errors import (
    BudgetExceeded,
    DomainError,
    GenerationError,
    LowcondError,
    NumericError,
    ParseError,
    UnknownVertexError,
    ValidationError,
)
from lowcond.graph import UndirectedGraph, random_graph, read_graph
from lowcond.learner import (
    DEFAULT_MAX_QUERIES,
    k_graph_sequence,
    learn_with_stopping,
    structural_hamming_distance,
)
from lowcond.oracle import (
    FisherZOracle,
    TestConfig,
    gaussian_oracle,
    generate_faithful_model,
    graph_oracle,
    read_csv,
    sample,
)
from lowcond.separators import INFINITE, separability_order, separability_report
from lowcond.verify import run_suite

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_GENERATION = 3
EXIT_PROPERTY = 4


class CommandFailed(Exception):
    def __init__(self, code: int, doc: dict):
        super().__init__(code)
        self.code = code
        self.doc = doc


def _so(value):
    return str(value) if value is INFINITE else value


# -- subcommands ----------------------------------------------------------------


def cmd_analyze(args) -> dict:
    g = read_graph(args.graph)
    doc = separability_report(g).to_dict()
    doc["vertices"] = [str(v) for v in g.vertices]
    doc["edge_count"] = g.number_of_edges()
    return doc


def cmd_ksequence(args) -> dict:
    g = read_graph(args.graph)
    p = len(g)
    if p < 2:
        raise DomainError("k-graphs need at least 2 vertices")
    max_k = p - 2 if args.max_k is None else args.max_k
    seq = k_graph_sequence(graph_oracle(g), max_k)
    so = separability_order(g)
    first = next((s.k for s in seq.steps if s.graph == g), None)
    so_g0 = separability_order(seq[0])
    e1_within_e0 = seq.covariance_nested()
    nested = seq.is_nested(1) and (e1_within_e0 is not False or not (so_g0 < p - 2))
    # recovery must happen by k = so(G) when the sequence reaches that far
    recovery_ok = so is INFINITE or max_k < so or (first is not None and first <= so)
    doc = {
        "vertices": [str(v) for v in g.vertices],
        "so": _so(so),
        "so_g0": _so(so_g0),
        "max_k": max_k,
        "steps": [
            {"k": s.k, "edge_count": s.graph.number_of_edges(), "d2": s.d2, "equals_graph": s.graph == g}
            for s in seq.steps
        ],
        "nested_from_1": seq.is_nested(1),
        "e1_within_e0": e1_within_e0,
        "nesting_verdict": "PASS" if nested else "FAIL",
        "first_recovery_k": first,
        "recovery_verdict": "PASS" if recovery_ok else "FAIL",
    }
    if args.details:
        doc["sequence"] = seq.to_dict()["steps"]
    if not (nested and recovery_ok):
        raise CommandFailed(EXIT_PROPERTY, doc)
    return doc


def _graph_doc(g: UndirectedGraph) -> dict:
    return {"vertices": [str(v) for v in g.vertices], "edges": [[str(a), str(b)] for a, b in g.edges()]}


def _simulate_one(args, trial_seed: int) -> dict:
    rng = random.Random(trial_seed)
    truth = random_graph(args.vertices, args.edge_prob, rng)
    model = generate_faithful_model(
        truth,
        (args.magnitude_low, args.magnitude_high),
        seed=trial_seed,
        audit_order=args.audit_order,
    )
    config = TestConfig(epsilon=args.epsilon, significance=args.significance)
    pop = learn_with_stopping(gaussian_oracle(model, config), max_queries=args.max_queries)
    run = {
        "seed": trial_seed,
        "truth": _graph_doc(truth),
        "population": {
            "shd": structural_hamming_distance(truth, pop.result),
            "stopped_at": pop.stopped_at,
            "query_count": pop.query_count,
            "warnings": pop.warnings,
        },
    }
    if args.samples is not None:
        data = sample(model, args.samples, seed=trial_seed)
        oracle = FisherZOracle(data, config, truth.vertices)
        est = learn_with_stopping(oracle, max_queries=args.max_queries)
        run["sample"] = {
            "n": args.samples,
            "shd": structural_hamming_distance(truth, est.result),
            "stopped_at": est.stopped_at,
            "query_count": est.query_count,
            "warnings": est.warnings,
            "estimate": _graph_doc(est.result),
        }
    return run


def cmd_simulate(args) -> dict:
    if args.vertices < 3:
        raise DomainError("--vertices must be at least 3")
    if not 0.0 <= args.edge_prob <= 1.0:
        raise DomainError("--edge-prob must lie in [0, 1]")
    if args.trials < 1:
        raise DomainError("--trials must be positive")
    if args.samples is not None and args.samples <= args.vertices + 1:
        raise DomainError(f"--samples must exceed {args.vertices + 1} to test order {args.vertices - 2}")
    runs = [_simulate_one(args, args.seed + t) for t in range(args.trials)]
    summary = {"population_mean_shd": sum(r["population"]["shd"] for r in runs) / len(runs)}
    if args.samples is not None:
        shds = [r["sample"]["shd"] for r in runs]
        summary["sample_mean_shd"] = sum(shds) / len(shds)
        summary["sample_exact_recoveries"] = sum(1 for s in shds if s == 0)
    return {
        "config": {
            "vertices": args.vertices,
            "edge_prob": args.edge_prob,
            "seed": args.seed,
            "trials": args.trials,
            "samples": args.samples,
            "significance": args.significance,
            "epsilon": args.epsilon,
        },
        "runs": runs,
        "summary": summary,
    }


def cmd_learn(args) -> dict:
    labels, data = read_csv(args.csv)
    p, n = len(labels), data.shape[0]
    if p < 2:
        raise DomainError(f"need at least 2 columns, got {p}")
    max_k = p - 2 if args.max_k is None else args.max_k
    if not 0 <= max_k <= p - 2:
        raise DomainError(f"--max-k must lie in 0..{p - 2}")
    if n <= max_k + 3:
        raise DomainError(f"insufficient samples: n={n} must exceed max_k + 3 = {max_k + 3}")
    oracle = FisherZOracle(data, TestConfig(significance=args.significance), labels)
    if p == 2:
        # the only order is k = 0, where G_0 is already the full-conditioning graph
        seq = k_graph_sequence(oracle, 0, max_queries=args.max_queries)
        doc = {
            "stopped_at": None,
            "certificate": None,
            "query_count": oracle.query_count,
            "warnings": ["two variables: no conditioning order k >= 1 exists; reporting G_0"],
            "result": _graph_doc(seq[0]),
            "sequence": seq.to_dict(),
        }
    else:
        if max_k < 1:
            raise DomainError("--max-k must be at least 1 for three or more columns")
        report = learn_with_stopping(
            oracle, max_k=max_k, neighbors_only=args.neighbors_only, max_queries=args.max_queries
        )
        doc = report.to_dict()
    doc["n"] = n
    doc["significance"] = args.significance
    return doc


def cmd_verify(args) -> dict:
    if args.vertices < 2:
        raise DomainError("--vertices must be at least 2")
    if args.trials < 0:
        raise DomainError("--trials must be nonnegative")
    verdict = run_suite(
        args.vertices,
        args.trials,
        args.seed,
        exhaustive_max=args.exhaustive_max,
        corrupt=args.inject_fault,
    )
    doc = verdict.to_dict()
    doc["config"] = {
        "vertices": args.vertices,
        "trials": args.trials,
        "seed": args.seed,
        "exhaustive_max": args.exhaustive_max,
        "inject_fault": args.inject_fault,
        "backend": kernels.BACKEND,
    }
    if not verdict.passed:
        raise CommandFailed(EXIT_PROPERTY, doc)
    return doc


# -- plumbing -------------------------------------------------------------------


def _render_text(doc, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_render_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                sub = _render_text(item, indent + 2)
                sub[0] = f"{pad}  - " + sub[0].lstrip()
                lines.extend(sub)
        elif isinstance(value, str) and "\n" in value:
            lines.append(f"{pad}{key}: |")
            lines.extend(f"{pad}  {line}" for line in value.rstrip("\n").splitlines())
        else:
            lines.append(f"{pad}{key}: {json.dumps(value)}")
    return lines


def _emit(doc: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(_render_text(doc)) + "\n"
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="lowcond",
        description="Concentration graphs by low-order conditioning.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="separability order, degree and degree two of a graph")
    p.add_argument("graph", help="edge-list file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("ksequence", parents=[common], help="k-graphs of a graph under its separation oracle")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--details", action="store_true", help="include edge lists and witnesses per k")
    p.set_defaults(func=cmd_ksequence)

    p = sub.add_parser("simulate", parents=[common], help="random graph -> Gaussian model -> learned graph")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--edge-prob", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, default=1, help="runs with seeds seed, seed+1, ...")
    p.add_argument("--samples", type=int, default=None, help="also learn from this many samples")
    p.add_argument("--significance", type=float, default=0.05)
    p.add_argument("--epsilon", type=float, default=1e-9)
    p.add_argument("--magnitude-low", type=float, default=0.2)
    p.add_argument("--magnitude-high", type=float, default=0.8)
    p.add_argument("--audit-order", type=int, default=None, help="largest conditioning set audited (default |V|-2)")
    p.add_argument("--max-queries", type=int, default=DEFAULT_MAX_QUERIES)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("learn", parents=[common], help="learn a concentration graph from CSV data")
    p.add_argument("csv", help="CSV file: header of labels, one sample per row")
    p.add_argument("--significance", type=float, default=0.05)
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--neighbors-only", action="store_true", help="condition only on current neighbours")
    p.add_argument("--max-queries", type=int, default=DEFAULT_MAX_QUERIES)
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("verify", parents=[common], help="run the property suites")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--exhaustive-max", type=int, default=6)
    p.add_argument("--inject-fault", action="store_true", help="corrupt one oracle answer per graph")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except CommandFailed as exc:
        _emit(exc.doc, args)
        return exc.code
    except GenerationError as exc:
        print(f"lowcond: generation error: {exc}", file=sys.stderr)
        return EXIT_GENERATION
    except (ParseError, ValidationError, DomainError, UnknownVertexError, NumericError, OSError) as exc:
        print(f"lowcond: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"lowcond: {exc}", file=sys.stderr)
        if exc.partial is not None:
            _emit({"aborted": str(exc), "partial": exc.partial.to_dict()}, args)
        return EXIT_INPUT
    except LowcondError as exc:
        print(f"lowcond: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(doc, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
