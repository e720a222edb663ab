"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py --vertices 12 --graphs 200

Times reach, min_vertex_cut and first_witness on the same random graphs,
then a slice of the property suite, once per available backend.
"""

import argparse
import itertools
import random
import time

from lowcond import kernels, random_graph
from lowcond.verify import run_suite


def _pairs(g):
    adj = g.masks
    return [(a, b) for a, b in itertools.combinations(range(len(g)), 2) if not adj[a] >> b & 1]


def bench_backend(name, graphs, suite_n):
    kernels.set_backend(name)
    rows = {}

    start = time.perf_counter()
    for g in graphs:
        for v in range(len(g)):
            kernels.reach(g.masks, 1 << v, 0)
    rows["reach"] = time.perf_counter() - start

    start = time.perf_counter()
    for g in graphs:
        for a, b in _pairs(g):
            kernels.min_vertex_cut(g.masks, a, b)
    rows["min_vertex_cut"] = time.perf_counter() - start

    start = time.perf_counter()
    for g in graphs:
        for a, b in _pairs(g):
            kernels.first_witness(g.masks, a, b, 2)
    rows["first_witness(k=2)"] = time.perf_counter() - start

    start = time.perf_counter()
    run_suite(suite_n, 0, 0, exhaustive_max=suite_n)
    rows[f"suite |V|<={suite_n}"] = time.perf_counter() - start
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--vertices", type=int, default=12)
    parser.add_argument("--graphs", type=int, default=200)
    parser.add_argument("--edge-prob", type=float, default=0.3)
    parser.add_argument("--suite-vertices", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = random.Random(args.seed)
    graphs = [random_graph(args.vertices, args.edge_prob, rng) for _ in range(args.graphs)]
    previous = kernels.BACKEND
    results = {}
    try:
        for name in kernels.available_backends():
            results[name] = bench_backend(name, graphs, args.suite_vertices)
    finally:
        kernels.set_backend(previous)

    names = list(results)
    print(f"{args.graphs} graphs, |V|={args.vertices}, p={args.edge_prob}")
    print(f"{'kernel':<22}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for row in results[names[0]]:
        line = f"{row:<22}" + "".join(f"{results[n][row]:>11.3f}s" for n in names)
        if "cython" in results and "python" in results:
            line += f"{results['python'][row] / results['cython'][row]:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
