"""Compare the compiled and pure-Python kernels.

Times three workloads per backend: raw hull calls, raw simplex calls, and
``world_vertices`` on random trees (cache cleared between repeats).  Both
backends must return identical answers; the script refuses to report
timings otherwise.

    python3 benchmarks/bench_kernels.py --repeat 3
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from affine_planner import _kernels
from affine_planner.oracle import generators as gen
from affine_planner.oracle import vertices


def hull_cases(rng: random.Random, n: int):
    out = []
    for _ in range(n):
        k = rng.randint(2, 4)
        pts = [[rng.randint(-40, 40) for _ in range(k)] for _ in range(rng.randint(20, 60))]
        out.append(pts)
    return out


def simplex_cases(rng: random.Random, n: int):
    out = []
    for _ in range(n):
        m, k = rng.randint(3, 8), rng.randint(4, 10)
        a = [[rng.randint(-9, 9) for _ in range(k)] for _ in range(m)]
        b = [rng.randint(-9, 9) for _ in range(m)]
        c = [rng.randint(-9, 9) for _ in range(k)]
        out.append((a, b, c))
    return out


def tree_cases(rng: random.Random, n: int):
    bounds = gen.Bounds()
    out = []
    for _ in range(n):
        space = gen.random_space(rng, bounds, size=4)
        out.append((gen.random_tree(rng, space, bounds), space))
    return out


def run_hull(cases):
    out = []
    for pts in cases:
        try:
            out.append(_kernels.hull(pts))
        except ValueError:
            out.append(None)
    return out


def run_simplex(cases):
    return [_kernels.simplex(a, b, c) for a, b, c in cases]


def run_worlds(cases):
    vertices._world_vertices.cache_clear()
    return [vertices.world_vertices(t, space).points for t, space in cases]


WORKLOADS = {"hull": (hull_cases, run_hull), "simplex": (simplex_cases, run_simplex),
             "world_vertices": (tree_cases, run_worlds)}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cases", type=int, default=150)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = sorted(_kernels.BACKENDS)
    previous = _kernels.BACKEND
    print(f"backends available: {', '.join(backends)}")
    rows = []
    try:
        for name, (make, run) in WORKLOADS.items():
            cases = make(random.Random(args.seed), args.cases)
            answers, timings = {}, {}
            for backend in backends:
                _kernels.use(backend)
                times = []
                for _ in range(args.repeat):
                    start = time.perf_counter()
                    answers[backend] = run(cases)
                    times.append(time.perf_counter() - start)
                timings[backend] = statistics.median(times)
            if len({repr(a) for a in answers.values()}) != 1:
                raise SystemExit(f"{name}: backends disagree")
            rows.append((name, timings))
    finally:
        _kernels.use(previous)

    print(f"{'workload':<16}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, timings in rows:
        line = f"{name:<16}" + "".join(f"{timings[b]:>11.3f}s" for b in backends)
        if "cython" in timings:
            line += f"{timings['python'] / timings['cython']:>11.2f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
