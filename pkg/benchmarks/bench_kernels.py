"""Compare the compiled and pure-Python search kernels on the workloads
this package is built around.

Usage:
    python benchmarks/bench_kernels.py [--repeats N]

Each instance is prepared once (constraints and branching order), then both
backends solve it repeatedly; the table reports the best wall time per
backend and the resulting speedup.  Both backends implement the identical
algorithm, so the status column must agree; the run aborts if it does not.
"""

from __future__ import annotations

import argparse
import time

from rado.kernel import available_backends, solve_avoidability
from rado.search import SearchProblem, _branch_order, build_constraints
from rado.systems import ScalarSystem, VectorSystem

SCHUR = ScalarSystem.from_rows([[1, 1, -1]])
PROGRESSION = ScalarSystem.from_rows([[-1, 1, 0, -1], [0, -1, 1, -1]])
MOTIVATING = VectorSystem.from_rows([[[1, 1, -1, 0]], [[-1, 1, 0, -1], [0, -1, 1, -1]]])
DIAG_SCHUR = VectorSystem.diagonal(SCHUR, 2)


def instances():
    yield "motivating n=8 (SAT)", SearchProblem(MOTIVATING, colors=2, mask=(0, 1, 2)), 8
    yield "motivating n=9 (UNSAT)", SearchProblem(MOTIVATING, colors=2, mask=(0, 1, 2)), 9
    yield "3-progressions r=2 n=9", SearchProblem(VectorSystem((PROGRESSION,)), colors=2, mask=(0, 1, 2)), 9
    yield "3-progressions r=3 n=27", SearchProblem(VectorSystem((PROGRESSION,)), colors=3, mask=(0, 1, 2)), 27
    yield "sum triples r=3 n=14", SearchProblem(VectorSystem((SCHUR,)), colors=3), 14
    yield "non-degenerate diagonal n=7", SearchProblem(DIAG_SCHUR, colors=2, exclude_degenerate=True), 7
    yield "non-degenerate diagonal n=12", SearchProblem(DIAG_SCHUR, colors=2, exclude_degenerate=True), 12


def best_time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def run(repeats):
    backends = available_backends()
    print(f"backends: {', '.join(backends)}  (repeats per cell: {repeats})")
    header = f"{'instance':<34} {'points':>6} {'cons':>5} {'status':>7}"
    for b in backends:
        header += f" {b:>12}"
    if len(backends) == 2:
        header += f" {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, problem, n in instances():
        cs = build_constraints(problem, n)
        order = _branch_order(cs)
        num_points = n ** problem.system.d
        times = {}
        statuses = set()
        for backend in backends:
            t, (ok, _) = best_time(
                lambda b=backend: solve_avoidability(
                    num_points, problem.colors, cs.constraints, order, backend=b
                ),
                repeats,
            )
            times[backend] = t
            statuses.add(ok)
        if len(statuses) != 1:
            raise SystemExit(f"backend disagreement on {name!r}")
        status = "SAT" if statuses.pop() else "UNSAT"
        row = f"{name:<34} {num_points:>6} {len(cs.constraints):>5} {status:>7}"
        for backend in backends:
            row += f" {times[backend] * 1e3:>10.3f}ms"
        if len(backends) == 2:
            slow = max(times.values())
            fast = min(times.values())
            row += f" {slow / fast:>7.1f}x"
        print(row)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=25)
    run(parser.parse_args().repeats)
