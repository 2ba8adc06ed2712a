"""Compare the compiled and numpy tableau kernels.

Two measurements: raw Bareiss pivots on random int64 tableaus, and full
exact LP solves taken from the verification suites (fiber checks and
objective optimizations of the matching and cycle formulations).

    python benchmarks/bench_pivot.py --repeat 3
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from efforge.builders import build_cycle_ef, build_matching_ef
from efforge.graph import CompleteGraphContext, enumerate_matchings
from efforge.hashfam import build_family
from efforge.lp import kernels, solve
from efforge.polyhedra import fiber_lp, random_objectives


def pivot_workload(rng: np.random.Generator, shape: tuple[int, int], count: int):
    work = []
    for _ in range(count):
        T = rng.integers(-50, 51, size=shape).astype(np.int64)
        r, c = int(rng.integers(shape[0])), int(rng.integers(shape[1] - 1))
        T[r, c] = 1  # p == D: the sparse path the simplex hits most
        work.append((T, r, c))
    return work


def time_pivots(kern, work) -> float:
    copies = [(T.copy(), r, c) for T, r, c in work]
    start = time.perf_counter()
    for T, r, c in copies:
        kern.pivot(T, r, c, 1)
    return time.perf_counter() - start


def lp_workload():
    lps = []
    ef = build_matching_ef(7, 3, build_family(7, 6))
    for m in enumerate_matchings(CompleteGraphContext(7), 3)[:20]:
        lps.append(fiber_lp(ef, m.vector()))
    for c in random_objectives(21, 10, 1):
        lps.append(ef.to_lp(ef.objective_on_y(c)[0]))
    cyc = build_cycle_ef(6, 4, build_family(6, 4))
    for c in random_objectives(15, 10, 2):
        lps.append(cyc.to_lp(cyc.objective_on_y(c)[0]))
    return lps


def time_solves(kern, lps) -> tuple[float, list]:
    saved = kernels.active
    kernels.active = kern
    try:
        start = time.perf_counter()
        values = [solve(lp).value for lp in lps]
        return time.perf_counter() - start, values
    finally:
        kernels.active = saved


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--pivots", type=int, default=2000)
    args = parser.parse_args()

    backends = [("numpy", kernels.python_kernels)]
    if kernels.compiled_kernels is not None:
        backends.insert(0, ("cython", kernels.compiled_kernels))
    else:
        print("compiled kernels not built; timing the numpy fallback only")

    rng = np.random.default_rng(0)
    for shape in [(20, 40), (80, 200), (200, 500)]:
        work = pivot_workload(rng, shape, args.pivots if shape[0] < 200 else args.pivots // 10)
        row = []
        for name, kern in backends:
            best = min(time_pivots(kern, work) for _ in range(args.repeat))
            row.append(f"{name} {1e6 * best / len(work):8.1f} us/pivot")
        print(f"pivot {shape[0]:>3}x{shape[1]:<3}  " + "   ".join(row))

    lps = lp_workload()
    results = {}
    for name, kern in backends:
        best, values = min((time_solves(kern, lps) for _ in range(args.repeat)), key=lambda t: t[0])
        results[name] = values
        print(f"exact solves ({len(lps)} LPs)  {name:6s} {best:7.2f} s")
    if len(results) == 2:
        assert results["cython"] == results["numpy"], "backends disagree"
        print("backends agree on every optimum")


if __name__ == "__main__":
    main()
