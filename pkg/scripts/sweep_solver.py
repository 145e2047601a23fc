#!/usr/bin/env python3
"""Cross-validate the solver against the brute-force oracle on random
biconnected instances and report agreement plus timing percentiles."""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from conndel.families import random_biconnected_graph, random_weights
from conndel.oracles import OracleBudget, oracle_wbd
from conndel.solver import SolveStats, WbdInstance, normalize, solve


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--min-n", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--max-k", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    budget = OracleBudget(max_vertices=args.max_n + 2, max_edges=4 * args.max_n, max_k=args.max_k)
    times = []
    yes = no = mismatches = 0
    for trial in range(args.count):
        g = random_biconnected_graph(rng, rng.randint(args.min_n, args.max_n), rng.randint(0, 4))
        k = rng.randint(0, args.max_k)
        inst = WbdInstance(
            g, k, float(rng.randint(0, 2 + 2 * k)), random_weights(rng, g), frozenset()
        )
        t0 = time.perf_counter()
        got = solve(inst, stats=SolveStats())
        times.append(time.perf_counter() - t0)
        expect = oracle_wbd(normalize(inst), budget)
        if (got is None) != (expect is None):
            mismatches += 1
            print(f"MISMATCH trial={trial} n={g.n} m={g.m} k={k}")
        if got is None:
            no += 1
        else:
            yes += 1
    times.sort()
    pct = lambda p: times[min(len(times) - 1, int(p * len(times)))] * 1000
    print(
        f"{args.count} instances: {yes} yes / {no} no, {mismatches} mismatches; "
        f"solve ms p50={pct(0.5):.2f} p90={pct(0.9):.2f} max={times[-1] * 1000:.2f}"
    )
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
