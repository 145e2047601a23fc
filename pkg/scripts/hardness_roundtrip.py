#!/usr/bin/env python3
"""Generate strong-connectivity hardness instances from random graphs and
confirm both reductions round-trip through the brute-force oracles."""

import argparse
import itertools
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from conndel.graphs import UndirectedGraph
from conndel.hardness import gen_pc_psc, gen_vd_psc
from conndel.oracles import OracleBudget, oracle_is, oracle_pcpsc, oracle_vdpsc


def random_graph(rng, n):
    pairs = list(itertools.combinations(range(n), 2))
    return UndirectedGraph.from_edges(range(n), rng.sample(pairs, rng.randint(0, len(pairs))))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=30)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--max-k", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    budget = OracleBudget(max_vertices=300, max_edges=600, max_k=args.max_k, max_candidates=10**8)
    bad = 0
    for trial in range(args.count):
        g = random_graph(rng, rng.randint(1, args.max_n))
        k = rng.randint(1, args.max_k)
        want = oracle_is(g, k, budget) is not None
        d_pc, _ = gen_pc_psc(g, k)
        got_pc = oracle_pcpsc(d_pc, k, budget) is not None
        line = f"trial={trial} n={g.n} m={g.m} k={k} is={want} pcpsc={got_pc}"
        if g.n <= 4:
            d_vd, _ = gen_vd_psc(g, k)
            got_vd = oracle_vdpsc(d_vd, k, budget) is not None
            line += f" vdpsc={got_vd}"
            if got_vd != want:
                bad += 1
        if got_pc != want:
            bad += 1
        print(line)
    print(f"{args.count} trials, {bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
