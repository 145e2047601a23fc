#!/usr/bin/env python3
"""Kernelize random unit-weight instances and tabulate how much the
potential-edge and vertex counts shrink under each provider."""

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from conndel.families import random_biconnected_graph
from conndel.kernel import build_auxiliary_digraph, kernelize, unit_instance
from conndel.solver import normalize


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=40)
    ap.add_argument("--max-n", type=int, default=9)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-terminals", type=int, default=7)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    rows = []
    for _ in range(args.count):
        g = random_biconnected_graph(rng, rng.randint(4, args.max_n), rng.randint(0, 3))
        inst = normalize(unit_instance(g, args.k, frozenset()))
        aux = build_auxiliary_digraph(g, inst.potential_edges())
        providers = ["trivial"]
        if len(aux.terminals) <= args.max_terminals:
            providers.append("exhaustive")
        for provider in providers:
            res = kernelize(g, args.k, provider=provider, max_terminals=args.max_terminals)
            rows.append(
                (
                    provider,
                    res.stats["v_before"],
                    res.stats["v_after"],
                    res.stats["f_before"],
                    res.stats["f_after"],
                    res.answer or "-",
                )
            )

    print(f"{'provider':<11} {'v_in':>4} {'v_out':>5} {'f_in':>4} {'f_out':>5} answer")
    for provider in ("trivial", "exhaustive"):
        subset = [r for r in rows if r[0] == provider]
        if not subset:
            continue
        shrunk = sum(1 for r in subset if r[2] < r[1])
        for r in subset[:5]:
            print(f"{r[0]:<11} {r[1]:>4} {r[2]:>5} {r[3]:>4} {r[4]:>5} {r[5]}")
        print(
            f"-- {provider}: {len(subset)} runs, {shrunk} shrank the vertex set --"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
