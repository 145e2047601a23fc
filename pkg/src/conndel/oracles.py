"""Exhaustive brute-force solvers used as ground truth at desk scale.

Nothing here is clever on purpose: every oracle enumerates candidates in a
canonical order and returns the first (or best) witness, refusing inputs
that exceed its budget instead of running unbounded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from .errors import BudgetExceededError, ContractionError
from .graphs import (
    Digraph,
    UndirectedGraph,
    contract_sequence,
    is_biconnected_without,
    is_strongly_connected,
)
from .solver import Solution, WbdInstance


@dataclass(frozen=True)
class OracleBudget:
    """Hard limits the oracles refuse to exceed."""

    max_vertices: int = 10
    max_edges: int = 20
    max_k: int = 3
    max_candidates: int = 10_000_000

    def admit_graph(self, n: int, m: int, k: int) -> None:
        if n > self.max_vertices:
            raise BudgetExceededError(f"{n} vertices exceeds budget {self.max_vertices}")
        if m > self.max_edges:
            raise BudgetExceededError(f"{m} edges exceeds budget {self.max_edges}")
        if k > self.max_k:
            raise BudgetExceededError(f"k={k} exceeds budget {self.max_k}")

    def admit_candidates(self, count: int) -> None:
        if count > self.max_candidates:
            raise BudgetExceededError(
                f"{count} candidates exceed budget {self.max_candidates}"
            )


DEFAULT_BUDGET = OracleBudget()


def oracle_wbd(
    inst: WbdInstance, budget: OracleBudget = DEFAULT_BUDGET
) -> Optional[Solution]:
    """Max-weight feasible deletion set by checking all subsets of size <= k."""
    g = inst.graph
    budget.admit_graph(g.n, g.m, inst.k)
    pool = inst.potential_edges()
    total = 0
    for size in range(0, min(inst.k, len(pool)) + 1):
        total += _ncr(len(pool), size)
    budget.admit_candidates(total)
    best: Optional[Solution] = None
    for size in range(0, min(inst.k, len(pool)) + 1):
        for combo in itertools.combinations(pool, size):
            w = inst.weight_of(combo)
            if w < inst.w_star:
                continue
            if best is not None and w <= best.weight:
                continue
            if is_biconnected_without(g, frozenset(combo)):
                best = Solution(tuple(combo), w)
    return best


def _ncr(n: int, r: int) -> int:
    if r < 0 or r > n:
        return 0
    out = 1
    for i in range(r):
        out = out * (n - i) // (i + 1)
    return out


def oracle_pcpsc(
    d: Digraph, k: int, budget: OracleBudget = DEFAULT_BUDGET
) -> Optional[Tuple[Tuple[int, int], ...]]:
    """A length-k arc sequence whose contraction keeps strong connectivity.

    Enumerates arc sets, then orderings of each set until one both applies
    cleanly and yields a strongly connected result.
    """
    budget.admit_graph(d.n, d.m, k)
    arcs = d.arc_pairs()
    budget.admit_candidates(_ncr(len(arcs), k) * max(1, _factorial(k)))
    for combo in itertools.combinations(arcs, k):
        for order in itertools.permutations(combo):
            try:
                out = contract_sequence(d, order)
            except ContractionError:
                continue
            if is_strongly_connected(out):
                return order
    return None


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def oracle_vdpsc(
    d: Digraph, k: int, budget: OracleBudget = DEFAULT_BUDGET
) -> Optional[FrozenSet[int]]:
    """A set of exactly k vertices whose deletion keeps strong connectivity."""
    budget.admit_graph(d.n, d.m, k)
    verts = sorted(d.vertices)
    if k >= len(verts):
        return None
    budget.admit_candidates(_ncr(len(verts), k))
    for combo in itertools.combinations(verts, k):
        if is_strongly_connected(d.without_vertices(combo)):
            return frozenset(combo)
    return None


def oracle_is(
    g: UndirectedGraph, k: int, budget: OracleBudget = DEFAULT_BUDGET
) -> Optional[FrozenSet[int]]:
    """An independent set of exactly k vertices, by exhaustive search."""
    budget.admit_graph(g.n, g.m, k)
    verts = sorted(g.vertices)
    if k > len(verts):
        return None
    budget.admit_candidates(_ncr(len(verts), k))
    for combo in itertools.combinations(verts, k):
        if all(g.edge_between(u, v) is None for u, v in itertools.combinations(combo, 2)):
            return frozenset(combo)
    return None


def oracle_irrelevance(
    inst: WbdInstance, eid: int, budget: OracleBudget = DEFAULT_BUDGET
) -> bool:
    """Is the edge irrelevant: no solution exists, or one avoids it?"""
    if oracle_wbd(inst, budget) is None:
        return True
    without = inst.with_frozen(frozenset((eid,)))
    return oracle_wbd(without, budget) is not None
