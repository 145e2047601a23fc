"""Exact solver for weighted biconnectivity deletion.

Given a biconnected graph, a budget k, a weight target, and a set of
frozen (undeletable) edges, decide whether at most k deletable edges can
be removed with total weight meeting the target while the graph stays
biconnected.

Strategy per node: when few potential solution edges remain, enumerate;
otherwise greedily delete heavy non-critical edges.  A full greedy run or
many distinct partner sets certifies that the heavy edges intersect some
solution, so we branch on them; a long clean stretch instead yields an
irrelevant edge that is frozen, shrinking the instance without branching.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

from .criticality import (
    PartnerAnalysis,
    build_partner_analysis,
    critical_set,
    find_clean_stretch,
    is_critical,
    newly_critical,
)
from .errors import InternalInconsistencyError, InvalidInputError
from .graphs import (
    Path,
    UndirectedGraph,
    is_biconnected,
    is_biconnected_without,
    max_flow_bounded,
)


def mu(k: int) -> int:
    """Potential-solution-edge threshold below which enumeration takes over."""
    return 20 * k**3 + 46 * k**2 + k


@dataclass(frozen=True)
class SolverConfig:
    """Solver thresholds.

    The overrides exist only so tests can steer tiny instances into the
    greedy/branching/irrelevant-edge code paths; they violate the proven
    threshold constants, and the solver compensates by falling back to
    exhaustive enumeration whenever a guarantee that holds under the real
    constants fails under lowered ones.  Production use keeps both None.
    """

    mu_override: Optional[Callable[[int], int]] = None
    good_step_override: Optional[Callable[[int], int]] = None

    @property
    def is_default(self) -> bool:
        return self.mu_override is None and self.good_step_override is None

    def mu(self, k: int) -> int:
        return self.mu_override(k) if self.mu_override else mu(k)

    def good_step_threshold(self, k: int) -> int:
        if self.good_step_override:
            return self.good_step_override(k)
        if k <= 0:
            return 1
        return max(1, math.ceil((self.mu(k) - k) / k))


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class WbdInstance:
    """A weighted biconnectivity-deletion question.

    Edges in ``frozen`` can never be deleted; the remaining edges are the
    potential solution edges.  A normalized instance additionally has every
    currently-critical edge frozen with weight zero.
    """

    graph: UndirectedGraph
    k: int
    w_star: float
    weights: Dict[int, float] = field(repr=False)
    frozen: FrozenSet[int] = frozenset()

    def potential_edges(self) -> List[int]:
        return [e for e in sorted(self.graph.edges) if e not in self.frozen]

    def weight_of(self, edges) -> float:
        return sum(self.weights.get(e, 0.0) for e in edges)

    def with_frozen(self, extra: FrozenSet[int]) -> "WbdInstance":
        new_frozen = self.frozen | extra
        new_weights = {
            e: (0.0 if e in new_frozen else w) for e, w in self.weights.items()
        }
        return WbdInstance(self.graph, self.k, self.w_star, new_weights, new_frozen)

    def child_after_deleting(self, eid: int) -> "WbdInstance":
        g = self.graph.without_edge(eid)
        w = {e: v for e, v in self.weights.items() if e != eid}
        return WbdInstance(
            g,
            self.k - 1,
            max(0.0, self.w_star - self.weights.get(eid, 0.0)),
            w,
            frozenset(e for e in self.frozen if e != eid),
        )


@dataclass(frozen=True)
class Solution:
    """A feasible deletion set with its total weight."""

    edges: Tuple[int, ...]
    weight: float


@dataclass
class SolveStats:
    """Counters and recorded structures from one solve run."""

    nodes: int = 0
    max_depth: int = 0
    max_branch_factor: int = 0
    enumerations: int = 0
    flow_calls: int = 0
    fallbacks: int = 0
    irrelevant_edges: List[int] = field(default_factory=list)
    max_irrelevant_per_node: int = 0
    analyses: List[PartnerAnalysis] = field(default_factory=list)

    def merge(self, other: "SolveStats") -> None:
        self.nodes += other.nodes
        self.max_depth = max(self.max_depth, other.max_depth)
        self.max_branch_factor = max(self.max_branch_factor, other.max_branch_factor)
        self.enumerations += other.enumerations
        self.flow_calls += other.flow_calls
        self.fallbacks += other.fallbacks
        self.irrelevant_edges.extend(other.irrelevant_edges)
        self.max_irrelevant_per_node = max(
            self.max_irrelevant_per_node, other.max_irrelevant_per_node
        )
        self.analyses.extend(other.analyses)


def normalize(inst: WbdInstance) -> WbdInstance:
    """Freeze all currently-critical edges and zero frozen weights.

    Critical edges can never be deleted, so this loses no solutions;
    idempotent.  Rejects non-biconnected graphs.
    """
    if not is_biconnected(inst.graph):
        raise InvalidInputError("instance graph is not biconnected")
    crit = critical_set(inst.graph)
    return inst.with_frozen(crit)


def heavy_order(inst: WbdInstance) -> List[int]:
    """Potential solution edges, heaviest first, ties by ascending id."""
    return sorted(
        inst.potential_edges(), key=lambda e: (-inst.weights.get(e, 0.0), e)
    )


def heavy(inst: WbdInstance, r: int) -> List[int]:
    """The r heaviest potential solution edges."""
    if r < 0:
        raise InvalidInputError("r must be non-negative")
    return heavy_order(inst)[:r]


def verify_solution(inst: WbdInstance, edges) -> bool:
    """Is this edge set a valid solution for the instance?"""
    es = set(edges)
    if len(es) != len(tuple(edges)) or len(es) > inst.k:
        return False
    if not all(inst.graph.has_edge(e) for e in es):
        return False
    if es & inst.frozen:
        return False
    if inst.weight_of(es) < inst.w_star:
        return False
    return is_biconnected_without(inst.graph, frozenset(es))


def _enumerate_best(inst: WbdInstance) -> Optional[Solution]:
    """Max-weight feasible subset by direct enumeration, smallest first."""
    pool = inst.potential_edges()
    best: Optional[Solution] = None
    for size in range(0, min(inst.k, len(pool)) + 1):
        for combo in itertools.combinations(pool, size):
            w = inst.weight_of(combo)
            if w < inst.w_star:
                continue
            if best is not None and w <= best.weight:
                continue
            if is_biconnected_without(inst.graph, frozenset(combo)):
                best = Solution(tuple(combo), w)
    return best


def enumerate_small(inst: WbdInstance, config: SolverConfig = DEFAULT_CONFIG) -> Optional[Solution]:
    """Exhaustive base case; only valid when few potential edges remain."""
    if len(inst.potential_edges()) > config.mu(inst.k):
        raise InternalInconsistencyError(
            "enumeration base case invoked with too many potential edges"
        )
    return _enumerate_best(inst)


@dataclass(frozen=True)
class GreedyRun:
    """Greedy deletion picks with the per-step newly-critical-heavy counts."""

    picks: Tuple[int, ...]
    counts: Tuple[int, ...]


def greedy_deletion_set(
    inst: WbdInstance, config: SolverConfig = DEFAULT_CONFIG
) -> GreedyRun:
    """Repeatedly delete the heaviest still-non-critical heavy edge.

    Stops after k picks or when every remaining heavy edge is critical in
    the residual graph.  Every prefix leaves the graph biconnected.
    """
    pool = heavy(inst, config.mu(inst.k))
    marked = frozenset(pool)
    picks: List[int] = []
    counts: List[int] = []
    cur = inst.graph
    for _ in range(inst.k):
        pick = None
        for e in pool:
            if cur.has_edge(e) and not is_critical(cur, e):
                pick = e
                break
        if pick is None:
            break
        counts.append(len(newly_critical(cur, pick) & marked))
        picks.append(pick)
        cur = cur.without_edge(pick)
    return GreedyRun(tuple(picks), tuple(counts))


def find_rich_flow(
    gprime: UndirectedGraph,
    pivot: int,
    marked: FrozenSet[int],
    stats: Optional[SolveStats] = None,
) -> Tuple[Path, Path]:
    """A value-2 flow between the pivot's endpoints in G' - pivot, with the
    path carrying at least half the marked newly-critical edges first."""
    x, y = gprime.endpoints(pivot)
    flow = max_flow_bounded(gprime.without_edge(pivot), x, y, cap=3)
    if stats is not None:
        stats.flow_calls += 1
    if flow.value != 2:
        raise InternalInconsistencyError(
            f"expected a value-2 flow between {x} and {y}, got {flow.value}"
        )
    newly = newly_critical(gprime, pivot) & marked
    if not newly:
        raise InvalidInputError("pivot deletion makes no marked edge critical")
    a, b = flow.paths
    on_a = len(newly & set(a.edges))
    on_b = len(newly & set(b.edges))
    if on_a + on_b != len(newly):
        raise InternalInconsistencyError(
            "a newly critical edge avoids both paths of a value-2 flow"
        )
    return (a, b) if on_a >= on_b else (b, a)


def solution_from_distinct_partners(pa: PartnerAnalysis, k: int) -> Tuple[int, ...]:
    """Every-third selection from 3k+1 edges with pairwise distinct partner
    sets; the result is a size-k deletion set, verified before returning.

    Partner sets of the analyzed edges are equal exactly on contiguous
    blocks, so block-leading indices enumerate the distinct sets.
    """
    leaders = [1] + [i + 1 for i in sorted(pa.switches)]
    if len(leaders) < 3 * k + 1:
        raise InvalidInputError(
            f"need more than {3 * k} distinct partner sets, have {len(leaders)}"
        )
    chosen = [leaders[j] for j in range(0, 3 * k - 2, 3)]
    edges = tuple(pa.edge(i) for i in chosen)
    if len(edges) != k:
        raise InternalInconsistencyError("distinct-partner selection missized")
    if not is_biconnected_without(pa.graph, frozenset(edges)):
        raise InternalInconsistencyError(
            "distinct-partner deletion set does not preserve biconnectivity"
        )
    return edges


def irrelevant_edge(
    pa: PartnerAnalysis, stretch: Tuple[int, int], weights: Dict[int, float]
) -> int:
    """Minimum-weight edge strictly inside a clean stretch (ties by id)."""
    a, b = stretch
    if b - a < 2 * pa.k + 3:
        raise InvalidInputError(
            f"stretch [{a},{b}] shorter than {2 * pa.k + 3} steps"
        )
    interior = [pa.edge(i) for i in range(a + 1, b)]
    return min(interior, key=lambda e: (weights.get(e, 0.0), e))


def solve(
    inst: WbdInstance,
    config: SolverConfig = DEFAULT_CONFIG,
    stats: Optional[SolveStats] = None,
    jobs: int = 1,
) -> Optional[Solution]:
    """Decide the instance and return a witness solution when one exists."""
    if jobs < 1:
        raise InvalidInputError("jobs must be positive")
    if stats is None:
        stats = SolveStats()
    inst = normalize(inst)
    edges = _solve(inst, config, stats, depth=0, jobs=jobs)
    if edges is None:
        return None
    sol = Solution(tuple(sorted(edges)), inst.weight_of(edges))
    if not verify_solution(inst, sol.edges):
        raise InternalInconsistencyError("solver produced an invalid solution")
    return sol


def _solve(
    inst: WbdInstance, config: SolverConfig, stats: SolveStats, depth: int, jobs: int
) -> Optional[Tuple[int, ...]]:
    stats.nodes += 1
    stats.max_depth = max(stats.max_depth, depth)
    if inst.w_star <= 0:
        return ()
    if inst.k == 0:
        return None

    frozen_here = 0
    while True:
        pool = inst.potential_edges()
        if len(pool) <= config.mu(inst.k):
            stats.enumerations += 1
            sol = _enumerate_best(inst)
            return sol.edges if sol else None

        run = greedy_deletion_set(inst, config)
        if len(run.picks) == inst.k:
            return _branch(inst, config, stats, depth, jobs)

        threshold = config.good_step_threshold(inst.k)
        rich = next(
            (i for i, c in enumerate(run.counts) if c >= threshold), None
        )
        if rich is None:
            if config.is_default:
                raise InternalInconsistencyError(
                    "greedy stalled without any step making enough heavy "
                    "edges critical"
                )
            stats.fallbacks += 1
            sol = _enumerate_best(inst)
            return sol.edges if sol else None

        gprime = inst.graph.without_edges(run.picks[:rich])
        pivot = run.picks[rich]
        marked = frozenset(heavy(inst, config.mu(inst.k)))
        p1, p2 = find_rich_flow(gprime, pivot, marked, stats)
        deleted_pairs = [inst.graph.endpoints(e) for e in run.picks[:rich]]
        pa = build_partner_analysis(
            gprime, pivot, p1, p2, marked, deleted_pairs, inst.k
        )
        stats.analyses.append(pa)

        if pa.distinct_partner_sets > 3 * inst.k:
            return _branch(inst, config, stats, depth, jobs)

        stretch = find_clean_stretch(pa, inst.k)
        if stretch is None:
            stats.fallbacks += 1
            sol = _enumerate_best(inst)
            return sol.edges if sol else None

        ej = irrelevant_edge(pa, stretch, inst.weights)
        stats.irrelevant_edges.append(ej)
        frozen_here += 1
        stats.max_irrelevant_per_node = max(stats.max_irrelevant_per_node, frozen_here)
        inst = normalize(inst.with_frozen(frozenset((ej,))))


def _branch(
    inst: WbdInstance, config: SolverConfig, stats: SolveStats, depth: int, jobs: int
) -> Optional[Tuple[int, ...]]:
    """Branch over heavy edges whose removal preserves biconnectivity; a
    solution, if any exists, intersects them."""
    candidates = [
        e for e in heavy(inst, config.mu(inst.k)) if not is_critical(inst.graph, e)
    ]
    stats.max_branch_factor = max(stats.max_branch_factor, len(candidates))

    if jobs > 1 and len(candidates) > 1:
        children = [
            normalize(inst.child_after_deleting(e)) for e in candidates
        ]
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            futures = [
                ex.submit(_solve_isolated, child, config, depth + 1)
                for child in children
            ]
            result = None
            for e, fut in zip(candidates, futures):
                sub_edges, sub_stats = fut.result()
                if result is None:
                    stats.merge(sub_stats)
                    if sub_edges is not None:
                        result = sub_edges + (e,)
            return result

    for e in candidates:
        child = normalize(inst.child_after_deleting(e))
        sub = _solve(child, config, stats, depth + 1, jobs)
        if sub is not None:
            return sub + (e,)
    return None


def _solve_isolated(
    inst: WbdInstance, config: SolverConfig, depth: int
) -> Tuple[Optional[Tuple[int, ...]], SolveStats]:
    local = SolveStats()
    return _solve(inst, config, local, depth, jobs=1), local
