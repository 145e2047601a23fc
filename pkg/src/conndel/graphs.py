"""Graph representations and connectivity primitives.

Both graph classes are immutable from the caller's perspective: every
mutating operation returns a new value.  Vertex and edge/arc ids are stable
under deletion (ids of deleted elements are never reused), so id-keyed data
such as weights or frozen-edge sets survives graph surgery.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .errors import ContractionError, InvalidInputError

Edge = Tuple[int, int]


class UndirectedGraph:
    """Simple undirected graph with stable integer vertex and edge ids."""

    __slots__ = ("_vertices", "_edges", "_pair_to_id", "_adj", "_next_edge_id")

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Iterable[Tuple[int, int, int]] = (),
        next_edge_id: Optional[int] = None,
    ):
        """Build from vertex ids and (edge_id, u, v) triples."""
        self._vertices: FrozenSet[int] = frozenset(vertices)
        self._edges: Dict[int, Edge] = {}
        self._pair_to_id: Dict[Edge, int] = {}
        self._adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in self._vertices}
        for eid, u, v in edges:
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            if u not in self._vertices or v not in self._vertices:
                raise InvalidInputError(f"edge ({u},{v}) references missing vertex")
            key = (u, v) if u < v else (v, u)
            if key in self._pair_to_id:
                raise InvalidInputError(f"parallel edge ({u},{v})")
            if eid in self._edges:
                raise InvalidInputError(f"duplicate edge id {eid}")
            self._edges[eid] = key
            self._pair_to_id[key] = eid
            self._adj[u].append((v, eid))
            self._adj[v].append((u, eid))
        for lst in self._adj.values():
            lst.sort()
        if next_edge_id is None:
            next_edge_id = max(self._edges, default=-1) + 1
        self._next_edge_id = next_edge_id

    @classmethod
    def from_edges(cls, vertices: Iterable[int], pairs: Iterable[Edge]) -> "UndirectedGraph":
        """Build with edge ids 0..m-1 assigned in iteration order."""
        return cls(vertices, [(i, u, v) for i, (u, v) in enumerate(pairs)])

    # -- read access -------------------------------------------------------

    @property
    def vertices(self) -> FrozenSet[int]:
        return self._vertices

    @property
    def edges(self) -> Dict[int, Edge]:
        return dict(self._edges)

    def edge_ids(self) -> List[int]:
        return sorted(self._edges)

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def endpoints(self, eid: int) -> Edge:
        try:
            return self._edges[eid]
        except KeyError:
            raise InvalidInputError(f"no edge with id {eid}") from None

    def edge_between(self, u: int, v: int) -> Optional[int]:
        return self._pair_to_id.get((u, v) if u < v else (v, u))

    def has_edge(self, eid: int) -> bool:
        return eid in self._edges

    def neighbors(self, v: int) -> List[int]:
        return [u for u, _ in self._adj[v]]

    def incident(self, v: int) -> List[int]:
        return [eid for _, eid in self._adj[v]]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    # -- derived graphs ----------------------------------------------------

    def without_edges(self, eids: Iterable[int]) -> "UndirectedGraph":
        gone = set(eids)
        for eid in gone:
            if eid not in self._edges:
                raise InvalidInputError(f"no edge with id {eid}")
        return UndirectedGraph(
            self._vertices,
            [(eid, u, v) for eid, (u, v) in self._edges.items() if eid not in gone],
            next_edge_id=self._next_edge_id,
        )

    def without_edge(self, eid: int) -> "UndirectedGraph":
        return self.without_edges((eid,))

    def without_vertices(self, vs: Iterable[int]) -> "UndirectedGraph":
        gone = set(vs)
        return UndirectedGraph(
            self._vertices - gone,
            [
                (eid, u, v)
                for eid, (u, v) in self._edges.items()
                if u not in gone and v not in gone
            ],
            next_edge_id=self._next_edge_id,
        )

    def induced(self, keep: Iterable[int]) -> "UndirectedGraph":
        kept = set(keep)
        if not kept <= self._vertices:
            raise InvalidInputError("induced set contains unknown vertices")
        return UndirectedGraph(
            kept,
            [
                (eid, u, v)
                for eid, (u, v) in self._edges.items()
                if u in kept and v in kept
            ],
            next_edge_id=self._next_edge_id,
        )

    def with_edge(self, u: int, v: int) -> Tuple["UndirectedGraph", int]:
        """Return (graph with the new edge, its fresh id)."""
        eid = self._next_edge_id
        g = UndirectedGraph(
            self._vertices,
            [(i, a, b) for i, (a, b) in self._edges.items()] + [(eid, u, v)],
            next_edge_id=eid + 1,
        )
        return g, eid

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, frozenset(self._edges.items())))

    def __repr__(self) -> str:
        return f"UndirectedGraph(n={self.n}, m={self.m})"


class Digraph:
    """Simple digraph (no loops, at most one arc per ordered pair)."""

    __slots__ = ("_vertices", "_arcs", "_pair_to_id", "_out", "_in", "_next_arc_id", "_next_vertex_id")

    def __init__(
        self,
        vertices: Iterable[int],
        arcs: Iterable[Tuple[int, int, int]] = (),
        next_arc_id: Optional[int] = None,
        next_vertex_id: Optional[int] = None,
    ):
        """Build from vertex ids and (arc_id, tail, head) triples."""
        self._vertices: FrozenSet[int] = frozenset(vertices)
        self._arcs: Dict[int, Edge] = {}
        self._pair_to_id: Dict[Edge, int] = {}
        self._out: Dict[int, List[Tuple[int, int]]] = {v: [] for v in self._vertices}
        self._in: Dict[int, List[Tuple[int, int]]] = {v: [] for v in self._vertices}
        for aid, t, h in arcs:
            if t == h:
                raise InvalidInputError(f"self-loop at vertex {t}")
            if t not in self._vertices or h not in self._vertices:
                raise InvalidInputError(f"arc ({t},{h}) references missing vertex")
            if (t, h) in self._pair_to_id:
                raise InvalidInputError(f"duplicate arc ({t},{h})")
            if aid in self._arcs:
                raise InvalidInputError(f"duplicate arc id {aid}")
            self._arcs[aid] = (t, h)
            self._pair_to_id[(t, h)] = aid
            self._out[t].append((h, aid))
            self._in[h].append((t, aid))
        for lst in self._out.values():
            lst.sort()
        for lst in self._in.values():
            lst.sort()
        if next_arc_id is None:
            next_arc_id = max(self._arcs, default=-1) + 1
        if next_vertex_id is None:
            next_vertex_id = max(self._vertices, default=-1) + 1
        self._next_arc_id = next_arc_id
        self._next_vertex_id = next_vertex_id

    @classmethod
    def from_arcs(cls, vertices: Iterable[int], pairs: Iterable[Edge]) -> "Digraph":
        return cls(vertices, [(i, t, h) for i, (t, h) in enumerate(pairs)])

    @property
    def vertices(self) -> FrozenSet[int]:
        return self._vertices

    @property
    def arcs(self) -> Dict[int, Edge]:
        return dict(self._arcs)

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._arcs)

    def arc_pairs(self) -> List[Edge]:
        return sorted(self._arcs.values())

    def arc_between(self, t: int, h: int) -> Optional[int]:
        return self._pair_to_id.get((t, h))

    def endpoints(self, aid: int) -> Edge:
        try:
            return self._arcs[aid]
        except KeyError:
            raise InvalidInputError(f"no arc with id {aid}") from None

    def out_neighbors(self, v: int) -> List[int]:
        return [h for h, _ in self._out[v]]

    def in_neighbors(self, v: int) -> List[int]:
        return [t for t, _ in self._in[v]]

    def without_vertices(self, vs: Iterable[int]) -> "Digraph":
        gone = set(vs)
        return Digraph(
            self._vertices - gone,
            [
                (aid, t, h)
                for aid, (t, h) in self._arcs.items()
                if t not in gone and h not in gone
            ],
            next_arc_id=self._next_arc_id,
            next_vertex_id=self._next_vertex_id,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._vertices == other._vertices and self._arcs == other._arcs

    def __hash__(self) -> int:
        return hash((self._vertices, frozenset(self._arcs.items())))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Path:
    """A simple path inside a host graph: vertex sequence plus edge ids."""

    vertices: Tuple[int, ...]
    edges: Tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.vertices) != len(set(self.vertices)):
            raise InvalidInputError("path repeats a vertex")
        if self.edges and len(self.edges) != len(self.vertices) - 1:
            raise InvalidInputError("edge count does not match vertex count")

    @classmethod
    def in_graph(cls, g: UndirectedGraph, vertices: Iterable[int]) -> "Path":
        vs = tuple(vertices)
        eids = []
        for a, b in zip(vs, vs[1:]):
            eid = g.edge_between(a, b)
            if eid is None:
                raise InvalidInputError(f"({a},{b}) is not an edge of the host graph")
            eids.append(eid)
        return cls(vs, tuple(eids))

    @property
    def interior(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class FlowDecomposition:
    """A set of internally vertex-disjoint x-y paths; value = path count."""

    x: int
    y: int
    paths: Tuple[Path, ...] = field(default_factory=tuple)

    @property
    def value(self) -> int:
        return len(self.paths)

    def participating_edges(self) -> FrozenSet[int]:
        out = set()
        for p in self.paths:
            out.update(p.edges)
        return frozenset(out)


# ---------------------------------------------------------------------------
# connectivity predicates
# ---------------------------------------------------------------------------


def is_connected_without(
    g: UndirectedGraph,
    removed_edges: FrozenSet[int] = frozenset(),
    removed_vertex: Optional[int] = None,
) -> bool:
    adj = g._adj
    start = None
    nv = 0
    for v in g._vertices:
        if v != removed_vertex:
            nv += 1
            if start is None:
                start = v
    if nv == 0:
        return True
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u, eid in adj[v]:
            if u == removed_vertex or eid in removed_edges or u in seen:
                continue
            seen.add(u)
            stack.append(u)
    return len(seen) == nv


def has_path_without(
    g: UndirectedGraph,
    x: int,
    y: int,
    removed_edges: FrozenSet[int] = frozenset(),
    removed_vertex: Optional[int] = None,
) -> bool:
    """Is y reachable from x once the given edges and vertex are removed?"""
    if x == removed_vertex or y == removed_vertex:
        raise InvalidInputError("terminal removed from graph")
    if x == y:
        return True
    adj = g._adj
    seen = {x}
    stack = [x]
    while stack:
        v = stack.pop()
        for u, eid in adj[v]:
            if u == removed_vertex or eid in removed_edges or u in seen:
                continue
            if u == y:
                return True
            seen.add(u)
            stack.append(u)
    return False


def is_biconnected_without(
    g: UndirectedGraph,
    removed_edges: FrozenSet[int] = frozenset(),
    removed_vertex: Optional[int] = None,
) -> bool:
    """Biconnectivity of g minus the given edges (and optionally one vertex).

    Connected, at least two vertices, no cut-vertex; a single edge counts as
    biconnected.  One iterative articulation-point pass, no graph copy.
    """
    adj = g._adj
    root = None
    nv = 0
    for v in g._vertices:
        if v != removed_vertex:
            nv += 1
            if root is None or v < root:
                root = v
    if nv < 2:
        return False
    disc: Dict[int, int] = {root: 0}
    low: Dict[int, int] = {root: 0}
    clock = 1
    root_children = 0
    stack: List[Tuple[int, int, Iterable]] = [(root, -1, iter(adj[root]))]
    while stack:
        v, parent_eid, it = stack[-1]
        advanced = False
        for u, eid in it:
            if eid == parent_eid or eid in removed_edges or u == removed_vertex:
                continue
            du = disc.get(u)
            if du is not None:
                if du < low[v]:
                    low[v] = du
            else:
                disc[u] = low[u] = clock
                clock += 1
                stack.append((u, eid, iter(adj[u])))
                advanced = True
                break
        if not advanced:
            stack.pop()
            if stack:
                p = stack[-1][0]
                lv = low[v]
                if lv < low[p]:
                    low[p] = lv
                if p == root:
                    root_children += 1
                elif lv >= disc[p]:
                    return False
    return len(disc) == nv and root_children <= 1


def is_biconnected(g: UndirectedGraph) -> bool:
    """Connected, on two or more vertices, and free of cut-vertices."""
    return is_biconnected_without(g)


def articulation_points(g: UndirectedGraph) -> FrozenSet[int]:
    """Cut-vertices of g (vertices whose removal disconnects a component)."""
    adj = g._adj
    disc: Dict[int, int] = {}
    low: Dict[int, int] = {}
    result = set()
    clock = 0
    for root in sorted(g._vertices):
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        root_children = 0
        stack: List[Tuple[int, int, Iterable]] = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent_eid, it = stack[-1]
            advanced = False
            for u, eid in it:
                if eid == parent_eid:
                    continue
                du = disc.get(u)
                if du is not None:
                    if du < low[v]:
                        low[v] = du
                else:
                    disc[u] = low[u] = clock
                    clock += 1
                    stack.append((u, eid, iter(adj[u])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    if low[v] < low[p]:
                        low[p] = low[v]
                    if p == root:
                        root_children += 1
                    elif low[v] >= disc[p]:
                        result.add(p)
        if root_children > 1:
            result.add(root)
    return frozenset(result)


def is_strongly_connected(d: Digraph) -> bool:
    """Every ordered vertex pair joined by a directed path (double reach)."""
    if d.n <= 1:
        return True
    start = min(d._vertices)
    for table in (d._out, d._in):
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u, _ in table[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != d.n:
            return False
    return True


# ---------------------------------------------------------------------------
# vertex-capacity flow
# ---------------------------------------------------------------------------


def max_flow_bounded(
    g: UndirectedGraph, x: int, y: int, cap: Optional[int] = None
) -> FlowDecomposition:
    """Maximum set of internally vertex-disjoint x-y paths, stopping at cap.

    Unit-capacity vertex splitting: each vertex other than x, y becomes an
    in/out node pair joined by a capacity-1 arc, each edge a capacity-1 arc
    per direction.  Each augmentation is one BFS.
    """
    if x == y:
        raise InvalidInputError("flow endpoints must differ")
    if x not in g.vertices or y not in g.vertices:
        raise InvalidInputError("flow endpoint not in graph")

    # Nodes: (v, 0) = in-copy, (v, 1) = out-copy.  Source x uses only its
    # out-copy, sink y only its in-copy.
    residual: Dict[Tuple[int, int], Dict[Tuple[int, int], int]] = {}

    def arc(a, b, c):
        residual.setdefault(a, {})[b] = c
        residual.setdefault(b, {}).setdefault(a, 0)

    for v in sorted(g.vertices):
        if v != x and v != y:
            arc((v, 0), (v, 1), 1)
    for eid in sorted(g.edges):
        u, v = g.endpoints(eid)
        arc((u, 1), (v, 0), 1)
        arc((v, 1), (u, 0), 1)
    src = (x, 1)
    snk = (y, 0)
    residual.setdefault(src, {})
    residual.setdefault(snk, {})

    value = 0
    while cap is None or value < cap:
        parent: Dict[Tuple[int, int], Tuple[int, int]] = {src: src}
        queue = deque([src])
        found = False
        while queue and not found:
            a = queue.popleft()
            for b, c in residual[a].items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    if b == snk:
                        found = True
                        break
                    queue.append(b)
        if not found:
            break
        b = snk
        while b != src:
            a = parent[b]
            residual[a][b] -= 1
            residual[b][a] += 1
            b = a
        value += 1

    # Decompose: an edge-arc carries flow iff its residual dropped below 1.
    # Unit vertex capacities force at most one used out-arc per internal
    # vertex, so each walk from x is deterministic after the first hop.
    used_out: Dict[int, List[int]] = {}
    for eid in sorted(g.edges):
        u, v = g.endpoints(eid)
        if residual[(u, 1)][(v, 0)] == 0:
            used_out.setdefault(u, []).append(v)
        if residual[(v, 1)][(u, 0)] == 0:
            used_out.setdefault(v, []).append(u)

    paths = []
    for _ in range(value):
        seq = [x]
        cur = x
        while cur != y:
            nxt = min(used_out[cur])
            used_out[cur].remove(nxt)
            seq.append(nxt)
            cur = nxt
        eids = tuple(g.edge_between(a, b) for a, b in zip(seq, seq[1:]))
        paths.append(Path(tuple(seq), eids))
    paths.sort(key=lambda p: p.vertices)
    return FlowDecomposition(x, y, tuple(paths))


def max_flow(g: UndirectedGraph, x: int, y: int) -> FlowDecomposition:
    """Maximum x-y flow as internally vertex-disjoint paths."""
    return max_flow_bounded(g, x, y, cap=None)


# ---------------------------------------------------------------------------
# path contraction
# ---------------------------------------------------------------------------


def path_contract(d: Digraph, arc: Edge) -> Tuple[Digraph, Dict[int, int]]:
    """Contract one arc (x, y) into a fresh vertex z.

    Arcs into x and out of y from outside {x, y} are redirected to z; the
    remaining arcs incident to x or y are dropped, as are any loops or
    duplicates this creates.  Returns the new digraph and the old-to-new
    vertex mapping.
    """
    x, y = arc
    if d.arc_between(x, y) is None:
        raise ContractionError(f"arc ({x},{y}) does not exist")
    z = d._next_vertex_id
    mapping = {v: v for v in d.vertices if v != x and v != y}
    mapping[x] = z
    mapping[y] = z
    kept: Dict[Edge, None] = {}
    for t, h in d.arc_pairs():
        if t in (x, y) and h in (x, y):
            continue
        if t == x or h == y:
            continue
        nt = z if t == y else t
        nh = z if h == x else h
        if nt != nh:
            kept[(nt, nh)] = None
    verts = (d.vertices - {x, y}) | {z}
    out = Digraph(
        verts,
        [(i, t, h) for i, (t, h) in enumerate(sorted(kept))],
        next_vertex_id=z + 1,
    )
    return out, mapping


def contract_sequence(d: Digraph, arcs: Iterable[Edge]) -> Digraph:
    """Fold path_contract over a sequence of arcs of the original digraph.

    Arc endpoints are translated through the accumulated vertex mapping; an
    arc that no longer exists at its turn raises ContractionError naming it.
    """
    mapping = {v: v for v in d.vertices}
    cur = d
    for u, v in arcs:
        if u not in mapping or v not in mapping:
            raise ContractionError(f"arc ({u},{v}) references unknown vertex")
        mu, mv = mapping[u], mapping[v]
        if mu == mv or cur.arc_between(mu, mv) is None:
            raise ContractionError(f"arc ({u},{v}) vanished before its contraction")
        cur, step = path_contract(cur, (mu, mv))
        mapping = {orig: step[img] for orig, img in mapping.items()}
    return cur
