"""Finite multigraphs with loops, parallel edges and leaf edges.

Vertices are implicit (strings appearing as edge endpoints).  A loop
contributes 2 to the valence of its vertex.  Graph values are immutable;
every operation returns a new graph.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple


class GraphError(ValueError):
    """Raised on malformed graphs or violated structural preconditions."""


class Edge(NamedTuple):
    id: str
    u: str
    v: str

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class Graph:
    edges: Tuple[Edge, ...]
    name: str = ""

    def __post_init__(self):
        edges = tuple(sorted((Edge(*e) for e in self.edges), key=lambda e: e.id))
        ids = [e.id for e in edges]
        if len(set(ids)) != len(ids):
            raise GraphError(f"duplicate edge ids in {self.name or 'graph'}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[str]], name: str = "") -> "Graph":
        return cls(tuple(Edge(str(i), str(u), str(v)) for i, u, v in edges), name)

    # -- basic structure -------------------------------------------------

    @cached_property
    def edge_ids(self) -> Tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise GraphError(f"unknown edge {eid!r}")

    @cached_property
    def vertices(self) -> Tuple[str, ...]:
        return tuple(sorted({x for e in self.edges for x in (e.u, e.v)}))

    def ends(self, v: str) -> List[str]:
        """Edge ids of the edge-ends at ``v`` in edge-id order; loops appear twice, adjacent."""
        out = []
        for e in self.edges:
            if e.u == v:
                out.append(e.id)
            if e.v == v:
                out.append(e.id)
        return out

    def valence(self, v: str) -> int:
        return _valences(self).get(v, 0)

    @property
    def leaf_vertices(self) -> Tuple[str, ...]:
        val = _valences(self)
        return tuple(v for v in self.vertices if val[v] == 1)

    @property
    def inner_vertices(self) -> Tuple[str, ...]:
        val = _valences(self)
        return tuple(v for v in self.vertices if val[v] != 1)

    def is_leaf_edge(self, eid: str) -> bool:
        e = self.edge(eid)
        leaves = set(self.leaf_vertices)
        return e.u in leaves or e.v in leaves

    @property
    def leaf_edges(self) -> Tuple[str, ...]:
        leaves = set(self.leaf_vertices)
        return tuple(e.id for e in self.edges if e.u in leaves or e.v in leaves)

    @property
    def inner_edges(self) -> Tuple[str, ...]:
        leaves = set(self.leaf_vertices)
        return tuple(e.id for e in self.edges if e.u not in leaves and e.v not in leaves)

    def is_trivalent(self) -> bool:
        return all(self.valence(v) == 3 for v in self.inner_vertices)

    def components(self) -> List[Tuple[Tuple[str, ...], Tuple[str, ...]]]:
        """Connected components as (vertices, edge ids), in deterministic order."""
        adj = defaultdict(list)
        for e in self.edges:
            adj[e.u].append((e.v, e.id))
            adj[e.v].append((e.u, e.id))
        seen = set()
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            stack, verts, eids = [start], set(), set()
            seen.add(start)
            while stack:
                x = stack.pop()
                verts.add(x)
                for y, eid in adj[x]:
                    eids.add(eid)
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append((tuple(sorted(verts)), tuple(sorted(eids))))
        return comps

    def subgraph(self, eids: Iterable[str], name: str = "") -> "Graph":
        keep = set(eids)
        unknown = keep - set(self.edge_ids)
        if unknown:
            raise GraphError(f"unknown edges {sorted(unknown)}")
        return Graph(tuple(e for e in self.edges if e.id in keep), name or self.name)

    def relabel(self, name: str) -> "Graph":
        return Graph(self.edges, name)


@lru_cache(maxsize=1024)
def _valences(g: Graph) -> Dict[str, int]:
    val: Dict[str, int] = defaultdict(int)
    for e in g.edges:
        val[e.u] += 1
        val[e.v] += 1
    return dict(val)


def disjoint_union(g1: Graph, g2: Graph, name: str = "") -> Graph:
    """Union of two graphs; vertices and edge ids of ``g2`` get a ``'#'`` suffix."""
    edges = list(g1.edges) + [Edge(e.id + "#", e.u + "#", e.v + "#") for e in g2.edges]
    return Graph(tuple(edges), name or f"{g1.name}+{g2.name}")


@lru_cache(maxsize=1024)
def first_betti_number(g: Graph) -> int:
    return len(g.edges) - len(g.vertices) + len(g.components())


@lru_cache(maxsize=1024)
def bridges(g: Graph) -> frozenset:
    """Edge ids whose removal disconnects their component (Tarjan low-link on edge ids)."""
    adj = defaultdict(list)
    for e in g.edges:
        if e.is_loop:
            continue
        adj[e.u].append((e.v, e.id))
        adj[e.v].append((e.u, e.id))
    disc: Dict[str, int] = {}
    low: Dict[str, int] = {}
    out = set()
    counter = 0
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(adj[root]))]
        while stack:
            x, via, it = stack[-1]
            advanced = False
            for y, eid in it:
                if eid == via:
                    continue
                if y in disc:
                    low[x] = min(low[x], disc[y])
                else:
                    disc[y] = low[y] = counter
                    counter += 1
                    stack.append((y, eid, iter(adj[y])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[x])
                    if low[x] > disc[parent]:
                        out.add(via)
    return frozenset(out)


@lru_cache(maxsize=1024)
def cycle_edges(g: Graph) -> frozenset:
    return frozenset(g.edge_ids) - bridges(g)


def cycle_legs(g: Graph) -> frozenset:
    cyc = cycle_edges(g)
    on_cycle = {x for e in g.edges if e.id in cyc for x in (e.u, e.v)}
    return frozenset(
        e.id for e in g.edges if e.id not in cyc and (e.u in on_cycle or e.v in on_cycle)
    )


def _even_and_connected(g: Graph, eids: frozenset) -> bool:
    deg = defaultdict(int)
    for e in g.edges:
        if e.id in eids:
            deg[e.u] += 1
            deg[e.v] += 1
    if any(d % 2 for d in deg.values()):
        return False
    return len(g.subgraph(eids).components()) == 1


def enumerate_cycles(g: Graph) -> List[frozenset]:
    """Edge sets of all closed trails without repeated edges.

    These are exactly the non-empty connected members of the cycle space,
    so we combine fundamental cycles of a spanning forest instead of
    searching trails.
    """
    parent: Dict[str, Optional[Tuple[str, str]]] = {}
    adj = defaultdict(list)
    for e in g.edges:
        adj[e.u].append((e.v, e.id))
        adj[e.v].append((e.u, e.id))
    depth: Dict[str, int] = {}
    tree_edges = set()
    for root in g.vertices:
        if root in parent:
            continue
        parent[root] = None
        depth[root] = 0
        queue = [root]
        for x in queue:
            for y, eid in adj[x]:
                if y not in parent:
                    parent[y] = (x, eid)
                    depth[y] = depth[x] + 1
                    tree_edges.add(eid)
                    queue.append(y)

    def path_to_root(x):
        out = []
        while parent[x] is not None:
            x, eid = parent[x]
            out.append((x, eid))
        return out

    fundamental = []
    for e in g.edges:
        if e.id in tree_edges:
            continue
        cyc = {e.id}
        a, b = e.u, e.v
        while a != b:
            if depth[a] >= depth[b]:
                a, eid = parent[a]
            else:
                b, eid = parent[b]
            cyc ^= {eid}
        fundamental.append(frozenset(cyc))

    found = set()
    for r in range(1, len(fundamental) + 1):
        for combo in combinations(fundamental, r):
            s = frozenset()
            for c in combo:
                s = s ^ c
            if s and _even_and_connected(g, s):
                found.add(s)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


# -- cutting ---------------------------------------------------------------


@dataclass(frozen=True)
class CutResult:
    graph: Graph
    new_leaves: Tuple[str, str]


def cut_ids(eid: str) -> Tuple[str, str]:
    return eid + "'", eid + "''"


def cut_edge(g: Graph, eid: str) -> CutResult:
    """Replace the inner edge ``eid`` by two leaf edges ``eid'`` (at u) and ``eid''`` (at v)."""
    e = g.edge(eid)
    if eid not in g.inner_edges:
        raise GraphError(f"cannot cut leaf edge {eid!r}")
    e1, e2 = cut_ids(eid)
    taken = set(g.edge_ids) | set(g.vertices)
    if e1 in taken or e2 in taken:
        raise GraphError(f"cut ids for {eid!r} collide with existing names")
    edges = [x for x in g.edges if x.id != eid]
    edges.append(Edge(e1, e.u, f"<{e1}>"))
    edges.append(Edge(e2, e.v, f"<{e2}>"))
    return CutResult(Graph(tuple(edges), g.name), (e1, e2))


@dataclass(frozen=True)
class AssociatedTree:
    tree: Graph
    pairs: Tuple[Tuple[str, str], ...]
    origin: Dict[str, str] = field(hash=False, compare=False)


def associated_tree(g: Graph) -> AssociatedTree:
    """Cut the lexicographically smallest cycle edge until no cycle remains."""
    cur = g
    pairs = []
    origin = {eid: eid for eid in g.edge_ids}
    while True:
        cyc = cycle_edges(cur)
        if not cyc:
            break
        eid = min(cyc)
        res = cut_edge(cur, eid)
        cur = res.graph
        pairs.append(res.new_leaves)
        base = origin.pop(eid)
        origin[res.new_leaves[0]] = base
        origin[res.new_leaves[1]] = base
    return AssociatedTree(cur, tuple(pairs), origin)


def reglue(t: AssociatedTree) -> Graph:
    """Inverse of :func:`associated_tree` up to vertex names."""
    byid = {e.id: e for e in t.tree.edges}
    edges = [e for e in t.tree.edges if not any(e.id in p for p in t.pairs)]
    for a, b in t.pairs:
        edges.append(Edge(t.origin[a], byid[a].u, byid[b].u))
    return Graph(tuple(edges), t.tree.name)


# -- normalization ----------------------------------------------------------


@dataclass(frozen=True)
class Suppressed:
    graph: Graph
    provenance: Dict[str, str] = field(hash=False, compare=False)


def suppress_degree2(g: Graph) -> Suppressed:
    """Merge the two edges at every valence-2 vertex into one edge.

    ``provenance`` maps each original edge id to the id that carries its label.
    A lone loop (the only thing left of a cycle of valence-2 vertices) is a
    fixed point.
    """
    edges = {e.id: e for e in g.edges}
    prov = {eid: eid for eid in edges}
    while True:
        cur = Graph(tuple(edges.values()), g.name)
        target = None
        for v in cur.vertices:
            ends = cur.ends(v)
            if len(ends) == 2 and ends[0] != ends[1]:
                target = (v, ends)
                break
        if target is None:
            break
        v, (a, b) = target
        ea, eb = edges.pop(a), edges.pop(b)
        x = ea.v if ea.u == v else ea.u
        y = eb.v if eb.u == v else eb.u
        keep = min(a, b)
        edges[keep] = Edge(keep, x, y)
        for k, tgt in prov.items():
            if tgt in (a, b):
                prov[k] = keep
    return Suppressed(Graph(tuple(edges.values()), g.name), prov)


@dataclass(frozen=True)
class Refinement:
    graph: Graph
    projection: Dict[str, Optional[str]] = field(hash=False, compare=False)


def trivalent_refinement(g: Graph) -> Refinement:
    """Split every vertex of valence > 3 until all inner vertices are trivalent.

    A vertex ``v`` is replaced by ``v'`` carrying two of its edge-ends and
    ``v''`` carrying the rest, joined by a new edge.  On a cycle vertex one
    cycle-edge end goes to each side so no new cycle legs appear.  The
    projection maps new edges to ``None``.
    """
    if any(g.valence(v) == 2 for v in g.vertices):
        raise GraphError("trivalent_refinement needs a graph without valence-2 vertices")
    legs0 = cycle_legs(g)
    cur = g
    proj: Dict[str, Optional[str]] = {eid: eid for eid in g.edge_ids}
    counter = 0
    while True:
        big = [v for v in cur.vertices if cur.valence(v) > 3]
        if not big:
            break
        v = big[0]
        counter += 1
        nid = f"~n{counter}"
        cyc = cycle_edges(cur)
        slots = list(range(cur.valence(v)))
        ends = cur.ends(v)
        pairs = list(combinations(slots, 2))
        # preferred: one cycle end paired with one non-cycle end
        pairs.sort(key=lambda p: (not ((ends[p[0]] in cyc) != (ends[p[1]] in cyc)), p))
        chosen = None
        for pair in pairs:
            cand = _split_vertex(cur, v, set(pair), nid)
            legs = {proj.get(x, x) for x in cycle_legs(cand)}
            if nid not in cycle_legs(cand) and legs <= legs0 and \
                    first_betti_number(cand) == first_betti_number(cur):
                chosen = cand
                break
        if chosen is None:
            chosen = _split_vertex(cur, v, set(pairs[0]), nid)
        cur = chosen
        proj[nid] = None
    return Refinement(Graph(cur.edges, g.name), proj)


def _split_vertex(g: Graph, v: str, left_slots: set, nid: str) -> Graph:
    v1, v2 = v + "'", v + "''"
    edges = []
    slot = 0
    for e in g.edges:
        u, w = e.u, e.v
        if u == v:
            u = v1 if slot in left_slots else v2
            slot += 1
        if w == v:
            w = v1 if slot in left_slots else v2
            slot += 1
        edges.append(Edge(e.id, u, w))
    edges.append(Edge(nid, v1, v2))
    return Graph(tuple(edges), g.name)


# -- polygon cores -----------------------------------------------------------


@dataclass(frozen=True)
class PolygonCore:
    cut_edges: Tuple[str, ...]
    core: Graph
    trees: Tuple[Graph, ...]


def _side_edges(g: Graph, eid: str, start: str) -> set:
    """Edges reachable from ``start`` without crossing ``eid``."""
    adj = defaultdict(list)
    for e in g.edges:
        if e.id == eid:
            continue
        adj[e.u].append((e.v, e.id))
        adj[e.v].append((e.u, e.id))
    seen, stack, out = {start}, [start], set()
    while stack:
        x = stack.pop()
        for y, i in adj[x]:
            out.add(i)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return out


def multiple_polygon_core(g: Graph) -> PolygonCore:
    """Prune maximal trees hanging off the cyclic part by cutting non-cycle inner edges."""
    if first_betti_number(g) < 1:
        raise GraphError("multiple_polygon_core needs first Betti number >= 1")
    cyc = cycle_edges(g)
    inner = set(g.inner_edges)
    candidates = {}
    for eid in sorted(bridges(g) & inner):
        e = g.edge(eid)
        for start, other in ((e.u, e.v), (e.v, e.u)):
            side = _side_edges(g, eid, start)
            # side plus the new leaf edge is a tree with more than one edge,
            # and the far side still carries the cycles
            if side and not (side & cyc) and (_side_edges(g, eid, other) & cyc):
                candidates[eid] = frozenset(side)
    maximal = [
        eid for eid, side in candidates.items()
        if not any(side < other for o, other in candidates.items() if o != eid)
    ]
    cur = g
    for eid in sorted(maximal):
        cur = cut_edge(cur, eid).graph
    core_edges, trees = [], []
    cyc_after = cycle_edges(cur)
    for _, eids in cur.components():
        if set(eids) & cyc_after:
            core_edges.extend(eids)
        else:
            trees.append(cur.subgraph(eids, name=f"{g.name}:tree"))
    return PolygonCore(tuple(sorted(maximal)), cur.subgraph(core_edges), tuple(trees))
