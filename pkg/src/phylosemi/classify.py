"""Closed-form characterizations of minimal generators.

Each predicate decides indecomposability from the shape of a labeling on
cycles, cycle legs and separating paths, without searching decompositions.
The brute-force layer in :mod:`phylosemi.generators` is the ground truth the
test suite checks these against.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .graph import (Edge, Graph, GraphError, cycle_edges, cycle_legs, enumerate_cycles,
                    first_betti_number, trivalent_refinement)
from .semigroup import Labeling, LabelingError, is_member, scan_box

TAG_NETWORK = "Network"
TAG_DEG2 = "Deg2OddLegs"
TAG_DEG3 = "Deg3Separated"
TAG_NO_FREE_LEGS = "NoFreeLegs"
TAG_UNCLASSIFIED = "Unclassified"

NO_FREE_LEGS = "NoFreeLegs"
DIFFERENT_COMPONENTS = "CyclesInDifferentComponents"
SHARE_EDGE_OR_VERTEX = "CyclesShareEdgeOrVertexWithFreeLeg"
SINGLE_EDGE = "CyclesSeparatedBySingleEdge"
INNER_VERTEX = "CyclesSeparatedByInnerVertex"

_MAX_DEGREE = {NO_FREE_LEGS: 1, DIFFERENT_COMPONENTS: 2, SHARE_EDGE_OR_VERTEX: 2,
               SINGLE_EDGE: 2, INNER_VERTEX: 3}


class Betti2Class(NamedTuple):
    tag: str
    max_degree: int


class Deg3Witness(NamedTuple):
    w1: Labeling
    w2: Labeling


def _require_member(g: Graph, w: Labeling, degree: int) -> None:
    if w.degree != degree:
        raise LabelingError(f"expected degree {degree}, got {w.degree}")
    if not is_member(g, w):
        raise LabelingError(f"{w} is not a member of tau({g.name})")


# -- cycles with their legs ----------------------------------------------------


@lru_cache(maxsize=256)
def cycle_polygon(g: Graph, cycle: FrozenSet[str]) -> Tuple[Graph, Dict[str, str]]:
    """The cycle together with its cycle legs, as a polygon graph.

    Every end at a cycle vertex that does not belong to the cycle becomes
    its own leaf edge, so an edge meeting the cycle twice yields two legs.
    Returns the polygon and a map from its edge ids to edge ids of ``g``.
    """
    cyc_edges = [e for e in g.edges if e.id in cycle]
    verts = sorted({x for e in cyc_edges for x in (e.u, e.v)})
    incid: List[Tuple[str, str]] = []
    for v in verts:
        for eid in g.ends(v):
            if eid not in cycle:
                incid.append((v, eid))
    counts: Dict[str, int] = {}
    for _, eid in incid:
        counts[eid] = counts.get(eid, 0) + 1
    edges = list(cyc_edges)
    origin = {e.id: e.id for e in cyc_edges}
    for v, eid in incid:
        pid = eid if counts[eid] == 1 else f"{eid}@{v}"
        edges.append(Edge(pid, v, f"<leaf:{pid}>"))
        origin[pid] = eid
    return Graph(tuple(edges), f"{g.name}|cycle"), origin


def _pullback(w: Labeling, origin: Dict[str, str]) -> Labeling:
    lab = w.labels
    return Labeling.of(w.degree, {pid: lab[eid] for pid, eid in origin.items()})


def _odd_legs_form(poly: Graph, wp: Labeling, cycle: FrozenSet[str]) -> bool:
    """Cycle edges 1, an odd number of legs 2, remaining legs 0."""
    lab = wp.labels
    if any(lab[e] != 1 for e in cycle):
        return False
    legs = [lab[e] for e in poly.edge_ids if e not in cycle]
    return all(x in (0, 2) for x in legs) and legs.count(2) % 2 == 1


def is_deg2_indec_betti1(g: Graph, w: Labeling) -> bool:
    """Degree-2 indecomposables on a first-Betti-number-1 graph (any valence)."""
    if first_betti_number(g) != 1:
        raise GraphError("is_deg2_indec_betti1 needs first Betti number 1")
    _require_member(g, w, 2)
    cyc = cycle_edges(g)
    poly, origin = cycle_polygon(g, cyc)
    return _odd_legs_form(poly, _pullback(w, origin), cyc)


def deg2_witness(g: Graph, w: Labeling) -> Optional[FrozenSet[str]]:
    """A cycle whose polygon restriction has the odd-legs form, or None (trivalent graphs)."""
    if not g.is_trivalent():
        raise GraphError(f"{g.name or 'graph'} is not trivalent")
    _require_member(g, w, 2)
    for cyc in enumerate_cycles(g):
        poly, origin = cycle_polygon(g, cyc)
        if _odd_legs_form(poly, _pullback(w, origin), cyc):
            return cyc
    return None


def _lifts(g: Graph, w: Labeling):
    """Members of tau(G') over ``w`` for the trivalent refinement G' of ``g``."""
    ref = trivalent_refinement(g)
    gp = ref.graph
    lab = w.labels
    lo, hi = [], []
    for eid in gp.edge_ids:
        base = ref.projection[eid]
        if base is None:
            lo.append(0)
            hi.append(w.degree)
        else:
            lo.append(lab[base])
            hi.append(lab[base])
    rows = scan_box(gp, w.degree, lo, hi)
    return gp, [Labeling.from_vector(w.degree, gp.edge_ids, r) for r in rows]


def is_deg2_indec_trivalent(g: Graph, w: Labeling, refine: bool = False) -> bool:
    """Degree-2 indecomposability via a witnessing cycle with odd legs.

    With ``refine=True`` a non-trivalent graph is replaced by its trivalent
    refinement: ``w`` is indecomposable exactly when every lift is, since
    decompositions project and lift.
    """
    if g.is_trivalent():
        return deg2_witness(g, w) is not None
    if not refine:
        raise GraphError(f"{g.name or 'graph'} is not trivalent")
    _require_member(g, w, 2)
    gp, lifts = _lifts(g, w)
    return all(deg2_witness(gp, x) is not None for x in lifts)


# -- first Betti number 2 ----------------------------------------------------------


@dataclass(frozen=True)
class Separation:
    """Two cycle blocks of a Betti-2 graph joined by a path of bridges."""
    left: FrozenSet[str]
    right: FrozenSet[str]
    path: Tuple[str, ...]
    inner_vertices: Tuple[str, ...]
    verticals: Tuple[str, ...]


@lru_cache(maxsize=256)
def _cycle_blocks(g: Graph) -> List[Tuple[FrozenSet[str], FrozenSet[str]]]:
    """Connected pieces of the cycle-edge subgraph as (edges, vertices)."""
    cyc = cycle_edges(g)
    sub = g.subgraph(cyc)
    return [(frozenset(eids), frozenset(vs)) for vs, eids in sub.components()]


@lru_cache(maxsize=256)
def separation(g: Graph) -> Optional[Separation]:
    """Path between the two cycle blocks, if they are distinct and in one component."""
    blocks = _cycle_blocks(g)
    if len(blocks) != 2:
        return None
    (ea, va), (eb, vb) = blocks
    comp_of = {}
    for i, (vs, _) in enumerate(g.components()):
        for v in vs:
            comp_of[v] = i
    if comp_of[next(iter(va))] != comp_of[next(iter(vb))]:
        return None
    cyc = cycle_edges(g)
    adj: Dict[str, List[Tuple[str, str]]] = {}
    for e in g.edges:
        if e.id in cyc:
            continue
        adj.setdefault(e.u, []).append((e.v, e.id))
        adj.setdefault(e.v, []).append((e.u, e.id))
    # BFS from the left block; count shortest paths to reject ties
    dist = {v: 0 for v in va}
    ways = {v: 1 for v in va}
    prev: Dict[str, Tuple[str, str]] = {}
    queue = sorted(va)
    for x in queue:
        for y, eid in sorted(adj.get(x, [])):
            if y in va:
                continue
            if y not in dist:
                dist[y] = dist[x] + 1
                ways[y] = ways[x]
                prev[y] = (x, eid)
                queue.append(y)
            elif dist[y] == dist[x] + 1:
                ways[y] += ways[x]
    ends = [v for v in vb if v in dist]
    best = min(dist[v] for v in ends)
    targets = [v for v in ends if dist[v] == best]
    if len(targets) != 1 or ways[targets[0]] != 1:
        raise GraphError("shortest path between the cycles is not unique")
    path, inner = [], []
    x = targets[0]
    while x not in va:
        x, eid = prev[x]
        path.append(eid)
        if x not in va:
            inner.append(x)
    path.reverse()
    inner.reverse()
    on_path = set(path)
    verticals = sorted({eid for v in inner for eid in g.ends(v)
                        if eid not in on_path and eid not in cyc})
    return Separation(ea, eb, tuple(path), tuple(inner), tuple(verticals))


def classify_betti2(g: Graph) -> Betti2Class:
    """Structural case of a normalized Betti-2 graph and its maximal generator degree."""
    if first_betti_number(g) != 2:
        raise GraphError("classify_betti2 needs first Betti number 2")
    if any(g.valence(v) == 2 for v in g.vertices):
        raise GraphError("graph has valence-2 vertices; normalize with suppress_degree2 first")
    if not cycle_legs(g):
        tag = NO_FREE_LEGS
    else:
        blocks = _cycle_blocks(g)
        if len(blocks) == 1:
            tag = SHARE_EDGE_OR_VERTEX
        else:
            sep = separation(g)
            if sep is None:
                tag = DIFFERENT_COMPONENTS
            elif len(sep.path) == 1:
                tag = SINGLE_EDGE
            else:
                tag = INNER_VERTEX
    return Betti2Class(tag, _MAX_DEGREE[tag])


# -- degree three on polygons ------------------------------------------------------------


@lru_cache(maxsize=256)
def _polygon_walk(g: Graph) -> Tuple[List[str], List[str]]:
    """Legs and arcs of a trivalent polygon graph in walk order: arc i joins leg i to leg i+1."""
    if first_betti_number(g) != 1 or not g.is_trivalent():
        raise GraphError("expected a trivalent polygon graph")
    cyc = cycle_edges(g)
    verts = sorted({x for e in g.edges if e.id in cyc for x in (e.u, e.v)})
    leg_at = {}
    for v in verts:
        others = [eid for eid in g.ends(v) if eid not in cyc]
        if len(others) != 1:
            raise GraphError("expected exactly one leg at every cycle vertex")
        leg_at[v] = others[0]
    if set(g.edge_ids) != set(cyc) | set(leg_at.values()):
        raise GraphError("polygon graph has edges beyond the cycle and its legs")
    legs, arcs = [], []
    start = min(verts, key=lambda v: leg_at[v])
    v, came = start, None
    for _ in range(len(verts)):
        legs.append(leg_at[v])
        nxt = sorted(e for e in g.ends(v) if e in cyc and e != came)
        eid = nxt[0] if nxt else came
        e = g.edge(eid)
        arcs.append(eid)
        v = e.v if e.u == v else e.u
        came = eid
    return legs, arcs


def _path(legs, arcs, i: int, j: int) -> set:
    """Leg i, arcs i..j-1 and leg j (positions mod m)."""
    m = len(legs)
    out = {legs[i], legs[j]}
    p = i
    while True:
        out.add(arcs[p])
        p = (p + 1) % m
        if p == j:
            break
    return out


def _deg3_shapes(legs, arcs, twos: Sequence[int]) -> List[set]:
    """Edge sets of the admissible degree-1 parts for value-2 legs at positions ``twos``."""
    m = len(legs)
    n = len(twos)          # 2k + 1
    k = (n - 1) // 2
    shapes = []
    for r in range(n):
        e = [twos[(t + r) % n] for t in range(n)]
        base = set()
        for t in range(0, 2 * k - 1, 2):
            base |= _path(legs, arcs, e[t], e[t + 1])
        shapes.append(set(base))
        if k >= 1:
            alt = set()
            for t in range(0, 2 * k - 3, 2):
                alt |= _path(legs, arcs, e[t], e[t + 1])
            alt |= _path(legs, arcs, e[2 * k - 2], e[2 * k])
            shapes.append(alt)
        p = (e[2 * k] + 1) % m
        while p != e[0]:
            shapes.append(base | _path(legs, arcs, e[2 * k], p))
            p = (p + 1) % m
        if k == 0:
            shapes.append(set(arcs))
    return shapes


def deg3_polygon_characterize(g: Graph, w: Labeling) -> Optional[Deg3Witness]:
    """Split ``w = w1 + w2`` when ``w`` is not a sum of three networks, else None.

    ``w2`` must be the degree-2 odd-legs generator, which forces its set of
    value-2 legs to be the legs where ``w >= 2``; ``w1`` must then be one of
    the admissible path unions, in either walking direction and for any
    choice of the first value-2 leg.
    """
    _require_member(g, w, 3)
    legs, arcs = _polygon_walk(g)
    lab = w.labels
    if any(lab[a] not in (1, 2) for a in arcs):
        return None
    two_legs = [i for i, l in enumerate(legs) if lab[l] >= 2]
    if len(two_legs) % 2 == 0:
        return None
    w2 = {a: 1 for a in arcs}
    w2.update({l: (2 if i in two_legs else 0) for i, l in enumerate(legs)})
    w1 = {e: lab[e] - w2[e] for e in lab}
    if any(x not in (0, 1) for x in w1.values()):
        return None
    support = {e for e, x in w1.items() if x}
    m = len(legs)
    for flip in (False, True):
        if flip:
            # reverse walking direction: leg i keeps its vertex, arc i-1 becomes arc i
            order = [(-i) % m for i in range(m)]
            L = [legs[i] for i in order]
            A = [arcs[(-i - 1) % m] for i in range(m)]
            twos = sorted(order.index(i) for i in two_legs)
        else:
            L, A, twos = legs, arcs, two_legs
        if any(s == support for s in _deg3_shapes(L, A, twos)):
            return Deg3Witness(Labeling.of(1, w1), Labeling.of(2, w2))
    return None


def is_deg3_indec_sep(g: Graph, w: Labeling) -> bool:
    """Degree-3 indecomposables when the two cycles are separated by an inner vertex."""
    if not g.is_trivalent() or first_betti_number(g) != 2:
        raise GraphError("is_deg3_indec_sep needs a trivalent graph with first Betti number 2")
    sep = separation(g)
    if sep is None or len(sep.path) < 2:
        raise GraphError("cycles are not separated by an inner vertex")
    _require_member(g, w, 3)
    for cyc in (sep.left, sep.right):
        poly, origin = cycle_polygon(g, cyc)
        if deg3_polygon_characterize(poly, _pullback(w, origin)) is None:
            return False
    lab = w.labels
    if any(lab[e] not in (1, 2) for e in sep.path):
        return False
    mid = [e for e in sep.verticals if lab[e] in (1, 2)]
    return len(mid) == 1 and all(lab[e] in (0, 3) for e in sep.verticals if e not in mid)


# -- tagging -------------------------------------------------------------------------------


def generator_tag(g: Graph, w: Labeling) -> str:
    """Which characterization accounts for the generator ``w``."""
    if w.degree == 1:
        return TAG_NETWORK
    betti = first_betti_number(g)
    if w.degree == 2 and betti >= 1:
        if betti == 1:
            ok = is_deg2_indec_betti1(g, w)
        elif any(g.valence(v) == 2 for v in g.vertices):
            ok = False
        else:
            ok = is_deg2_indec_trivalent(g, w, refine=True)
        return TAG_DEG2 if ok else TAG_UNCLASSIFIED
    if w.degree == 3 and betti == 2 and g.is_trivalent():
        sep = separation(g)
        if sep is not None and len(sep.path) >= 2 and is_deg3_indec_sep(g, w):
            return TAG_DEG3
    return TAG_UNCLASSIFIED
