"""Named graph families used by the tests, the CLI and the atlas.

Several shapes (dumbbell, shared_edge, shared_vertex) are reconstructed
from their structural description rather than from a drawing: the
descriptions pin down the cycle arrangement, and leaves are added so that
every inner vertex is trivalent unless stated otherwise.
"""

from __future__ import annotations

import random
import string
from typing import Callable, Dict, List, Tuple

from .graph import Graph, GraphError, disjoint_union


def _letters(n: int) -> List[str]:
    if n <= 26:
        return list(string.ascii_lowercase[:n])
    return [f"e{i:02d}" for i in range(n)]


def polygon(k: int) -> Graph:
    """k-cycle with one leg at every cycle vertex (k = 1 is a loop with a leg)."""
    if k < 1:
        raise GraphError("polygon needs k >= 1")
    edges = []
    for i in range(k):
        edges.append((f"c{i}", f"v{i}", f"v{(i + 1) % k}"))
        edges.append((f"l{i}", f"v{i}", f"x{i}"))
    return Graph.from_edges(edges, f"polygon({k})")


def multi_edge(g: int) -> Graph:
    """Two vertices joined by g + 1 parallel edges (first Betti number g)."""
    if g < 0:
        raise GraphError("multi_edge needs g >= 0")
    return Graph.from_edges([(x, "u", "v") for x in _letters(g + 1)], f"multi_edge({g})")


def theta() -> Graph:
    return multi_edge(2).relabel("theta")


def bouquet(g: int) -> Graph:
    """One vertex carrying g loops and nothing else."""
    if g < 1:
        raise GraphError("bouquet needs g >= 1")
    return Graph.from_edges([(f"l{i}", "w", "w") for i in range(1, g + 1)], f"bouquet({g})")


def caterpillar(n: int) -> Graph:
    """Trivalent tree whose inner vertices form a path of length n - 1."""
    if n < 1:
        raise GraphError("caterpillar needs n >= 1")
    edges = []
    leaf = 0

    def add_leaf(v):
        nonlocal leaf
        edges.append((f"f{leaf}", v, f"y{leaf}"))
        leaf += 1

    for i in range(n):
        v = f"s{i}"
        if i > 0:
            edges.append((f"p{i}", f"s{i - 1}", v))
        need = 3 - (i > 0) - (i < n - 1)
        for _ in range(need):
            add_leaf(v)
    return Graph.from_edges(edges, f"caterpillar({n})")


def _path_between(a: str, b: str, length: int, pendant: bool = True) -> List[Tuple[str, str, str]]:
    """Edges p1..pL from a to b; inner path vertices m1.. get pendant leaves s1.. ."""
    verts = [a] + [f"m{i}" for i in range(1, length)] + [b]
    edges = [(f"p{i + 1}", verts[i], verts[i + 1]) for i in range(length)]
    if pendant:
        edges += [(f"s{i}", f"m{i}", f"z{i}") for i in range(1, length)]
    return edges


def dumbbell(L: int) -> Graph:
    """Two triangles joined by a path of L edges.

    L = 0 glues the triangles at a vertex.  The two remaining vertices of
    each triangle carry one leg; inner path vertices carry one pendant leaf
    ``s<i>`` so they are trivalent.
    """
    if L < 0:
        raise GraphError("dumbbell needs L >= 0")
    left = [("a1", "p0", "p1"), ("a2", "p1", "p2"), ("a3", "p2", "p0"),
            ("al1", "p1", "xl1"), ("al2", "p2", "xl2")]
    q0 = "p0" if L == 0 else "q0"
    right = [("b1", q0, "q1"), ("b2", "q1", "q2"), ("b3", "q2", q0),
             ("bl1", "q1", "xr1"), ("bl2", "q2", "xr2")]
    return Graph.from_edges(left + right + _path_between("p0", q0, L), f"dumbbell({L})")


def loop_dumbbell(L: int) -> Graph:
    """Two loops joined by a path of L edges (L = 0: both loops at one vertex)."""
    if L < 0:
        raise GraphError("loop_dumbbell needs L >= 0")
    b = "a" if L == 0 else "b"
    edges = [("la", "a", "a"), ("lb", b, b)] + _path_between("a", b, L)
    return Graph.from_edges(edges, f"loop_dumbbell({L})")


def shared_edge(k: int = 2) -> Graph:
    """Theta graph in which k of the three parallel edges carry a leg at their midpoint.

    The two cycles through the unsubdivided edge share it; with k >= 1 the
    graph has free cycle legs.
    """
    if not 0 <= k <= 3:
        raise GraphError("shared_edge needs 0 <= k <= 3")
    edges = []
    for i, x in enumerate("abc"):
        if i < 3 - k:
            edges.append((x, "u", "v"))
        else:
            edges += [(f"{x}1", "u", f"m{x}"), (f"{x}2", f"m{x}", "v"), (f"l{x}", f"m{x}", f"y{x}")]
    return Graph.from_edges(edges, f"shared_edge({k})")


def shared_vertex(k: int = 1) -> Graph:
    """Two k-cycles meeting in exactly one vertex ``w``.

    Every other cycle vertex carries a leg and ``w`` carries one extra leg,
    so there is always a free cycle leg.
    """
    if k < 1:
        raise GraphError("shared_vertex needs k >= 1")
    edges = [("t", "w", "yw")]
    for side in "AB":
        verts = ["w"] + [f"{side}{i}" for i in range(1, k)]
        for i in range(k):
            edges.append((f"{side.lower()}{i}", verts[i], verts[(i + 1) % k]))
        for i in range(1, k):
            edges.append((f"{side.lower()}l{i}", verts[i], f"y{side}{i}"))
    return Graph.from_edges(edges, f"shared_vertex({k})")


def polygon_pair(k: int = 1) -> Graph:
    """Two disjoint copies of polygon(k)."""
    return disjoint_union(polygon(k), polygon(k), f"polygon_pair({k})")


def loop_chain(g: int) -> Graph:
    """Chain of g loops: loop at each of v1..vg, consecutive vertices joined by an edge."""
    if g < 1:
        raise GraphError("loop_chain needs g >= 1")
    edges = [(f"l{i}", f"v{i}", f"v{i}") for i in range(1, g + 1)]
    edges += [(f"p{i}", f"v{i}", f"v{i + 1}") for i in range(1, g)]
    if g == 1:
        edges.append(("t", "v1", "y"))
    return Graph.from_edges(edges, f"loop_chain({g})")


def random_tree(n_edges: int, seed: int = 0) -> Graph:
    """Random tree grown by attaching leaves to uniformly chosen vertices."""
    if n_edges < 1:
        raise GraphError("random_tree needs at least one edge")
    rng = random.Random(seed)
    verts = ["t0", "t1"]
    edges = [("e00", "t0", "t1")]
    for i in range(1, n_edges):
        v = f"t{len(verts)}"
        edges.append((f"e{i:02d}", rng.choice(verts), v))
        verts.append(v)
    return Graph.from_edges(edges, f"random_tree({n_edges},{seed})")


def random_trivalent_tree(n_inner: int, seed: int = 0) -> Graph:
    """Random trivalent tree with n_inner inner vertices, grown by splitting leaves."""
    if n_inner < 1:
        raise GraphError("random_trivalent_tree needs n_inner >= 1")
    rng = random.Random(seed)
    edges = [(f"e{i:02d}", "t0", f"t{i + 1}") for i in range(3)]
    leaves = ["t1", "t2", "t3"]
    nv = 4
    for _ in range(n_inner - 1):
        v = leaves.pop(rng.randrange(len(leaves)))
        for _ in range(2):
            edges.append((f"e{len(edges):02d}", v, f"t{nv}"))
            leaves.append(f"t{nv}")
            nv += 1
    return Graph.from_edges(edges, f"random_trivalent_tree({n_inner},{seed})")


def single_edge() -> Graph:
    return Graph.from_edges([("e", "x", "y")], "single_edge")


FAMILIES: Dict[str, Callable[..., Graph]] = {
    "polygon": polygon,
    "theta": theta,
    "multi_edge": multi_edge,
    "bouquet": bouquet,
    "caterpillar": caterpillar,
    "dumbbell": dumbbell,
    "loop_dumbbell": loop_dumbbell,
    "shared_edge": shared_edge,
    "shared_vertex": shared_vertex,
    "polygon_pair": polygon_pair,
    "loop_chain": loop_chain,
    "random_tree": random_tree,
    "random_trivalent_tree": random_trivalent_tree,
    "single_edge": single_edge,
}


def family(name: str, *params: int) -> Graph:
    try:
        ctor = FAMILIES[name]
    except KeyError:
        raise GraphError(f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}")
    try:
        return ctor(*params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {name}: {exc}")
