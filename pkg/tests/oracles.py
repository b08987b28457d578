"""Brute-force reference computations for the test suite.

Nothing here uses the facet description or the vectorized scans: members
come from ``itertools.product`` filtered by the network-decomposition
oracle, and decomposability is a plain set lookup.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Dict, FrozenSet, List, Set, Tuple

import networkx as nx

from phylosemi.graph import Graph
from phylosemi.semigroup import Labeling, is_member_oracle

Vec = Tuple[int, ...]


@lru_cache(maxsize=None)
def members(g: Graph, d: int) -> FrozenSet[Vec]:
    eids = g.edge_ids
    out = set()
    for x in product(range(d + 1), repeat=len(eids)):
        if is_member_oracle(g, Labeling.from_vector(d, eids, x)):
            out.add(x)
    return frozenset(out)


def sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def decomposable(g: Graph, d: int, x: Vec) -> bool:
    for k in range(1, d // 2 + 1):
        rest = members(g, d - k)
        for u in members(g, k):
            if all(a <= b for a, b in zip(u, x)) and sub(x, u) in rest:
                return True
    return False


def generators(g: Graph, cap: int) -> Dict[int, Set[Vec]]:
    return {d: {x for x in members(g, d) if not decomposable(g, d, x)} for d in range(1, cap + 1)}


def three_network_sums(g: Graph) -> Set[Vec]:
    nets = sorted(members(g, 1))
    return {add(add(a, b), c) for a, b, c in combinations_with_replacement(nets, 3)}


def splits_1_2(g: Graph, x: Vec) -> List[Tuple[Vec, Vec]]:
    deg2 = members(g, 2)
    return [(u, sub(x, u)) for u in sorted(members(g, 1))
            if all(a <= b for a, b in zip(u, x)) and sub(x, u) in deg2]


def to_nx(g: Graph) -> nx.MultiGraph:
    h = nx.MultiGraph()
    h.add_nodes_from(g.vertices)
    for e in g.edges:
        h.add_edge(e.u, e.v)
    return h


def isomorphic(g1: Graph, g2: Graph) -> bool:
    return nx.is_isomorphic(to_nx(g1), to_nx(g2))
