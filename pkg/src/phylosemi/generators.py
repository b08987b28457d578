"""Minimal generating sets of tau(G) up to a degree cap, by exhaustive enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from .classify import generator_tag
from .graph import Graph, first_betti_number
from .semigroup import Labeling, LabelingError, compiled, is_member, scan_box, scan_degree


@dataclass
class GeneratorReport:
    graph: Graph
    generators: List[Labeling]
    per_degree_counts: Dict[int, int]
    max_degree: int
    cap_used: int
    cap_hit: bool
    tags: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


def default_cap(g: Graph) -> int:
    return first_betti_number(g) + 1


def _codes(X: np.ndarray, base: int) -> np.ndarray:
    weights = base ** np.arange(X.shape[1], dtype=np.int64)
    return X.astype(np.int64) @ weights


def is_indecomposable(g: Graph, w: Labeling) -> bool:
    """True iff ``w`` is not the sum of two members of positive degree.

    Any decomposition has a summand of degree k <= deg/2, so only those
    degrees are searched: candidates u lie in the box
    ``max(0, w - (deg - k)) <= u <= min(w, k)`` and are kept when ``w - u``
    is a member.
    """
    if not is_member(g, w):
        raise LabelingError(f"{w} is not a member of tau({g.name})")
    d = w.degree
    if d < 1:
        raise LabelingError("degree-zero labelings are not generators")
    c = compiled(g)
    x = np.array(w.vector(c.eids), dtype=np.int64)
    for k in range(1, d // 2 + 1):
        U = scan_box(g, k, np.maximum(x - (d - k), 0), np.minimum(x, k))
        if len(U) and c.member_mask(x[None, :] - U, d - k).any():
            return False
    return True


@lru_cache(maxsize=64)
def _generator_table(g: Graph, cap: int) -> Tuple[Tuple[np.ndarray, ...], Tuple[np.ndarray, ...]]:
    """(members by degree, generators by degree) as arrays, degrees 0..cap."""
    n = len(g.edges)
    base = cap + 1
    members = [np.zeros((1, n), dtype=np.int64)]
    gens = [np.zeros((0, n), dtype=np.int64)]
    codes = [np.sort(_codes(members[0], base))]
    for d in range(1, cap + 1):
        M = scan_degree(g, d)
        decomposable = np.zeros(len(M), dtype=bool)
        if d > 1:
            for k in range(1, d // 2 + 1):
                target = codes[d - k]
                for u in gens[k]:
                    R = M - u
                    ok = np.all(R >= 0, axis=1) & ~decomposable
                    if not ok.any():
                        continue
                    rc = _codes(R[ok], base)
                    hit = np.searchsorted(target, rc)
                    hit = np.minimum(hit, len(target) - 1)
                    found = target[hit] == rc
                    idx = np.nonzero(ok)[0][found]
                    decomposable[idx] = True
        members.append(M)
        codes.append(np.sort(_codes(M, base)))
        gens.append(M[~decomposable])
    return tuple(members), tuple(gens)


def minimal_generators(g: Graph, cap: Optional[int] = None) -> GeneratorReport:
    """All indecomposable members of degree <= cap in (degree, lexicographic) order.

    ``cap_hit`` is set when indecomposables exist at the cap itself, so
    generators of higher degree cannot be ruled out.
    """
    cap = default_cap(g) if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be >= 1")
    _, gens = _generator_table(g, cap)
    eids = g.edge_ids
    out = []
    counts = {}
    for d in range(1, cap + 1):
        counts[d] = len(gens[d])
        out.extend(Labeling.from_vector(d, eids, row) for row in gens[d])
    max_degree = max((d for d in counts if counts[d]), default=0)
    tags = [generator_tag(g, w) for w in out]
    return GeneratorReport(g, out, counts, max_degree, cap, counts[cap] > 0, tags, _notes(g, out))


def _notes(g: Graph, gens: List[Labeling]) -> List[str]:
    """Flag degree-1 generators that use two loops at one vertex.

    They are members under the definition by the cut tree, but a reading of
    networks as vertex-disjoint unions would leave them out.
    """
    loops: Dict[str, List[str]] = {}
    for e in g.edges:
        if e.is_loop:
            loops.setdefault(e.u, []).append(e.id)
    hits = []
    for w in gens:
        if w.degree != 1:
            continue
        lab = w.labels
        if any(sum(lab[e] for e in ls) >= 2 for ls in loops.values()):
            hits.append(str(w))
    if not hits:
        return []
    return [f"loop-sharing degree-1 generators (excluded if networks must be vertex-disjoint): {'; '.join(hits)}"]


def max_generator_degree(g: Graph, cap: Optional[int] = None) -> Tuple[int, bool]:
    rep = minimal_generators(g, cap)
    return rep.max_degree, rep.cap_hit


def members_up_to(g: Graph, cap: int) -> Dict[int, np.ndarray]:
    members, _ = _generator_table(g, cap)
    return {d: members[d] for d in range(cap + 1)}
