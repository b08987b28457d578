"""Constructive decompositions of members into smaller members.

Every routine returns pieces that are members of the same graph and sum
exactly to the input.  Searches visit candidates in a fixed order, so the
first decomposition found is reproducible.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .classify import Deg3Witness, deg3_polygon_characterize
from .graph import Graph, GraphError, bridges, cut_edge, cycle_edges, first_betti_number
from .semigroup import Labeling, LabelingError, compiled, is_member, scan_box, scan_degree


class DecompositionError(RuntimeError):
    """A search that should succeed did not, or a degree cap blocked progress."""


def _require_member(g: Graph, w: Labeling) -> np.ndarray:
    if not is_member(g, w):
        raise LabelingError(f"{w} is not a member of tau({g.name})")
    return np.array(w.vector(g.edge_ids), dtype=np.int64)


@lru_cache(maxsize=256)
def _networks_desc(g: Graph) -> np.ndarray:
    # reverse lexicographic: non-empty networks are tried before the empty one
    return scan_degree(g, 1)[::-1].copy()


def _network_sum(g: Graph, x: np.ndarray, d: int) -> Optional[List[np.ndarray]]:
    """``x`` (degree ``d``) as a sum of d networks, or None.

    Backtracking over networks in reverse lexicographic order, as a
    multiset (non-decreasing index), keeping the remainder a member.
    """
    nets = _networks_desc(g)
    c = compiled(g)
    failed = set()

    def rec(rest: np.ndarray, k: int, start: int):
        if k == 0:
            return [] if not rest.any() else None
        key = (rest.tobytes(), k, start)
        if key in failed:
            return None
        cand = nets[start:]
        fits = np.all(cand <= rest, axis=1)
        if k > 1:
            fits &= c.member_mask(rest[None, :] - cand, k - 1)
        else:
            fits &= np.all(cand == rest, axis=1)
        for i in np.nonzero(fits)[0]:
            sub = rec(rest - cand[i], k - 1, start + int(i))
            if sub is not None:
                return [cand[i]] + sub
        failed.add(key)
        return None

    return rec(x, d, 0)


def _pieces(g: Graph, rows: Sequence[np.ndarray], degrees: Sequence[int]) -> List[Labeling]:
    eids = g.edge_ids
    return [Labeling.from_vector(d, eids, r) for r, d in zip(rows, degrees)]


def decompose_tree_networks(t: Graph, w: Labeling) -> List[Labeling]:
    """Write a member on a forest as a sum of ``deg w`` networks."""
    if first_betti_number(t) != 0:
        raise GraphError(f"{t.name or 'graph'} is not a forest")
    x = _require_member(t, w)
    if w.degree == 0:
        return []
    rows = _network_sum(t, x, w.degree)
    if rows is None:
        raise DecompositionError(f"no network decomposition of {w} on a forest")
    return _pieces(t, rows, [1] * w.degree)


# -- cut and lift ------------------------------------------------------------------


def _decompose_any(g: Graph, w: Labeling) -> List[Labeling]:
    if first_betti_number(g) == 0:
        return decompose_tree_networks(g, w)
    return decompose_full(g, w)


def _group_balanced(deltas: Sequence[int]) -> List[List[int]]:
    """Partition piece indices into groups with zero total imbalance.

    Balanced pieces stay alone; the others are collected greedily,
    alternating signs, until the running sum returns to zero.
    """
    groups = [[i] for i, x in enumerate(deltas) if x == 0]
    pos = [i for i, x in enumerate(deltas) if x > 0]
    neg = [i for i, x in enumerate(deltas) if x < 0]
    while pos or neg:
        cur, s = [], 0
        while True:
            src = neg if s > 0 else pos if s < 0 else (pos or neg)
            i = src.pop(0)
            cur.append(i)
            s += deltas[i]
            if s == 0:
                break
        groups.append(cur)
    return groups


def _match_sides(a: Sequence[Tuple[int, int]], b: Sequence[Tuple[int, int]]) -> List[Tuple[List[int], List[int]]]:
    """Pair sub-multisets of ``a`` and ``b`` with equal (degree, cut value) totals.

    Smallest matching groups are split off first; whatever remains forms
    the last group.
    """
    ia, ib = list(range(len(a))), list(range(len(b)))
    out = []
    while ia:
        sums_b: Dict[Tuple[int, int], Tuple[int, ...]] = {}
        for r in range(1, len(ib) + 1):
            for S in combinations(ib, r):
                key = (sum(b[j][0] for j in S), sum(b[j][1] for j in S))
                sums_b.setdefault(key, S)
        found = None
        for r in range(1, len(ia)):
            for S in combinations(ia, r):
                key = (sum(a[j][0] for j in S), sum(a[j][1] for j in S))
                if key in sums_b and len(sums_b[key]) < len(ib):
                    found = (list(S), list(sums_b[key]))
                    break
            if found:
                break
        if not found:
            out.append((ia, ib))
            break
        out.append(found)
        ia = [i for i in ia if i not in found[0]]
        ib = [j for j in ib if j not in found[1]]
    return out


def cut_and_lift(g: Graph, w: Labeling, e: str) -> Optional[List[Labeling]]:
    """One decomposition step through the cut graph at the inner edge ``e``.

    The labeling is copied to the cut graph (both new leaves carry
    ``w[e]``), decomposed there, and the pieces are regrouped so that each
    group carries equal values on the two new leaves; each group then glues
    back to a member of ``g``.  Returns at least two pieces or None.
    """
    g.edge(e)
    if e not in g.inner_edges:
        return None
    _require_member(g, w)
    if w.degree < 2:
        return None
    cut = cut_edge(g, e)
    e1, e2 = cut.new_leaves
    lab = dict(w.labels)
    val = lab.pop(e)
    lab[e1] = lab[e2] = val

    if e in cycle_edges(g):
        gc = cut.graph
        sub = _decompose_any(gc, Labeling.of(w.degree, lab))
        groups = _group_balanced([p[e1] - p[e2] for p in sub])
        parts = [[sub[i] for i in grp] for grp in groups]
    elif e in bridges(g):
        gc = cut.graph
        side_b = next(set(eids) for _, eids in gc.components() if e2 in eids)
        side_a = [x for x in gc.edge_ids if x not in side_b]
        ga, gb = gc.subgraph(side_a), gc.subgraph(side_b)
        la = Labeling.of(w.degree, {k: lab[k] for k in side_a})
        lb = Labeling.of(w.degree, {k: lab[k] for k in side_b})
        pa, pb = _decompose_any(ga, la), _decompose_any(gb, lb)
        matched = _match_sides([(p.degree, p[e1]) for p in pa], [(p.degree, p[e2]) for p in pb])
        parts = []
        for ia, ib in matched:
            da = sum(pa[i].degree for i in ia)
            merged: Dict[str, int] = {}
            for p in [pa[i] for i in ia] + [pb[j] for j in ib]:
                for k, v in p.items:
                    merged[k] = merged.get(k, 0) + v
            parts.append([Labeling.of(da, merged)])
    else:
        return None

    if len(parts) < 2:
        return None
    out = []
    for grp in parts:
        tot: Dict[str, int] = {}
        for p in grp:
            for k, v in p.items:
                tot[k] = tot.get(k, 0) + v
        if tot[e1] != tot[e2]:
            raise DecompositionError("unbalanced group after regrouping")
        tot[e] = tot.pop(e1)
        del tot[e2]
        piece = Labeling.of(sum(p.degree for p in grp), tot)
        if not is_member(g, piece):
            raise DecompositionError(f"glued piece {piece} is not a member")
        out.append(piece)
    return out


# -- branch swapping ----------------------------------------------------------------


def _branch(t: Graph, v: str, eid: str) -> set:
    """Edge ids of ``eid`` and everything beyond it as seen from ``v``."""
    e = t.edge(eid)
    far = e.v if e.u == v else e.u
    out = {eid}
    stack = [far]
    seen = {v, far}
    while stack:
        x = stack.pop()
        for f in t.edges:
            if f.id in out or x not in (f.u, f.v):
                continue
            out.add(f.id)
            y = f.v if f.u == x else f.u
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return out


def branch_swap(t: Graph, w1: Labeling, w2: Labeling, v: str) -> Tuple[Labeling, Labeling]:
    """Exchange two networks on the branch behind the first edge at ``v`` where they agree."""
    if first_betti_number(t) != 0 or not t.is_trivalent():
        raise GraphError(f"{t.name or 'graph'} is not a trivalent tree")
    if t.valence(v) != 3:
        raise GraphError(f"{v!r} is not an inner vertex")
    for w in (w1, w2):
        if w.degree != 1 or not is_member(t, w):
            raise LabelingError(f"{w} is not a network of {t.name}")
    a, b = w1.labels, w2.labels
    for eid in t.ends(v):
        if a[eid] == b[eid]:
            br = _branch(t, v, eid)
            n1 = {k: (b[k] if k in br else a[k]) for k in a}
            n2 = {k: (a[k] if k in br else b[k]) for k in b}
            return Labeling.of(1, n1), Labeling.of(1, n2)
    raise DecompositionError(f"networks disagree on every edge at {v!r}")


# -- full decomposition ----------------------------------------------------------------


def _sorted_pieces(pieces: List[Labeling]) -> List[Labeling]:
    return sorted(pieces, key=lambda p: (p.degree, tuple(-x for _, x in p.items)))


def decompose_full(g: Graph, w: Labeling, cap: Optional[int] = None) -> List[Labeling]:
    """Indecomposable members summing to ``w``.

    Cut-and-lift steps are tried first (edges in id order).  Otherwise the
    lexicographically smallest member u of least degree with ``w - u`` a
    member is peeled off; u is indecomposable because a proper summand of
    it would have been found at a lower degree.  Only summand degrees up to
    ``cap`` are searched; if that leaves indecomposability undecided a
    :class:`DecompositionError` is raised.
    """
    x = _require_member(g, w)
    d = w.degree
    if d == 0:
        return []
    if d == 1:
        return [w]
    if first_betti_number(g) == 0:
        return _sorted_pieces(decompose_tree_networks(g, w))
    for e in g.inner_edges:
        step = cut_and_lift(g, w, e)
        if step is not None:
            out = []
            for p in step:
                out.extend(decompose_full(g, p, cap))
            return _sorted_pieces(out)
    c = compiled(g)
    limit = d // 2 if cap is None else min(d // 2, cap)
    for k in range(1, limit + 1):
        U = scan_box(g, k, np.maximum(x - (d - k), 0), np.minimum(x, k))
        if not len(U):
            continue
        ok = np.nonzero(c.member_mask(x[None, :] - U, d - k))[0]
        if len(ok):
            u = U[ok[0]]
            rest = Labeling.from_vector(d - k, g.edge_ids, x - u)
            head = Labeling.from_vector(k, g.edge_ids, u)
            return _sorted_pieces([head] + decompose_full(g, rest, cap))
    if limit < d // 2:
        raise DecompositionError(
            f"no summand of degree <= {cap} peels off {w}; indecomposability needs degree {d // 2}")
    return [w]


# -- degree three on polygons -----------------------------------------------------------


def split_deg3(g: Graph, w: Labeling) -> Union[List[Labeling], Deg3Witness]:
    """Three networks when possible, else the unique (degree 1, degree 2) split."""
    if w.degree != 3:
        raise LabelingError(f"expected degree 3, got {w.degree}")
    if first_betti_number(g) != 1:
        raise GraphError("split_deg3 needs a polygon graph")
    x = _require_member(g, w)
    rows = _network_sum(g, x, 3)
    if rows is not None:
        return _pieces(g, rows, [1, 1, 1])
    if g.is_trivalent():
        wit = deg3_polygon_characterize(g, w)
        if wit is not None:
            return wit
    c = compiled(g)
    U = scan_box(g, 1, np.maximum(x - 2, 0), np.minimum(x, 1))
    ok = np.nonzero(c.member_mask(x[None, :] - U, 2))[0]
    if len(ok):
        u = U[ok[0]]
        return Deg3Witness(Labeling.from_vector(1, g.edge_ids, u),
                           Labeling.from_vector(2, g.edge_ids, x - u))
    raise DecompositionError(f"{w} has no degree-1 summand")
