"""Elements of the phylogenetic semigroup tau(G) and membership.

A labeling is a degree together with a non-negative integer on every
edge.  Membership is decided vertex by vertex: the labels at the ends of
an inner vertex (a loop counted twice) must have even sum and satisfy the
homogenized facet inequalities of the even-weight parity polytope,

    sum_S t - sum_{not S} t <= (|S| - 1) * degree     for every odd S,

together with ``0 <= label <= degree``.  At a trivalent vertex these are
the parity, triangle and degree conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .graph import Graph, GraphError, associated_tree


class LabelingError(ValueError):
    """Raised when a labeling does not fit its graph or an operation's precondition."""


@dataclass(frozen=True)
class Labeling:
    degree: int
    items: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(sorted((str(k), int(v)) for k, v in self.items)))
        object.__setattr__(self, "degree", int(self.degree))

    @classmethod
    def of(cls, degree: int, labels: Mapping[str, int]) -> "Labeling":
        return cls(degree, tuple(labels.items()))

    @classmethod
    def from_vector(cls, degree: int, eids: Sequence[str], values: Iterable[int]) -> "Labeling":
        return cls(degree, tuple(zip(eids, (int(x) for x in values))))

    @property
    def labels(self) -> Dict[str, int]:
        return dict(self.items)

    def __getitem__(self, eid: str) -> int:
        return self.labels[eid]

    def vector(self, eids: Sequence[str]) -> Tuple[int, ...]:
        lab = self.labels
        return tuple(lab[e] for e in eids)

    def sort_key(self):
        return (self.degree, tuple(v for _, v in self.items))

    def __add__(self, other: "Labeling") -> "Labeling":
        a, b = self.labels, other.labels
        if a.keys() != b.keys():
            raise LabelingError("labelings live on different edge sets")
        return Labeling.of(self.degree + other.degree, {k: a[k] + b[k] for k in a})

    def __sub__(self, other: "Labeling") -> "Labeling":
        a, b = self.labels, other.labels
        if a.keys() != b.keys():
            raise LabelingError("labelings live on different edge sets")
        return Labeling.of(self.degree - other.degree, {k: a[k] - b[k] for k in a})

    def __str__(self) -> str:
        return f"({self.degree}; " + ", ".join(f"{k}={v}" for k, v in self.items) + ")"


def zero(g: Graph, degree: int = 0) -> Labeling:
    return Labeling.of(degree, {e: 0 for e in g.edge_ids})


# -- compiled constraint system ---------------------------------------------------


class _Vertex(NamedTuple):
    name: str
    slots: Tuple[int, ...]        # edge indices of the ends, loops twice
    A: np.ndarray                 # rows over the distinct edges in `cols`
    b: np.ndarray                 # rhs multiplier of the degree
    cols: Tuple[int, ...]         # distinct edge indices touching the vertex
    parity: np.ndarray            # multiplicity of each col in slots


class Compiled:
    """Per-graph constraint matrices shared by the scalar and vectorized checks."""

    def __init__(self, g: Graph):
        self.graph = g
        self.eids = g.edge_ids
        self.index = {e: i for i, e in enumerate(self.eids)}
        self.vertices: List[_Vertex] = []
        for v in g.inner_vertices:
            slots = tuple(self.index[e] for e in g.ends(v))
            cols = tuple(sorted(set(slots)))
            pos = {c: i for i, c in enumerate(cols)}
            rows = set()
            n = len(slots)
            for r in range(1, n + 1, 2):
                for S in combinations(range(n), r):
                    coef = [0] * len(cols)
                    for s in range(n):
                        coef[pos[slots[s]]] += 1 if s in S else -1
                    rows.add((tuple(coef), r - 1))
            rows = sorted(rows)
            A = np.array([r[0] for r in rows], dtype=np.int64).reshape(len(rows), len(cols))
            b = np.array([r[1] for r in rows], dtype=np.int64)
            par = np.array([slots.count(c) for c in cols], dtype=np.int64)
            self.vertices.append(_Vertex(v, slots, A, b, cols, par))

    def vertex(self, name: str) -> _Vertex:
        for vx in self.vertices:
            if vx.name == name:
                return vx
        raise GraphError(f"{name!r} is not an inner vertex")

    # vectorized membership over rows of X (shape N x |E|, canonical edge order)
    def member_mask(self, X: np.ndarray, degree) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        d = np.asarray(degree, dtype=np.int64)
        dcol = d.reshape(-1, 1) if d.ndim else d
        ok = np.all((X >= 0) & (X <= dcol), axis=1)
        for vx in self.vertices:
            sub = X[:, vx.cols]
            ok &= (sub @ vx.parity) % 2 == 0
            lhs = sub @ vx.A.T
            rhs = vx.b[None, :] * (d.reshape(-1, 1) if d.ndim else d)
            ok &= np.all(lhs <= rhs, axis=1)
        return ok


@lru_cache(maxsize=256)
def compiled(g: Graph) -> Compiled:
    return Compiled(g)


# -- scalar membership ----------------------------------------------------------------


def _check_labeling(g: Graph, w: Labeling) -> None:
    if w.degree < 0:
        raise LabelingError("negative degree")
    have = {k for k, _ in w.items}
    missing = set(g.edge_ids) - have
    if missing:
        raise LabelingError(f"missing labels for edges {sorted(missing)}")
    extra = have - set(g.edge_ids)
    if extra:
        raise LabelingError(f"labels for unknown edges {sorted(extra)}")


def violation(g: Graph, w: Labeling) -> Optional[str]:
    """First violated membership condition as a short message, or None for members.

    Messages start with the condition tag: ``[+]`` non-negativity,
    ``[°]`` a label or local degree above the degree, ``[♥♥]`` parity,
    ``[△]`` triangle inequality, or ``[odd-subset]`` for facets at vertices
    of valence other than three.
    """
    _check_labeling(g, w)
    c = compiled(g)
    x = np.array(w.vector(c.eids), dtype=np.int64)
    d = w.degree
    for e, val in zip(c.eids, x):
        if val < 0:
            return f"[+] negative label on {e}"
    for e, val in zip(c.eids, x):
        if val > d:
            return f"[°] label {val} on {e} exceeds degree {d}"
    for vx in c.vertices:
        t = [int(x[s]) for s in vx.slots]
        if sum(t) % 2:
            return f"[♥♥] parity: odd label sum {sum(t)} at {vx.name}"
        if len(t) == 3:
            a, b_, c3 = t
            if not (abs(a - b_) <= c3 <= a + b_):
                return f"[△] triangle: {tuple(t)} at {vx.name}"
            if sum(t) > 2 * d:
                return f"[°] local degree {sum(t) // 2} > {d} at {vx.name}"
            continue
        lhs = vx.A @ x[list(vx.cols)]
        bad = np.nonzero(lhs > vx.b * d)[0]
        if len(bad):
            return f"[odd-subset] facet {vx.A[bad[0]].tolist()} violated at {vx.name}"
    return None


def is_member(g: Graph, w: Labeling) -> bool:
    return violation(g, w) is None


# -- independent oracle ------------------------------------------------------------------


@lru_cache(maxsize=64)
def _tree_networks(tree: Graph) -> Tuple[Tuple[int, ...], ...]:
    """0/1 vectors with even parity at every inner vertex (vertices of the tree polytope)."""
    eids = tree.edge_ids
    n = len(eids)
    idx = {e: i for i, e in enumerate(eids)}
    bits = ((np.arange(2 ** n)[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)
    ok = np.ones(len(bits), dtype=bool)
    for v in tree.inner_vertices:
        mult = np.zeros(n, dtype=np.int64)
        for e in tree.ends(v):
            mult[idx[e]] += 1
        ok &= (bits @ mult) % 2 == 0
    return tuple(tuple(int(y) for y in row) for row in bits[ok])


def tree_network_sum(nets: Sequence[Tuple[int, ...]], target: Tuple[int, ...], k: int,
                     memo: Optional[dict] = None) -> Optional[List[Tuple[int, ...]]]:
    """Exhaustive backtracking: write ``target`` as a sum of exactly k vectors from ``nets``.

    Uses only bound checks.  The network covering the first positive
    coordinate is branched on; the all-zero network pads the rest.
    """
    if memo is None:
        memo = {}
    by_edge: Dict[int, list] = memo.setdefault("__by_edge__", {})
    zero_net = tuple(0 for _ in target)

    def rec(t, k):
        key = (t, k)
        if key in memo:
            return memo[key]
        if not any(t):
            res = [zero_net] * k
        elif k == 0 or max(t) > k:
            res = None
        else:
            i = next(j for j, x in enumerate(t) if x)
            if i not in by_edge:
                by_edge[i] = [n for n in nets if n[i]]
            res = None
            for n in by_edge[i]:
                if all(a <= b for a, b in zip(n, t)):
                    sub = rec(tuple(b - a for a, b in zip(n, t)), k - 1)
                    if sub is not None:
                        res = [n] + sub
                        break
        memo[key] = res
        return res

    return rec(tuple(target), k)


@lru_cache(maxsize=256)
def _assoc(g: Graph):
    return associated_tree(g)


def is_member_oracle(g: Graph, w: Labeling) -> bool:
    """Membership decided on the associated tree by exhaustive network decomposition.

    Cut-edge labels are copied onto both new leaves; membership in tau(T)
    is then equivalent to being a sum of ``degree`` tree networks.
    Independent of the facet description used by :func:`is_member`.
    """
    _check_labeling(g, w)
    if any(v < 0 for _, v in w.items):
        return False
    at = _assoc(g)
    lab = w.labels
    eids = at.tree.edge_ids
    target = tuple(lab[at.origin[e]] for e in eids)
    nets = _tree_networks(at.tree)
    return tree_network_sum(nets, target, w.degree) is not None


# -- networks and graded pieces ---------------------------------------------------------


def enumerate_networks(g: Graph) -> List[Labeling]:
    return enumerate_degree(g, 1)


def _edge_order(c: Compiled) -> List[int]:
    """Edge order that completes inner vertices as early as possible."""
    remaining = set(range(len(c.eids)))
    order: List[int] = []
    verts = [set(vx.cols) for vx in c.vertices]
    while remaining:
        best = None
        for cols in verts:
            left = cols & remaining
            if not left:
                continue
            key = (len(left), -len(cols - remaining), min(left))
            if best is None or key < best[0]:
                best = (key, left)
        nxt = sorted(best[1]) if best else sorted(remaining)
        order.extend(nxt)
        remaining -= set(nxt)
    return order


def scan_box(g: Graph, degree: int, lo: Sequence[int], hi: Sequence[int]) -> np.ndarray:
    """All members of the given degree with lo <= labels <= hi, lexicographically sorted.

    Rows are label vectors in canonical (sorted edge id) order.  Candidate
    partial labelings are expanded edge by edge and filtered at each vertex
    as soon as all of its ends are assigned.
    """
    c = compiled(g)
    n = len(c.eids)
    lo = np.maximum(np.asarray(lo, dtype=np.int64), 0)
    hi = np.minimum(np.asarray(hi, dtype=np.int64), degree)
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if np.any(lo > hi):
        return np.zeros((0, n), dtype=np.int64)
    order = _edge_order(c)
    pos = {e: i for i, e in enumerate(order)}
    done_at: Dict[int, list] = {}
    for vx in c.vertices:
        last = max(pos[col] for col in vx.cols)
        done_at.setdefault(last, []).append(vx)
    X = np.zeros((1, 0), dtype=np.int64)
    for p, ei in enumerate(order):
        vals = np.arange(lo[ei], hi[ei] + 1, dtype=np.int64)
        X = np.concatenate([np.repeat(X, len(vals), axis=0),
                            np.tile(vals, len(X))[:, None]], axis=1)
        for vx in done_at.get(p, ()):
            sub = X[:, [pos[col] for col in vx.cols]]
            ok = (sub @ vx.parity) % 2 == 0
            ok &= np.all(sub @ vx.A.T <= vx.b[None, :] * degree, axis=1)
            X = X[ok]
        if len(X) == 0:
            return np.zeros((0, n), dtype=np.int64)
    out = np.empty_like(X)
    out[:, order] = X
    return out[np.lexsort(out.T[::-1])]


def scan_degree(g: Graph, degree: int) -> np.ndarray:
    n = len(g.edges)
    return scan_box(g, degree, [0] * n, [degree] * n)


def enumerate_degree(g: Graph, degree: int) -> List[Labeling]:
    if degree < 0:
        raise LabelingError("degree must be non-negative")
    eids = g.edge_ids
    return [Labeling.from_vector(degree, eids, row) for row in scan_degree(g, degree)]


# -- local structure at a trivalent vertex -----------------------------------------------


class LocalView(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def local_degree(self) -> int:
        return (self.a + self.b + self.c) // 2


class LocalPaths(NamedTuple):
    x: int
    y: int
    z: int

    def view(self) -> LocalView:
        return LocalView(self.y + self.z, self.x + self.z, self.x + self.y)


def local_view(g: Graph, w: Labeling, v: str) -> LocalView:
    ends = g.ends(v)
    if len(ends) != 3:
        raise GraphError(f"vertex {v!r} has valence {len(ends)}, not 3")
    lab = w.labels
    return LocalView(*(lab[e] for e in ends))


def local_paths(view: LocalView) -> LocalPaths:
    """Unique path multiplicities through the three end pairs at a trivalent vertex."""
    a, b, c = view
    if (a + b + c) % 2:
        raise LabelingError(f"odd local sum in {tuple(view)}")
    if not (abs(a - b) <= c <= a + b):
        raise LabelingError(f"triangle inequality fails for {tuple(view)}")
    return LocalPaths((b + c - a) // 2, (a + c - b) // 2, (a + b - c) // 2)


def restrict(g: Graph, w: Labeling, sub: Iterable[str]) -> Labeling:
    keep = set(sub)
    unknown = keep - set(g.edge_ids)
    if unknown:
        raise LabelingError(f"unknown edges {sorted(unknown)}")
    return Labeling(w.degree, tuple((k, v) for k, v in w.items if k in keep))


def transport(w: Labeling, mapping: Mapping[str, Optional[str]], degree: Optional[int] = None) -> Labeling:
    """Relabel along an edge map ``old id -> new id``; entries mapping to None are dropped."""
    lab = w.labels
    out: Dict[str, int] = {}
    for old, new in mapping.items():
        if new is None or old not in lab:
            continue
        if new in out and out[new] != lab[old]:
            raise LabelingError(f"edges merged into {new!r} carry different labels")
        out[new] = lab[old]
    return Labeling.of(w.degree if degree is None else degree, out)
