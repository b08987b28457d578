import random

import pytest

import phylosemi.decompose as dec
from phylosemi.classify import Deg3Witness
from phylosemi.decompose import (DecompositionError, branch_swap, cut_and_lift, decompose_full,
                                 decompose_tree_networks, split_deg3)
from phylosemi.families import (caterpillar, dumbbell, loop_dumbbell, polygon, random_trivalent_tree, shared_edge,
                                theta)
from phylosemi.generators import is_indecomposable, minimal_generators
from phylosemi.graph import Graph, GraphError, first_betti_number
from phylosemi.semigroup import Labeling, LabelingError, enumerate_degree, enumerate_networks, is_member

TRIPOD = Graph.from_edges([("a", "o", "x"), ("b", "o", "y"), ("c", "o", "z")], "tripod")


def with_values(g, d, values):
    lab = {e: 0 for e in g.edge_ids}
    lab.update(values)
    return Labeling.of(d, lab)


def total(g, pieces):
    out = with_values(g, 0, {})
    for p in pieces:
        out = out + p
    return out


def check(g, w, pieces):
    assert total(g, pieces) == w
    assert all(p.degree >= 1 and is_member(g, p) for p in pieces)


def test_tree_networks_tripod():
    w = Labeling.of(2, dict(a=2, b=1, c=1))
    pieces = decompose_tree_networks(TRIPOD, w)
    assert sorted(p.vector("abc") for p in pieces) == [(1, 0, 1), (1, 1, 0)]


def test_tree_networks_zero_and_errors():
    t = caterpillar(2)
    pieces = decompose_tree_networks(t, with_values(t, 3, {}))
    assert pieces == [with_values(t, 1, {})] * 3
    assert decompose_tree_networks(t, with_values(t, 0, {})) == []
    with pytest.raises(GraphError):
        decompose_tree_networks(theta(), Labeling.of(1, dict(a=1, b=1, c=0)))
    with pytest.raises(LabelingError):
        decompose_tree_networks(TRIPOD, Labeling.of(1, dict(a=1, b=0, c=0)))


def test_cut_and_lift_cycle_edge():
    g = polygon(3)
    w = with_values(g, 2, {"c1": 2, "l1": 2, "l2": 2})
    pieces = cut_and_lift(g, w, "c0")
    assert len(pieces) == 2
    check(g, w, pieces)
    assert all(p.degree == 1 for p in pieces)


def test_cut_and_lift_bridge():
    g = dumbbell(1)
    w = with_values(g, 2, {e: 1 for e in ("a1", "a2", "a3", "b1", "b2", "b3")})
    pieces = cut_and_lift(g, w, "p1")
    assert pieces is not None and len(pieces) >= 2
    check(g, w, pieces)


def test_cut_and_lift_pruned_tree_edge():
    tri = polygon(3)
    cherry = Graph.from_edges([(e.id, e.u, e.v) for e in tri.edges if e.id != "l0"]
                              + [("l0", "v0", "h"), ("k1", "h", "y1"), ("k2", "h", "y2")])
    gen = with_values(cherry, 2, {"c0": 1, "c1": 1, "c2": 1, "l0": 2, "k1": 2})
    assert is_indecomposable(cherry, gen)
    assert cut_and_lift(cherry, gen, "l0") is None
    split = 0
    for w in enumerate_degree(cherry, 2):
        pieces = cut_and_lift(cherry, w, "l0")
        if pieces is not None:
            check(cherry, w, pieces)
            split += 1
    assert split > 0


def test_cut_and_lift_declines():
    g = polygon(3)
    assert cut_and_lift(g, with_values(g, 2, {}), "l0") is None
    assert cut_and_lift(g, with_values(g, 1, {"c0": 1, "c1": 1, "c2": 1}), "c0") is None


def test_branch_swap_identity_and_crossing():
    t = caterpillar(2)
    nets = enumerate_networks(t)
    w = nets[-1]
    for v in t.inner_vertices:
        assert branch_swap(t, w, w, v) == (w, w)
    rng = random.Random(1)
    for _ in range(100):
        a, b = rng.choice(nets), rng.choice(nets)
        x1, x2 = branch_swap(t, a, b, rng.choice(t.inner_vertices))
        assert x1 + x2 == a + b


def test_branch_swap_errors():
    claw = Graph.from_edges([(f"e{i}", "c", f"x{i}") for i in range(4)])
    n = with_values(claw, 1, {})
    with pytest.raises(GraphError):
        branch_swap(claw, n, n, "c")
    t = random_trivalent_tree(3, 0)
    z = with_values(t, 1, {})
    with pytest.raises(GraphError):
        branch_swap(t, z, z, t.leaf_vertices[0])
    with pytest.raises(LabelingError):
        branch_swap(t, with_values(t, 2, {}), z, t.inner_vertices[0])


def test_decompose_full_examples():
    g = theta()
    pieces = decompose_full(g, Labeling.of(2, dict(a=2, b=1, c=1)))
    assert pieces == [Labeling.of(1, dict(a=1, b=1, c=0)), Labeling.of(1, dict(a=1, b=0, c=1))]
    assert decompose_full(g, Labeling.of(0, dict(a=0, b=0, c=0))) == []
    gen = with_values(polygon(3), 2, {"c0": 1, "c1": 1, "c2": 1, "l0": 2})
    assert decompose_full(polygon(3), gen) == [gen]
    t = caterpillar(3)
    assert decompose_full(t, with_values(t, 3, {})) == [with_values(t, 1, {})] * 3


@pytest.mark.parametrize("g,top", [(theta(), 4), (polygon(3), 4), (loop_dumbbell(2), 4), (shared_edge(1), 3),
                                   (dumbbell(1), 3)], ids=lambda x: getattr(x, "name", str(x)))
def test_decompose_full_invariants(g, top):
    bound = first_betti_number(g) + 1
    rng = random.Random(2)
    for d in range(2, top + 1):
        rows = enumerate_degree(g, d)
        # large levels are sampled with a fixed seed
        for w in rows if len(rows) <= 400 else rng.sample(rows, 400):
            pieces = decompose_full(g, w)
            check(g, w, pieces)
            assert all(is_indecomposable(g, p) for p in pieces), str(w)
            assert max(p.degree for p in pieces) <= bound


def test_decompose_full_dumbbell_sample():
    g = dumbbell(2)
    gens = set(minimal_generators(g, 4).generators)
    rng = random.Random(4)
    rows = enumerate_degree(g, 3)
    for w in rng.sample(rows, 60):
        pieces = decompose_full(g, w)
        check(g, w, pieces)
        assert set(pieces) <= gens


def test_decompose_full_cap_error(monkeypatch):
    # twice a degree-2 generator has no degree-1 summand; with cut-and-lift
    # disabled, peeling at cap 1 cannot decide it
    g = polygon(3)
    w = with_values(g, 4, {"c0": 2, "c1": 2, "c2": 2, "l0": 4})
    assert len(decompose_full(g, w)) == 2
    monkeypatch.setattr(dec, "cut_and_lift", lambda *a: None)
    assert [p.degree for p in decompose_full(g, w)] == [2, 2]
    with pytest.raises(DecompositionError):
        decompose_full(g, w, cap=1)


def test_split_deg3_polygon_exhaustive():
    g = polygon(3)
    for w in enumerate_degree(g, 3):
        res = split_deg3(g, w)
        if isinstance(res, Deg3Witness):
            assert res.w1.degree == 1 and res.w2.degree == 2
            check(g, w, list(res))
            assert is_indecomposable(g, res.w2)
        else:
            assert len(res) == 3
            check(g, w, res)


def test_split_deg3_example_and_errors():
    g = polygon(3)
    w = with_values(g, 3, {"c0": 2, "c1": 2, "c2": 2, "l0": 2})
    res = split_deg3(g, w)
    assert res == Deg3Witness(with_values(g, 1, {"c0": 1, "c1": 1, "c2": 1}),
                              with_values(g, 2, {"c0": 1, "c1": 1, "c2": 1, "l0": 2}))
    with pytest.raises(LabelingError):
        split_deg3(g, with_values(g, 2, {}))
    with pytest.raises(GraphError):
        split_deg3(theta(), Labeling.of(3, dict(a=0, b=0, c=0)))
