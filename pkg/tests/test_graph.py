import pytest

import oracles
from phylosemi.families import (FAMILIES, bouquet, caterpillar, dumbbell, family, loop_chain, loop_dumbbell,
                                multi_edge, polygon, polygon_pair, random_tree, shared_edge, shared_vertex,
                                single_edge, theta)
from phylosemi.graph import (Graph, GraphError, associated_tree, bridges, cut_edge, cycle_edges, cycle_legs,
                             disjoint_union, enumerate_cycles, first_betti_number, multiple_polygon_core,
                             reglue, suppress_degree2, trivalent_refinement)

SUITE = [theta(), bouquet(2), bouquet(3), multi_edge(4), polygon(1), polygon(3), polygon(5), dumbbell(0),
         dumbbell(1), dumbbell(2), loop_dumbbell(0), loop_dumbbell(2), shared_edge(1), shared_edge(3),
         shared_vertex(1), shared_vertex(2), polygon_pair(2), loop_chain(3), caterpillar(3), random_tree(8, 3)]


def test_basic_structure():
    g = Graph.from_edges([("x", "a", "a"), ("y", "a", "b")])
    assert g.valence("a") == 3 and g.valence("b") == 1
    assert g.leaf_vertices == ("b",) and g.inner_vertices == ("a",)
    assert g.ends("a") == ["x", "x", "y"]
    assert g.leaf_edges == ("y",) and g.inner_edges == ("x",)
    assert g.is_trivalent()


def test_duplicate_ids_rejected():
    with pytest.raises(GraphError):
        Graph.from_edges([("e", "a", "b"), ("e", "b", "c")])


def test_edges_sorted_canonically():
    g = Graph.from_edges([("b", "u", "v"), ("a", "u", "v")])
    assert g.edge_ids == ("a", "b")


def test_betti_examples():
    assert first_betti_number(theta()) == 2
    assert first_betti_number(caterpillar(3)) == 0
    assert first_betti_number(polygon(3)) == 1
    assert first_betti_number(polygon_pair(1)) == 2


def test_cycle_edges_examples():
    assert cycle_edges(theta()) == {"a", "b", "c"}
    assert cycle_edges(polygon(3)) == {"c0", "c1", "c2"}
    assert cycle_edges(caterpillar(2)) == frozenset()


def test_cycle_legs_examples():
    assert cycle_legs(polygon(3)) == {"l0", "l1", "l2"}
    assert cycle_legs(theta()) == frozenset()
    # bare dumbbell: two triangles and a 2-edge path with a pendant at the middle
    bare = Graph.from_edges([("a1", "p0", "p1"), ("a2", "p1", "p2"), ("a3", "p2", "p0"),
                             ("b1", "q0", "q1"), ("b2", "q1", "q2"), ("b3", "q2", "q0"),
                             ("p1x", "p0", "m"), ("p2x", "m", "q0"), ("s", "m", "z")])
    assert cycle_legs(bare) == {"p1x", "p2x"}
    assert cycle_legs(dumbbell(2)) == {"p1", "p2", "al1", "al2", "bl1", "bl2"}


def test_enumerate_cycles_examples():
    assert sorted(map(sorted, enumerate_cycles(theta()))) == [["a", "b"], ["a", "c"], ["b", "c"]]
    assert enumerate_cycles(polygon(3)) == [frozenset({"c0", "c1", "c2"})]
    assert enumerate_cycles(caterpillar(3)) == []


def test_enumerate_cycles_closed_trails():
    # figure eight: two loops at one vertex; the union is a closed trail too
    cycles = enumerate_cycles(bouquet(2))
    assert sorted(map(sorted, cycles)) == [["l1"], ["l1", "l2"], ["l2"]]
    # on trivalent graphs trails are simple cycles; dumbbell(1) has exactly two
    assert len(enumerate_cycles(dumbbell(1))) == 2


def test_cut_theta():
    res = cut_edge(theta(), "b")
    g = res.graph
    assert res.new_leaves == ("b'", "b''")
    assert set(g.edge_ids) == {"a", "c", "b'", "b''"}
    assert g.edge("b'").u == "u" and g.edge("b''").u == "v"
    assert set(g.leaf_edges) == {"b'", "b''"}
    assert first_betti_number(g) == 1


def test_cut_triangle_and_bridge():
    g = cut_edge(polygon(3), "c0").graph
    assert first_betti_number(g) == 0
    d = dumbbell(1)
    assert len(cut_edge(d, "p1").graph.components()) == 2


def test_cut_rejects_leaf_edge():
    with pytest.raises(GraphError):
        cut_edge(polygon(3), "l0")


def test_cut_loop():
    g = cut_edge(polygon(1), "c0").graph
    assert first_betti_number(g) == 0
    assert g.valence("v0") == 3


@pytest.mark.parametrize("g", SUITE, ids=lambda g: g.name)
def test_cut_betti_invariant(g):
    cyc = cycle_edges(g)
    for e in g.inner_edges:
        cut = cut_edge(g, e).graph
        assert first_betti_number(cut) == first_betti_number(g) - (e in cyc)
        if e not in cyc:
            assert len(cut.components()) == len(g.components()) + 1


@pytest.mark.parametrize("g", SUITE, ids=lambda g: g.name)
def test_cycle_edges_complement_bridges(g):
    assert cycle_edges(g) == set(g.edge_ids) - bridges(g)
    assert all(e.id in cycle_edges(g) for e in g.edges if e.is_loop)
    assert not (cycle_edges(g) & cycle_legs(g))


def test_associated_tree_theta():
    at = associated_tree(theta())
    assert first_betti_number(at.tree) == 0
    assert len(at.pairs) == 2 and len(at.tree.edges) == 5
    assert len(at.tree.leaf_edges) == 4
    # one inner edge with two leaves at each end
    star_path = Graph.from_edges([("a", "u", "v"), ("b'", "u", "1"), ("c'", "u", "2"),
                                  ("b''", "v", "3"), ("c''", "v", "4")])
    assert oracles.isomorphic(at.tree, star_path)


def test_associated_tree_bouquet_and_tree():
    at = associated_tree(bouquet(2))
    assert len(at.pairs) == 2
    assert at.tree.valence("w") == 4 and len(at.tree.leaf_edges) == 4
    t = caterpillar(3)
    at = associated_tree(t)
    assert at.tree == t and at.pairs == ()


@pytest.mark.parametrize("g", SUITE, ids=lambda g: g.name)
def test_associated_tree_reglue(g):
    at = associated_tree(g)
    assert first_betti_number(at.tree) == 0
    assert len(at.pairs) == first_betti_number(g)
    assert oracles.isomorphic(reglue(at), g)
    assert set(at.origin.values()) == set(g.edge_ids)


def test_suppress_examples():
    square = Graph.from_edges([("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "4", "1")])
    s = suppress_degree2(square)
    assert len(s.graph.edges) == 1 and s.graph.edges[0].is_loop
    assert set(s.provenance.values()) == {"a"}
    path = Graph.from_edges([("a", "x", "1"), ("b", "1", "2"), ("c", "2", "y")])
    assert len(suppress_degree2(path).graph.edges) == 1
    d = dumbbell(2)
    assert suppress_degree2(d).graph == d


@pytest.mark.parametrize("g", SUITE, ids=lambda g: g.name)
def test_suppress_idempotent(g):
    once = suppress_degree2(g).graph
    assert suppress_degree2(once).graph == once
    assert first_betti_number(once) == first_betti_number(g)


def test_refinement_claw():
    claw = Graph.from_edges([(f"e{i}", "c", f"x{i}") for i in range(4)])
    ref = trivalent_refinement(claw)
    g = ref.graph
    assert g.is_trivalent() and len(g.inner_vertices) == 2
    assert len(g.edges) == 5 and ref.projection["~n1"] is None


def test_refinement_cycle_vertex():
    # triangle with two legs at one vertex: valence 4 on the cycle
    g = Graph.from_edges([("c0", "v0", "v1"), ("c1", "v1", "v2"), ("c2", "v2", "v0"),
                          ("l0", "v0", "x0"), ("m0", "v0", "y0"), ("l1", "v1", "x1"), ("l2", "v2", "x2")])
    ref = trivalent_refinement(g)
    h = ref.graph
    assert h.is_trivalent()
    ends = {v: set(h.ends(v)) for v in ("v0'", "v0''")}
    assert all(len(e & {"c0", "c2"}) == 1 for e in ends.values())
    assert "~n1" not in cycle_legs(h)
    assert {ref.projection[x] for x in cycle_legs(h)} <= cycle_legs(g)


def test_refinement_unchanged_and_rejects_valence2():
    d = dumbbell(1)
    assert trivalent_refinement(d).graph == d
    with pytest.raises(GraphError):
        trivalent_refinement(Graph.from_edges([("a", "x", "m"), ("b", "m", "y")]))


@pytest.mark.parametrize("g", [bouquet(2), bouquet(3), multi_edge(3), multi_edge(4), shared_vertex(1),
                               shared_vertex(2), loop_dumbbell(0), dumbbell(0)], ids=lambda g: g.name)
def test_refinement_invariants(g):
    h = trivalent_refinement(g).graph
    assert h.is_trivalent()
    assert first_betti_number(h) == first_betti_number(g)


def test_polygon_core_examples():
    tri = polygon(3)
    pc = multiple_polygon_core(tri)
    assert pc.cut_edges == () and pc.trees == () and set(pc.core.edge_ids) == set(tri.edge_ids)
    pc = multiple_polygon_core(theta())
    assert pc.cut_edges == () and pc.trees == ()
    cherry = Graph.from_edges(list((e.id, e.u, e.v) for e in tri.edges if e.id != "l0")
                              + [("l0", "v0", "h"), ("k1", "h", "y1"), ("k2", "h", "y2")])
    pc = multiple_polygon_core(cherry)
    assert pc.cut_edges == ("l0",)
    assert len(pc.trees) == 1 and first_betti_number(pc.trees[0]) == 0
    assert set(pc.trees[0].edge_ids) == {"k1", "k2", "l0''"}
    with pytest.raises(GraphError):
        multiple_polygon_core(caterpillar(2))


def test_polygon_core_deep_tree():
    # a longer tree hanging off a loop: only the maximal edge is cut
    g = Graph.from_edges([("l", "v", "v"), ("e1", "v", "a"), ("e2", "a", "b"), ("x1", "a", "y1"),
                          ("x2", "b", "y2"), ("x3", "b", "y3")])
    pc = multiple_polygon_core(g)
    assert pc.cut_edges == ("e1",)
    assert len(pc.trees) == 1


def test_families():
    assert oracles.isomorphic(multi_edge(2), theta())
    p = polygon(3)
    assert len(p.edges) == 6 and len(p.leaf_edges) == 3
    d = dumbbell(2)
    assert d.valence("m1") == 3 and d.is_leaf_edge("s1")
    assert first_betti_number(d) == 2 and d.is_trivalent()
    assert bouquet(2).vertices == ("w",)
    for name in FAMILIES:
        if name in ("theta", "single_edge"):
            g = family(name)
        elif name in ("random_tree", "random_trivalent_tree"):
            g = family(name, 4, 1)
        else:
            g = family(name, 2)
        assert isinstance(g, Graph)
    with pytest.raises(GraphError):
        family("nope", 1)
    with pytest.raises(GraphError):
        polygon(0)


def test_disjoint_union_and_single_edge():
    g = disjoint_union(polygon(1), polygon(1))
    assert len(g.components()) == 2 and first_betti_number(g) == 2
    s = single_edge()
    assert s.inner_vertices == () and s.inner_edges == ()
