import io
import random

import networkx as nx
import pytest

from bpk.decomposition import read_td, validate_tree_decomposition, write_td
from bpk.errors import InvalidInput, NotAForest, NotInClosure, NotStarForest
from bpk.graph import (
    Graph,
    RootedTree,
    bfs_layering,
    bfs_tree,
    closure_decomposition,
    complete_graph,
    component_bfs_layering,
    degeneracy_decomposition,
    degeneracy_order,
    edges_acyclic,
    graph_power,
    grid_graph,
    is_star_forest,
    path_graph,
    star_forest_from_edges,
    star_forest_split,
    strong_product,
    validate_layering,
    weak_radius,
)
from bpk.treewidth import exact_treewidth
from oracles import strong_product_edge_count


def rand_graph(rng, n, p):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def test_graph_rejects_bad_edges():
    for edges in ([(0, 0)], [(0, 5)], [(0, 1), (1, 0)]):
        with pytest.raises(InvalidInput):
            Graph(3, edges)


def test_edge_ids_and_normalisation():
    g = Graph(4, [(2, 1), (0, 3)])
    assert g.edges == ((1, 2), (0, 3))
    assert g.edge_id(3, 0) == 1 and g.has_edge(1, 2) and not g.has_edge(0, 1)


def test_degeneracy():
    rng = random.Random(5)
    for _ in range(30):
        g = rand_graph(rng, 12, 0.35)
        order, d = degeneracy_order(g)
        pos = {v: i for i, v in enumerate(order)}
        assert sorted(order) == list(range(g.n))
        assert all(sum(pos[w] > pos[v] for w in g.adj[v]) <= d for v in g.vertices())
        _, d2, forests = degeneracy_decomposition(g)
        assert d2 == d and len(forests) <= d
        assert sorted(e for f in forests for e in f) == sorted(g.edges)
        assert all(edges_acyclic(f) for f in forests)
    assert degeneracy_order(complete_graph(4))[1] == 3
    assert degeneracy_order(path_graph(5))[1] == 1


def test_star_forest_split():
    rng = random.Random(9)
    for _ in range(30):
        n = 14
        edges = [(rng.randrange(v), v) for v in range(1, n) if rng.random() < 0.9]
        a, b = star_forest_split(edges)
        assert sorted(a.edges + b.edges) == sorted({tuple(sorted(e)) for e in edges})
        assert is_star_forest(a.edges) and is_star_forest(b.edges)
    star = [(0, i) for i in range(1, 5)]
    a, b = star_forest_split(star)
    assert len(a) == 4 and len(b) == 0 and a.stars == ((0, (1, 2, 3, 4)),)
    with pytest.raises(NotAForest):
        star_forest_split([(0, 1), (1, 2), (0, 2)])
    with pytest.raises(NotStarForest):
        star_forest_from_edges([(0, 1), (1, 2), (2, 3)])


def test_strong_product_counts():
    rng = random.Random(2)
    for t in (1, 2, 3):
        g = rand_graph(rng, 7, 0.4)
        h = strong_product(g, complete_graph(t))
        assert h.n == g.n * t
        assert h.m == strong_product_edge_count(g.n, g.m, t)


def test_layerings():
    g = grid_graph(3, 4)
    lay = bfs_layering(g, 0)
    assert len(lay) == 6 and not validate_layering(g, lay)
    two = Graph(5, [(0, 1), (3, 4)])
    assert not validate_layering(two, component_bfs_layering(two))


def test_graph_power():
    g = path_graph(5)
    assert graph_power(g, 2).m == 4 + 3
    assert graph_power(g, 0).m == 0


def test_weak_radius_against_all_pairs():
    rng = random.Random(4)
    for _ in range(25):
        g = rand_graph(rng, 10, 0.3)
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges)
        dist = dict(nx.all_pairs_shortest_path_length(h))
        s = rng.sample(range(g.n), 3)
        cands = [(max(dist[v].get(x, -1) for x in s), v) for v in range(g.n) if all(x in dist[v] for x in s)]
        if not cands:
            continue
        assert weak_radius(g, s) == min(cands)


def test_rooted_tree_and_closure():
    g = grid_graph(3, 3)
    t = bfs_tree(g, 4)
    assert t.radius() == 2 and t.parent[4] == -1
    td = closure_decomposition(t, g) if all(t.is_ancestor(u, v) or t.is_ancestor(v, u) for u, v in g.edges) else None
    if td is not None:
        assert not validate_tree_decomposition(g, td)
    star = RootedTree.from_tree(Graph(4, [(0, 1), (0, 2), (0, 3)]), 0)
    assert not validate_tree_decomposition(Graph(4, [(0, 1), (0, 2)]), closure_decomposition(star, Graph(4, [(0, 1), (0, 2)])))
    with pytest.raises(NotInClosure):
        closure_decomposition(star, Graph(4, [(1, 2)]))
    chain = RootedTree.from_tree(path_graph(5), 0)
    closure = Graph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    td = closure_decomposition(chain, closure)
    assert not validate_tree_decomposition(closure, td) and td.width == 4


def test_td_round_trip():
    g = grid_graph(3, 3)
    _, td = exact_treewidth(g)
    buf = io.StringIO()
    write_td(td, g.n, buf)
    back, n = read_td(buf.getvalue().splitlines())
    assert n == g.n and back.bags == td.bags and back.tree.edges == td.tree.edges
    with pytest.raises(InvalidInput):
        read_td(["s td x"])
