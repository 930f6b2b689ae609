import random

import pytest

from bpk.decomposition import decomposition_from_order, validate_tree_decomposition
from bpk.errors import CapExceeded
from bpk.graph import Graph, complete_graph, grid_graph, path_graph
from bpk.treewidth import best_decomposition, exact_treewidth, min_fill_order
from oracles import permutation_treewidth


def random_graph(rng, n, p):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@pytest.mark.parametrize(
    "g, tw",
    [
        (Graph(0), -1),
        (Graph(3), 0),
        (path_graph(6), 1),
        (Graph(5, [(i, (i + 1) % 5) for i in range(5)]), 2),
        (complete_graph(5), 4),
        (grid_graph(3, 3), 3),
        (grid_graph(2, 6), 2),
    ],
)
def test_known_values(g, tw):
    width, td = exact_treewidth(g)
    assert width == tw
    assert not validate_tree_decomposition(g, td)


def test_against_permutation_oracle():
    rng = random.Random(11)
    for _ in range(15):
        n = rng.randint(1, 8)
        g = random_graph(rng, n, rng.choice([0.3, 0.5, 0.7]))
        assert exact_treewidth(g)[0] == permutation_treewidth(g.n, list(g.edges))


def test_disconnected_components():
    g = Graph(9, list(complete_graph(4).edges) + [(4, 5), (5, 6), (6, 7), (7, 8), (4, 8)])
    assert exact_treewidth(g)[0] == 3


def test_cap():
    with pytest.raises(CapExceeded):
        exact_treewidth(path_graph(10), cap=5)
    td, exact = best_decomposition(grid_graph(4, 4), cap=5)
    assert not exact and not validate_tree_decomposition(grid_graph(4, 4), td)


def test_min_fill_is_an_upper_bound():
    rng = random.Random(3)
    for _ in range(20):
        g = random_graph(rng, 10, 0.4)
        order, width = min_fill_order(g)
        td = decomposition_from_order(g, order)
        assert not validate_tree_decomposition(g, td)
        assert td.width == width >= exact_treewidth(g)[0]
