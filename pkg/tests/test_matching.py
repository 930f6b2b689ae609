import random

from hypothesis import given, settings
from hypothesis import strategies as st

from bpk.graph import Graph
from bpk.matching import max_balanced_biclique, max_clique, max_matching, min_vertex_cover
from oracles import brute_biclique, brute_clique, brute_cover, brute_matching

edge_sets = st.lists(
    st.tuples(st.integers(0, 7), st.integers(0, 7)).filter(lambda e: e[0] != e[1]).map(lambda e: tuple(sorted(e))),
    max_size=12,
    unique=True,
)


@settings(max_examples=150, deadline=None)
@given(edge_sets)
def test_matching_and_cover_match_exhaustive(edges):
    mu, pairs = max_matching(edges)
    tau, cover = min_vertex_cover(edges)
    assert mu == brute_matching(edges)
    assert tau == brute_cover(edges)
    assert len(pairs) == mu and len({x for p in pairs for x in p}) == 2 * mu
    assert all(u in cover or v in cover for u, v in edges)
    assert mu <= tau <= 2 * mu


def test_matching_examples():
    assert max_matching([])[0] == 0
    assert max_matching([(0, 1), (0, 2), (0, 3)])[0] == 1
    # odd cycle plus pendant needs blossom handling
    c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (4, 5)]
    assert max_matching(c5)[0] == 3
    assert min_vertex_cover([(0, 1), (1, 2), (2, 0)])[0] == 2


def test_clique_and_biclique_against_brute_force():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 8)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        g = Graph(n, edges)
        clique = max_clique(g)
        assert len(clique) == brute_clique(n, edges)
        assert all(g.has_edge(a, b) for i, a in enumerate(clique) for b in clique[i + 1 :])
        assert max_balanced_biclique(g) == brute_biclique(n, edges)


def test_biclique_of_complete_bipartite():
    g = Graph(7, [(a, b) for a in range(3) for b in range(3, 7)])
    assert max_balanced_biclique(g) == 3
