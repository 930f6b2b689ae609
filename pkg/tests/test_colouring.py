import pytest

from bpk.colouring import (
    StarForestCover,
    TransparentColouring,
    check_cover,
    density_check,
    density_constant,
    fan_colouring,
    freeness_check,
    greedy_colour,
    greedy_transparent,
    product_transparent,
    star_component_crossing_graph,
    star_forest_cover,
    starforest_transparent,
    validate_cover,
    verify_transparent,
)
from bpk.drawing import crossing_graph, largest_crossing_fan
from bpk.errors import AdjacentCrossing, CapExceeded, CoverMismatch
from bpk.families import circular_fan, crossing_fan, crossing_stars, k3n, planar_grid
from bpk.graph import Graph, star_forest_from_edges
from corpus import corpus

SAMPLE = corpus()[::5]


@pytest.mark.parametrize("name, d", SAMPLE, ids=[n for n, _ in SAMPLE])
def test_colourings_are_transparent(name, d):
    g = greedy_transparent(d)
    assert not verify_transparent(d, g)
    assert not validate_cover(d, g, star_forest_cover(d, g))
    phi, cover = product_transparent(d)
    assert not verify_transparent(d, phi)
    assert not validate_cover(d, phi, cover)
    assert cover.s >= 1 or d.m == 0


def test_greedy_colour_is_proper_and_degenerate():
    g = Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5)])
    col = greedy_colour(g)
    assert all(col[u] != col[v] for u, v in g.edges) and max(col) == 3


def test_plane_drawings_need_one_colour():
    for d in (planar_grid(3), circular_fan(6)):
        phi, cover = product_transparent(d)
        assert phi.c == 1 and greedy_transparent(d).c == 1


def test_crossing_stars_product_colouring():
    phi, cover = product_transparent(crossing_stars(4))
    assert phi.c == 2 and cover.s == 1


def test_fan_colouring():
    fan, s = fan_colouring(crossing_fan(3))
    assert s == 3 == largest_crossing_fan(crossing_fan(3))
    fan, s = fan_colouring(crossing_stars(3))
    assert s == 1


def test_star_crossing_graph():
    d = crossing_stars(3)
    sf = star_forest_from_edges(d.base.edges)
    h = star_component_crossing_graph(d, sf)
    assert h.n == 2 and h.m == 1
    cols = starforest_transparent(d, sf)
    assert set(cols.values()) == {1, 2}
    with pytest.raises(AdjacentCrossing):
        fan = crossing_fan(2)
        star_component_crossing_graph(fan, star_forest_from_edges(fan.base.edges))


def test_cover_mismatch_detected():
    d = crossing_stars(2)
    phi = TransparentColouring.from_mapping(d.m, {e: 1 if 0 in d.base.edges[e] else 2 for e in range(d.m)})
    bad = StarForestCover(tuple((1, 1) for _ in range(d.m)), tuple(d.base.edges[e][0] for e in range(d.m)), 1)
    with pytest.raises(CoverMismatch):
        check_cover(d, phi, bad)
    assert verify_transparent(d, TransparentColouring((1,) * d.m))


def test_density():
    assert density_constant(0) == 3
    assert density_constant(1) == 12
    assert density_constant(2) == 3 * 27 / 4
    for _, d in SAMPLE:
        assert density_check(d)


def test_freeness():
    d = k3n(6)
    # hub 0 takes the right leaves, hub 1 the left ones, so the stars cross
    sf = star_forest_from_edges([(0, v) for v in (6, 7, 8)] + [(1, v) for v in (3, 4, 5)])
    rep = freeness_check(d, sf)
    assert rep.ok and rep.components == 2 and rep.clique == 2 and rep.biclique == 1
    with pytest.raises(CapExceeded):
        freeness_check(d, sf, cap=1)


def test_crossing_graph_of_stars_is_complete_bipartite():
    x = crossing_graph(crossing_stars(3))
    assert x.m == 9
