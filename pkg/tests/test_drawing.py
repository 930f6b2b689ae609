import itertools
from fractions import Fraction

import networkx as nx
import pytest

from bpk import geometry as geo
from bpk.drawing import (
    CircularSpec,
    GeometricInput,
    TopologicalDrawing,
    chords_interleave,
    circular_drawing,
    cover_planarity,
    crossing_graph,
    drawing_profile,
    from_polylines,
    largest_crossing_fan,
    matching_planarity,
    validate_drawing,
)
from bpk.errors import DegeneratePosition, DuplicateChord, InvalidInput
from bpk.families import (
    circular_complete_bipartite,
    crossing_fan,
    crossing_stars,
    grid_apex,
    k2k2n,
    k3n,
    planar_grid,
    random_polylines,
    random_segments,
)
from bpk.graph import Graph
from oracles import cyclic_interleave, segment_pairs_crossing


def test_geometry_primitives():
    a, b, c, d = (geo.point(p) for p in [(0, 0), (2, 2), (0, 2), (2, 0)])
    assert geo.proper_crossing(a, b, c, d)
    s, t, p = geo.segment_intersection(a, b, c, d)
    assert s == t == Fraction(1, 2) and p == (1, 1)
    assert not geo.proper_crossing(a, c, b, d)
    assert geo.segments_overlap(a, b, geo.point((1, 1)), geo.point((3, 3)))
    assert geo.point(("1/3", "-2/7")) == (Fraction(1, 3), Fraction(-2, 7))
    with pytest.raises(TypeError):
        geo.frac(0.5)
    x, y = geo.circle_point(Fraction(3, 5))
    assert x * x + y * y == 1


@pytest.mark.parametrize("seed", range(8))
def test_polyline_crossings_match_pairwise_oracle(seed):
    d = random_polylines(8, 12, 1 + seed % 3, seed) if seed % 2 else random_segments(9, 14, seed)
    oracle = segment_pairs_crossing([list(line) for line in d.geometry.polylines])
    assert d.pair_counts() == oracle
    assert not validate_drawing(d)


def test_crossing_order_along_edges():
    # one horizontal edge crossed by three verticals left to right
    coords = [(0, 0), (10, 0), (3, -1), (3, 1), (5, -1), (5, 1), (1, -1), (1, 1)]
    d = from_polylines(GeometricInput(coords, [(0, 1), (2, 3), (4, 5), (6, 7)]))
    assert d.crossers(0) == [3, 1, 2]
    for c in d.crossings:
        assert d.sequences[c.ea][c.pa] == c.id and d.sequences[c.eb][c.pb] == c.id


def test_degenerate_inputs_rejected():
    with pytest.raises(DegeneratePosition):
        from_polylines(GeometricInput([(0, 0), (2, 0), (1, 0), (1, 1)], [(0, 1), (2, 3)]))
    with pytest.raises(DegeneratePosition):
        # three segments through (1, 1)
        from_polylines(
            GeometricInput([(0, 0), (2, 2), (0, 2), (2, 0), (1, 0), (1, 2)], [(0, 1), (2, 3), (4, 5)])
        )
    with pytest.raises(DegeneratePosition):
        from_polylines(GeometricInput([(0, 0), (0, 0)], [(0, 1)]))


def test_from_sequences_validation():
    g = Graph(4, [(0, 1), (2, 3)])
    d = TopologicalDrawing.from_sequences(g, [[7], [7]])
    assert d.crossing(7).ea == 0 and d.other(7, 0) == 1
    with pytest.raises(InvalidInput):
        TopologicalDrawing.from_sequences(g, [[7], []])
    with pytest.raises(InvalidInput):
        TopologicalDrawing.from_sequences(g, [[1, 1], []])
    # an edge may cross the same edge twice
    d2 = TopologicalDrawing.from_sequences(g, [[1, 2], [2, 1]])
    assert d2.pair_counts() == {(0, 1): 2} and d2.crossers(1) == [0, 0]


def test_relabel_and_sub_drawing():
    d = crossing_stars(3)
    r = d.relabel_crossings({c.id: 100 - c.id for c in d.crossings})
    assert [r.crossers(e) for e in range(r.m)] == [d.crossers(e) for e in range(d.m)]
    sub, keep = d.sub_drawing([0, 3, 4])
    assert keep == [0, 3, 4] and len(sub.crossings) == 2 and sub.geometry is not None


def test_circular_crossings_match_interleaving():
    n = 9
    chords = list(itertools.combinations(range(n), 2))
    d = circular_drawing(CircularSpec(n, chords))
    order = list(range(n))
    expected = {
        (a, b)
        for a, b in itertools.combinations(range(len(chords)), 2)
        if cyclic_interleave(order, chords[a], chords[b])
    }
    assert set(d.pair_counts()) == expected
    assert all(chords_interleave(chords[a], chords[b]) == ((a, b) in expected) for a, b in itertools.combinations(range(len(chords)), 2))
    with pytest.raises(DuplicateChord):
        circular_drawing(CircularSpec(4, [(0, 2), (2, 0)]))


def test_recognition_on_families():
    for n in (2, 3, 4):
        d = crossing_stars(n)
        x = crossing_graph(d)
        h = nx.Graph(list(x.edges))
        assert nx.is_isomorphic(h, nx.complete_bipartite_graph(n, n))
        assert matching_planarity(d) == 1 and cover_planarity(d) == 1
    for n in (3, 5):
        d = k3n(n)
        assert matching_planarity(d) == 1 and cover_planarity(d) == 1
    assert matching_planarity(k2k2n(2, 3)) <= 2
    assert largest_crossing_fan(crossing_fan(4)) == 4
    prof = drawing_profile(planar_grid(3))
    assert prof.crossings == prof.matching_k == prof.cover_k == prof.min_k_planar == 0 and prof.simple


def test_k25_crossing_pattern():
    d = circular_complete_bipartite(2, 5)
    # cyclic order a=0, v1..v5 = 1..5, b=6
    e = d.base.edge_id
    assert sorted(d.crossers(e(0, 5))) == sorted(e(6, v) for v in range(1, 5))
    assert matching_planarity(d) == 1


def test_grid_apex_is_drawn_in_general_position():
    d = grid_apex(3)
    assert d.n == 10 and d.m == 12 + 9
    assert drawing_profile(d).simple
