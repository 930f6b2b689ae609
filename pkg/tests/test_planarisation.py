import random

import pytest

from bpk.colouring import TransparentColouring, greedy_transparent, product_transparent
from bpk.errors import NotTransparent
from bpk.families import circular_complete_bipartite, crossing_stars, family_colouring, grid_apex, k3n, planar_grid
from bpk.planarisation import (
    WALK_CHECKS,
    coloured_planarisation,
    is_planar,
    levels_and_fragments,
    lower_crossings,
    measure_k_lower,
    measure_m,
    planarise,
    verify_walk_lemmas,
)
from corpus import corpus
from oracles import contraction_oracle

SAMPLE = corpus()[::4]


def hand(name, d, **params):
    return TransparentColouring.from_mapping(d.m, family_colouring(name, d, **params))


@pytest.mark.parametrize("name, d", SAMPLE, ids=[n for n, _ in SAMPLE])
def test_planarisation_counts(name, d):
    p = planarise(d)
    assert p.graph.n == d.n + len(d.crossings)
    assert p.steps == d.m + 2 * len(d.crossings)
    if d.geometry is not None and all(k == 1 for k in d.pair_counts().values()):
        assert is_planar(p)


@pytest.mark.parametrize("name, d", SAMPLE, ids=[n for n, _ in SAMPLE])
def test_coloured_planarisation_matches_contraction_oracle(name, d):
    for phi in (greedy_transparent(d), product_transparent(d)[0]):
        cp = coloured_planarisation(d, phi)
        part, quotient = contraction_oracle(d, phi.colour)
        mine: dict[int, set[int]] = {}
        for v, x in enumerate(cp.psi):
            mine.setdefault(x, set()).add(v)
        assert {frozenset(s) for s in mine.values()} == part
        got = {frozenset((frozenset(mine[a]), frozenset(mine[b]))) for a, b in cp.graph.edges}
        assert got == quotient


@pytest.mark.parametrize("name, d", SAMPLE, ids=[n for n, _ in SAMPLE])
def test_fragments_and_walks(name, d):
    phi = greedy_transparent(d)
    p = planarise(d)
    level, frags = levels_and_fragments(p, phi)
    for e in range(d.m):
        assert len(frags[e]) == 1 + len(lower_crossings(d, phi, e))
        assert frags[e][0][0] == 0 and frags[e][-1][1] == len(p.paths[e]) - 1
    rep = verify_walk_lemmas(coloured_planarisation(d, phi))
    assert rep.ok, rep.failed()
    assert set(rep.witnesses) == set(WALK_CHECKS)


def test_hash_is_invariant_under_crossing_relabelling():
    rng = random.Random(1)
    for _, d in SAMPLE[:20]:
        ids = [c.id for c in d.crossings]
        new = rng.sample(range(1000, 1000 + 3 * len(ids) + 1), len(ids))
        r = d.relabel_crossings(dict(zip(ids, new)))
        phi = greedy_transparent(d)
        assert coloured_planarisation(d, phi).canonical_hash() == coloured_planarisation(r, phi).canonical_hash()


def test_not_transparent():
    d = crossing_stars(2)
    with pytest.raises(NotTransparent):
        coloured_planarisation(d, TransparentColouring((1,) * d.m))


def test_hand_colourings():
    d = k3n(5)
    cp = coloured_planarisation(d, hand("k3n", d))
    assert all(cp.level[x] == 1 for x in range(d.n, cp.graph.n))
    d = grid_apex(4)
    cp = coloured_planarisation(d, hand("grid_apex", d, n=4))
    assert measure_m(cp) == 1 and cp.c == 2
    d = circular_complete_bipartite(2, 5)
    cp = coloured_planarisation(d, hand("circular_complete_bipartite", d, a=2, b=5))
    assert measure_m(cp) == 1 and measure_k_lower(cp) >= 1
    assert verify_walk_lemmas(cp).ok


def test_plane_drawing_is_its_own_planarisation():
    d = planar_grid(3)
    cp = coloured_planarisation(d, greedy_transparent(d))
    assert sorted(cp.graph.edges) == sorted(d.base.edges) and cp.c == 1
    assert verify_walk_lemmas(cp).max_distance_to_original == 0
