"""Transparent ordered edge colourings: no two edges of one colour cross.

Two producers are offered. ``greedy_transparent`` colours the crossing graph
greedily. ``product_transparent`` follows the star-forest route: forests from
a degeneracy order, each split into two star-forests, each of those split by
the per-vertex fan colour at the star centres, the star components of every
piece coloured through their own crossing graph, and finally non-crossing
classes merged first-fit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from bpk.drawing import TopologicalDrawing, crossing_graph, matching_planarity
from bpk.errors import AdjacentCrossing, CapExceeded, CoverMismatch, NotStarForest
from bpk.graph import Graph, StarForest, degeneracy_decomposition, degeneracy_order, norm, star_forest_from_edges, star_forest_split
from bpk.matching import max_balanced_biclique, max_clique


@dataclass(frozen=True)
class TransparentColouring:
    """``colour[e]`` in ``1..c`` for every edge id ``e``; colour order matters."""

    colour: tuple[int, ...]

    @property
    def c(self) -> int:
        return max(self.colour, default=0)

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for e, col in enumerate(self.colour):
            out.setdefault(col, []).append(e)
        return out

    @classmethod
    def from_mapping(cls, m: int, mapping: dict[int, int]) -> "TransparentColouring":
        return cls(tuple(int(mapping[e]) for e in range(m)))


def verify_transparent(d: TopologicalDrawing, phi: TransparentColouring) -> list[str]:
    problems = []
    if len(phi.colour) != d.m:
        return [f"colouring covers {len(phi.colour)} of {d.m} edges"]
    if any(col < 1 for col in phi.colour):
        problems.append("colours must be positive")
    for a, b in sorted(d.pair_counts()):
        if phi.colour[a] == phi.colour[b]:
            problems.append(f"edges {a} and {b} cross and share colour {phi.colour[a]}")
    return problems


def greedy_colour(g: Graph) -> list[int]:
    """Greedy colouring (colours from 1) in reverse degeneracy order.

    Each vertex sees at most ``d`` already-coloured neighbours, so at most
    ``d + 1`` colours are used.
    """
    order, _ = degeneracy_order(g)
    colour = [0] * g.n
    for v in reversed(order):
        used = {colour[w] for w in g.adj[v]}
        c = 1
        while c in used:
            c += 1
        colour[v] = c
    return colour


def greedy_transparent(d: TopologicalDrawing) -> TransparentColouring:
    return TransparentColouring(tuple(greedy_colour(crossing_graph(d))))


def fan_colouring(d: TopologicalDrawing) -> tuple[list[dict[int, int]], int]:
    """Per vertex, a transparent colouring of the edges at that vertex.

    Returns ``(fan, s)`` where ``fan[v][e]`` is the colour of edge ``e`` at
    ``v`` and ``s`` the most colours any vertex needed.
    """
    xg = crossing_graph(d)
    fan: list[dict[int, int]] = []
    s = 0
    for v in range(d.n):
        at_v = sorted(d.base.edge_id(v, w) for w in d.base.adj[v])
        sub, old = xg.induced(at_v)
        cols = greedy_colour(sub)
        fan.append({old[i]: cols[i] for i in range(sub.n)})
        s = max(s, max(cols, default=0))
    return fan, s


# ---------------------------------------------------------------------------
# Star-forests inside a drawing
# ---------------------------------------------------------------------------


def _star_index(d: TopologicalDrawing, sf: StarForest) -> dict[int, int]:
    """Edge id of ``d`` -> index of its star in ``sf``."""
    out = {}
    for i, (c, leaves) in enumerate(sf.stars):
        for x in leaves:
            if not d.base.has_edge(c, x):
                raise NotStarForest(f"star edge {c}-{x} is not an edge of the drawing")
            out[d.base.edge_id(c, x)] = i
    return out


def star_component_crossing_graph(d: TopologicalDrawing, sf: StarForest) -> Graph:
    """Crossing graph of the star components of ``sf`` (vertex ``i`` = ``sf.stars[i]``)."""
    star_of = _star_index(d, sf)
    pairs = set()
    for e, i in star_of.items():
        for f in d.crossing_set(e):
            j = star_of.get(f)
            if j is None:
                continue
            if i == j:
                raise AdjacentCrossing(f"edges {e} and {f} of one star cross")
            pairs.add(norm(i, j))
    return Graph(len(sf.stars), sorted(pairs))


def starforest_transparent(d: TopologicalDrawing, sf: StarForest) -> dict[int, int]:
    """Colour ``sf``'s edges by a greedy colouring of its star crossing graph."""
    h = star_component_crossing_graph(d, sf)
    comp_colour = greedy_colour(h)
    return {e: comp_colour[i] for e, i in _star_index(d, sf).items()}


@dataclass(frozen=True)
class StarForestCover:
    """Refinement ``(colour, j)`` of a colouring into star-forests with centres.

    ``dominant[e]`` is the centre of the star containing edge ``e``.
    """

    refined: tuple[tuple[int, int], ...]
    dominant: tuple[int, ...]
    s: int

    def forests(self) -> dict[tuple[int, int], list[int]]:
        out: dict[tuple[int, int], list[int]] = {}
        for e, key in enumerate(self.refined):
            out.setdefault(key, []).append(e)
        return out


def validate_cover(d: TopologicalDrawing, phi: TransparentColouring, cover: StarForestCover) -> list[str]:
    problems = []
    if len(cover.refined) != d.m or len(cover.dominant) != d.m:
        return ["cover does not list every edge"]
    for e, (i, j) in enumerate(cover.refined):
        if i != phi.colour[e]:
            problems.append(f"edge {e} refined to colour {i} but has colour {phi.colour[e]}")
        if not 1 <= j <= cover.s:
            problems.append(f"edge {e} has star-forest index {j} outside 1..{cover.s}")
        if cover.dominant[e] not in d.endpoints(e):
            problems.append(f"dominant vertex of edge {e} is not an endpoint")
    for key, es in cover.forests().items():
        centre_of = {d.endpoints(e): cover.dominant[e] for e in es}
        try:
            sf = star_forest_from_edges(centre_of, centre_of)
        except NotStarForest:
            problems.append(f"class {key} is not a star-forest")
            continue
        fixed = sf.centre_map()
        for pair, c in centre_of.items():
            if fixed[pair] != c:
                problems.append(f"edge {pair} in class {key}: dominant {c} is not the star centre")
    return problems


def star_forest_cover(d: TopologicalDrawing, phi: TransparentColouring) -> StarForestCover:
    """Split every colour class into star-forests via degeneracy forests."""
    refined: list[tuple[int, int]] = [(0, 0)] * d.m
    dominant = [0] * d.m
    s = 0
    for col, es in sorted(phi.classes().items()):
        g_i = Graph(d.n, [d.endpoints(e) for e in es])
        _, _, forests = degeneracy_decomposition(g_i)
        j = 0
        for forest in forests:
            for half in star_forest_split(forest):
                if not len(half):
                    continue
                j += 1
                for pair, c in half.centre_map().items():
                    e = d.base.edge_id(*pair)
                    refined[e] = (col, j)
                    dominant[e] = c
        s = max(s, j)
    return StarForestCover(tuple(refined), tuple(dominant), s)


def product_transparent(d: TopologicalDrawing) -> tuple[TransparentColouring, StarForestCover]:
    """Star-forest pipeline colouring.

    Each piece (forest, half, fan colour at the centre) is coloured through
    its star crossing graph, and the classes ``(piece, colour)`` are ranked in
    that order. A final first-fit pass merges a class into the earliest
    earlier group it does not cross. The cover refines every merged colour by
    the pieces it came from, so ``s`` is the largest number of pieces in one
    colour.
    """
    fan, _ = fan_colouring(d)
    _, _, forests = degeneracy_decomposition(d.base)
    pieces: list[StarForest] = []
    for forest in forests:
        for half in star_forest_split(forest):
            by_fan: dict[int, dict] = {}
            for pair, c in half.centre_map().items():
                e = d.base.edge_id(*pair)
                by_fan.setdefault(fan[c][e], {})[pair] = c
            for _, centres in sorted(by_fan.items()):
                pieces.append(star_forest_from_edges(centres, centres))
    labels: dict[int, tuple[int, int]] = {}
    dominant = [0] * d.m
    for q, sf in enumerate(pieces):
        cols = starforest_transparent(d, sf)
        for pair, c in sf.centre_map().items():
            e = d.base.edge_id(*pair)
            labels[e] = (q, cols[e])
            dominant[e] = c
    classes: dict[tuple[int, int], list[int]] = {}
    for e in range(d.m):
        classes.setdefault(labels[e], []).append(e)
    groups: list[set[int]] = []
    group_of: dict[tuple[int, int], int] = {}
    for key in sorted(classes):
        es = classes[key]
        hit = set().union(*(d.crossing_set(e) for e in es))
        g = next((i for i, grp in enumerate(groups) if not grp & hit), len(groups))
        if g == len(groups):
            groups.append(set())
        groups[g].update(es)
        group_of[key] = g
    piece_slot: dict[tuple[int, int], int] = {}
    refined = []
    for e in range(d.m):
        g, q = group_of[labels[e]], labels[e][0]
        slot = piece_slot.setdefault((g, q), 1 + sum(1 for gg, _ in piece_slot if gg == g))
        refined.append((g + 1, slot))
    phi = TransparentColouring(tuple(g for g, _ in refined))
    s = max((j for _, j in refined), default=0)
    return phi, StarForestCover(tuple(refined), tuple(dominant), s)


def check_cover(d: TopologicalDrawing, phi: TransparentColouring, cover: StarForestCover) -> None:
    problems = validate_cover(d, phi, cover)
    if problems:
        raise CoverMismatch("; ".join(problems[:5]))


# ---------------------------------------------------------------------------
# Density and free-ness checks
# ---------------------------------------------------------------------------


def density_constant(k: int) -> Fraction:
    """``3 (k+1)^(k+1) / k^k`` with ``0^0 = 1``."""
    return Fraction(3 * (k + 1) ** (k + 1), k**k)


def density_check(d: TopologicalDrawing, k: int | None = None) -> bool:
    """``|E| <= d_{2k} |V|`` with ``k`` the matching-planarity of ``d`` by default."""
    if k is None:
        k = matching_planarity(d)
    return d.m <= density_constant(2 * k) * d.n


@dataclass(frozen=True)
class FreenessReport:
    k: int
    components: int
    clique: int
    clique_bound: int
    biclique: int
    biclique_bound: int

    @property
    def ok(self) -> bool:
        return self.clique <= self.clique_bound and self.biclique <= self.biclique_bound


def freeness_check(d: TopologicalDrawing, sf: StarForest, cap: int = 15) -> FreenessReport:
    """Exact clique / balanced-biclique sizes of the star crossing graph.

    ``k`` is the matching-planarity of the sub-drawing formed by ``sf``. The
    clique must stay below ``12k²+3k+2`` and no ``K_{m,m}`` with
    ``m = 16k²+3k+1`` may appear.
    """
    if len(sf.stars) > cap:
        raise CapExceeded(len(sf.stars), cap)
    h = star_component_crossing_graph(d, sf)
    sub, _ = d.sub_drawing(d.base.edge_id(*p) for p in sf.edges)
    k = matching_planarity(sub)
    return FreenessReport(
        k=k,
        components=h.n,
        clique=len(max_clique(h)),
        clique_bound=12 * k * k + 3 * k + 1,
        biclique=max_balanced_biclique(h),
        biclique_bound=16 * k * k + 3 * k,
    )
