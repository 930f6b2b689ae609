"""Built-in drawing families.

Each generator builds exact coordinates, ingests them through
:func:`bpk.drawing.from_polylines`, and then checks the parameters the family
is documented to have. A generated drawing that misses them is a bug, so the
check raises rather than warns.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from bpk.drawing import (
    CircularSpec,
    GeometricInput,
    TopologicalDrawing,
    circular_drawing,
    crossing_graph,
    from_polylines,
    matching_planarity,
)
from bpk.errors import BadParams, DegeneratePosition

F = Fraction


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise AssertionError(f"family invariant violated: {msg}")


def _check(lo: int, hi: int, **params: int) -> None:
    for k, v in params.items():
        if not isinstance(v, int) or not lo <= v <= hi:
            raise BadParams(f"{k}={v!r} outside [{lo}, {hi}]")


def crossing_stars(n: int) -> TopologicalDrawing:
    """Two stars with ``n`` leaves each; every edge of one crosses every edge of the other.

    Star A: centre 0 at (0,0), leaves 1..n at (2,i). Star B: centre n+1 at
    (2,0), leaves n+2..2n+1 at (0,j).
    """
    _check(1, 60, n=n)
    coords = [(0, 0)] + [(2, i) for i in range(1, n + 1)] + [(2, 0)] + [(0, j) for j in range(1, n + 1)]
    edges = [(0, i) for i in range(1, n + 1)] + [(n + 1, n + 1 + j) for j in range(1, n + 1)]
    d = from_polylines(GeometricInput(coords, edges))
    _require(len(d.crossings) == n * n, "crossing_stars has n^2 crossings")
    _require(n < 1 or matching_planarity(d) == 1, "crossing_stars is 1-matching-planar")
    return d


def _hub_drawing(up: int, low: int, n: int) -> TopologicalDrawing:
    """``K_{up+low, n}``: leaves on the x-axis, ``up`` hubs above and ``low`` below.

    Hubs on one side only cross edges of other hubs on the same side.
    Vertex ids: upper hubs, lower hubs, then leaves left to right.
    """
    leaves = [(F(i), F(0)) for i in range(1, n + 1)]

    def side(count: int, sign: int, bump: int) -> list[tuple[Fraction, Fraction]]:
        if count == 1:
            return [(F(n + 1, 2) + F(bump, 97), sign * (1 + F(bump, 89)))]
        span = F(n + 1)
        return [
            (span * j / (count - 1) + F(bump * (j + 1), 101), sign * (1 + F(j * j + bump, 7 + bump)))
            for j in range(count)
        ]

    edges = [(h, up + low + i) for h in range(up + low) for i in range(n)]
    for bump in range(60):
        coords = side(up, 1, bump) + side(low, -1, bump) + leaves
        try:
            return from_polylines(GeometricInput(coords, edges))
        except DegeneratePosition:
            continue
    raise BadParams(f"no general-position hub placement for K_{{{up + low},{n}}}")


def k3n(n: int) -> TopologicalDrawing:
    """``K_{3,n}`` with hubs 0 (upper left), 1 (upper right), 2 (below)."""
    _check(1, 40, n=n)
    d = _hub_drawing(2, 1, n)
    _require(matching_planarity(d) == (1 if n >= 2 else 0), "k3n is 1-matching-planar")
    return d


def k2k2n(k: int, n: int) -> TopologicalDrawing:
    """``K_{2k+2,n}`` with ``k+1`` hubs on each side of the leaf line."""
    _check(0, 6, k=k)
    _check(1, 30, n=n)
    d = _hub_drawing(k + 1, k + 1, n)
    _require(matching_planarity(d) <= k, "K_{2k+2,n} family is k-matching-planar")
    return d


def circular_complete_bipartite(a: int, b: int) -> TopologicalDrawing:
    """Circular ``K_{a,b}`` in cyclic order hub 0, the ``b`` leaves, hubs 1..a-1.

    For ``a = 2`` this is the order a, v1..vb, b.
    """
    _check(1, 8, a=a)
    _check(1, 16, b=b)
    hubs = [0] + [b + i for i in range(1, a)]
    leaves = list(range(1, b + 1))
    return circular_drawing(CircularSpec(a + b, [(h, v) for h in hubs for v in leaves]))


def bipartite_hubs(a: int, b: int) -> list[int]:
    return [0] + [b + i for i in range(1, a)]


def grid_apex(n: int) -> TopologicalDrawing:
    """Straight-line ``n × n`` grid plus an apex in the outer face joined to every grid vertex.

    Grid vertex ``(r, c)`` is ``r*n + c`` at point ``(c, r)``; the apex is ``n*n``.
    """
    _check(1, 12, n=n)
    coords = [(F(c), F(r)) for r in range(n) for c in range(n)]
    edges = []
    for r in range(n):
        for c in range(n):
            v = r * n + c
            if c + 1 < n:
                edges.append((v, v + 1))
            if r + 1 < n:
                edges.append((v, v + n))
    edges += [(n * n, v) for v in range(n * n)]
    for a in range(1, 60):
        apex = (F(-a, 7), F(-3 * n, 1) - F(a, 11))
        try:
            return from_polylines(GeometricInput(coords + [apex], edges))
        except DegeneratePosition:
            continue
    raise BadParams("no general-position apex found")


def planar_grid(n: int) -> TopologicalDrawing:
    _check(1, 12, n=n)
    coords = [(c, r) for r in range(n) for c in range(n)]
    edges = [(r * n + c, r * n + c + 1) for r in range(n) for c in range(n - 1)]
    edges += [(r * n + c, (r + 1) * n + c) for r in range(n - 1) for c in range(n)]
    d = from_polylines(GeometricInput(coords, edges))
    _require(not d.crossings, "planar grid has no crossings")
    return d


def circular_fan(n: int) -> TopologicalDrawing:
    """Outerplanar triangulated polygon: the cycle plus all chords from vertex 0."""
    _check(3, 40, n=n)
    chords = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)] + [(0, j) for j in range(2, n - 1)]
    d = circular_drawing(CircularSpec(n, chords))
    _require(not d.crossings, "circular fan is plane")
    return d


def crossing_fan(t: int) -> TopologicalDrawing:
    """Star whose ``t`` edges pairwise cross once (one bend per edge)."""
    _check(1, 12, t=t)
    coords = [(0, 0)] + [(10, -2 * i - i * i) for i in range(t)]
    edges = [(0, i + 1) for i in range(t)]
    bends = [[(5, 2 * i)] for i in range(t)]
    d = from_polylines(GeometricInput(coords, edges, bends))
    _require(crossing_graph(d).m == t * (t - 1) // 2, "fan edges pairwise cross")
    return d


def random_circular(n: int, p: float, seed: int) -> TopologicalDrawing:
    _check(2, 40, n=n)
    if not 0 <= p <= 1:
        raise BadParams(f"p={p} outside [0, 1]")
    rng = random.Random(seed)
    chords = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return circular_drawing(CircularSpec(n, chords))


def _monotone_bends(p, q, bends: int, rng: random.Random) -> list[tuple[Fraction, Fraction]]:
    """Bends spaced along ``pq`` and pushed sideways; monotone, so never self-crossing."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    out = []
    for k in range(1, bends + 1):
        a = F(k, bends + 1)
        s = F(rng.randrange(-499, 500), 997)
        out.append((p[0] + a * dx - s * dy, p[1] + a * dy + s * dx))
    return out


def _random_geometric(n: int, m: int, bends: int, seed: int, grid: int) -> TopologicalDrawing:
    _check(2, 60, n=n)
    _check(0, n * (n - 1) // 2, m=m)
    _check(0, 6, bends=bends)
    rng = random.Random(seed)
    for _ in range(200):
        pts = set()
        while len(pts) < n:
            pts.add((rng.randrange(grid), rng.randrange(grid)))
        coords = sorted(pts)
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        edges = sorted(rng.sample(pairs, m))
        bend_pts = [_monotone_bends(coords[u], coords[v], bends, rng) for u, v in edges]
        try:
            return from_polylines(GeometricInput(coords, edges, bend_pts))
        except DegeneratePosition:
            continue
    raise BadParams("could not sample a drawing in general position")


def random_segments(n: int, m: int, seed: int) -> TopologicalDrawing:
    """``m`` straight segments between ``n`` random integer points."""
    return _random_geometric(n, m, 0, seed, grid=1 << 20)


def random_polylines(n: int, m: int, bends: int, seed: int) -> TopologicalDrawing:
    """Random polylines; edges may cross several times and adjacent edges may cross."""
    return _random_geometric(n, m, bends, seed, grid=1 << 20)


FAMILIES: dict[str, Callable[..., TopologicalDrawing]] = {
    "crossing_stars": crossing_stars,
    "k3n": k3n,
    "k2k2n": k2k2n,
    "circular_complete_bipartite": circular_complete_bipartite,
    "grid_apex": grid_apex,
    "planar_grid": planar_grid,
    "circular_fan": circular_fan,
    "crossing_fan": crossing_fan,
    "random_circular": random_circular,
    "random_segments": random_segments,
    "random_polylines": random_polylines,
}


def gen_family(name: str, **params) -> TopologicalDrawing:
    try:
        fn = FAMILIES[name]
    except KeyError:
        raise BadParams(f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}") from None
    try:
        return fn(**params)
    except TypeError as exc:
        raise BadParams(f"{name}: {exc}") from None


def family_colouring(name: str, d: TopologicalDrawing, **params) -> dict[int, int] | None:
    """The hand-made colouring that goes with each worked example, if the family has one."""
    g = d.base
    if name == "crossing_stars":
        return {e: 1 if 0 in g.edges[e] else 2 for e in range(g.m)}
    if name == "k3n":
        return {e: 2 if 1 in g.edges[e] else 1 for e in range(g.m)}
    if name == "circular_complete_bipartite":
        hubs = bipartite_hubs(params["a"], params["b"])
        return {e: 1 + next(i for i, h in enumerate(hubs) if h in g.edges[e]) for e in range(g.m)}
    if name == "grid_apex":
        apex = params["n"] ** 2
        return {e: 2 if apex in g.edges[e] else 1 for e in range(g.m)}
    return None
