"""Topological drawings recorded combinatorially by per-edge crossing sequences.

Every crossing point is a record ``(id, ea, pa, eb, pb)``: edge ``ea`` meets
edge ``eb`` there, and it is the ``pa``-th crossing along ``ea`` (resp.
``pb``-th along ``eb``). Edges are oriented from their lower endpoint. A pair
of edges may cross several times (non-simple drawings); an edge never crosses
itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from bpk import geometry as geo
from bpk.errors import DegeneratePosition, DuplicateChord, InvalidInput
from bpk.graph import Edge, Graph, norm
from bpk.matching import max_clique, max_matching, min_vertex_cover


@dataclass(frozen=True)
class Crossing:
    id: int
    ea: int
    pa: int
    eb: int
    pb: int


@dataclass(frozen=True)
class Geometry:
    coords: tuple[geo.Point, ...]
    # full point list of every edge, from its lower endpoint to its higher one
    polylines: tuple[tuple[geo.Point, ...], ...]


@dataclass(frozen=True)
class TopologicalDrawing:
    base: Graph
    crossings: tuple[Crossing, ...]
    sequences: tuple[tuple[int, ...], ...]
    geometry: Geometry | None = None
    # cyclic vertex order when the drawing is circular
    circular_order: tuple[int, ...] | None = None
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {c.id: c for c in self.crossings})

    # -- construction --------------------------------------------------------

    @classmethod
    def from_sequences(
        cls,
        base: Graph,
        sequences: Sequence[Sequence[int]],
        **kw,
    ) -> "TopologicalDrawing":
        """Build crossing records from per-edge ordered crossing id lists."""
        if len(sequences) != base.m:
            raise InvalidInput(f"{len(sequences)} sequences for {base.m} edges")
        seen: dict[int, list[tuple[int, int]]] = {}
        for e, seq in enumerate(sequences):
            for pos, cid in enumerate(seq):
                seen.setdefault(int(cid), []).append((e, pos))
        recs = []
        for cid in sorted(seen):
            occ = seen[cid]
            if len(occ) != 2:
                raise InvalidInput(f"crossing {cid} appears {len(occ)} times, expected 2")
            (ea, pa), (eb, pb) = occ
            if ea == eb:
                raise InvalidInput(f"crossing {cid} pairs edge {ea} with itself")
            recs.append(Crossing(cid, ea, pa, eb, pb))
        d = cls(base, tuple(recs), tuple(tuple(int(c) for c in s) for s in sequences), **kw)
        problems = validate_drawing(d)
        if problems:
            raise InvalidInput("; ".join(problems))
        return d

    # -- queries -------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return self.base.m

    def crossing(self, cid: int) -> Crossing:
        return self._index[cid]

    def other(self, cid: int, e: int) -> int:
        c = self._index[cid]
        return c.eb if c.ea == e else c.ea

    def crossers(self, e: int) -> list[int]:
        """Edges crossing ``e``, with multiplicity, in order along ``e``."""
        return [self.other(c, e) for c in self.sequences[e]]

    def crossing_set(self, e: int) -> set[int]:
        return set(self.crossers(e))

    def pair_counts(self) -> dict[Edge, int]:
        out: dict[Edge, int] = {}
        for c in self.crossings:
            key = norm(c.ea, c.eb)
            out[key] = out.get(key, 0) + 1
        return out

    def endpoints(self, e: int) -> Edge:
        return self.base.edges[e]

    def relabel_crossings(self, mapping: dict[int, int]) -> "TopologicalDrawing":
        seqs = [[mapping[c] for c in s] for s in self.sequences]
        return TopologicalDrawing.from_sequences(
            self.base, seqs, geometry=self.geometry, circular_order=self.circular_order
        )

    def sub_drawing(self, edge_ids: Iterable[int]) -> tuple["TopologicalDrawing", list[int]]:
        """Drawing restricted to some edges (all vertices kept).

        Returns the sub-drawing and the map from its edge ids to ours.
        """
        keep = sorted(set(edge_ids))
        new_id = {e: i for i, e in enumerate(keep)}
        g = Graph(self.n, [self.base.edges[e] for e in keep])
        seqs = []
        for e in keep:
            seqs.append([c for c in self.sequences[e] if self.other(c, e) in new_id])
        geom = None
        if self.geometry is not None:
            geom = Geometry(self.geometry.coords, tuple(self.geometry.polylines[e] for e in keep))
        return TopologicalDrawing.from_sequences(g, seqs, geometry=geom, circular_order=self.circular_order), keep


def validate_drawing(d: TopologicalDrawing) -> list[str]:
    problems = []
    if len(d.sequences) != d.m:
        return [f"{len(d.sequences)} sequences for {d.m} edges"]
    ids = [c.id for c in d.crossings]
    if len(set(ids)) != len(ids):
        problems.append("duplicate crossing ids")
    for c in d.crossings:
        if c.ea == c.eb:
            problems.append(f"crossing {c.id} pairs edge {c.ea} with itself")
            continue
        for e, p in ((c.ea, c.pa), (c.eb, c.pb)):
            if not (0 <= e < d.m and 0 <= p < len(d.sequences[e]) and d.sequences[e][p] == c.id):
                problems.append(f"crossing {c.id} not at position {p} of edge {e}")
    count: dict[int, int] = {}
    for seq in d.sequences:
        for cid in seq:
            count[cid] = count.get(cid, 0) + 1
    for cid, k in count.items():
        if k != 2 or cid not in d._index:
            problems.append(f"crossing {cid} referenced {k} times by edges")
    for e, seq in enumerate(d.sequences):
        if len(set(seq)) != len(seq):
            problems.append(f"edge {e} lists a crossing twice")
    return problems


# ---------------------------------------------------------------------------
# Exact geometric ingestion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeometricInput:
    """Vertex coordinates and, per edge ``(u, v)``, the bends from ``u`` to ``v``."""

    coords: Sequence[Sequence[geo.Number]]
    edges: Sequence[Sequence[int]]
    bends: Sequence[Sequence[Sequence[geo.Number]]] | None = None


def from_polylines(gi: GeometricInput, circular_order: tuple[int, ...] | None = None) -> TopologicalDrawing:
    """Compute all crossings of a polyline drawing exactly.

    Rejects vertices on foreign edges, overlapping segments, self-crossing
    edges, crossings at bend points, and points shared by three curves.
    """
    pts = [geo.point(p) for p in gi.coords]
    if len(set(pts)) != len(pts):
        raise DegeneratePosition("two vertices share a position", ())
    base = Graph(len(pts), [(int(u), int(v)) for u, v in gi.edges])
    lines: list[tuple[geo.Point, ...]] = []
    for i, (u, v) in enumerate(gi.edges):
        bends = [geo.point(b) for b in (gi.bends[i] if gi.bends else [])]
        line = [pts[u]] + bends + [pts[v]]
        if u > v:
            line.reverse()
        for a, b in zip(line, line[1:]):
            if a == b:
                raise DegeneratePosition(f"edge {i} has a zero-length segment", (i,))
        lines.append(tuple(line))

    vertex_at = {p: v for v, p in enumerate(pts)}
    for e, line in enumerate(lines):
        lo, hi = base.edges[e]
        for j, (a, b) in enumerate(zip(line, line[1:])):
            for w, p in enumerate(pts):
                if not geo.on_segment(p, a, b):
                    continue
                if (w == lo and j == 0 and p == a) or (w == hi and j == len(line) - 2 and p == b):
                    continue
                raise DegeneratePosition(f"edge {e} passes through vertex {w}", (e, w))
        segs = list(zip(line, line[1:]))
        for i in range(len(segs)):
            for j in range(i + 1, len(segs)):
                if geo.segments_overlap(*segs[i], *segs[j]):
                    raise DegeneratePosition(f"edge {e} overlaps itself", (e,))
                if j > i + 1 and geo.segment_intersection(*segs[i], *segs[j]) is not None:
                    raise DegeneratePosition(f"edge {e} crosses itself", (e,))

    found: list[tuple[int, int, Fraction, int, int, Fraction, geo.Point]] = []
    for e in range(base.m):
        for f in range(e + 1, base.m):
            le, lf = lines[e], lines[f]
            for i, (a, b) in enumerate(zip(le, le[1:])):
                for j, (c, dd) in enumerate(zip(lf, lf[1:])):
                    if geo.segments_overlap(a, b, c, dd):
                        raise DegeneratePosition(f"edges {e} and {f} overlap", (e, f))
                    hit = geo.segment_intersection(a, b, c, dd)
                    if hit is None:
                        continue
                    s, t, p = hit
                    if p in vertex_at:
                        # only a shared endpoint can get here
                        continue
                    if s in (0, 1) or t in (0, 1):
                        raise DegeneratePosition(f"edges {e} and {f} meet at a bend", (e, f))
                    found.append((e, i, s, f, j, t, p))

    by_point: dict[geo.Point, list] = {}
    for rec in found:
        by_point.setdefault(rec[6], []).append(rec)
    for p, recs in by_point.items():
        if len(recs) > 1:
            curves = sorted({r[0] for r in recs} | {r[3] for r in recs})
            raise DegeneratePosition(f"edges {curves} share the point ({p[0]}, {p[1]})", tuple(curves))

    # sort along each edge, then number crossings canonically
    along: list[list[tuple[tuple[int, Fraction], int]]] = [[] for _ in range(base.m)]
    for k, (e, i, s, f, j, t, _) in enumerate(found):
        along[e].append(((i, s), k))
        along[f].append(((j, t), k))
    for lst in along:
        lst.sort()
    order_key = sorted(range(len(found)), key=lambda k: (found[k][0], found[k][1], found[k][2]))
    cid = {k: i for i, k in enumerate(order_key)}
    seqs = [[cid[k] for _, k in lst] for lst in along]
    return TopologicalDrawing.from_sequences(
        base, seqs, geometry=Geometry(tuple(pts), tuple(lines)), circular_order=circular_order
    )


# ---------------------------------------------------------------------------
# Circular drawings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CircularSpec:
    n: int
    chords: Sequence[Sequence[int]]


def circle_parameter(i: int) -> Fraction:
    """Tangent half-angle parameter of the ``i``-th circle vertex.

    ``i`` itself, nudged by ``i**3 / 1009`` so that no three chords of small
    complete circular drawings meet at a point (integer parameters alone give
    concurrent chords).
    """
    return Fraction(i) + Fraction(i**3, 1009)


def circular_drawing(spec: CircularSpec) -> TopologicalDrawing:
    """Straight chords between rational points on the unit circle, in index order."""
    seen = set()
    for a, b in spec.chords:
        if not (0 <= a < spec.n and 0 <= b < spec.n) or a == b:
            raise InvalidInput(f"bad chord ({a}, {b}) for n={spec.n}")
        key = norm(a, b)
        if key in seen:
            raise DuplicateChord(f"chord {key} given twice")
        seen.add(key)
    coords = [geo.circle_point(circle_parameter(i)) for i in range(spec.n)]
    return from_polylines(GeometricInput(coords, [tuple(c) for c in spec.chords]), circular_order=tuple(range(spec.n)))


def chords_interleave(a: Edge, b: Edge) -> bool:
    """Strict interleaving of two chords on a circle labelled in cyclic order."""
    (p, q), (r, s) = norm(*a), norm(*b)
    if len({p, q, r, s}) < 4:
        return False
    return (p < r < q) != (p < s < q)


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------


def crossing_graph(d: TopologicalDrawing) -> Graph:
    """Vertices are edge ids; adjacent when the edges cross at least once."""
    return Graph(d.m, sorted(d.pair_counts()))


def _crossing_edge_pairs(d: TopologicalDrawing, e: int) -> list[Edge]:
    return [d.endpoints(f) for f in sorted(d.crossing_set(e))]


def matching_planarity(d: TopologicalDrawing) -> int:
    return max((max_matching(_crossing_edge_pairs(d, e))[0] for e in range(d.m)), default=0)


def cover_planarity(d: TopologicalDrawing) -> int:
    return max((min_vertex_cover(_crossing_edge_pairs(d, e))[0] for e in range(d.m)), default=0)


def largest_crossing_fan(d: TopologicalDrawing) -> int:
    """Size of the largest set of pairwise crossing edges sharing an endpoint."""
    xg = crossing_graph(d)
    best = 0
    for v in range(d.n):
        at_v = [d.base.edge_id(v, w) for w in d.base.adj[v]]
        if not at_v:
            continue
        sub, _ = xg.induced(at_v)
        best = max(best, len(max_clique(sub)))
    return best


def max_crossing_fan(d: TopologicalDrawing) -> int:
    """Smallest ``t`` such that no ``t`` edges at a common vertex pairwise cross."""
    return largest_crossing_fan(d) + 1


@dataclass(frozen=True)
class DrawingProfile:
    simple: bool
    crossings: int
    max_crossings_per_edge: int
    per_pair_max: int
    min_k_planar: int
    matching_k: int
    cover_k: int
    largest_fan: int
    fan_t: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def drawing_profile(d: TopologicalDrawing) -> DrawingProfile:
    pairs = d.pair_counts()
    load = [len(s) for s in d.sequences]
    adjacent = any(set(d.endpoints(a)) & set(d.endpoints(b)) for a, b in pairs)
    fan = largest_crossing_fan(d)
    return DrawingProfile(
        simple=not adjacent and all(k <= 1 for k in pairs.values()),
        crossings=len(d.crossings),
        max_crossings_per_edge=max(load, default=0),
        per_pair_max=max(pairs.values(), default=0),
        min_k_planar=max((min(load[a], load[b]) for a, b in pairs), default=0),
        matching_k=matching_planarity(d),
        cover_k=cover_planarity(d),
        largest_fan=fan,
        fan_t=fan + 1,
    )
