"""Planarisation ``G'`` and coloured planarisation ``G^φ`` of a drawing.

``G'`` replaces crossing ``i`` (in ``d.crossings`` order) by dummy vertex
``n + i``. Given a transparent ordered colouring, a dummy's level is the
smaller of its two colours; the crossings of ``e`` with lower-coloured edges
cut ``L_e`` into fragments, and the interior of every fragment with at least
three path vertices is a section. ``G^φ`` contracts each section to a single
vertex ``n + (section index)``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from bpk.colouring import TransparentColouring, verify_transparent
from bpk.drawing import TopologicalDrawing
from bpk.errors import NotTransparent
from bpk.graph import Graph, norm
from bpk.matching import max_matching, min_vertex_cover


@dataclass(frozen=True)
class Planarisation:
    drawing: TopologicalDrawing
    graph: Graph
    # dummy n+i stands for crossing d.crossings[i]
    dummy_crossing: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]
    # number of L_e steps, i.e. edges of G' counted with multiplicity
    steps: int

    @property
    def n_original(self) -> int:
        return self.drawing.n

    def is_dummy(self, v: int) -> bool:
        return v >= self.drawing.n

    def dummy_edges(self, v: int) -> tuple[int, int]:
        c = self.drawing.crossing(self.dummy_crossing[v - self.drawing.n])
        return c.ea, c.eb


def planarise(d: TopologicalDrawing) -> Planarisation:
    dummy = {c.id: d.n + i for i, c in enumerate(d.crossings)}
    paths = []
    pairs = set()
    steps = 0
    for e in range(d.m):
        u, v = d.endpoints(e)
        path = (u, *(dummy[c] for c in d.sequences[e]), v)
        paths.append(path)
        for a, b in zip(path, path[1:]):
            pairs.add(norm(a, b))
            steps += 1
    g = Graph(d.n + len(d.crossings), sorted(pairs))
    return Planarisation(d, g, tuple(c.id for c in d.crossings), tuple(paths), steps)


def is_planar(p: Planarisation) -> bool:
    """Planarity of ``G'`` (parallel edges do not affect the answer)."""
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(p.graph.n))
    h.add_edges_from(p.graph.edges)
    return nx.check_planarity(h)[0]


# ---------------------------------------------------------------------------
# Levels, fragments, sections
# ---------------------------------------------------------------------------


def _require_transparent(d: TopologicalDrawing, phi: TransparentColouring) -> None:
    problems = verify_transparent(d, phi)
    if problems:
        raise NotTransparent(problems[0])


def levels_and_fragments(
    p: Planarisation, phi: TransparentColouring
) -> tuple[tuple[int, ...], tuple[tuple[tuple[int, int], ...], ...]]:
    """Vertex levels of ``G'`` and, per edge, fragments as ``(first, last)`` indices into ``L_e``.

    Consecutive fragments share their cut vertex.
    """
    d = p.drawing
    _require_transparent(d, phi)
    level = [0] * p.graph.n
    for v in range(d.n, p.graph.n):
        a, b = p.dummy_edges(v)
        level[v] = min(phi.colour[a], phi.colour[b])
    frags = []
    for e, path in enumerate(p.paths):
        cuts = [0] + [i for i in range(1, len(path) - 1) if level[path[i]] < phi.colour[e]] + [len(path) - 1]
        frags.append(tuple(zip(cuts, cuts[1:])))
    return tuple(level), tuple(frags)


@dataclass(frozen=True)
class Section:
    edge: int
    # indices into L_e, inclusive
    first: int
    last: int
    vertices: tuple[int, ...]


def sections(p: Planarisation, phi: TransparentColouring) -> tuple[Section, ...]:
    """All sections ordered by (edge, position); disjointness is asserted."""
    _, frags = levels_and_fragments(p, phi)
    out = []
    for e, fr in enumerate(frags):
        for a, b in fr:
            if b - a >= 2:
                out.append(Section(e, a + 1, b - 1, p.paths[e][a + 1 : b]))
    seen: set[int] = set()
    for s in out:
        if seen & set(s.vertices):
            raise AssertionError(f"section of edge {s.edge} overlaps another section")
        seen |= set(s.vertices)
    return tuple(out)


# ---------------------------------------------------------------------------
# Coloured planarisation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ColouredPlanarisation:
    drawing: TopologicalDrawing
    phi: TransparentColouring
    planarisation: Planarisation
    graph: Graph
    psi: tuple[int, ...]
    level: tuple[int, ...]
    walks: tuple[tuple[int, ...], ...]
    sections: tuple[Section, ...]
    fragments: tuple[tuple[tuple[int, int], ...], ...]
    _on_walk: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        on: dict[int, set[int]] = {}
        for e, w in enumerate(self.walks):
            for x in w:
                on.setdefault(x, set()).add(e)
        object.__setattr__(self, "_on_walk", on)

    @property
    def c(self) -> int:
        return self.phi.c

    @property
    def n_original(self) -> int:
        return self.drawing.n

    def section_of(self, x: int) -> Section:
        return self.sections[x - self.drawing.n]

    def walks_through(self, x: int) -> set[int]:
        """Edges whose walk visits ``x``."""
        return set(self._on_walk.get(x, ()))

    def canonical_hash(self) -> str:
        """Digest of ``G^φ``, levels and walks; independent of crossing ids."""
        blob = json.dumps(
            {"n": self.graph.n, "edges": sorted(self.graph.edges), "level": self.level, "walks": self.walks},
            separators=(",", ":"),
        )
        return hashlib.sha256(blob.encode()).hexdigest()


def coloured_planarisation(d: TopologicalDrawing, phi: TransparentColouring) -> ColouredPlanarisation:
    p = planarise(d)
    level_p, frags = levels_and_fragments(p, phi)
    secs = sections(p, phi)
    psi = list(range(p.graph.n))
    for i, s in enumerate(secs):
        for v in s.vertices:
            psi[v] = d.n + i
    if any(psi[v] < d.n for v in range(d.n, p.graph.n)):
        raise AssertionError("a dummy vertex lies in no section")
    n_phi = d.n + len(secs)
    pairs = {norm(psi[a], psi[b]) for a, b in p.graph.edges if psi[a] != psi[b]}
    g_phi = Graph(n_phi, sorted(pairs))
    level = [0] * n_phi
    for i, s in enumerate(secs):
        level[d.n + i] = phi.colour[s.edge]
        if any(level_p[v] != level[d.n + i] for v in s.vertices):
            raise AssertionError(f"section {i} mixes levels")
    walks = []
    for path in p.paths:
        w = [psi[path[0]]]
        for v in path[1:]:
            if psi[v] != w[-1]:
                w.append(psi[v])
        walks.append(tuple(w))
    return ColouredPlanarisation(d, phi, p, g_phi, tuple(psi), tuple(level), tuple(walks), secs, frags)


# ---------------------------------------------------------------------------
# Structural checks on walks
# ---------------------------------------------------------------------------

WALK_CHECKS = (
    "interior_dummy",
    "level_bound",
    "walk_length",
    "unique_owner",
    "cross_iff_visit",
    "no_consecutive_top",
    "near_original",
)


@dataclass(frozen=True)
class WalkReport:
    witnesses: dict[str, list[dict]]
    max_distance_to_original: int

    @property
    def ok(self) -> bool:
        return not any(self.witnesses.values())

    def failed(self) -> list[str]:
        return [k for k in WALK_CHECKS if self.witnesses[k]]


def lower_crossings(d: TopologicalDrawing, phi: TransparentColouring, e: int) -> list[int]:
    """Edges of smaller colour crossing ``e``, with multiplicity, in order along ``e``."""
    return [f for f in d.crossers(e) if phi.colour[f] < phi.colour[e]]


def verify_walk_lemmas(cp: ColouredPlanarisation) -> WalkReport:
    d, phi, n = cp.drawing, cp.phi, cp.drawing.n
    col = phi.colour
    bad: dict[str, list[dict]] = {k: [] for k in WALK_CHECKS}
    for e, w in enumerate(cp.walks):
        u, v = d.endpoints(e)
        if w[0] != u or w[-1] != v:
            bad["interior_dummy"].append({"edge": e, "reason": "walk endpoints"})
        for x in w[1:-1]:
            if x < n:
                bad["interior_dummy"].append({"edge": e, "vertex": x})
        for x in w:
            if cp.level[x] > col[e]:
                bad["level_bound"].append({"edge": e, "vertex": x, "level": cp.level[x]})
        t = len(lower_crossings(d, phi, e))
        if len(w) - 1 > 2 * (t + 1):
            bad["walk_length"].append({"edge": e, "length": len(w) - 1, "t": t})
        for a, b in zip(w, w[1:]):
            if cp.level[a] == col[e] and cp.level[b] == col[e]:
                bad["no_consecutive_top"].append({"edge": e, "vertices": [a, b]})
    for x in range(n, cp.graph.n):
        owners = [e for e in sorted(cp.walks_through(x)) if col[e] == cp.level[x]]
        if len(owners) != 1:
            bad["unique_owner"].append({"vertex": x, "owners": owners})
            continue
        e = owners[0]
        sec = cp.section_of(x)
        crossing_section = {f for f in d.crossers(e)[sec.first - 1 : sec.last]}
        for g in range(d.m):
            if col[g] <= cp.level[x]:
                continue
            if (g in cp.walks_through(x)) != (g in crossing_section):
                bad["cross_iff_visit"].append({"vertex": x, "owner": e, "edge": g})
    far = _distance_to_original(cp)
    worst = max(far, default=0)
    if cp.c >= 1:
        for x, dist in enumerate(far):
            if dist < 0 or dist > cp.c - 1:
                bad["near_original"].append({"vertex": x, "distance": dist, "bound": cp.c - 1})
    return WalkReport(bad, worst)


def _distance_to_original(cp: ColouredPlanarisation) -> list[int]:
    g, n = cp.graph, cp.drawing.n
    dist = [-1] * g.n
    frontier = list(range(n))
    for v in frontier:
        dist[v] = 0
    while frontier:
        nxt = []
        for a in frontier:
            for b in g.adj[a]:
                if dist[b] < 0:
                    dist[b] = dist[a] + 1
                    nxt.append(b)
        frontier = nxt
    return dist


# ---------------------------------------------------------------------------
# Measured parameters
# ---------------------------------------------------------------------------


def measure_m(cp: ColouredPlanarisation) -> int:
    """Largest matching number of same-coloured higher edges crossing one fragment."""
    d, col = cp.drawing, cp.phi.colour
    best = 0
    for e, frs in enumerate(cp.fragments):
        along = d.crossers(e)
        for a, b in frs:
            by_colour: dict[int, set[int]] = {}
            # L_e index i >= 1 is the crossing at sequence position i - 1
            for f in along[a : b - 1]:
                if col[f] > col[e]:
                    by_colour.setdefault(col[f], set()).add(f)
            for fs in by_colour.values():
                best = max(best, max_matching([d.endpoints(f) for f in fs])[0])
    return best


def measure_k_lower(cp: ColouredPlanarisation) -> int:
    """Largest vertex cover number of the lower-coloured edges crossing an edge."""
    d = cp.drawing
    best = 0
    for e in range(d.m):
        fs = set(lower_crossings(d, cp.phi, e))
        if fs:
            best = max(best, min_vertex_cover([d.endpoints(f) for f in fs])[0])
    return best
