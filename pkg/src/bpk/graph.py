"""Simple undirected graphs on dense integer vertex ids, plus the small
structural toolbox (layerings, products, forests, rooted trees, minor models)
the rest of the package is built on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from bpk.errors import Disconnected, InvalidInput, NotAForest, NotInClosure, NotStarForest, Unreachable

Edge = tuple[int, int]


def norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph with vertices ``0..n-1``.

    Edge ids are positions in ``edges``; each edge is stored as ``(lo, hi)``.
    """

    __slots__ = ("n", "edges", "adj", "_eid")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()) -> None:
        if n < 0:
            raise InvalidInput("negative vertex count")
        es: list[Edge] = []
        eid: dict[Edge, int] = {}
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for raw in edges:
            u, v = int(raw[0]), int(raw[1])
            if u == v:
                raise InvalidInput(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge {u}-{v} out of range for n={n}")
            e = norm(u, v)
            if e in eid:
                raise InvalidInput(f"parallel edge {e[0]}-{e[1]}")
            eid[e] = len(es)
            es.append(e)
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(es)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in nbrs)
        self._eid = eid

    # -- basic queries -------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return norm(u, v) in self._eid

    def edge_id(self, u: int, v: int) -> int:
        return self._eid[norm(u, v)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and set(self.edges) == set(other.edges)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.edges)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived graphs ------------------------------------------------------

    def edge_subgraph(self, edges: Iterable[Sequence[int]]) -> "Graph":
        """Spanning subgraph with the given edges (ids of ``self`` are not kept)."""
        return Graph(self.n, edges)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1``; also returns new->old map."""
        old = sorted(set(vertices))
        new = {v: i for i, v in enumerate(old)}
        es = [(new[u], new[v]) for u, v in self.edges if u in new and v in new]
        return Graph(len(old), es), old

    # -- traversal -----------------------------------------------------------

    def bfs_distances(self, source: int) -> list[int]:
        """Distances from ``source``; unreachable vertices get -1."""
        dist = [-1] * self.n
        dist[source] = 0
        q = deque([source])
        while q:
            u = q.popleft()
            for w in self.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return dist

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())


def edges_acyclic(edges: Iterable[Sequence[int]]) -> bool:
    """Union-find cycle test on an edge list over arbitrary integer labels."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        a, b = find(u), find(v)
        if a == b:
            return False
        parent[a] = b
    return True


# ---------------------------------------------------------------------------
# Layerings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Layering:
    layers: tuple[frozenset[int], ...]

    def layer_of(self) -> dict[int, int]:
        return {v: i for i, layer in enumerate(self.layers) for v in layer}

    def __len__(self) -> int:
        return len(self.layers)


def validate_layering(g: Graph, lay: Layering) -> list[str]:
    problems = []
    where: dict[int, int] = {}
    for i, layer in enumerate(lay.layers):
        for v in layer:
            if v in where:
                problems.append(f"vertex {v} in layers {where[v]} and {i}")
            where[v] = i
    missing = [v for v in g.vertices() if v not in where]
    if missing:
        problems.append(f"vertices not layered: {missing[:10]}")
    extra = [v for v in where if not 0 <= v < g.n]
    if extra:
        problems.append(f"unknown vertices in layering: {extra[:10]}")
    for u, v in g.edges:
        if u in where and v in where and abs(where[u] - where[v]) > 1:
            problems.append(f"edge {u}-{v} spans layers {where[u]} and {where[v]}")
    return problems


def bfs_layering(g: Graph, root: int) -> Layering:
    """Layer ``i`` holds the vertices at distance ``i`` from ``root``."""
    dist = g.bfs_distances(root)
    if any(d < 0 for d in dist):
        raise Disconnected(f"vertex {dist.index(-1)} unreachable from root {root}")
    layers: list[set[int]] = [set() for _ in range(max(dist) + 1)]
    for v, d in enumerate(dist):
        layers[d].add(v)
    return Layering(tuple(frozenset(x) for x in layers))


def component_bfs_layering(g: Graph) -> Layering:
    """BFS layering of every component from its lowest vertex, merged by depth.

    Works for disconnected graphs, where :func:`bfs_layering` refuses.
    """
    layers: list[set[int]] = []
    for comp in g.components():
        dist = g.bfs_distances(comp[0])
        for v in comp:
            while len(layers) <= dist[v]:
                layers.append(set())
            layers[dist[v]].add(v)
    return Layering(tuple(frozenset(x) for x in layers))


# ---------------------------------------------------------------------------
# Products and powers
# ---------------------------------------------------------------------------


def strong_product(a: Graph, b: Graph) -> Graph:
    """``a ⊠ b`` with vertex ``(x, y)`` stored as ``x * b.n + y``."""
    nb = b.n
    edges = []
    for x in range(a.n):
        for y1, y2 in b.edges:
            edges.append((x * nb + y1, x * nb + y2))
    for x1, x2 in a.edges:
        for y in range(nb):
            edges.append((x1 * nb + y, x2 * nb + y))
        for y1, y2 in b.edges:
            edges.append((x1 * nb + y1, x2 * nb + y2))
            edges.append((x1 * nb + y2, x2 * nb + y1))
    return Graph(a.n * nb, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def grid_graph(rows: int, cols: int) -> Graph:
    """Vertex ``(r, c)`` is ``r * cols + c``."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def graph_power(g: Graph, t: int) -> Graph:
    """Join every pair of distinct vertices at distance at most ``t``."""
    if t < 1:
        return Graph(g.n)
    edges = []
    for s in range(g.n):
        dist = [-1] * g.n
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            if dist[u] == t:
                continue
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    q.append(w)
        edges.extend((s, v) for v in range(s + 1, g.n) if dist[v] > 0)
    return Graph(g.n, edges)


# ---------------------------------------------------------------------------
# Degeneracy and forest decompositions
# ---------------------------------------------------------------------------


def degeneracy_order(g: Graph) -> tuple[list[int], int]:
    """Repeatedly delete a minimum-degree vertex (lowest id on ties).

    Returns the deletion order and the degeneracy ``d``: each vertex has at
    most ``d`` neighbours deleted after it.
    """
    deg = [g.degree(v) for v in range(g.n)]
    alive = [True] * g.n
    buckets: dict[int, set[int]] = {}
    for v, dv in enumerate(deg):
        buckets.setdefault(dv, set()).add(v)
    order = []
    d = 0
    for _ in range(g.n):
        k = min(x for x, b in buckets.items() if b)
        v = min(buckets[k])
        buckets[k].discard(v)
        alive[v] = False
        order.append(v)
        d = max(d, k)
        for w in g.adj[v]:
            if alive[w]:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets.setdefault(deg[w], set()).add(w)
    return order, d


def degeneracy_decomposition(g: Graph) -> tuple[list[int], int, list[list[Edge]]]:
    """Partition the edges into at most ``d`` forests.

    Each vertex sends its edges towards later-deleted neighbours into distinct
    forests, so every forest has out-degree at most one along the order and is
    therefore acyclic.
    """
    order, d = degeneracy_order(g)
    pos = {v: i for i, v in enumerate(order)}
    forests: list[list[Edge]] = [[] for _ in range(d)]
    for v in order:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        for slot, w in enumerate(later):
            forests[slot].append(norm(v, w))
    return order, d, [f for f in forests if f]


@dataclass(frozen=True)
class StarForest:
    """A star-forest with a fixed centre for every star-component."""

    stars: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def edges(self) -> list[Edge]:
        return [norm(c, x) for c, leaves in self.stars for x in leaves]

    def centre_map(self) -> dict[Edge, int]:
        return {norm(c, x): c for c, leaves in self.stars for x in leaves}

    def __len__(self) -> int:
        return sum(len(leaves) for _, leaves in self.stars)


def star_forest_from_edges(edges: Iterable[Sequence[int]], centres: dict[Edge, int] | None = None) -> StarForest:
    """Recognise a star-forest and fix its centres.

    Stars with two or more edges have their unique high-degree vertex as the
    centre; single-edge stars take ``centres[e]`` when given, else the lower id.
    """
    es = sorted({norm(u, v) for u, v in edges})
    nbrs: dict[int, list[int]] = {}
    for u, v in es:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    seen: set[int] = set()
    stars = []
    for s in sorted(nbrs):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in nbrs[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        big = [v for v in comp if len(nbrs[v]) >= 2]
        n_edges = sum(len(nbrs[v]) for v in comp) // 2
        if len(big) > 1 or n_edges != len(comp) - 1:
            raise NotStarForest(f"component containing {s} is not a star")
        if big:
            c = big[0]
        else:
            u, v = sorted(comp)
            c = centres.get((u, v), u) if centres else u
        stars.append((c, tuple(sorted(comp - {c}))))
    return StarForest(tuple(sorted(stars)))


def is_star_forest(edges: Iterable[Sequence[int]]) -> bool:
    try:
        star_forest_from_edges(edges)
    except NotStarForest:
        return False
    return True


def star_forest_split(forest: Iterable[Sequence[int]]) -> tuple[StarForest, StarForest]:
    """Split a forest into two star-forests.

    Each tree is rooted at a vertex of maximum degree (lowest id on ties), so
    a star stays whole; an edge goes to the first part when its parent
    endpoint sits at even depth, to the second otherwise. Parents are the
    centres.
    """
    es = sorted({norm(u, v) for u, v in forest})
    if not edges_acyclic(es):
        raise NotAForest("edge set contains a cycle")
    nbrs: dict[int, list[int]] = {}
    for u, v in es:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    depth: dict[int, int] = {}
    halves: tuple[dict[int, list[int]], dict[int, list[int]]] = ({}, {})
    for s in sorted(nbrs):
        if s in depth:
            continue
        comp = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in nbrs[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        root = min(comp, key=lambda v: (-len(nbrs[v]), v))
        depth[root] = 0
        q = deque([root])
        while q:
            u = q.popleft()
            for w in sorted(nbrs[u]):
                if w not in depth:
                    depth[w] = depth[u] + 1
                    halves[depth[u] % 2].setdefault(u, []).append(w)
                    q.append(w)
    parts = []
    for half in halves:
        centre_hint = {norm(c, x): c for c, xs in half.items() for x in xs}
        parts.append(star_forest_from_edges(centre_hint, centre_hint))
    return parts[0], parts[1]


# ---------------------------------------------------------------------------
# Rooted trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootedTree:
    tree: Graph
    root: int
    parent: tuple[int, ...]  # -1 at the root
    depth: tuple[int, ...]

    @classmethod
    def from_tree(cls, tree: Graph, root: int) -> "RootedTree":
        if not (tree.is_forest() and tree.is_connected()):
            raise NotAForest("rooted tree must be a connected forest")
        parent = [-1] * tree.n
        depth = [0] * tree.n
        seen = [False] * tree.n
        seen[root] = True
        q = deque([root])
        while q:
            u = q.popleft()
            for w in tree.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    q.append(w)
        return cls(tree, root, tuple(parent), tuple(depth))

    def ancestors(self, v: int) -> list[int]:
        """Strict ancestors from the parent up to the root."""
        out = []
        v = self.parent[v]
        while v >= 0:
            out.append(v)
            v = self.parent[v]
        return out

    def is_ancestor(self, a: int, v: int) -> bool:
        """True when ``a`` is a (non-strict) ancestor of ``v``."""
        while v >= 0 and self.depth[v] >= self.depth[a]:
            if v == a:
                return True
            v = self.parent[v]
        return False

    def radius(self) -> int:
        return max(self.depth) if self.depth else 0


def bfs_tree(g: Graph, root: int) -> RootedTree:
    dist = g.bfs_distances(root)
    if any(d < 0 for d in dist):
        raise Disconnected("graph is disconnected")
    edges = []
    for v in range(g.n):
        if v != root:
            p = min(w for w in g.adj[v] if dist[w] == dist[v] - 1)
            edges.append((p, v))
    return RootedTree.from_tree(Graph(g.n, edges), root)


# ---------------------------------------------------------------------------
# Minor models and weak radius
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinorModel:
    """Branch set of every vertex of the guest graph, as host vertex sets."""

    branch: tuple[frozenset[int], ...]

    def owner(self) -> dict[int, int]:
        return {h: v for v, bs in enumerate(self.branch) for h in bs}


def validate_model(g: Graph, h: Graph, mu: MinorModel) -> list[str]:
    problems = []
    if len(mu.branch) != g.n:
        return [f"model has {len(mu.branch)} branch sets for {g.n} vertices"]
    owner: dict[int, int] = {}
    for v, bs in enumerate(mu.branch):
        if not bs:
            problems.append(f"branch set of {v} is empty")
            continue
        bad = [x for x in bs if not 0 <= x < h.n]
        if bad:
            problems.append(f"branch set of {v} has non-host vertices {bad[:5]}")
            continue
        for x in bs:
            if x in owner:
                problems.append(f"host vertex {x} in branch sets of {owner[x]} and {v}")
            owner[x] = v
        start = min(bs)
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in h.adj[u]:
                if w in bs and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(bs):
            problems.append(f"branch set of {v} is disconnected")
    for u, v in g.edges:
        bu, bv = mu.branch[u], mu.branch[v]
        small, other = (bu, bv) if len(bu) <= len(bv) else (bv, bu)
        if not any(w in other for x in small for w in h.adj[x] if 0 <= x < h.n):
            problems.append(f"edge {u}-{v} not realised between branch sets")
    return problems


def weak_radius(h: Graph, s: Iterable[int]) -> tuple[int, int]:
    """Minimum over host vertices of the maximum distance to ``s``.

    Returns ``(radius, origin)`` with the lowest-id origin on ties.
    """
    targets = sorted(set(s))
    if not targets:
        raise InvalidInput("weak radius of an empty set")
    worst = [0] * h.n
    for a in targets:
        dist = h.bfs_distances(a)
        for v in range(h.n):
            if worst[v] >= 0:
                worst[v] = -1 if dist[v] < 0 else max(worst[v], dist[v])
    cands = [(r, v) for v, r in enumerate(worst) if r >= 0]
    if not cands:
        raise Unreachable("set spans more than one component")
    return min(cands)


def closure_decomposition(t: RootedTree, h: Graph):
    """Tree decomposition of a spanning subgraph of the closure of ``t``.

    Bag of ``v``: ``v`` plus every strict ancestor ``w`` adjacent in ``h`` to
    some descendant of ``v``.
    """
    from bpk.decomposition import TreeDecomposition

    if h.n != t.tree.n:
        raise NotInClosure("graph and tree have different vertex sets")
    bags: list[set[int]] = [{v} for v in range(h.n)]
    for u, v in h.edges:
        if t.is_ancestor(u, v):
            w, x = u, v
        elif t.is_ancestor(v, u):
            w, x = v, u
        else:
            raise NotInClosure(f"edge {u}-{v} joins incomparable vertices")
        # w joins every bag on the vertical path from x up to (excluding) w
        y = x
        while y != w:
            bags[y].add(w)
            y = t.parent[y]
    return TreeDecomposition(t.tree, tuple(frozenset(b) for b in bags))
