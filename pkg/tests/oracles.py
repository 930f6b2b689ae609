"""Independent brute-force oracles used by the unit and acceptance tests.

None of these share code with the implementations they check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import numpy as np
from numba import njit


def brute_matching(edges: list[tuple[int, int]]) -> int:
    """Largest pairwise vertex-disjoint edge subset, by subset enumeration."""
    m = len(edges)
    best = 0
    for mask in range(1 << m):
        k = bin(mask).count("1")
        if k <= best:
            continue
        used: set[int] = set()
        ok = True
        for i in range(m):
            if mask >> i & 1:
                u, v = edges[i]
                if u in used or v in used:
                    ok = False
                    break
                used |= {u, v}
        if ok:
            best = k
    return best


def brute_cover(edges: list[tuple[int, int]]) -> int:
    """Smallest vertex set touching every edge, by increasing size."""
    verts = sorted({x for e in edges for x in e})
    for k in range(len(verts) + 1):
        for s in itertools.combinations(verts, k):
            ss = set(s)
            if all(u in ss or v in ss for u, v in edges):
                return k
    return len(verts)


def brute_clique(n: int, edges: list[tuple[int, int]]) -> int:
    es = {frozenset(e) for e in edges}
    best = 0
    for k in range(1, n + 1):
        if any(all(frozenset(p) in es for p in itertools.combinations(s, 2)) for s in itertools.combinations(range(n), k)):
            best = k
        else:
            break
    return best


def brute_biclique(n: int, edges: list[tuple[int, int]]) -> int:
    es = {frozenset(e) for e in edges}
    best = 0
    for k in range(1, n // 2 + 1):
        found = False
        for a in itertools.combinations(range(n), k):
            rest = [v for v in range(n) if v not in a and all(frozenset((u, v)) in es for u in a)]
            if len(rest) >= k:
                found = True
                break
        if not found:
            break
        best = k
    return best


@njit(cache=True)
def _perm_width(adj0: np.ndarray, n: int) -> int:
    """Minimum elimination width over all ``n!`` orderings, by iterative DFS.

    Each DFS level keeps a copy of the partially eliminated graph, so every
    ordering is tried without pruning.
    """
    if n == 0:
        return -1
    best = n
    adj = np.zeros((n + 1, n), dtype=np.int64)
    adj[0, :] = adj0
    order = np.zeros(n, dtype=np.int64)
    width = np.zeros(n + 1, dtype=np.int64)
    nxt = np.zeros(n + 1, dtype=np.int64)
    used = np.zeros(n + 1, dtype=np.int64)
    depth = 0
    width[0] = 0
    while depth >= 0:
        if depth == n:
            if width[n] < best:
                best = width[n]
            depth -= 1
            continue
        v = nxt[depth]
        while v < n and (used[depth] >> v) & 1:
            v += 1
        if v >= n:
            nxt[depth] = 0
            depth -= 1
            continue
        nxt[depth] = v + 1
        alive = ((1 << n) - 1) & ~(used[depth] | (1 << v))
        nb = adj[depth, v] & alive
        deg = 0
        x = nb
        while x:
            x &= x - 1
            deg += 1
        for u in range(n):
            adj[depth + 1, u] = adj[depth, u]
        for u in range(n):
            if (nb >> u) & 1:
                adj[depth + 1, u] |= nb & ~(1 << u)
        width[depth + 1] = max(width[depth], deg)
        used[depth + 1] = used[depth] | (1 << v)
        order[depth] = v
        nxt[depth + 1] = 0
        depth += 1
    return best


def permutation_treewidth(n: int, edges: list[tuple[int, int]]) -> int:
    adj = np.zeros(n, dtype=np.int64)
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return int(_perm_width(adj, n))


def _side(a, b, c) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _cross(p, q, r, s) -> bool:
    return _side(p, q, r) * _side(p, q, s) < 0 and _side(r, s, p) * _side(r, s, q) < 0


def segment_pairs_crossing(polylines: list[list[tuple[Fraction, Fraction]]]) -> dict[tuple[int, int], int]:
    """Crossing count for every pair of polylines, from pairwise segment tests."""
    out: dict[tuple[int, int], int] = {}
    for a, b in itertools.combinations(range(len(polylines)), 2):
        cnt = 0
        for p, q in zip(polylines[a], polylines[a][1:]):
            for r, s in zip(polylines[b], polylines[b][1:]):
                if _cross(p, q, r, s):
                    cnt += 1
        if cnt:
            out[(a, b)] = cnt
    return out


def cyclic_interleave(order: list[int], a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Chords cross iff exactly one endpoint of ``b`` lies strictly between ``a``'s on the circle."""
    if set(a) & set(b):
        return False
    pos = {v: i for i, v in enumerate(order)}
    lo, hi = sorted((pos[a[0]], pos[a[1]]))
    inside = [lo < pos[x] < hi for x in b]
    return inside[0] != inside[1]


class UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def contraction_oracle(d, colour: tuple[int, ...]) -> tuple[set[frozenset[int]], set[frozenset[frozenset[int]]]]:
    """Partition of planarisation vertices and the quotient edge set.

    Consecutive dummies on an edge's path are merged whenever both have level
    equal to that edge's colour (level of a dummy: the smaller colour of the
    two edges crossing there).
    """
    n = d.n
    dummy = {c.id: n + i for i, c in enumerate(sorted(d.crossings, key=lambda c: c.id))}
    level = {}
    for c in d.crossings:
        level[dummy[c.id]] = min(colour[c.ea], colour[c.eb])
    total = n + len(d.crossings)
    uf = UnionFind(total)
    pairs = set()
    for e, seq in enumerate(d.sequences):
        u, v = d.base.edges[e]
        path = [u] + [dummy[c] for c in seq] + [v]
        for a, b in zip(path, path[1:]):
            pairs.add((a, b))
            if a >= n and b >= n and level[a] == colour[e] and level[b] == colour[e]:
                uf.union(a, b)
    classes: dict[int, set[int]] = {}
    for x in range(total):
        classes.setdefault(uf.find(x), set()).add(x)
    part = {frozenset(s) for s in classes.values()}
    owner = {x: frozenset(classes[uf.find(x)]) for x in range(total)}
    quotient = {frozenset((owner[a], owner[b])) for a, b in pairs if owner[a] != owner[b]}
    return part, quotient


def strong_product_edge_count(n: int, m: int, t: int) -> int:
    """``|E(G ⊠ K_t)| = m t² + n C(t, 2)``."""
    return m * t * t + n * comb(t, 2)
