"""Exact matching number, vertex cover number, cliques and bicliques on the
small edge sets that the recognition code feeds in.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from bpk.graph import Edge, Graph, norm


def max_matching(edges: Iterable[Sequence[int]]) -> tuple[int, list[Edge]]:
    """Maximum cardinality matching by Edmonds' blossom contraction."""
    es = sorted({norm(u, v) for u, v in edges})
    if not es:
        return 0, []
    labels = sorted({x for e in es for x in e})
    idx = {v: i for i, v in enumerate(labels)}
    n = len(labels)
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in es:
        adj[idx[u]].append(idx[v])
        adj[idx[v]].append(idx[u])

    match = [-1] * n
    # greedy start; augmentations fix any suboptimal choice
    for u, v in es:
        a, b = idx[u], idx[v]
        if match[a] < 0 and match[b] < 0:
            match[a], match[b] = b, a

    def find_augmenting(root: int) -> tuple[int, list[int]]:
        used = [False] * n
        par = [-1] * n
        base = list(range(n))
        used[root] = True
        q = deque([root])

        def lca(a: int, b: int) -> int:
            mark = [False] * n
            while True:
                a = base[a]
                mark[a] = True
                if match[a] < 0:
                    break
                a = par[match[a]]
            while True:
                b = base[b]
                if mark[b]:
                    return b
                b = par[match[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                par[v] = child
                child = match[v]
                v = par[match[v]]

        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] >= 0 and par[match[to]] >= 0):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif par[to] < 0:
                    par[to] = v
                    if match[to] < 0:
                        return to, par
                    used[match[to]] = True
                    q.append(match[to])
        return -1, par

    for root in range(n):
        if match[root] >= 0:
            continue
        end, par = find_augmenting(root)
        while end >= 0:
            pv = par[end]
            nxt = match[pv]
            match[end], match[pv] = pv, end
            end = nxt

    witness = sorted(norm(labels[i], labels[j]) for i, j in enumerate(match) if j > i)
    return len(witness), witness


def min_vertex_cover(edges: Iterable[Sequence[int]]) -> tuple[int, set[int]]:
    """Exact minimum vertex cover by branching on a maximum-degree vertex.

    Either the vertex joins the cover or all of its neighbours do. Once the
    maximum degree is one the rest is a matching and is solved directly.
    """
    es = {norm(u, v) for u, v in edges}
    best: list[set[int]] = [set(x[0] for x in es)]  # any endpoint per edge covers

    def solve(rest: set[Edge], chosen: set[int]) -> None:
        if len(chosen) >= len(best[0]):
            return
        if not rest:
            best[0] = set(chosen)
            return
        lower, _ = max_matching(rest)
        if len(chosen) + lower >= len(best[0]):
            return
        deg: dict[int, int] = {}
        for u, v in rest:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        top = max(deg.values())
        if top == 1:
            best[0] = chosen | {min(e) for e in rest}
            return
        v = min(x for x, dx in deg.items() if dx == top)
        solve({e for e in rest if v not in e}, chosen | {v})
        nbrs = {a if b == v else b for a, b in rest if v in (a, b)}
        solve({e for e in rest if not (e[0] in nbrs or e[1] in nbrs)}, chosen | nbrs)

    solve(es, set())
    return len(best[0]), best[0]


def max_clique(g: Graph) -> list[int]:
    """Maximum clique by Bron-Kerbosch with pivoting (lowest ids preferred)."""
    best: list[int] = []
    nb = [set(a) for a in g.adj]

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        nonlocal best
        if not p and not x:
            if len(r) > len(best) or (len(r) == len(best) and sorted(r) < sorted(best)):
                best = list(r)
            return
        if len(r) + len(p) < len(best):
            return
        pivot = max(p | x, key=lambda u: (len(nb[u] & p), -u))
        for v in sorted(p - nb[pivot]):
            expand(r + [v], p & nb[v], x & nb[v])
            p = p - {v}
            x = x | {v}

    expand([], set(g.vertices()), set())
    return sorted(best)


def max_balanced_biclique(g: Graph) -> int:
    """Largest ``m`` such that ``K_{m,m}`` is a (not necessarily induced) subgraph.

    Enumerates one side ``A`` and takes its common neighbourhood as the other
    side; exponential in ``n`` and meant for ``n <= 20``.
    """
    n = g.n
    nbmask = [0] * n
    for u, v in g.edges:
        nbmask[u] |= 1 << v
        nbmask[v] |= 1 << u
    full = (1 << n) - 1
    best = 0
    # common[A] computed incrementally from A minus its lowest bit
    common = [0] * (1 << n)
    common[0] = full
    for a in range(1, 1 << n):
        low = a & -a
        common[a] = common[a ^ low] & nbmask[low.bit_length() - 1]
        size = min(bin(a).count("1"), bin(common[a] & ~a).count("1"))
        if size > best:
            best = size
    return best
