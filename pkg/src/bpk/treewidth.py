"""Exact treewidth by dynamic programming over eliminated vertex sets.

For an eliminated set ``S`` and a vertex ``v`` outside it, eliminating ``v``
next creates a clique on ``Q(S, v)``: the vertices outside ``S ∪ {v}`` that
``v`` reaches through ``S``. The width of an ordering is the largest such
``|Q|`` and does not depend on how ``S`` itself was ordered, which gives

    TW(S ∪ {v}) = min over v of max(TW(S), |Q(S, v)|).

Sets are processed by size, keeping only those that beat the incumbent upper
bound (from a min-fill ordering); every component is solved separately.
"""

from __future__ import annotations

import os

import numpy as np
from numba import njit

from bpk.decomposition import TreeDecomposition, decomposition_from_order
from bpk.errors import CapExceeded
from bpk.graph import Graph

DEFAULT_CAP = 20
# vertex sets are int64 bitmasks
HARD_CAP = 62


def default_cap() -> int:
    return int(os.environ.get("BPK_CAP_TW", DEFAULT_CAP))


def _masks(g: Graph) -> list[int]:
    out = [0] * g.n
    for u, v in g.edges:
        out[u] |= 1 << v
        out[v] |= 1 << u
    return out


@njit(cache=True)
def _popcount(x: np.int64) -> int:
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _lowbit_index(x: np.int64) -> int:
    i = 0
    while not (x >> i) & 1:
        i += 1
    return i


@njit(cache=True)
def _q_all(adj, n, s, out):
    """Fill ``out[v] = Q(S, v)`` for ``v`` outside ``S``; return the widest ``|N(C)|``.

    Each component ``C`` of ``G[S]`` contributes its outer neighbourhood
    ``N(C)`` to every vertex of ``N(C)``.
    """
    for v in range(n):
        out[v] = 0
    widest = 0
    rest = s
    while rest:
        comp = rest & -rest
        frontier = comp
        while frontier:
            nxt = np.int64(0)
            f = frontier
            while f:
                b = f & -f
                f ^= b
                nxt |= adj[_lowbit_index(b)]
            nxt &= s & ~comp
            comp |= nxt
            frontier = nxt
        rest &= ~comp
        nb = np.int64(0)
        f = comp
        while f:
            b = f & -f
            f ^= b
            nb |= adj[_lowbit_index(b)]
        nb &= ~s
        widest = max(widest, _popcount(nb))
        f = nb
        while f:
            b = f & -f
            f ^= b
            out[_lowbit_index(b)] |= nb
    for v in range(n):
        if not (s >> v) & 1:
            out[v] = (out[v] | (adj[v] & ~s)) & ~(np.int64(1) << v)
    return widest


@njit(cache=True)
def _simplicial(q, n, s):
    """Lowest vertex outside ``S`` whose ``Q`` is a clique once ``S`` is gone, else -1."""
    for v in range(n):
        if (s >> v) & 1:
            continue
        qv = q[v]
        ok = True
        f = qv
        while f:
            b = f & -f
            f ^= b
            if qv & ~b & ~q[_lowbit_index(b)]:
                ok = False
                break
        if ok:
            return v
    return -1


@njit(cache=True)
def _expand(adj, n, keys, widths, best):
    """All successor states of one layer with width below ``best``.

    Returns parallel arrays (successor set, width, parent index, vertex).
    """
    cap = len(keys) * n
    ck = np.empty(cap, np.int64)
    cw = np.empty(cap, np.int64)
    cp = np.empty(cap, np.int64)
    cv = np.empty(cap, np.int64)
    q = np.zeros(n, np.int64)
    cnt = 0
    for i in range(len(keys)):
        s = keys[i]
        w = widths[i]
        widest = _q_all(adj, n, s, q)
        # the first vertex eliminated from N(C) sees the rest of N(C)
        if widest - 1 >= best:
            continue
        simp = _simplicial(q, n, s)
        lo = 0 if simp < 0 else simp
        hi = n if simp < 0 else simp + 1
        for v in range(lo, hi):
            if (s >> v) & 1:
                continue
            w2 = max(w, _popcount(q[v]))
            if w2 >= best:
                continue
            ck[cnt] = s | (np.int64(1) << v)
            cw[cnt] = w2
            cp[cnt] = i
            cv[cnt] = v
            cnt += 1
    return ck[:cnt], cw[:cnt], cp[:cnt], cv[:cnt]


def min_fill_order(g: Graph) -> tuple[list[int], int]:
    """Greedy min-fill elimination ordering and its width (ties: lowest id)."""
    nbrs = [set(a) for a in g.adj]
    alive = set(g.vertices())
    order = []
    width = -1 if g.n == 0 else 0
    while alive:
        def fill(v: int) -> int:
            ns = sorted(nbrs[v])
            return sum(1 for i, a in enumerate(ns) for b in ns[i + 1:] if b not in nbrs[a])

        v = min(alive, key=lambda x: (fill(x), len(nbrs[x]), x))
        width = max(width, len(nbrs[v]))
        for a in nbrs[v]:
            nbrs[a] |= nbrs[v] - {a}
            nbrs[a].discard(v)
        alive.discard(v)
        order.append(v)
    return order, width


def _component_order(g: Graph) -> tuple[list[int], int]:
    n = g.n
    if n <= 1:
        return list(range(n)), 0
    adj = np.array(_masks(g), dtype=np.int64)
    ub_order, ub = min_fill_order(g)
    if ub <= 1:
        return ub_order, ub
    best_width, best_tail = ub, None
    keys = np.zeros(1, np.int64)
    widths = np.full(1, -1, np.int64)
    # per layer: (parent index, vertex) of every kept state
    back: list[tuple[np.ndarray, np.ndarray]] = []
    for size in range(n):
        # eliminating the remaining vertices in any order costs at most rest-1
        tail = np.maximum(widths, n - size - 1)
        i = int(np.argmin(tail))
        if tail[i] < best_width:
            best_width, best_tail = int(tail[i]), (size, i)
        ck, cw, cp, cv = _expand(adj, n, keys, widths, best_width)
        if not len(ck):
            break
        # keep, per successor set, the smallest width (first parent on ties)
        order = np.lexsort((cp, cw, ck))
        ck, cw, cp, cv = ck[order], cw[order], cp[order], cv[order]
        first = np.ones(len(ck), bool)
        first[1:] = ck[1:] != ck[:-1]
        keys, widths = ck[first], cw[first]
        back.append((cp[first], cv[first]))
    if best_tail is None:
        return ub_order, ub
    size, i = best_tail
    order_out: list[int] = []
    while size > 0:
        parents, verts = back[size - 1]
        order_out.append(int(verts[i]))
        i, size = int(parents[i]), size - 1
    order_out.reverse()
    placed = set(order_out)
    order_out += [v for v in range(n) if v not in placed]
    return order_out, best_width


def treewidth_order(g: Graph, cap: int | None = None) -> tuple[int, list[int]]:
    """Exact treewidth and an optimal elimination ordering."""
    cap = min(default_cap() if cap is None else cap, HARD_CAP)
    if g.n > cap:
        raise CapExceeded(g.n, cap)
    width = -1 if g.n == 0 else 0
    order: list[int] = []
    for comp in g.components():
        sub, old = g.induced(comp)
        sub_order, w = _component_order(sub)
        width = max(width, w)
        order += [old[v] for v in sub_order]
    return width, order


def exact_treewidth(g: Graph, cap: int | None = None) -> tuple[int, TreeDecomposition]:
    width, order = treewidth_order(g, cap)
    td = decomposition_from_order(g, order)
    assert td.width == width or g.n == 0
    return width, td


def best_decomposition(g: Graph, cap: int | None = None) -> tuple[TreeDecomposition, bool]:
    """Exact decomposition within the cap, else a min-fill one.

    The flag says whether the width is certified optimal.
    """
    cap = min(default_cap() if cap is None else cap, HARD_CAP)
    if g.n <= cap:
        return exact_treewidth(g, cap)[1], True
    order, _ = min_fill_order(g)
    return decomposition_from_order(g, order), False
