"""Tree decompositions, layered decompositions, and the PACE ``.td`` format."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, TextIO

from bpk.errors import InvalidInput
from bpk.graph import Graph, Layering, validate_layering


@dataclass(frozen=True)
class TreeDecomposition:
    """``tree`` is a Graph on bag indices; ``bags[i]`` is the bag of node ``i``."""

    tree: Graph
    bags: tuple[frozenset[int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> list[str]:
    """Return the violated tree-decomposition conditions (empty when valid)."""
    problems = []
    t = td.tree
    if t.n != len(td.bags):
        return [f"tree has {t.n} nodes but {len(td.bags)} bags"]
    if g.n and t.n == 0:
        return ["no bags for a non-empty graph"]
    if t.n and not (t.is_connected() and t.is_forest()):
        problems.append("decomposition tree is not a tree")
    holders: dict[int, list[int]] = {v: [] for v in g.vertices()}
    for i, bag in enumerate(td.bags):
        for v in bag:
            if v not in holders:
                problems.append(f"bag {i} holds unknown vertex {v}")
            else:
                holders[v].append(i)
    for v, nodes in holders.items():
        if not nodes:
            problems.append(f"vertex {v} in no bag")
            continue
        allowed = set(nodes)
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            x = stack.pop()
            for y in t.adj[x]:
                if y in allowed and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(allowed):
            problems.append(f"bags containing vertex {v} do not induce a subtree")
    for u, v in g.edges:
        if not set(holders.get(u, ())) & set(holders.get(v, ())):
            problems.append(f"edge {u}-{v} not covered by any bag")
    return problems


def decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Tree decomposition induced by eliminating vertices in ``order``.

    Bag of ``v`` is ``v`` with its later neighbours in the fill-in graph; its
    tree parent is the earliest-eliminated of those neighbours.
    """
    pos = {v: i for i, v in enumerate(order)}
    nbrs = [set(g.adj[v]) for v in g.vertices()]
    bags: list[frozenset[int]] = [frozenset()] * g.n
    parent = [-1] * g.n
    for v in order:
        later = {w for w in nbrs[v] if pos[w] > pos[v]}
        bags[v] = frozenset(later | {v})
        for a in later:
            nbrs[a] |= later - {a}
        if later:
            parent[v] = min(later, key=pos.__getitem__)
    # bag index = position in order; roots of separate components chained
    edges = []
    roots = []
    for v in order:
        if parent[v] >= 0:
            edges.append((pos[v], pos[parent[v]]))
        else:
            roots.append(pos[v])
    edges += [(roots[i], roots[i + 1]) for i in range(len(roots) - 1)]
    return TreeDecomposition(Graph(g.n, edges), tuple(bags[v] for v in order))


def trivial_decomposition(g: Graph) -> TreeDecomposition:
    return TreeDecomposition(Graph(1), (frozenset(g.vertices()),))


def lift_over_clique(td: TreeDecomposition, t: int) -> TreeDecomposition:
    """Decomposition of ``G ⊠ K_t`` from one of ``G`` (bag ``B`` -> ``B × [t]``)."""
    bags = tuple(frozenset(x * t + i for x in bag for i in range(t)) for bag in td.bags)
    return TreeDecomposition(td.tree, bags)


# ---------------------------------------------------------------------------
# Layered decompositions
# ---------------------------------------------------------------------------


def layered_width(td: TreeDecomposition, lay: Layering) -> int:
    where = lay.layer_of()
    best = 0
    for bag in td.bags:
        counts: dict[int, int] = {}
        for v in bag:
            i = where.get(v, -1)
            counts[i] = counts.get(i, 0) + 1
        if counts:
            best = max(best, max(counts.values()))
    return best


@dataclass(frozen=True)
class LayeredDecomposition:
    decomposition: TreeDecomposition
    layering: Layering

    @property
    def layered_width(self) -> int:
        return layered_width(self.decomposition, self.layering)


def validate_layered_decomposition(g: Graph, ld: LayeredDecomposition) -> list[str]:
    return validate_tree_decomposition(g, ld.decomposition) + validate_layering(g, ld.layering)


# ---------------------------------------------------------------------------
# PACE .td format (1-based vertices and bags)
# ---------------------------------------------------------------------------


def write_td(td: TreeDecomposition, n: int, out: TextIO) -> None:
    out.write(f"s td {len(td.bags)} {td.width + 1} {n}\n")
    for i, bag in enumerate(td.bags):
        out.write(" ".join(["b", str(i + 1)] + [str(v + 1) for v in sorted(bag)]) + "\n")
    for a, b in td.tree.edges:
        out.write(f"{a + 1} {b + 1}\n")


def read_td(lines: Iterable[str]) -> tuple[TreeDecomposition, int]:
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for raw in lines:
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td":
                raise InvalidInput(f"bad solution line: {raw.strip()}")
            header = tuple(int(x) for x in parts[2:])
        elif parts[0] == "b":
            if header is None:
                raise InvalidInput("bag line before header")
            bags[int(parts[1]) - 1] = frozenset(int(x) - 1 for x in parts[2:])
        else:
            if header is None:
                raise InvalidInput("tree edge before header")
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
    if header is None:
        raise InvalidInput("missing 's td' header")
    nbags, _, n = header
    if sorted(bags) != list(range(nbags)):
        raise InvalidInput("bag ids are not 1..#bags")
    return TreeDecomposition(Graph(nbags, edges), tuple(bags[i] for i in range(nbags))), n
