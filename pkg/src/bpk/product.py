"""Minor models in ``G^φ ⊠ K_t``, distance bounds, and treewidth certificates.

Host vertex ``(x, i)`` of ``G^φ ⊠ K_t`` (``i`` in ``1..t``) is stored as
``x * t + (i - 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from bpk.colouring import (
    StarForestCover,
    TransparentColouring,
    product_transparent,
    star_forest_cover,
    validate_cover,
)
from bpk.decomposition import (
    LayeredDecomposition,
    TreeDecomposition,
    lift_over_clique,
    validate_layered_decomposition,
)
from bpk.drawing import TopologicalDrawing, drawing_profile
from bpk.errors import (
    CoverMismatch,
    KZero,
    ModelHostMismatch,
    NotCircular,
    NotSpanning,
    RadiusExceeded,
)
from bpk.graph import Graph, Layering, MinorModel, RootedTree, complete_graph, component_bfs_layering, strong_product, validate_model
from bpk.planarisation import (
    ColouredPlanarisation,
    coloured_planarisation,
    lower_crossings,
    measure_k_lower,
    measure_m,
    verify_walk_lemmas,
)
from bpk.treewidth import best_decomposition, default_cap, exact_treewidth

# ---------------------------------------------------------------------------
# Coloured planarisation model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CplModel:
    host: Graph
    t: int
    mu: MinorModel
    # B_x sorted by vertex id; lambda_x(v) = 1 + position of v
    b_sets: tuple[tuple[int, ...], ...]
    s: int
    m: int
    c: int

    def host_vertex(self, x: int, i: int) -> int:
        return x * self.t + (i - 1)

    def split(self, h: int) -> tuple[int, int]:
        return h // self.t, h % self.t + 1

    @property
    def bound(self) -> int:
        """``1 + s(c-1)m`` with the achieved star-forest count."""
        return 1 + self.s * max(self.c - 1, 0) * self.m

    def stated_bound(self, per_class: int) -> int:
        return 1 + per_class * max(self.c - 1, 0) * self.m


def cpl_model(cp: ColouredPlanarisation, cover: StarForestCover) -> CplModel:
    d, phi = cp.drawing, cp.phi
    problems = validate_cover(d, phi, cover)
    if problems:
        raise CoverMismatch("; ".join(problems[:5]))
    n = d.n
    b: list[set[int]] = [{v} if v < n else set() for v in range(cp.graph.n)]
    for e, w in enumerate(cp.walks):
        i = phi.colour[e]
        for x in w[1:-1]:
            if x >= n and i >= cp.level[x]:
                b[x].add(cover.dominant[e])
    b_sets = tuple(tuple(sorted(bx)) for bx in b)
    t = max((len(bx) for bx in b_sets), default=1) or 1
    branch: list[set[int]] = [set() for _ in range(n)]
    for x, bx in enumerate(b_sets):
        for pos, v in enumerate(bx):
            branch[v].add(x * t + pos)
    host = strong_product(cp.graph, complete_graph(t))
    return CplModel(
        host=host,
        t=t,
        mu=MinorModel(tuple(frozenset(bs) for bs in branch)),
        b_sets=b_sets,
        s=cover.s,
        m=measure_m(cp),
        c=phi.c,
    )


def property_c_violations(model: CplModel, cp: ColouredPlanarisation) -> list[dict]:
    """Branch vertices ``(x, i)`` of ``v`` with ``x != v`` and ``x`` on no ``W_vw`` interior."""
    d = cp.drawing
    interior: dict[int, set[int]] = {}
    for e, w in enumerate(cp.walks):
        for x in w[1:-1]:
            interior.setdefault(x, set()).update(d.endpoints(e))
    bad = []
    for v, bs in enumerate(model.mu.branch):
        for h in sorted(bs):
            x, i = model.split(h)
            if x != v and v not in interior.get(x, ()):
                bad.append({"vertex": v, "host": [x, i]})
    return bad


@dataclass(frozen=True)
class CplReport:
    t: int
    s: int
    m: int
    c: int
    model_problems: list[str]
    property_c: list[dict]
    bound: int

    @property
    def ok(self) -> bool:
        return not self.model_problems and not self.property_c and self.t <= self.bound


def check_cpl(model: CplModel, cp: ColouredPlanarisation) -> CplReport:
    return CplReport(
        t=model.t,
        s=model.s,
        m=model.m,
        c=model.c,
        model_problems=validate_model(cp.drawing.base, model.host, model.mu),
        property_c=property_c_violations(model, cp),
        bound=model.bound,
    )


# ---------------------------------------------------------------------------
# Distance bound
# ---------------------------------------------------------------------------


def distance_h(i: int, k: int) -> int:
    """``(2^(i+1) k^i - 2k - 1) / (2k - 1)``, an integer for ``k >= 1``."""
    if k < 1:
        raise KZero("distance formula needs k >= 1")
    val = Fraction(2 ** (i + 1) * k**i - 2 * k - 1, 2 * k - 1)
    assert val.denominator == 1
    return int(val)


@dataclass(frozen=True)
class DistanceReport:
    k: int
    c: int
    max_observed: int
    bound: int
    # edges where the distance from an endpoint exceeds h(colour of the edge)
    edge_violations: list[dict]

    @property
    def ok(self) -> bool:
        return self.max_observed <= self.bound and not self.edge_violations


def _walk_distances(cp: ColouredPlanarisation) -> list[tuple[int, int, int, int]]:
    """``(edge, endpoint, vertex, distance)`` for every interior walk vertex."""
    d = cp.drawing
    cache: dict[int, list[int]] = {}
    out = []
    for e, w in enumerate(cp.walks):
        for u in d.endpoints(e):
            if u not in cache:
                cache[u] = cp.graph.bfs_distances(u)
            for x in w[1:-1]:
                out.append((e, u, x, cache[u][x]))
    return out


def distance_check(cp: ColouredPlanarisation, k: int | None = None) -> DistanceReport:
    k = measure_k_lower(cp) if k is None else k
    if k == 0:
        raise KZero("no edge crosses a lower-coloured edge")
    bound = distance_h(cp.c, k)
    worst = 0
    bad = []
    for e, u, x, dist in _walk_distances(cp):
        worst = max(worst, dist)
        if dist < 0 or dist > distance_h(cp.phi.colour[e], k):
            bad.append({"edge": e, "endpoint": u, "vertex": x, "distance": dist})
    return DistanceReport(k, cp.c, worst, bound, bad)


def base_case_check(cp: ColouredPlanarisation) -> DistanceReport:
    """With no lower-coloured crossings every interior walk vertex is adjacent to both ends."""
    worst = 0
    bad = []
    for e, u, x, dist in _walk_distances(cp):
        worst = max(worst, dist)
        if dist != 1:
            bad.append({"edge": e, "endpoint": u, "vertex": x, "distance": dist})
    return DistanceReport(0, cp.c, worst, 1, bad)


def shallow_radius(cp: ColouredPlanarisation, k: int | None = None) -> int:
    """Radius used for weak shallowness: ``h(c)``, or 0 when nothing crosses."""
    k = measure_k_lower(cp) if k is None else k
    if k == 0:
        return 0 if not cp.drawing.crossings else 1
    return distance_h(cp.c, k)


# ---------------------------------------------------------------------------
# Weak shallow models and layered treewidth transfer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeakShallowModel:
    mu: MinorModel
    r: int
    origins: tuple[int, ...]
    # largest distance from an origin to its branch set, by BFS
    measured: int = 0


def verify_weak_shallow(h: Graph, wsm: WeakShallowModel) -> list[dict]:
    bad = []
    for v, (bs, o) in enumerate(zip(wsm.mu.branch, wsm.origins)):
        dist = h.bfs_distances(o)
        for a in sorted(bs):
            if dist[a] < 0 or dist[a] > wsm.r:
                bad.append({"vertex": v, "origin": o, "host": a, "distance": dist[a]})
    return bad


def weak_shallow_from_cpl(model: CplModel, cp: ColouredPlanarisation, k: int | None = None) -> WeakShallowModel:
    r = shallow_radius(cp, k)
    origins = tuple(model.host_vertex(v, 1) for v in range(cp.drawing.n))
    worst = 0
    for v, o in enumerate(origins):
        dist = model.host.bfs_distances(o)
        for a in model.mu.branch[v]:
            if dist[a] < 0 or dist[a] > r:
                raise RadiusExceeded(f"branch set of {v} reaches host vertex {a} at distance {dist[a]} > {r}")
            worst = max(worst, dist[a])
    return WeakShallowModel(model.mu, r, origins, worst)


def host_layered_decomposition(
    cp: ColouredPlanarisation, t: int, cap: int | None = None
) -> tuple[LayeredDecomposition, bool]:
    """Decomposition of ``G^φ`` lifted over ``K_t``, with ``G^φ``'s BFS layering lifted.

    The flag tells whether the decomposition of ``G^φ`` is optimal.
    """
    td, exact = best_decomposition(cp.graph, cap)
    lay = component_bfs_layering(cp.graph)
    lifted = Layering(tuple(frozenset(x * t + i for x in layer for i in range(t)) for layer in lay.layers))
    return LayeredDecomposition(lift_over_clique(td, t), lifted), exact


def ltw_transfer(host: Graph, host_ld: LayeredDecomposition, wsm: WeakShallowModel, g: Graph) -> LayeredDecomposition:
    """Push a layered decomposition of ``host`` down to ``g`` through a weak shallow model.

    Bags take the owners of their host vertices; layers group origins by host
    layer in blocks of ``2r + 1``, dropping empty blocks.
    """
    if len(wsm.mu.branch) != g.n or any(h < 0 or h >= host.n for bs in wsm.mu.branch for h in bs):
        raise ModelHostMismatch("model does not map this graph into this host")
    owner = wsm.mu.owner()
    bags = tuple(frozenset(owner[h] for h in bag if h in owner) for bag in host_ld.decomposition.bags)
    where = host_ld.layering.layer_of()
    if any(o not in where for o in wsm.origins):
        raise ModelHostMismatch("an origin is not in the host layering")
    block = 2 * wsm.r + 1
    groups: dict[int, set[int]] = {}
    for v, o in enumerate(wsm.origins):
        groups.setdefault(where[o] // block, set()).add(v)
    lay = Layering(tuple(frozenset(groups[i]) for i in sorted(groups)))
    return LayeredDecomposition(TreeDecomposition(host_ld.decomposition.tree, bags), lay)


# ---------------------------------------------------------------------------
# Bound reports
# ---------------------------------------------------------------------------


@dataclass
class BoundReport:
    kind: str
    instance: str = ""
    measured: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "instance": self.instance,
            "ok": self.ok,
            "measured": self.measured,
            "bounds": self.bounds,
            "checks": self.checks,
            "witness": self.witness,
        }

    def table(self) -> str:
        rows = [(f"measured.{k}", v) for k, v in self.measured.items()]
        rows += [(f"bound.{k}", v) for k, v in self.bounds.items()]
        rows += [(f"check.{k}", "pass" if v else "FAIL") for k, v in self.checks.items()]
        width = max((len(k) for k, _ in rows), default=0)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _exact_tw(g: Graph, cap: int) -> int | None:
    if g.n > cap:
        return None
    return exact_treewidth(g, cap)[0]


def circular_tw_bound(
    d: TopologicalDrawing,
    phi: TransparentColouring,
    cover: StarForestCover | None = None,
    cap: int | None = None,
    phi_cap: int | None = None,
) -> BoundReport:
    """Treewidth of a circular drawing against ``9mc(c-1) + 3c - 1``.

    ``phi_cap`` bounds the size of ``G^φ`` for which its treewidth is computed
    exactly; above it a min-fill width is used, which keeps the chain valid.
    """
    if d.circular_order is None:
        raise NotCircular("drawing was not produced from a circular specification")
    cap = default_cap() if cap is None else cap
    phi_cap = max(cap, 40) if phi_cap is None else phi_cap
    cover = star_forest_cover(d, phi) if cover is None else cover
    cp = coloured_planarisation(d, phi)
    model = cpl_model(cp, cover)
    c, m, t, s = phi.c, model.m, model.t, cover.s
    td_phi, exact_phi = best_decomposition(cp.graph, phi_cap)
    tw_phi = td_phi.width
    tw_g = _exact_tw(d.base, cap)
    stated = 9 * m * c * (c - 1) + 3 * c - 1
    achieved = 3 * c * (1 + s * (c - 1) * m) - 1
    judged = stated if s <= 3 else achieved
    near = verify_walk_lemmas(cp)
    rep = BoundReport("circular")
    rep.measured = {
        "n": d.n,
        "edges": d.m,
        "c": c,
        "m": m,
        "s": s,
        "t": t,
        "tw_phi": tw_phi,
        "tw_phi_exact": exact_phi,
        "tw": tw_g,
        "max_distance_to_original": near.max_distance_to_original,
    }
    chain = (tw_phi + 1) * t - 1
    rep.bounds = {"stated": stated, "achieved": achieved, "chain": chain, "tw_phi_outerplanar": 3 * c - 1}
    rep.checks = {
        "cpl_t": t <= model.bound,
        "cpl_t_circular": s > 3 or t <= model.stated_bound(3),
        "chain_le_bound": chain <= judged,
        "near_original": not near.witnesses["near_original"],
    }
    if tw_g is not None:
        rep.checks["tw_le_chain"] = tw_g <= chain
        rep.checks["tw_le_bound"] = tw_g <= judged
    return rep


def radius_tw_bound(
    d: TopologicalDrawing,
    phi: TransparentColouring,
    tree: RootedTree,
    cover: StarForestCover | None = None,
    cap: int | None = None,
) -> BoundReport:
    """Treewidth against ``(6(t+1)r + 3c - 1)(1 + 5(c-1)m) - 1`` for a spanning tree of radius ``r``."""
    if tree.tree.n != d.n or any(not d.base.has_edge(u, v) for u, v in tree.tree.edges) or tree.tree.m != d.n - 1:
        raise NotSpanning("tree is not a spanning tree of the drawn graph")
    cap = default_cap() if cap is None else cap
    cover = star_forest_cover(d, phi) if cover is None else cover
    cp = coloured_planarisation(d, phi)
    model = cpl_model(cp, cover)
    c, m, s = phi.c, model.m, cover.s
    t_tree = max((len(lower_crossings(d, phi, d.base.edge_id(u, v))) for u, v in tree.tree.edges), default=0)
    r = tree.radius()
    core = 6 * (t_tree + 1) * r + 3 * c - 1
    stated = core * (1 + 5 * (c - 1) * m) - 1
    achieved = core * (1 + s * (c - 1) * m) - 1
    tw_g = _exact_tw(d.base, cap)
    rep = BoundReport("radius")
    rep.measured = {"n": d.n, "edges": d.m, "c": c, "m": m, "s": s, "t": t_tree, "r": r, "t_cpl": model.t, "tw": tw_g}
    rep.bounds = {"stated": stated, "achieved": achieved}
    rep.checks = {"cpl_t": model.t <= model.bound}
    if tw_g is not None:
        rep.checks["tw_le_achieved"] = tw_g <= achieved
    return rep


def _rtw_digits(r: int, t: int) -> int:
    """Decimal digits of ``(4r+1) t ((2(8r+1)t+3) 7^(30r+6) - 1) - 1``."""
    # the trailing -1 terms never change the digit count of a power of 7 times an integer
    return int(math.log10((4 * r + 1) * t * (2 * (8 * r + 1) * t + 3)) + (30 * r + 6) * math.log10(7)) + 1


def pipeline_report(
    d: TopologicalDrawing,
    cap: int | None = None,
    instance: str = "",
    phi: TransparentColouring | None = None,
    cover: StarForestCover | None = None,
) -> BoundReport:
    """Colouring through to a layered decomposition of the drawn graph.

    The product colouring is used unless ``phi`` is given; a missing cover
    for a given ``phi`` comes from :func:`star_forest_cover`.
    """
    if phi is None:
        phi, cover = product_transparent(d)
    elif cover is None:
        cover = star_forest_cover(d, phi)
    cp = coloured_planarisation(d, phi)
    walks = verify_walk_lemmas(cp)
    model = cpl_model(cp, cover)
    cpl = check_cpl(model, cp)
    k_lower = measure_k_lower(cp)
    dist = base_case_check(cp) if k_lower == 0 else distance_check(cp, k_lower)
    wsm = weak_shallow_from_cpl(model, cp, k_lower)
    host_ld, exact = host_layered_decomposition(cp, model.t, cap)
    host_problems = validate_layered_decomposition(model.host, host_ld)
    ell = host_ld.layered_width
    g_ld = ltw_transfer(model.host, host_ld, wsm, d.base)
    g_problems = validate_layered_decomposition(d.base, g_ld)
    prof = drawing_profile(d)
    k = prof.matching_k
    c = phi.c
    rep = BoundReport("pipeline", instance)
    rep.measured = {
        "n": d.n,
        "edges": d.m,
        "crossings": len(d.crossings),
        "k": k,
        "cover_k": prof.cover_k,
        "fan_t": prof.fan_t,
        "c": c,
        "s": cover.s,
        "m": model.m,
        "t": model.t,
        "k_lower": k_lower,
        "r": wsm.r,
        "max_walk_distance": dist.max_observed,
        "max_branch_radius": wsm.measured,
        "phi_vertices": cp.graph.n,
        "host_tw_exact": exact,
        "host_layered_width": ell,
        "layered_width": g_ld.layered_width,
        "tw_upper": g_ld.decomposition.width,
    }
    t_gen = 1 + 5 * max(c - 1, 0) * model.m
    r_gen = shallow_radius(cp, k_lower)
    rep.bounds = {
        "cpl_t": model.bound,
        "distance": dist.bound,
        "ltw_transfer": (4 * wsm.r + 1) * ell,
        "ltw_general": 3 * t_gen * (4 * r_gen + 1),
        "rtw_general_digits": _rtw_digits(r_gen, t_gen),
    }
    if k >= 1:
        r_mp = int(Fraction(2 ** (2 * c + 1) * k**c - 4 * k - 1, 4 * k - 1))
        t_mp = 1 + 5 * max(c - 1, 0) * k
        rep.bounds["ltw_matching"] = 3 * t_mp * (4 * r_mp + 1)
        rep.bounds["rtw_matching_digits"] = _rtw_digits(r_mp, t_mp)
    rep.checks = {
        "walk_lemmas": walks.ok,
        "cpl_model": cpl.ok,
        "distance": dist.ok,
        "host_certificate": not host_problems,
        "ltw_certificate": not g_problems,
        "ltw_transfer_bound": g_ld.layered_width <= (4 * wsm.r + 1) * ell,
    }
    rep.witness = {
        "walks": {k2: v[:3] for k2, v in walks.witnesses.items() if v},
        "cpl": {"model": cpl.model_problems[:3], "property_c": cpl.property_c[:3]},
        "distance": dist.edge_violations[:3],
        "host": host_problems[:3],
        "ltw": g_problems[:3],
    }
    rep.witness = {k2: v for k2, v in rep.witness.items() if v and v != {"model": [], "property_c": []}}
    return rep
