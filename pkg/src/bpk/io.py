"""File formats: graph and drawing JSON, colouring and planarisation sidecars, DOT, GraphML."""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, TextIO

from bpk import geometry as geo
from bpk.colouring import StarForestCover, TransparentColouring
from bpk.drawing import GeometricInput, Geometry, TopologicalDrawing, from_polylines
from bpk.errors import DegeneratePosition, InvalidInput
from bpk.graph import Graph
from bpk.planarisation import ColouredPlanarisation, Planarisation

# ---------------------------------------------------------------------------
# Streams
# ---------------------------------------------------------------------------


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


def read_json(path: str) -> Any:
    text = read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: not JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_text(path: str | None, text: str, stdout: TextIO | None = None) -> None:
    if path is None or path == "-":
        (stdout or sys.stdout).write(text)
    else:
        Path(path).write_text(text)


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_json(obj: Any) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
        return Graph(n, edges)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"bad graph JSON: {exc}") from None


def graph_to_dot(g: Graph, labels: dict[int, str] | None = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in g.vertices():
        label = labels.get(v) if labels else None
        lines.append(f'  {v} [label="{label}"];' if label is not None else f"  {v};")
    lines += [f"  {u} -- {v};" for u, v in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_graphml(g: Graph, attrs: dict[str, dict[int, Any]] | None = None) -> str:
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    h.add_edges_from(g.edges)
    for key, values in (attrs or {}).items():
        nx.set_node_attributes(h, values, key)
    return "\n".join(nx.generate_graphml(h)) + "\n"


# ---------------------------------------------------------------------------
# Drawings
# ---------------------------------------------------------------------------


def _pt(p: geo.Point) -> list[str]:
    return [geo.fmt(p[0]), geo.fmt(p[1])]


def drawing_to_json(d: TopologicalDrawing) -> dict:
    out: dict[str, Any] = {
        "vertices": list(range(d.n)),
        "edges": [
            {"id": e, "u": u, "v": v, "crossings": list(d.sequences[e])} for e, (u, v) in enumerate(d.base.edges)
        ],
        "crossings": [{"id": c.id, "ea": c.ea, "pa": c.pa, "eb": c.eb, "pb": c.pb} for c in d.crossings],
    }
    if d.geometry is not None:
        out["geometry"] = {
            "coords": [_pt(p) for p in d.geometry.coords],
            "polylines": [[_pt(p) for p in line] for line in d.geometry.polylines],
        }
    if d.circular_order is not None:
        out["circular_order"] = list(d.circular_order)
    return out


def drawing_from_json(obj: Any) -> TopologicalDrawing:
    """Parse and validate a drawing; geometry, when present, must reproduce the crossings."""
    try:
        verts = [int(v) for v in obj["vertices"]]
        if verts != list(range(len(verts))):
            raise InvalidInput("vertex ids must be 0..n-1 in order")
        edges = sorted(obj["edges"], key=lambda r: int(r["id"]))
        if [int(r["id"]) for r in edges] != list(range(len(edges))):
            raise InvalidInput("edge ids must be 0..m-1")
        base = Graph(len(verts), [(int(r["u"]), int(r["v"])) for r in edges])
        for r in edges:
            if (min(int(r["u"]), int(r["v"])), max(int(r["u"]), int(r["v"]))) != base.edges[int(r["id"])]:
                raise InvalidInput(f"edge {r['id']} endpoints do not match")
        seqs = [[int(c) for c in r.get("crossings", [])] for r in edges]
        listed = {int(c["id"]): c for c in obj.get("crossings", [])}
        circular = obj.get("circular_order")
        circular = tuple(int(v) for v in circular) if circular is not None else None
        geom_obj = obj.get("geometry")
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InvalidInput(f"bad drawing JSON: {exc!r}") from None
    geometry = None
    if geom_obj is not None:
        try:
            coords = tuple(geo.point(p) for p in geom_obj["coords"])
            lines = tuple(tuple(geo.point(p) for p in line) for line in geom_obj["polylines"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"bad geometry: {exc!r}") from None
        geometry = Geometry(coords, lines)
    d = TopologicalDrawing.from_sequences(base, seqs, geometry=geometry, circular_order=circular)
    for c in d.crossings:
        rec = listed.get(c.id)
        if rec is None or (int(rec["ea"]), int(rec["pa"]), int(rec["eb"]), int(rec["pb"])) not in {
            (c.ea, c.pa, c.eb, c.pb),
            (c.eb, c.pb, c.ea, c.pa),
        }:
            raise InvalidInput(f"crossing record {c.id} disagrees with the edge sequences")
    if len(listed) != len(d.crossings):
        raise InvalidInput("crossing list names crossings no edge uses")
    if geometry is not None:
        _check_geometry(d)
    return d


def _check_geometry(d: TopologicalDrawing) -> None:
    geom = d.geometry
    if len(geom.coords) != d.n or len(geom.polylines) != d.m:
        raise InvalidInput("geometry does not match the vertex and edge counts")
    bends = []
    for e, line in enumerate(geom.polylines):
        lo, hi = d.endpoints(e)
        if len(line) < 2 or line[0] != geom.coords[lo] or line[-1] != geom.coords[hi]:
            raise InvalidInput(f"polyline {e} does not run between its endpoints")
        bends.append(list(line[1:-1]))
    try:
        redo = from_polylines(GeometricInput(list(geom.coords), list(d.base.edges), bends))
    except DegeneratePosition as exc:
        raise InvalidInput(f"geometry is degenerate: {exc}") from None
    if [redo.crossers(e) for e in range(d.m)] != [d.crossers(e) for e in range(d.m)]:
        raise InvalidInput("geometry does not reproduce the crossing sequences")


def load_drawing(path: str) -> TopologicalDrawing:
    return drawing_from_json(read_json(path))


# ---------------------------------------------------------------------------
# Sidecars
# ---------------------------------------------------------------------------


def colouring_to_json(phi: TransparentColouring, cover: StarForestCover | None = None) -> dict:
    out: dict[str, Any] = {str(e): c for e, c in enumerate(phi.colour)}
    if cover is not None:
        out = {
            "colour": out,
            "refined": {str(e): list(r) for e, r in enumerate(cover.refined)},
            "dominant": {str(e): v for e, v in enumerate(cover.dominant)},
            "s": cover.s,
        }
    return out


def colouring_from_json(obj: Any, m: int) -> tuple[TransparentColouring, StarForestCover | None]:
    try:
        plain = obj["colour"] if "colour" in obj else obj
        phi = TransparentColouring(tuple(int(plain[str(e)]) for e in range(m)))
        if len(plain) != m:
            raise InvalidInput(f"colouring lists {len(plain)} edges, drawing has {m}")
        cover = None
        if "refined" in obj:
            cover = StarForestCover(
                tuple((int(obj["refined"][str(e)][0]), int(obj["refined"][str(e)][1])) for e in range(m)),
                tuple(int(obj["dominant"][str(e)]) for e in range(m)),
                int(obj["s"]),
            )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InvalidInput(f"bad colouring JSON: {exc!r}") from None
    if any(c < 1 for c in phi.colour):
        raise InvalidInput("colours must be positive integers")
    return phi, cover


def planarisation_sidecar(p: Planarisation, cp: ColouredPlanarisation) -> dict:
    return {
        "dummies": {str(p.drawing.n + i): cid for i, cid in enumerate(p.dummy_crossing)},
        "paths": [list(path) for path in p.paths],
        "psi": list(cp.psi),
        "levels": list(cp.level),
        "walks": [list(w) for w in cp.walks],
        "sections": [
            {"vertex": cp.drawing.n + i, "edge": s.edge, "members": list(s.vertices)} for i, s in enumerate(cp.sections)
        ],
        "hash": cp.canonical_hash(),
    }
