"""``bpk`` command-line front end.

Exit codes: 0 all checks pass, 1 a checked inequality failed (a witness file
is written), 2 invalid input, 3 a size cap was exceeded. Errors are reported
on stderr as JSON objects.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Sequence

from bpk import io
from bpk.colouring import (
    StarForestCover,
    TransparentColouring,
    check_cover,
    greedy_transparent,
    product_transparent,
    star_forest_cover,
    verify_transparent,
)
from bpk.decomposition import validate_layered_decomposition
from bpk.drawing import TopologicalDrawing, drawing_profile
from bpk.errors import BpkError, CapExceeded, InvalidInput
from bpk.families import FAMILIES, family_colouring, gen_family
from bpk.graph import bfs_tree
from bpk.planarisation import coloured_planarisation, measure_k_lower, planarise, verify_walk_lemmas
from bpk.product import (
    base_case_check,
    check_cpl,
    circular_tw_bound,
    cpl_model,
    distance_check,
    host_layered_decomposition,
    ltw_transfer,
    pipeline_report,
    radius_tw_bound,
    weak_shallow_from_cpl,
)
from bpk.treewidth import default_cap

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3
SUITES = ("walks", "cpl", "distance", "ltw")
BENCH_COLUMNS = (
    "instance",
    "seed",
    "n",
    "edges",
    "crossings",
    "k",
    "c",
    "s",
    "m",
    "t",
    "r",
    "max_walk_distance",
    "host_layered_width",
    "layered_width",
    "tw_upper",
    "walks",
    "cpl",
    "distance",
    "ltw",
    "ok",
)


class Failed(Exception):
    """A checked inequality failed; carries the witness."""

    def __init__(self, message: str, witness: Any) -> None:
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _cap(args: argparse.Namespace) -> int | None:
    return args.cap_tw


def _parse_value(raw: str) -> Any:
    for conv in (int, float):
        try:
            return conv(raw)
        except ValueError:
            pass
    return raw


def _family_params(extra: Sequence[str]) -> dict[str, Any]:
    params: dict[str, Any] = {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--"):
            raise InvalidInput(f"unexpected argument {tok!r}")
        key, eq, val = tok[2:].partition("=")
        if not eq:
            val = next(it, None)
            if val is None:
                raise InvalidInput(f"missing value for --{key}")
        params[key.replace("-", "_")] = _parse_value(val)
    return params


def _colouring(d: TopologicalDrawing, args: argparse.Namespace) -> tuple[TransparentColouring, StarForestCover]:
    """Colouring from ``--colours`` if given, else by ``--method``."""
    path = getattr(args, "colours", None)
    if path:
        phi, cover = io.colouring_from_json(io.read_json(path), d.m)
        problems = verify_transparent(d, phi)
        if problems:
            raise InvalidInput(f"colouring is not transparent: {problems[0]}")
        if cover is None:
            cover = star_forest_cover(d, phi)
        else:
            check_cover(d, phi, cover)
        return phi, cover
    if getattr(args, "method", "product") == "greedy":
        phi = greedy_transparent(d)
        return phi, star_forest_cover(d, phi)
    return product_transparent(d)


def _emit(args: argparse.Namespace, text: str) -> None:
    io.write_text(getattr(args, "out", None), text)


def _witness_path(args: argparse.Namespace) -> str:
    if getattr(args, "witness", None):
        return args.witness
    src = getattr(args, "file", "-")
    return "bpk-witness.json" if src == "-" else str(Path(src).with_suffix("")) + ".witness.json"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace, extra: Sequence[str]) -> int:
    params = _family_params(extra)
    fn = FAMILIES.get(args.family)
    if fn is not None and "seed" in fn.__code__.co_varnames[: fn.__code__.co_argcount] and "seed" not in params:
        params["seed"] = 0 if args.seed is None else args.seed
    d = gen_family(args.family, **params)
    _emit(args, io.dumps(io.drawing_to_json(d)))
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    d = io.load_drawing(args.file)
    prof = drawing_profile(d)
    out: dict[str, Any] = {"n": d.n, "edges": d.m, "matching_k": prof.matching_k}
    if args.profile:
        out.update(prof.as_dict())
    if args.k is not None:
        out["k"] = args.k
        out["within"] = prof.matching_k <= args.k
    _emit(args, io.dumps(out))
    if args.k is not None and prof.matching_k > args.k:
        raise Failed(
            f"matching planarity {prof.matching_k} exceeds {args.k}",
            {"check": "matching_k", "value": prof.matching_k, "k": args.k},
        )
    return EXIT_OK


def cmd_colour(args: argparse.Namespace) -> int:
    d = io.load_drawing(args.file)
    phi, cover = _colouring(d, args)
    sidecar = io.dumps(io.colouring_to_json(phi, cover if args.method == "product" else None))
    if args.out and args.out != "-":
        io.write_text(args.out, sidecar)
        sys.stdout.write(io.dumps({"c": phi.c, "s": cover.s, "method": args.method, "out": args.out}))
    else:
        sys.stdout.write(sidecar)
        sys.stderr.write(json.dumps({"c": phi.c, "s": cover.s, "method": args.method}) + "\n")
    return EXIT_OK


def cmd_planarise(args: argparse.Namespace) -> int:
    d = io.load_drawing(args.file)
    if args.colours is None and args.format != "json" and not args.coloured:
        g = planarise(d).graph
        labels = None
    else:
        phi, _ = _colouring(d, args)
        cp = coloured_planarisation(d, phi)
        if args.format == "json":
            _emit(args, io.dumps(io.planarisation_sidecar(cp.planarisation, cp)))
            return EXIT_OK
        g = cp.graph
        labels = {x: (str(x) if x < d.n else f"{x} L{cp.level[x]}") for x in range(g.n)}
    if args.format == "dot":
        _emit(args, io.graph_to_dot(g, labels))
    else:
        attrs = {"label": labels} if labels else None
        _emit(args, io.graph_to_graphml(g, attrs))
    return EXIT_OK


def cmd_model(args: argparse.Namespace) -> int:
    d = io.load_drawing(args.file)
    phi, cover = _colouring(d, args)
    cp = coloured_planarisation(d, phi)
    model = cpl_model(cp, cover)
    rep = check_cpl(model, cp)
    out = {
        "c": model.c,
        "s": model.s,
        "m": model.m,
        "t": model.t,
        "bound": model.bound,
        "host": {"n": model.host.n, "edges": model.host.m},
        "branch_sets": [[list(model.split(h)) for h in sorted(bs)] for bs in model.mu.branch],
        "ok": rep.ok,
    }
    _emit(args, io.dumps(out))
    if not rep.ok:
        raise Failed("model check failed", {"model": rep.model_problems, "property_c": rep.property_c})
    return EXIT_OK


def run_suites(
    d: TopologicalDrawing,
    phi: TransparentColouring,
    cover: StarForestCover,
    suites: Sequence[str],
    cap: int | None = None,
) -> dict[str, dict]:
    """Run the named verification suites; each result has ``ok`` and ``witness``."""
    cp = coloured_planarisation(d, phi)
    out: dict[str, dict] = {}
    if "walks" in suites:
        w = verify_walk_lemmas(cp)
        out["walks"] = {
            "ok": w.ok,
            "max_distance_to_original": w.max_distance_to_original,
            "witness": {k: v[:5] for k, v in w.witnesses.items() if v},
        }
    model = None
    if "cpl" in suites or "ltw" in suites:
        model = cpl_model(cp, cover)
    if "cpl" in suites:
        rep = check_cpl(model, cp)
        out["cpl"] = {
            "ok": rep.ok,
            "t": rep.t,
            "bound": rep.bound,
            "s": rep.s,
            "m": rep.m,
            "witness": {"model": rep.model_problems[:5], "property_c": rep.property_c[:5]} if not rep.ok else {},
        }
    k_lower = measure_k_lower(cp) if ("distance" in suites or "ltw" in suites) else 0
    if "distance" in suites:
        dist = base_case_check(cp) if k_lower == 0 else distance_check(cp, k_lower)
        out["distance"] = {
            "ok": dist.ok,
            "k": dist.k,
            "max_observed": dist.max_observed,
            "bound": dist.bound,
            "witness": dist.edge_violations[:5],
        }
    if "ltw" in suites:
        wsm = weak_shallow_from_cpl(model, cp, k_lower)
        host_ld, exact = host_layered_decomposition(cp, model.t, cap)
        host_problems = validate_layered_decomposition(model.host, host_ld)
        g_ld = ltw_transfer(model.host, host_ld, wsm, d.base)
        g_problems = validate_layered_decomposition(d.base, g_ld)
        limit = (4 * wsm.r + 1) * host_ld.layered_width
        out["ltw"] = {
            "ok": not host_problems and not g_problems and g_ld.layered_width <= limit,
            "r": wsm.r,
            "host_layered_width": host_ld.layered_width,
            "host_tw_exact": exact,
            "layered_width": g_ld.layered_width,
            "tw_upper": g_ld.decomposition.width,
            "bound": limit,
            "witness": {"host": host_problems[:5], "transferred": g_problems[:5]} if host_problems or g_problems else {},
        }
    return out


def cmd_verify(args: argparse.Namespace) -> int:
    d = io.load_drawing(args.file)
    phi, cover = _colouring(d, args)
    suites = SUITES if args.suite == "all" else (args.suite,)
    res = run_suites(d, phi, cover, suites, _cap(args))
    ok = all(r["ok"] for r in res.values())
    _emit(args, io.dumps({"c": phi.c, "s": cover.s, "suites": res, "ok": ok}))
    if not ok:
        raise Failed(
            "verification failed: " + ", ".join(k for k, r in res.items() if not r["ok"]),
            {k: r["witness"] for k, r in res.items() if not r["ok"]},
        )
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    d = io.load_drawing(args.file)
    name = args.file
    if args.circular:
        phi, cover = _colouring(d, args)
        rep = circular_tw_bound(d, phi, cover, cap=_cap(args))
    elif args.radius:
        phi, cover = _colouring(d, args)
        root = args.root if args.root is not None else max(range(d.n), key=lambda v: (d.base.degree(v), -v))
        rep = radius_tw_bound(d, phi, bfs_tree(d.base, root), cover, cap=_cap(args))
    elif args.colours or args.method == "greedy":
        phi, cover = _colouring(d, args)
        rep = pipeline_report(d, cap=_cap(args), instance=name, phi=phi, cover=cover)
    else:
        rep = pipeline_report(d, cap=_cap(args), instance=name)
    rep.instance = name
    if rep.kind != "pipeline" and rep.measured.get("tw") is None:
        raise CapExceeded(d.n, default_cap() if _cap(args) is None else _cap(args))
    text = rep.table() + "\n" if args.format == "table" else io.dumps(rep.as_dict())
    _emit(args, text)
    if not rep.ok:
        raise Failed(f"{rep.kind} bound check failed", {"checks": rep.checks, "witness": rep.witness})
    return EXIT_OK


# ---------------------------------------------------------------------------
# Batch benchmarking
# ---------------------------------------------------------------------------


def load_manifest(path: str) -> dict:
    """``{seed, cap_tw, instances: [{name, family, params} | {name, path}]}``."""
    obj = io.read_json(path)
    if not isinstance(obj, dict) or not isinstance(obj.get("instances"), list):
        raise InvalidInput("manifest needs an 'instances' list")
    base = Path(path).parent if path != "-" else Path(".")
    for i, inst in enumerate(obj["instances"]):
        if not isinstance(inst, dict) or ("family" in inst) == ("path" in inst):
            raise InvalidInput(f"manifest instance {i} needs exactly one of 'family' or 'path'")
        if "family" in inst and inst["family"] not in FAMILIES:
            raise InvalidInput(f"manifest instance {i}: unknown family {inst['family']!r}")
        if "path" in inst:
            inst["path"] = str(base / inst["path"])
        for s in inst.get("suites", SUITES):
            if s not in SUITES:
                raise InvalidInput(f"manifest instance {i}: unknown suite {s!r}")
        inst.setdefault("name", inst.get("family", Path(inst.get("path", "")).stem) + f"_{i}")
    return obj


def _instance_seed(master: int, index: int) -> int:
    return random.Random(f"{master}:{index}").getrandbits(63)


def bench_row(job: tuple[dict, int, int | None]) -> dict:
    inst, seed, cap = job
    if "family" in inst:
        params = dict(inst.get("params", {}))
        fn = FAMILIES[inst["family"]]
        if "seed" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
            params.setdefault("seed", seed)
        d = gen_family(inst["family"], **params)
    else:
        d = io.load_drawing(inst["path"])
    if inst.get("method") == "greedy":
        phi = greedy_transparent(d)
        cover = star_forest_cover(d, phi)
    elif inst.get("method") == "family" and "family" in inst:
        hand = family_colouring(inst["family"], d, **inst.get("params", {}))
        phi = TransparentColouring.from_mapping(d.m, hand) if hand else greedy_transparent(d)
        cover = star_forest_cover(d, phi)
    else:
        phi, cover = product_transparent(d)
    suites = tuple(inst.get("suites", SUITES))
    res = run_suites(d, phi, cover, SUITES, cap)
    row = {
        "instance": inst["name"],
        "seed": seed,
        "n": d.n,
        "edges": d.m,
        "crossings": len(d.crossings),
        "k": drawing_profile(d).matching_k,
        "c": phi.c,
        "s": cover.s,
        "m": res["cpl"]["m"],
        "t": res["cpl"]["t"],
        "r": res["ltw"]["r"],
        "max_walk_distance": res["distance"]["max_observed"],
        "host_layered_width": res["ltw"]["host_layered_width"],
        "layered_width": res["ltw"]["layered_width"],
        "tw_upper": res["ltw"]["tw_upper"],
    }
    for s in SUITES:
        row[s] = ("pass" if res[s]["ok"] else "FAIL") if s in suites else "skip"
    row["ok"] = all(res[s]["ok"] for s in suites)
    row["_witness"] = {s: res[s]["witness"] for s in suites if not res[s]["ok"]}
    return row


def run_bench(manifest: dict, seed: int | None = None, cap: int | None = None, jobs: int = 1) -> tuple[str, list[dict]]:
    """CSV text and rows for a manifest; deterministic for a fixed seed."""
    master = int(manifest.get("seed", 0) if seed is None else seed)
    cap = manifest.get("cap_tw") if cap is None else cap
    work = [
        (inst, int(inst["seed"]) if "seed" in inst else _instance_seed(master, i), cap)
        for i, inst in enumerate(manifest["instances"])
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(bench_row, work))
    else:
        rows = [bench_row(w) for w in work]
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (str(v).lower() if isinstance(v, bool) else v) for k, v in row.items()})
    return buf.getvalue(), rows


def cmd_bench(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    text, rows = run_bench(manifest, args.seed, _cap(args), args.jobs)
    _emit(args, text)
    failed = [r for r in rows if not r["ok"]]
    if failed:
        raise Failed(
            f"{len(failed)} instance(s) failed",
            {r["instance"]: r["_witness"] for r in failed},
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-tw", type=int, default=None, help="exact treewidth cap (env BPK_CAP_TW)")
    common.add_argument("--seed", type=int, default=None, help="64-bit seed for randomised steps")
    common.add_argument("--out", default=None, help="output path ('-' for stdout)")
    common.add_argument("--witness", default=None, help="where to write the witness on failure")

    colours = argparse.ArgumentParser(add_help=False)
    colours.add_argument("--colours", default=None, help="colouring sidecar to use")
    colours.add_argument("--method", choices=("greedy", "product"), default="product")

    p = argparse.ArgumentParser(prog="bpk", description="Matching-planar drawing toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], allow_abbrev=False, help="generate a drawing family")
    g.add_argument("family", choices=sorted(FAMILIES))

    c = sub.add_parser("check", parents=[common], help="recognise drawing parameters")
    c.add_argument("file")
    c.add_argument("--k", type=int, default=None, help="fail when matching planarity exceeds K")
    c.add_argument("--profile", action="store_true", help="print every parameter")

    col = sub.add_parser("colour", parents=[common, colours], help="transparent edge colouring")
    col.add_argument("file")

    pl = sub.add_parser("planarise", parents=[common, colours], help="planarisation or coloured planarisation")
    pl.add_argument("file")
    pl.add_argument("--coloured", action="store_true", help="contract sections")
    pl.add_argument("--format", choices=("json", "dot", "graphml"), default="json")

    m = sub.add_parser("model", parents=[common, colours], help="minor model in the strong product")
    m.add_argument("file")

    v = sub.add_parser("verify", parents=[common, colours], help="run verification suites")
    v.add_argument("file")
    v.add_argument("--suite", choices=(*SUITES, "all"), default="all")

    b = sub.add_parser("bounds", parents=[common, colours], help="treewidth bound reports")
    b.add_argument("file")
    kind = b.add_mutually_exclusive_group()
    kind.add_argument("--circular", action="store_true")
    kind.add_argument("--radius", action="store_true")
    b.add_argument("--root", type=int, default=None, help="BFS root for --radius")
    b.add_argument("--format", choices=("json", "table"), default="json")

    bench = sub.add_parser("bench", parents=[common], help="batch run over a manifest, CSV out")
    bench.add_argument("manifest")
    bench.add_argument("--jobs", type=int, default=1)
    return p


def _error(kind: str, message: str, **extra: Any) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message, **extra}) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args, extra = parser.parse_known_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    if extra and args.command != "gen":
        _error("InvalidInput", f"unrecognised arguments: {' '.join(extra)}")
        return EXIT_INVALID
    handlers = {
        "check": cmd_check,
        "colour": cmd_colour,
        "planarise": cmd_planarise,
        "model": cmd_model,
        "verify": cmd_verify,
        "bounds": cmd_bounds,
        "bench": cmd_bench,
    }
    try:
        if args.command == "gen":
            return cmd_gen(args, extra)
        return handlers[args.command](args)
    except Failed as exc:
        path = _witness_path(args)
        Path(path).write_text(io.dumps(exc.witness))
        _error("CheckFailed", str(exc), witness=path)
        return EXIT_FAILED
    except CapExceeded as exc:
        _error("CapExceeded", str(exc))
        return EXIT_CAP
    except BpkError as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
