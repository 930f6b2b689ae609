"""Shared instance corpus for the property batteries."""

from __future__ import annotations

from functools import lru_cache

from bpk.drawing import TopologicalDrawing
from bpk.errors import BadParams
from bpk.families import gen_family


def _fixed() -> list[tuple[str, dict]]:
    out: list[tuple[str, dict]] = []
    out += [("crossing_stars", {"n": n}) for n in range(1, 7)]
    out += [("k3n", {"n": n}) for n in range(1, 9)]
    out += [("k2k2n", {"k": k, "n": n}) for k in (0, 1, 2) for n in (2, 3, 4)]
    out += [("circular_complete_bipartite", {"a": a, "b": b}) for a in (1, 2, 3) for b in (2, 3, 4, 5)]
    out += [("grid_apex", {"n": n}) for n in (2, 3, 4)]
    out += [("planar_grid", {"n": n}) for n in (2, 3, 4)]
    out += [("circular_fan", {"n": n}) for n in (3, 5, 8)]
    out += [("crossing_fan", {"t": t}) for t in (1, 2, 3, 4)]
    return out


def _random() -> list[tuple[str, dict]]:
    out: list[tuple[str, dict]] = []
    for seed in range(70):
        out.append(("random_circular", {"n": 6 + seed % 9, "p": 0.25 + 0.05 * (seed % 6), "seed": seed}))
    for seed in range(50):
        out.append(("random_segments", {"n": 6 + seed % 7, "m": 8 + seed % 9, "seed": seed}))
    for seed in range(40):
        out.append(("random_polylines", {"n": 6 + seed % 5, "m": 7 + seed % 7, "bends": 1 + seed % 3, "seed": seed}))
    return out


@lru_cache(maxsize=1)
def corpus() -> tuple[tuple[str, TopologicalDrawing], ...]:
    """Every built-in family at several sizes plus seeded random drawings."""
    out = []
    for name, params in _fixed() + _random():
        try:
            d = gen_family(name, **params)
        except BadParams:
            continue
        label = name + "(" + ",".join(f"{k}={v}" for k, v in params.items()) + ")"
        out.append((label, d))
    return tuple(out)


@lru_cache(maxsize=1)
def circular_corpus() -> tuple[tuple[str, TopologicalDrawing], ...]:
    out = []
    for seed in range(60):
        n = 5 + seed % 12
        p = 0.2 + 0.1 * (seed % 5)
        d = gen_family("random_circular", n=n, p=p, seed=1000 + seed)
        out.append((f"random_circular(n={n},p={p:.1f},seed={1000 + seed})", d))
    return tuple(out)
