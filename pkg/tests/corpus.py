"""Seeded random corpora: diagram terms and embedded planar graphs."""

from __future__ import annotations

import math
import random

from planarw.graphform import WeightedPlaneGraph
from planarw.terms import (
    TermDiagram,
    black,
    bra1,
    cap,
    compose,
    cup,
    fswap,
    identity,
    ket1,
    scalar,
    tensor,
    white,
)


def _rand_weight(rng: random.Random, allow_zero: bool = True) -> complex:
    r = rng.random()
    if allow_zero and r < 0.05:
        return 0.0
    if r < 0.25:
        return float(rng.choice([1, -1, 2, -2]))
    return complex(rng.uniform(-2, 2), rng.uniform(-2, 2))


def random_row(rng: random.Random, n_in: int, max_wires: int) -> TermDiagram | None:
    """A random row consuming exactly ``n_in`` wires, within the width cap."""
    gens = []
    remaining = n_in
    produced = 0
    while remaining > 0:
        budget = max_wires - produced - (remaining - 2)
        opts: list[str] = ["white", "black1", "bra1", "id1"]
        if remaining >= 2:
            opts += ["cup", "cup", "black2"]
            if budget >= 2:
                opts += ["fswap"]
        if produced + remaining < max_wires and rng.random() < 0.25:
            opts += ["cap", "ket1", "black0", "scalar"]
        kind = rng.choice(opts)
        if kind == "white":
            gens.append(white(_rand_weight(rng)))
            remaining -= 1
            produced += 1
        elif kind == "id1":
            gens.append(identity(1))
            remaining -= 1
            produced += 1
        elif kind == "black1":
            m = rng.randint(0, min(3, max_wires - produced))
            gens.append(black(1, m))
            remaining -= 1
            produced += m
        elif kind == "bra1":
            gens.append(bra1())
            remaining -= 1
        elif kind == "cup":
            gens.append(cup())
            remaining -= 2
        elif kind == "fswap":
            gens.append(fswap())
            remaining -= 2
            produced += 2
        elif kind == "black2":
            m = rng.randint(0, min(2, max(0, max_wires - produced)))
            gens.append(black(2, m))
            remaining -= 2
            produced += m
        elif kind == "cap":
            gens.append(cap())
            produced += 2
        elif kind == "ket1":
            gens.append(ket1())
            produced += 1
        elif kind == "black0":
            m = rng.randint(0, min(2, max_wires - produced))
            gens.append(black(0, m))
            produced += m
        elif kind == "scalar":
            gens.append(scalar(_rand_weight(rng, allow_zero=False)))
    if n_in == 0:
        choices = ["cap", "ket1", "black0", "scalar"]
        kind = rng.choice(choices)
        if kind == "cap":
            gens.append(cap())
        elif kind == "ket1":
            gens.append(ket1())
        elif kind == "black0":
            gens.append(black(0, rng.randint(0, min(3, max_wires))))
        else:
            gens.append(scalar(_rand_weight(rng, allow_zero=False)))
    if not gens:
        return None
    row = gens[0]
    for g in gens[1:]:
        row = tensor(row, g)
    return row


def random_term(
    rng: random.Random,
    max_wires: int = 8,
    max_rows: int = 6,
    n_inputs: int | None = None,
    force_scalar: bool = False,
) -> TermDiagram:
    """A random well-typed term; scalar (0->0) if ``force_scalar``."""
    if n_inputs is None:
        n_inputs = 0 if force_scalar else rng.randint(0, max(0, max_wires - 2))
    d: TermDiagram = identity(n_inputs)
    rows = rng.randint(1, max_rows)
    for _ in range(rows):
        row = random_row(rng, d.n_outputs, max_wires)
        if row is None:
            continue
        d = compose(d, row)
    if force_scalar:
        while d.n_outputs > 0:
            row = _closing_row(rng, d.n_outputs)
            d = compose(d, row)
    return d


def _closing_row(rng: random.Random, n: int) -> TermDiagram:
    gens = []
    remaining = n
    while remaining > 0:
        if remaining >= 2 and rng.random() < 0.6:
            gens.append(cup())
            remaining -= 2
        else:
            gens.append(bra1() if rng.random() < 0.5 else black(1, 0))
            remaining -= 1
    row = gens[0]
    for g in gens[1:]:
        row = tensor(row, g)
    return row


def random_scalar_term(rng: random.Random, max_wires: int = 8, max_rows: int = 5) -> TermDiagram:
    return random_term(rng, max_wires=max_wires, max_rows=max_rows, n_inputs=0, force_scalar=True)


# ---------------------------------------------------------------------------
# random embedded planar graphs (geometric construction)


def _segments_cross(p1, p2, p3, p4) -> bool:
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return 0 if abs(v) < 1e-12 else (1 if v > 0 else -1)

    if len({p1, p2, p3, p4}) < 4:
        return False  # shared endpoints do not count as crossings
    o1, o2 = orient(p1, p2, p3), orient(p1, p2, p4)
    o3, o4 = orient(p3, p4, p1), orient(p3, p4, p2)
    return o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4)


def random_planar_graph(
    rng: random.Random,
    n: int,
    extra_edges: int | None = None,
    complex_weights: bool = True,
) -> WeightedPlaneGraph:
    """Random plane graph from random points with non-crossing edges.

    The rotation system comes from angular order around each vertex, so
    the combinatorial map matches the straight-line drawing.
    """
    pts = {}
    v = 1
    while v <= n:
        p = (rng.uniform(0, 1), rng.uniform(0, 1))
        if all(math.dist(p, q) > 0.05 for q in pts.values()):
            pts[v] = p
            v += 1
    candidates = [(u, w) for u in range(1, n + 1) for w in range(u + 1, n + 1)]
    candidates.sort(key=lambda e: math.dist(pts[e[0]], pts[e[1]]))
    if extra_edges is None:
        extra_edges = rng.randint(n // 2, 2 * n)
    chosen: list[tuple[int, int]] = []
    for (u, w) in candidates:
        if len(chosen) >= extra_edges:
            break
        if any(
            _segments_cross(pts[u], pts[w], pts[a], pts[b]) for (a, b) in chosen
        ):
            continue
        chosen.append((u, w))

    endpoints = {}
    weights = {}
    for i, (u, w) in enumerate(chosen, start=1):
        endpoints[i] = (u, w)
        if complex_weights:
            weights[i] = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        else:
            weights[i] = 1.0
    rotation = {u: [] for u in range(1, n + 1)}
    for u in range(1, n + 1):
        incident = []
        for eid, (a, b) in endpoints.items():
            if a == u:
                incident.append(((eid, 0), pts[b]))
            if b == u:
                incident.append(((eid, 1), pts[a]))
        incident.sort(
            key=lambda item: math.atan2(item[1][1] - pts[u][1], item[1][0] - pts[u][0])
        )
        rotation[u] = [he for he, _ in incident]
    g = WeightedPlaneGraph(
        n=n,
        endpoints=endpoints,
        weights=weights,
        rotation=rotation,
        outer=(1, 0) if endpoints else None,
    )
    g.check_rotation()
    return g


def grid_graph(rows: int, cols: int) -> WeightedPlaneGraph:
    """Unit-weight grid with the obvious embedding."""
    def vid(r, c):
        return r * cols + c + 1

    endpoints = {}
    weights = {}
    eid = 0
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                eid += 1
                endpoints[eid] = (vid(r, c), vid(r, c + 1))
                weights[eid] = 1.0
            if r + 1 < rows:
                eid += 1
                endpoints[eid] = (vid(r, c), vid(r + 1, c))
                weights[eid] = 1.0
    pts = {vid(r, c): (float(c), float(r)) for r in range(rows) for c in range(cols)}
    rotation = {}
    for u in pts:
        incident = []
        for e, (a, b) in endpoints.items():
            if a == u:
                incident.append(((e, 0), pts[b]))
            if b == u:
                incident.append(((e, 1), pts[a]))
        incident.sort(
            key=lambda item: math.atan2(item[1][1] - pts[u][1], item[1][0] - pts[u][0])
        )
        rotation[u] = [he for he, _ in incident]
    g = WeightedPlaneGraph(
        n=rows * cols,
        endpoints=endpoints,
        weights=weights,
        rotation=rotation,
        outer=(1, 0) if endpoints else None,
    )
    g.check_rotation()
    return g


def kasteleyn_grid_count(m: int, n: int) -> int:
    """Closed-form product formula for perfect matchings of an m x n grid."""
    prod = 1.0
    for j in range(1, m // 2 + (m % 2) + 1):
        for k in range(1, n // 2 + (n % 2) + 1):
            term = 4 * math.cos(math.pi * j / (m + 1)) ** 2 + 4 * math.cos(
                math.pi * k / (n + 1)
            ) ** 2
            prod *= term
    return round(prod) if (m * n) % 2 == 0 else 0
