"""Exact V/H conversions for small polytopes (dimension <= 4).

Facets are found by brute-force support tests over point subsets and
vertices by intersecting halfspace boundaries; at the configured desk
scale (<= 64 facets) this is fast and entirely rational, so converted
representations are exact, not approximations.
"""

from __future__ import annotations

import functools
import itertools
from typing import Optional, Sequence

from . import config
from .errors import DegenerateInputError, DimensionError, ResourceCapError
from .linalg import Hyperplane, Vec, affine_rank, cross2, nullspace, solve_linear
from .scalars import Rat, sign


def _check_dim(d: int) -> None:
    if d < 2:
        raise DimensionError("polytope machinery needs dimension >= 2")
    if d > config.max_dim():
        raise ResourceCapError(f"dimension {d} exceeds cap {config.max_dim()}")


def facet_hyperplanes(points: Sequence[Vec]) -> list[Hyperplane]:
    """Outward facet hyperplanes of conv(points): each returned (a, b)
    satisfies <a, x> <= b on the hull with equality on a facet."""
    pts = list(dict.fromkeys(points))
    d = pts[0].dim
    _check_dim(d)
    if affine_rank(pts) != d:
        raise DegenerateInputError("point set is not full-dimensional")
    found = {}
    for combo in itertools.combinations(pts, d):
        rows = [[*p.coords, -1] for p in combo]
        basis = nullspace(rows)
        if len(basis) != 1:
            continue  # affinely dependent subset
        coeffs = basis[0]
        normal = Vec(coeffs[:d])
        offset = coeffs[d]
        side = 0
        support = True
        for p in pts:
            s = sign(normal.dot(p) - offset)
            if s == 0:
                continue
            if side == 0:
                side = s
            elif s != side:
                support = False
                break
        if not support or side == 0:
            continue
        h = Hyperplane(normal, offset) if side < 0 else Hyperplane(-normal, -offset)
        found[h.canonical()] = h
        if len(found) > config.max_facets():
            raise ResourceCapError(
                f"facet count exceeds cap {config.max_facets()}"
            )
    return list(found.values())


def vertex_enumerate(halfspaces: Sequence[Hyperplane]) -> list[Vec]:
    """Vertices of {x : <a_i, x> <= b_i for all i}; the intersection must
    be bounded for the result to describe it."""
    hs = list(halfspaces)
    if not hs:
        raise DegenerateInputError("no halfspaces")
    d = hs[0].dim
    _check_dim(d)
    if len(hs) > config.max_facets():
        raise ResourceCapError(f"{len(hs)} halfspaces exceed cap {config.max_facets()}")
    seen = {}
    for combo in itertools.combinations(hs, d):
        rows = [list(h.normal.coords) for h in combo]
        rhs = [h.offset for h in combo]
        sol = solve_linear(rows, rhs)
        if sol.status != "unique":
            continue
        x = Vec(sol.point)
        if all(h.eval(x) <= 0 for h in hs):
            seen[x.coords] = x
    return list(seen.values())


def minimal_halfspaces(halfspaces: Sequence[Hyperplane], vertices: Sequence[Vec]) -> list[Hyperplane]:
    """Drop halfspaces whose boundary does not support a facet (tight at
    fewer than d affinely independent vertices)."""
    d = halfspaces[0].dim
    kept = {}
    for h in halfspaces:
        tight = [v for v in vertices if h.eval(v) == 0]
        if len(tight) >= d and affine_rank(tight) == d - 1:
            kept[h.canonical()] = h
    return list(kept.values())


def contains(halfspaces: Sequence[Hyperplane], p: Vec, strict: bool = False) -> bool:
    if strict:
        return all(h.eval(p) < 0 for h in halfspaces)
    return all(h.eval(p) <= 0 for h in halfspaces)


def _angular_cmp(center: Vec):
    """Exact counterclockwise comparator for points around center."""

    def half(u: Vec) -> int:
        # 0 for angle in [0, pi), 1 for [pi, 2pi)
        if u[1] > 0 or (u[1] == 0 and u[0] > 0):
            return 0
        return 1

    def cmp(a: Vec, b: Vec) -> int:
        ua, ub = a - center, b - center
        ha, hb = half(ua), half(ub)
        if ha != hb:
            return -1 if ha < hb else 1
        c = cross2(ua, ub)
        if c > 0:
            return -1
        if c < 0:
            return 1
        return 0

    return cmp


def polygon_order(vertices: Sequence[Vec]) -> list[Vec]:
    """Vertices of a planar convex polygon in counterclockwise order,
    starting from an arbitrary but deterministic vertex."""
    pts = list(vertices)
    if not pts or pts[0].dim != 2:
        raise DimensionError("polygon_order needs planar points")
    n = Rat(len(pts)) if pts[0].mode == "exact" else float(len(pts))
    center = Vec((sum(p[0] for p in pts) / n, sum(p[1] for p in pts) / n))
    ordered = sorted(pts, key=functools.cmp_to_key(_angular_cmp(center)))
    start = min(range(len(ordered)), key=lambda i: ordered[i].key())
    return ordered[start:] + ordered[:start]


def polygon_edges(vertices: Sequence[Vec]) -> list[tuple[Vec, Vec]]:
    """Consecutive vertex pairs of the convex polygon (ccw order)."""
    ordered = polygon_order(vertices)
    return [(ordered[i], ordered[(i + 1) % len(ordered)]) for i in range(len(ordered))]


def convex_hull_2d(points: Sequence[Vec]) -> list[Vec]:
    """Extreme points of a planar point set in counterclockwise order
    (monotone chain); collinear interior points are dropped.  Unlike
    polygon_order this accepts interior points, so it is safe on
    projections of higher-dimensional vertex sets."""
    pts = sorted(dict.fromkeys(points), key=lambda p: (p.key()))
    if pts and pts[0].dim != 2:
        raise DimensionError("convex_hull_2d needs planar points")
    if len(pts) <= 2:
        return pts

    def build(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross2(out[-1] - out[-2], p - out[-2]) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = build(pts)
    upper = build(reversed(pts))
    return lower[:-1] + upper[:-1]
