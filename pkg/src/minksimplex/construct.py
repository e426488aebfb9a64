"""Inscribed simplices whose centroid sits at the ball center.

The builder places d+1 vertices on the unit sphere one chord at a
time.  At each step it tracks the centroid the remaining vertices must
average to and an affine section (origin plus frame) the remaining
vertices are confined to.  Placing a vertex P at target centroid g
moves the target to g + (g - P)/(l - 1) for the l - 1 vertices left,
which stays strictly inside the ball because it lies between g and the
far chord endpoint.  Dropping the used chord direction from the frame
keeps every placed vertex off the affine span of the later ones, which
is what makes the final simplex nondegenerate.

The last three vertices need care.  The third-to-last chord must avoid
the ratio gauge(Q - g) = 2 gauge(P - g); otherwise the final target
would be the midpoint of that same chord and the closing chord would
reuse P.  The last two vertices come from a chord bisected by the
target: exact edge-pair solving on the section polygon for polytopal
balls, an angular bisection on the chord-overshoot function for smooth
ones (the overshoot is odd under direction reversal, so a sign change
is always available).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

from .errors import (
    DegenerateInputError,
    NonConvergenceError,
    VerificationError,
)
from .linalg import Hyperplane, Vec, solve_linear, unit_vec, zero_vec
from .norms import Ball, PolytopeBall, UnitBall, chord_through
from .polytopes import polygon_edges, polygon_order, vertex_enumerate
from .scalars import EXACT, Rat
from .simplex import Simplex


@dataclass(frozen=True)
class ChordPick:
    level: int  # how many vertices remained before this pick
    vertex: Vec
    far_end: Vec
    direction: Vec
    target_before: Vec
    target_after: Vec


@dataclass(frozen=True)
class Construction:
    simplex: Simplex
    ball: UnitBall
    picks: tuple
    closing_chord: tuple  # the two vertices from the bisected chord
    mode: str


def _frame_coords(frame, w: Vec):
    rows = [[f[i] for f in frame] for i in range(len(w))]
    sol = solve_linear(rows, list(w.coords))
    if sol.status != "unique":
        raise VerificationError("chord direction left the section span")
    return sol.point


def _drop_direction(frame, w: Vec):
    """Remove one frame vector so the rest spans a complement of w."""
    coords = _frame_coords(frame, w)
    if all(c == 0 for c in coords):
        raise VerificationError("zero chord direction")
    if w.mode == EXACT:
        j = next(k for k, c in enumerate(coords) if c != 0)
    else:
        j = max(range(len(coords)), key=lambda k: abs(float(coords[k])))
    return [f for k, f in enumerate(frame) if k != j]


def _closer_endpoint(g: Vec, w: Vec, bwd, fwd):
    """Endpoints of the chord g + t w, t in [bwd, fwd]; returns
    (P, Q, p_scale, q_scale) with P no farther from g than Q."""
    p_fwd = g + fwd * w
    p_bwd = g + bwd * w
    near_fwd = fwd <= -bwd
    if fwd == -bwd and p_bwd.key() < p_fwd.key():
        near_fwd = False
    if near_fwd:
        return p_fwd, p_bwd, fwd, -bwd
    return p_bwd, p_fwd, -bwd, fwd


def _sweep_directions(frame):
    """Deterministic direction list spanning many chord slopes through
    the two frame vectors."""
    v1, v2 = frame
    out = [v1, v2]
    for n in range(1, 16):
        for a in range(-n, n + 1):
            if math.gcd(abs(a), n) != 1:
                continue
            out.append(a * v1 + n * v2)
            out.append(n * v1 + a * v2)
    return out


def _seeded_direction(frame, rng: random.Random) -> Vec:
    """Nonzero integer combination of the frame vectors, so the chord
    stays inside the current section."""
    while True:
        cs = [rng.randint(-3, 3) for _ in frame]
        if any(cs):
            break
    w = cs[0] * frame[0]
    for c, f in zip(cs[1:], frame[1:]):
        w = w + c * f
    return w


def bisected_chord(ball: UnitBall, origin: Vec, frame) -> tuple:
    """Chord of the unit sphere lying in origin + span(frame) (a
    2-plane) whose midpoint is origin.  Returns its endpoints."""
    if len(frame) != 2:
        raise DegenerateInputError("bisected chords live in a 2-plane")
    if ball.mode == EXACT:
        return _bisected_chord_exact(ball, origin, frame)
    return _bisected_chord_smooth(ball, origin, frame)


def _bisected_chord_exact(ball: PolytopeBall, origin: Vec, frame) -> tuple:
    v1, v2 = frame
    halves = []
    for n in ball.normals:
        c1, c2 = n.dot(v1), n.dot(v2)
        rhs = 1 - n.dot(origin)
        if c1 == 0 and c2 == 0:
            if rhs <= 0:
                raise DegenerateInputError("section origin not interior")
            continue
        halves.append(Hyperplane(Vec((c1, c2)), rhs))
    verts = vertex_enumerate(halves)
    if len(verts) < 3:
        raise VerificationError("section polygon collapsed")
    ordered = polygon_order(verts)
    edges = polygon_edges(ordered)
    n_edges = len(edges)
    for ai in range(n_edges):
        a0, a1 = edges[ai]
        da = a1 - a0
        for bi in range(ai, n_edges):
            if bi == ai:
                continue
            b0, b1 = edges[bi]
            db = b1 - b0
            # solve a0 + s da = -(b0 + t db)
            rows = [[da[0], db[0]], [da[1], db[1]]]
            rhs = [-a0[0] - b0[0], -a0[1] - b0[1]]
            sol = solve_linear(rows, rhs)
            y = None
            if sol.status == "unique":
                s, t = sol.point
                if 0 <= s <= 1 and 0 <= t <= 1:
                    y = a0 + s * da
            elif sol.status == "affine" and sol.dim == 1:
                # parallel edges: the solutions form a segment in the
                # (s, t) square; take its low end deterministically
                base, dirv = sol.point, sol.basis[0]
                tau_lo, tau_hi, consistent = None, None, True
                for k in (0, 1):
                    if dirv[k] == 0:
                        if not (0 <= base[k] <= 1):
                            consistent = False
                            break
                        continue
                    b0 = (0 - base[k]) / dirv[k]
                    b1 = (1 - base[k]) / dirv[k]
                    lo_k, hi_k = (b0, b1) if b0 <= b1 else (b1, b0)
                    tau_lo = lo_k if tau_lo is None else max(tau_lo, lo_k)
                    tau_hi = hi_k if tau_hi is None else min(tau_hi, hi_k)
                if consistent and tau_lo is not None and tau_lo <= tau_hi:
                    s = base[0] + tau_lo * dirv[0]
                    y = a0 + s * da
            if y is None:
                continue
            if y == Vec((Rat(0), Rat(0))):
                continue
            r = origin + y[0] * v1 + y[1] * v2
            s_pt = origin - y[0] * v1 - y[1] * v2
            if ball.gauge(r) != 1 or ball.gauge(s_pt) != 1:
                continue
            return r, s_pt
    raise VerificationError("no bisected chord found on the section polygon")


def _bisected_chord_smooth(ball: UnitBall, origin: Vec, frame) -> tuple:
    v1 = frame[0].to_float()
    v2 = frame[1].to_float()
    o = origin.to_float()
    sphere = Ball(ball, zero_vec(ball.dim).to_float(), 1.0)

    def overshoot(theta: float):
        w = math.cos(theta) * v1 + math.sin(theta) * v2
        bwd, fwd = chord_through(sphere, o, w)
        return fwd + bwd, w, fwd

    lo = 0.0
    f_lo, w_lo, t_lo = overshoot(lo)
    if f_lo == 0.0:
        r = o + t_lo * w_lo
        return r, o - (r - o)
    hi = lo + math.pi
    # overshoot is odd under theta -> theta + pi
    f_hi = -f_lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid, w_mid, t_mid = overshoot(mid)
        if f_mid == 0.0 or hi - lo < 1e-15:
            break
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    f_mid, w_mid, t_mid = overshoot(0.5 * (lo + hi))
    if abs(f_mid) > 1e-9:
        raise NonConvergenceError("bisected chord search stalled")
    r = o + t_mid * w_mid
    s = o - (r - o)
    return r, s


def quasiregular_simplex(
    ball: UnitBall,
    anchor: Optional[Vec] = None,
    seed: Optional[int] = None,
    sweep_cap: int = 64,
) -> Construction:
    """Simplex inscribed in the unit sphere with centroid at the
    center, one vertex at the anchor (a boundary point; defaults to
    the first ball vertex, or the first coordinate direction for
    smooth balls).

    The output is a deterministic function of (ball, anchor, seed).
    Without a seed the chord directions follow a fixed schedule; with
    one they are drawn from a seeded generator while the anchor vertex
    stays where it was prescribed."""
    d = ball.dim
    exact = ball.mode == EXACT
    rng = random.Random(("construct", seed).__repr__()) if seed is not None else None
    origin = zero_vec(d) if exact else zero_vec(d).to_float()
    if anchor is None:
        anchor = ball.vertices[0] if exact else unit_vec(d, 0).to_float()
    else:
        if exact:
            if ball.gauge(anchor) != 1:
                raise DegenerateInputError("anchor must lie on the unit sphere")
        else:
            a = anchor.to_float()
            ga = float(ball.gauge(a))
            if ga <= 0:
                raise DegenerateInputError("anchor must be nonzero")
            anchor = a / ga
    one = Rat(1) if exact else 1.0
    sphere = Ball(ball, origin, one)

    g = origin
    frame = [unit_vec(d, k) if exact else unit_vec(d, k).to_float() for k in range(d)]
    picks: list[ChordPick] = []
    vertices: list[Vec] = []

    for level in range(d + 1, 3, -1):
        if level == d + 1:
            w = anchor
            bwd, fwd = chord_through(sphere, g, w)
            p, q = anchor, g + bwd * w
        else:
            w = frame[0] if rng is None else _seeded_direction(frame, rng)
            bwd, fwd = chord_through(sphere, g, w)
            p, q, _, _ = _closer_endpoint(g, w, bwd, fwd)
        l1 = level - 1
        g_new = g + (g - p) / l1
        picks.append(ChordPick(level, p, q, w, g, g_new))
        vertices.append(p)
        frame = _drop_direction(frame, w)
        g = g_new

    # third-to-last vertex: chord must not put the next target at its
    # own midpoint
    found = None
    if d == 2:
        directions = [anchor]
    else:
        directions = _sweep_directions(frame)[:sweep_cap]
        if rng is not None:
            # seeded candidates first, deterministic sweep as fallback
            directions = [_seeded_direction(frame, rng) for _ in range(32)] + directions
    for w in directions:
        bwd, fwd = chord_through(sphere, g, w)
        if d == 2:
            p, q = anchor, g + bwd * w
            p_scale, q_scale = fwd, -bwd
            gw = ball.gauge(w)
            p_dist, q_dist = p_scale * gw, q_scale * gw
        else:
            p, q, p_scale, q_scale = _closer_endpoint(g, w, bwd, fwd)
            gw = ball.gauge(w)
            p_dist, q_dist = p_scale * gw, q_scale * gw
        if exact:
            ok = 2 * p_dist != q_dist
        else:
            ok = abs(2.0 * float(p_dist) - float(q_dist)) > 1e-9
        if ok:
            found = (p, q, w)
            break
    if found is None:
        raise NonConvergenceError("no usable chord for the third-to-last vertex")
    p, q, w = found
    g_new = g + (g - p) / 2
    picks.append(ChordPick(3, p, q, w, g, g_new))
    vertices.append(p)
    g = g_new

    r, s = bisected_chord(ball, g, frame)
    vertices.extend([r, s])

    try:
        simplex = Simplex(vertices)
    except (DegenerateInputError, ValueError) as exc:
        raise VerificationError(f"constructed vertices degenerate: {exc}")
    _verify_inscribed(ball, simplex, origin)
    return Construction(simplex, ball, tuple(picks), (r, s), ball.mode)


def _verify_inscribed(ball: UnitBall, simplex: Simplex, center: Vec) -> None:
    if ball.mode == EXACT:
        if simplex.centroid != center:
            raise VerificationError("centroid missed the ball center")
        for v in simplex.vertices:
            if ball.gauge(v - center) != 1:
                raise VerificationError("vertex off the unit sphere")
    else:
        c = simplex.centroid.to_float()
        if any(abs(float(x) - float(y)) > 1e-9 for x, y in zip(c.coords, center.coords)):
            raise VerificationError("centroid missed the ball center")
        for v in simplex.vertices:
            if abs(float(ball.gauge(v.to_float() - center)) - 1.0) > 1e-9:
                raise VerificationError("vertex off the unit sphere")


def equilateral_triangle(ball: UnitBall, anchor: Optional[Vec] = None) -> Simplex:
    """Planar triangle with all three side gauges equal to 1: vertices
    0, u, w with u, w unit and gauge(w - u) = 1."""
    if ball.dim != 2:
        raise DegenerateInputError("equilateral construction is planar")
    exact = ball.mode == EXACT
    if anchor is None:
        u = ball.vertices[0] if exact else unit_vec(2, 0).to_float()
    else:
        u = anchor
        if exact:
            if ball.gauge(u) != 1:
                raise DegenerateInputError("anchor must lie on the unit sphere")
        else:
            u = u.to_float()
            u = u / float(ball.gauge(u))
    if exact:
        w = _unit_at_unit_distance_exact(ball, u)
    else:
        w = _unit_at_unit_distance_smooth(ball, u)
    zero = zero_vec(2) if exact else zero_vec(2).to_float()
    tri = Simplex([zero, u, w])
    for a, b in ((0, 1), (0, 2), (1, 2)):
        side = ball.gauge(tri.vertices[b] - tri.vertices[a])
        if exact:
            ok = side == 1
        else:
            ok = abs(float(side) - 1.0) <= 1e-9
        if not ok:
            raise VerificationError("side gauges unequal")
    return tri


def _unit_at_unit_distance_exact(ball: PolytopeBall, u: Vec) -> Vec:
    """Walk the unit polygon's edges solving gauge(w - u) = 1 exactly
    on each; the gauge is a max of linear functions of the edge
    parameter."""
    ordered = polygon_order(list(ball.vertices))
    for a, b in polygon_edges(ordered):
        dv = b - a
        for n in ball.normals:
            denom = n.dot(dv)
            base = n.dot(a - u)
            if denom == 0:
                if base != 1:
                    continue
                t_candidates = [Rat(0), Rat(1)]
            else:
                t_candidates = [(1 - base) / denom]
            for t in t_candidates:
                if not (0 <= t <= 1):
                    continue
                w = a + t * dv
                if ball.gauge(w - u) != 1:
                    continue
                if w == u or w == -u:
                    continue
                return w
    raise VerificationError("no unit vector at unit distance found")


def _unit_at_unit_distance_smooth(ball: UnitBall, u: Vec) -> Vec:
    def point(theta: float) -> Vec:
        w = Vec((math.cos(theta), math.sin(theta)))
        return w / float(ball.gauge(w))

    theta0 = math.atan2(float(u[1]), float(u[0]))

    def f(theta: float) -> float:
        return float(ball.gauge(point(theta) - u)) - 1.0

    lo, hi = theta0, theta0 + math.pi
    f_lo, f_hi = f(lo), f(hi)
    if f_lo >= 0:
        raise VerificationError("anchor distance function misbehaved")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) < 1e-14 or hi - lo < 1e-15:
            lo = hi = mid
            break
        if (fm < 0) == (f_lo < 0):
            lo, f_lo = mid, fm
        else:
            hi = mid
    w = point(0.5 * (lo + hi))
    if abs(float(ball.gauge(w - u)) - 1.0) > 1e-9:
        raise NonConvergenceError("equilateral side search stalled")
    return w
