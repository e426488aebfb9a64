"""Classical center constructions relative to a norm.

Euler line: given a circumcenter M with radius r, the points

  concurrence  P = (d+1) G - d M
  feuerbach    F = ((d+1) G - M) / d
  monge        N = ((d+1) G - 2 M) / (d - 1)

all lie on the line through the centroid G and M.  P is where the d+1
lines through each vertex parallel to the segment from M to the
opposite facet centroid meet; F is the center of the sphere of radius
r/d through all facet centroids; N reproduces the Euclidean orthocenter
in the plane and the Monge point of a Euclidean tetrahedron.  All three
collapse to G exactly when M = G.

Inscribed and escribed spheres come from the linear system
<a_j, x> + s_j h(a_j) rho = b_j over the facet halfspaces
{<a_j, x> <= b_j}, where h is the support function of the ball and s_j
are signs: all +1 for the insphere, one -1 for the exsphere beyond the
flipped facet.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateInputError, MixedModeError, VerificationError
from .linalg import Hyperplane, Vec, affine_rank, solve_linear
from .norms import Ball, UnitBall
from .scalars import EXACT, FLOAT, Rat, close
from .simplex import Simplex

from .circumcenter import is_circumcenter


@dataclass(frozen=True)
class EulerLine:
    centroid: Vec
    circumcenter: Vec
    radius: object
    concurrence: Vec
    feuerbach_center: Vec
    feuerbach_radius: object
    monge: Vec
    degenerate_line_indices: tuple
    mode: str

    @property
    def collapsed(self) -> bool:
        """True exactly when the circumcenter is the centroid and every
        derived point lands there too."""
        return self.circumcenter == self.centroid

    def contains(self, point: Vec, tol: float = 1e-9) -> bool:
        if self.collapsed:
            if self.mode == EXACT:
                return point == self.centroid
            return all(
                close(float(a), float(b), rel=tol)
                for a, b in zip(point.coords, self.centroid.coords)
            )
        if self.mode == EXACT:
            return affine_rank([self.centroid, self.circumcenter, point]) <= 1
        g = np.array([float(c) for c in self.centroid.coords])
        m = np.array([float(c) for c in self.circumcenter.coords])
        p = np.array([float(c) for c in point.coords])
        u = m - g
        v = p - g
        cross = np.outer(u, v) - np.outer(v, u)
        scale = max(float(np.linalg.norm(u) * np.linalg.norm(v)), 1e-30)
        return float(np.max(np.abs(cross))) <= tol * scale


def _to_ball_mode(ball: UnitBall, v: Vec) -> Vec:
    if ball.mode == EXACT:
        if v.mode != EXACT:
            raise MixedModeError("exact ball needs exact points")
        return v
    return v.to_float()


def euler_line(simplex: Simplex, ball: UnitBall, center: Vec, radius) -> EulerLine:
    """Derived collinear points for one circumcenter of the simplex.

    Raises if (center, radius) fails the direct circumcenter check."""
    if not is_circumcenter(simplex, ball, center, radius):
        raise DegenerateInputError("(center, radius) is not a circumcenter")
    d = simplex.dim
    if ball.mode == FLOAT:
        g = simplex.centroid.to_float()
        m = center.to_float()
        r = float(radius)
        dd, dp1 = float(d), float(d + 1)
    else:
        g = simplex.centroid
        m = _to_ball_mode(ball, center)
        r = radius
        dd, dp1 = Rat(d), Rat(d + 1)
    concurrence = dp1 * g - dd * m
    feuerbach = (dp1 * g - m) / dd
    monge = (dp1 * g - 2 * m) / (dd - 1)

    def _at_circumcenter(p: Vec) -> bool:
        if ball.mode == EXACT:
            return p == m
        return all(
            abs(float(a) - float(b)) <= 1e-12 * max(1.0, abs(float(b)))
            for a, b in zip(p.to_float().coords, m.coords)
        )

    degenerate = tuple(
        i for i in range(d + 1) if _at_circumcenter(simplex.facet_centroid(i))
    )

    line = EulerLine(
        centroid=g,
        circumcenter=m,
        radius=r,
        concurrence=concurrence,
        feuerbach_center=feuerbach,
        feuerbach_radius=r / dd,
        monge=monge,
        degenerate_line_indices=degenerate,
        mode=ball.mode,
    )
    _check_euler_identities(simplex, line)
    return line


def _check_euler_identities(simplex: Simplex, line: EulerLine) -> None:
    """Internal cross-checks; failure means a bug, not bad input."""
    d = simplex.dim
    exact = line.mode == EXACT
    for i in range(d + 1):
        a = simplex.vertices[i]
        ac = simplex.facet_centroid(i)
        if not exact:
            a, ac = a.to_float(), ac.to_float()
            dd = float(d)
        else:
            dd = Rat(d)
        # P = A_i + d (A'_i - M) for every i
        lhs = line.concurrence
        rhs = a + dd * (ac - line.circumcenter)
        # F - A'_i = (A_i - M) / d for every i
        lhs2 = line.feuerbach_center - ac
        rhs2 = (a - line.circumcenter) / dd
        if exact:
            ok = lhs == rhs and lhs2 == rhs2
        else:
            scale = max(max(abs(float(c)) for c in rhs.coords), 1.0)
            ok = all(
                abs(float(x) - float(y)) <= 1e-9 * scale
                for x, y in zip(lhs.coords, rhs.coords)
            ) and all(
                abs(float(x) - float(y)) <= 1e-9 * scale
                for x, y in zip(lhs2.coords, rhs2.coords)
            )
        if not ok:
            raise VerificationError("euler line identities violated")
    if not (line.contains(line.concurrence) and line.contains(line.monge) and line.contains(line.feuerbach_center)):
        raise VerificationError("derived points left the euler line")


def feuerbach_sphere(simplex: Simplex, ball: UnitBall, center: Vec, radius) -> Ball:
    """Sphere of radius r/d through all facet centroids, for a
    circumcenter (M, r).  Verifies the through-points property."""
    line = euler_line(simplex, ball, center, radius)
    sphere = Ball(ball, line.feuerbach_center, line.feuerbach_radius)
    for i in range(simplex.dim + 1):
        ac = simplex.facet_centroid(i)
        g = sphere.gauge_from_center(ac if ball.mode == EXACT else ac.to_float())
        if ball.mode == EXACT:
            ok = g == sphere.radius
        else:
            ok = close(float(g), float(sphere.radius), rel=1e-9)
        if not ok:
            raise VerificationError("facet centroid off the feuerbach sphere")
    return sphere


@dataclass(frozen=True)
class Insphere:
    center: Vec
    radius: object
    flipped_facet: Optional[int] = None  # None for the insphere proper


def _tangency_system(simplex: Simplex, ball: UnitBall, flip: Optional[int]):
    d = simplex.dim
    rows, rhs = [], []
    for j, h in enumerate(simplex.facet_hyperplanes):
        sj = -1 if j == flip else 1
        hb = ball.support(h.normal)
        if ball.mode == FLOAT:
            rows.append([*(float(c) for c in h.normal.coords), sj * float(hb)])
            rhs.append(float(h.offset))
        else:
            rows.append([*h.normal.coords, sj * hb])
            rhs.append(h.offset)
    return rows, rhs


def incenter(simplex: Simplex, ball: UnitBall) -> Insphere:
    """Unique interior point equidistant from all facet hyperplanes,
    with the common distance rho as second component."""
    rows, rhs = _tangency_system(simplex, ball, flip=None)
    if ball.mode == FLOAT:
        sol = np.linalg.solve(np.array(rows), np.array(rhs))
        x, rho = Vec(tuple(float(v) for v in sol[:-1])), float(sol[-1])
    else:
        lin = solve_linear(rows, rhs)
        if lin.status != "unique":
            raise VerificationError("tangency system unexpectedly singular")
        x, rho = Vec(lin.point[:-1]), lin.point[-1]
    if not rho > 0:
        raise VerificationError("nonpositive inradius")
    return Insphere(x, rho)


def exsphere(simplex: Simplex, ball: UnitBall, i: int) -> Optional[Insphere]:
    """Sphere tangent to all facet hyperplanes from beyond facet i.

    Exists for every facet in the Euclidean plane; a degenerate norm
    can make the sign-flipped system singular or push the radius
    nonpositive, in which case None is returned."""
    d = simplex.dim
    if not 0 <= i <= d:
        raise IndexError(i)
    rows, rhs = _tangency_system(simplex, ball, flip=i)
    if ball.mode == FLOAT:
        mat = np.array(rows)
        if abs(np.linalg.det(mat)) <= 1e-12 * max(np.max(np.abs(mat)), 1.0) ** (d + 1):
            return None
        sol = np.linalg.solve(mat, np.array(rhs))
        x, rho = Vec(tuple(float(v) for v in sol[:-1])), float(sol[-1])
    else:
        lin = solve_linear(rows, rhs)
        if lin.status != "unique":
            return None
        x, rho = Vec(lin.point[:-1]), lin.point[-1]
    if not rho > 0:
        return None
    return Insphere(x, rho, flipped_facet=i)


def exspheres(simplex: Simplex, ball: UnitBall) -> dict:
    return {i: exsphere(simplex, ball, i) for i in range(simplex.dim + 1)}


def bisector(h1: Hyperplane, h2: Hyperplane, ball: UnitBall, signs: tuple = (1, 1)) -> Hyperplane:
    """Locus of equal signed gauge distance to two intersecting
    hyperplanes: s1 (<a1,x> - b1)/h(a1) = s2 (<a2,x> - b2)/h(a2).  It is
    itself a hyperplane through their intersection.  Which of the two
    bisectors comes back is set by the sign pair; callers pick the
    interior one by testing a reference point they care about."""
    s1, s2 = signs
    if s1 not in (1, -1) or s2 not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    g1 = ball.support(h1.normal)
    g2 = ball.support(h2.normal)
    if ball.mode == FLOAT:
        n1, n2 = h1.normal.to_float(), h2.normal.to_float()
        parts = (
            n1 * (s1 / float(g1)),
            n2 * (-s2 / float(g2)),
            float(h1.offset) * s1 / float(g1),
            -float(h2.offset) * s2 / float(g2),
        )
    else:
        parts = (
            h1.normal * (Rat(s1) / g1),
            h2.normal * (Rat(-s2) / g2),
            h1.offset * s1 / g1,
            -(h2.offset * s2) / g2,
        )
    normal = parts[0] + parts[1]
    offset = parts[2] + parts[3]
    if normal.is_zero():
        raise DegenerateInputError("hyperplanes are parallel")
    return Hyperplane(normal, offset)


def facet_bisector(simplex: Simplex, ball: UnitBall, i: int, j: int, external: bool = False) -> Hyperplane:
    """Bisector of the hyperplanes of facets i and j.  The internal one
    (signed distances with equal signs) passes through the incenter and
    contains the common ridge; the external one flips the sign at
    facet j."""
    if i == j:
        raise DegenerateInputError("bisector needs two distinct facets")
    return bisector(
        simplex.facet_hyperplanes[i],
        simplex.facet_hyperplanes[j],
        ball,
        (1, -1 if external else 1),
    )
