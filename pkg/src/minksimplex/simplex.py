"""Simplex anatomy: centroid, facets, medians, medial structure.

Affine data (centroid, medians, medial and quasi-medial hyperplanes)
is norm-free; heights, median lengths and widths take the unit ball as
an argument.  Everything stays exact in rational mode.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import DegenerateInputError, DimensionError, MixedModeError
from .linalg import Hyperplane, Vec, det, general_position
from .norms import UnitBall
from .polytopes import contains as _half_contains
from .polytopes import minimal_halfspaces, vertex_enumerate
from .scalars import EXACT, Rat


def hyperplane_through(points: Sequence[Vec]) -> Hyperplane:
    """Hyperplane spanned by d affinely independent points in R^d.

    Normal components are cofactors of the edge-vector matrix, so the
    computation is exact in rational mode.
    """
    pts = list(points)
    d = pts[0].dim
    if len(pts) != d:
        raise DimensionError(f"need {d} points to span a hyperplane in R^{d}")
    edges = [p - pts[0] for p in pts[1:]]
    rows = [list(e.coords) for e in edges]
    normal = []
    for i in range(d):
        minor = [[row[j] for j in range(d) if j != i] for row in rows]
        cof = det(minor) if minor else Rat(1)
        normal.append(cof if i % 2 == 0 else -cof)
    n = Vec(normal)
    if n.is_zero():
        raise DegenerateInputError("points are affinely dependent")
    return Hyperplane(n, n.dot(pts[0]))


class Simplex:
    """d+1 vertices in general position in R^d (d >= 2)."""

    def __init__(self, vertices: Sequence[Vec]):
        pts = [p if isinstance(p, Vec) else Vec(p) for p in vertices]
        d = pts[0].dim
        if d < 2:
            raise DimensionError("simplices here live in dimension >= 2")
        if len(pts) != d + 1:
            raise DimensionError(f"expected {d + 1} vertices, got {len(pts)}")
        if len({p.coords for p in pts}) != len(pts):
            raise DegenerateInputError("repeated vertex")
        if not general_position(pts):
            raise DegenerateInputError("vertices are affinely dependent")
        self.vertices = tuple(pts)
        self.dim = d
        self.mode = pts[0].mode

    # -- affine anatomy ----------------------------------------------

    @cached_property
    def centroid(self) -> Vec:
        total = self.vertices[0]
        for v in self.vertices[1:]:
            total = total + v
        k = Rat(self.dim + 1) if self.mode == EXACT else float(self.dim + 1)
        return total / k

    def facet_vertices(self, i: int) -> tuple:
        return tuple(v for k, v in enumerate(self.vertices) if k != i)

    def facet_centroid(self, i: int) -> Vec:
        pts = self.facet_vertices(i)
        total = pts[0]
        for v in pts[1:]:
            total = total + v
        k = Rat(self.dim) if self.mode == EXACT else float(self.dim)
        return total / k

    @cached_property
    def facet_hyperplanes(self) -> tuple:
        """Facet i spans the vertices opposite A_i, oriented so the
        simplex satisfies <a_i, x> <= b_i with A_i strictly inside."""
        out = []
        for i in range(self.dim + 1):
            h = hyperplane_through(self.facet_vertices(i))
            if h.eval(self.vertices[i]) > 0:
                h = h.flip()
            out.append(h)
        return tuple(out)

    def median_vector(self, i: int) -> Vec:
        return self.facet_centroid(i) - self.vertices[i]

    def median_length(self, i: int, ball: UnitBall):
        return ball.gauge(self.median_vector(i))

    def median_lengths(self, ball: UnitBall) -> list:
        return [self.median_length(i, ball) for i in range(self.dim + 1)]

    def edges(self) -> list:
        return list(itertools.combinations(range(self.dim + 1), 2))

    def edge_midpoint(self, i: int, j: int) -> Vec:
        half = Rat(1, 2) if self.mode == EXACT else 0.5
        return (self.vertices[i] + self.vertices[j]) * half

    def side_length(self, i: int, j: int, ball: UnitBall):
        return ball.gauge(self.vertices[j] - self.vertices[i])

    def side_lengths(self, ball: UnitBall) -> list:
        return [self.side_length(i, j, ball) for i, j in self.edges()]

    def medial_hyperplane(self, i: int) -> Hyperplane:
        """Parallel to facet i, through the midpoints of the edges
        joining A_i to the facet."""
        h = self.facet_hyperplanes[i]
        half = Rat(1, 2) if self.mode == EXACT else 0.5
        return Hyperplane(h.normal, (h.normal.dot(self.vertices[i]) + h.offset) * half)

    def quasi_medial_hyperplane(self, i: int, j: int) -> Hyperplane:
        """Through the ridge opposite edge {i, j} and that edge's midpoint."""
        if i == j:
            raise DimensionError("quasi-medial hyperplane needs a proper edge")
        ridge = [v for k, v in enumerate(self.vertices) if k not in (i, j)]
        return hyperplane_through([*ridge, self.edge_midpoint(i, j)])

    def quasi_medial_hyperplanes(self) -> dict:
        return {
            (i, j): self.quasi_medial_hyperplane(i, j) for i, j in self.edges()
        }

    # -- norm-dependent anatomy --------------------------------------

    def height(self, i: int, ball: UnitBall):
        """Minkowskian distance from A_i to its opposite facet plane."""
        h = self.facet_hyperplanes[i]
        num = h.offset - h.normal.dot(self.vertices[i])
        if ball.mode == "float":
            num = float(num)
        return num / ball.support(h.normal)

    def heights(self, ball: UnitBall) -> list:
        return [self.height(i, ball) for i in range(self.dim + 1)]

    def min_width(self, ball: UnitBall):
        """Minimal width of the simplex in the given norm.

        For a simplex the minimum over all directions is attained at a
        facet normal, so this is the smallest height; tests confirm the
        attainment against a direction-grid oracle.
        """
        return min(self.heights(ball))

    # -- membership ---------------------------------------------------

    def contains(self, p: Vec, strict: bool = False) -> bool:
        if strict:
            return all(h.eval(p) < 0 for h in self.facet_hyperplanes)
        return all(h.eval(p) <= 0 for h in self.facet_hyperplanes)

    # -- derived bodies ------------------------------------------------

    @cached_property
    def medial_polytope(self) -> "MedialPolytope":
        """The simplex truncated at its medial hyperplanes: points on
        the facet side of every medial hyperplane."""
        cut = []
        for i in range(self.dim + 1):
            m = self.medial_hyperplane(i)
            # keep the side away from A_i
            cut.append(Hyperplane(-m.normal, -m.offset))
        return MedialPolytope(tuple(self.facet_hyperplanes) + tuple(cut), self.dim)

    def dual_simplex(self) -> "Simplex":
        """Polar dual with respect to the centroid, in centroid-origin
        coordinates: vertex i is a_i / (b_i - <a_i, G>) for facet i."""
        g = self.centroid
        verts = []
        for h in self.facet_hyperplanes:
            denom = h.offset - h.normal.dot(g)
            verts.append(h.normal / denom)
        return Simplex(verts)

    def median_triangle(self) -> "Simplex":
        """Planar only: triangle whose side vectors are the medians,
        anchored so its centroid coincides with this one's."""
        if self.dim != 2:
            raise DimensionError("median triangle is planar")
        m0 = self.median_vector(0)
        m1 = self.median_vector(1)
        third = Rat(1, 3) if self.mode == EXACT else 1.0 / 3.0
        v0 = self.centroid - (m0 * 2 + m1) * third
        v1 = v0 + m0
        v2 = v1 + m1
        return Simplex([v0, v1, v2])

    def shrink_vertex(self, i: int, delta) -> "Simplex":
        """Move A_i toward the opposite facet centroid by the fraction
        delta; the result is properly contained in the original."""
        if not 0 < delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        verts = list(self.vertices)
        verts[i] = verts[i] + (self.facet_centroid(i) - verts[i]) * delta
        return Simplex(verts)

    def translate(self, t: Vec) -> "Simplex":
        return Simplex([v + t for v in self.vertices])

    def scale(self, s) -> "Simplex":
        if s == 0:
            raise DegenerateInputError("zero scaling collapses the simplex")
        return Simplex([v * s for v in self.vertices])

    def __eq__(self, other) -> bool:
        return isinstance(other, Simplex) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"Simplex(dim={self.dim}, vertices={[tuple(map(str, v.coords)) for v in self.vertices]})"


@dataclass(frozen=True)
class MedialPolytope:
    """Intersection of the simplex with the far sides of its medial
    hyperplanes, as halfspaces {h.eval <= 0}."""

    halfspaces: tuple
    dim: int

    def contains(self, p: Vec, strict: bool = False) -> bool:
        return _half_contains(self.halfspaces, p, strict)

    def vertices(self) -> list:
        return vertex_enumerate(self.halfspaces)

    def facet_count(self) -> int:
        return len(minimal_halfspaces(self.halfspaces, self.vertices()))
