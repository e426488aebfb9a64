"""Points, hyperplanes, and dense linear algebra over both scalar modes.

Everything here works coordinate-wise on tuples.  Exact mode uses
rational pivoting Gaussian elimination; float mode uses partial
pivoting with the package tolerances.  Matrices are lists of row lists,
small enough (dimension <= 4 plus a handful of unknowns) that no
clever numerics are needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .config import EPS_ABS, EPS_REL
from .errors import DegenerateInputError, DimensionError, MixedModeError
from .scalars import EXACT, FLOAT, Rat, is_exact, is_float, join_modes, mode_of


class Vec:
    """Immutable coordinate tuple, used for points and vectors alike.

    A Vec is exact when no coordinate is a float and float otherwise;
    rationals and floats may not appear together.
    """

    __slots__ = ("coords", "mode")

    def __init__(self, coords: Iterable):
        coords = tuple(coords)
        if not coords:
            raise DimensionError("empty coordinate tuple")
        has_rat = False
        has_float = False
        for c in coords:
            if is_float(c):
                has_float = True
            elif is_exact(c):
                if not isinstance(c, int):
                    has_rat = True
            else:
                raise TypeError(f"bad coordinate {c!r}")
        if has_rat and has_float:
            raise MixedModeError("mixed rational/float coordinates")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "mode", FLOAT if has_float else EXACT)

    def __setattr__(self, name, value):
        raise AttributeError("Vec is immutable")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def _check(self, other: "Vec") -> None:
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch {self.dim} vs {other.dim}")
        join_modes(self.mode, other.mode)

    def __add__(self, other: "Vec") -> "Vec":
        self._check(other)
        return Vec(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Vec") -> "Vec":
        self._check(other)
        return Vec(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "Vec":
        return Vec(-a for a in self.coords)

    def scale(self, s) -> "Vec":
        if not isinstance(s, int):
            join_modes(self.mode, mode_of(s))
        return Vec(s * a for a in self.coords)

    __mul__ = scale

    def __rmul__(self, s) -> "Vec":
        return self.scale(s)

    def __truediv__(self, s) -> "Vec":
        if not isinstance(s, int):
            join_modes(self.mode, mode_of(s))
        if s == 0:
            raise ZeroDivisionError("division of Vec by zero")
        if self.mode == EXACT and isinstance(s, int):
            s = Rat(s)
        return Vec(a / s for a in self.coords)

    def dot(self, other: "Vec"):
        self._check(other)
        return sum(a * b for a, b in zip(self.coords, other.coords))

    def norm2_sq(self):
        return sum(a * a for a in self.coords)

    def to_float(self) -> "Vec":
        return Vec(float(a) for a in self.coords)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def key(self) -> tuple:
        """Sort/dedup key; exact coords compare exactly."""
        return self.coords

    def __eq__(self, other) -> bool:
        return isinstance(other, Vec) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self) -> int:
        return len(self.coords)

    def __repr__(self) -> str:
        return f"Vec({', '.join(str(c) for c in self.coords)})"


def zero_vec(dim: int) -> Vec:
    return Vec([Rat(0)] * dim)


def unit_vec(dim: int, i: int) -> Vec:
    return Vec([Rat(1) if k == i else Rat(0) for k in range(dim)])


def cross2(u: Vec, v: Vec):
    """Planar cross product u_x v_y - u_y v_x."""
    if u.dim != 2 or v.dim != 2:
        raise DimensionError("cross2 needs planar vectors")
    return u[0] * v[1] - u[1] * v[0]


def _gcd_many(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, abs(int(v)))
    return g


class Hyperplane:
    """Oriented hyperplane {x : <normal, x> = offset}.

    (a, b) and (l*a, l*b) with l > 0 describe the same oriented
    hyperplane and compare equal; negating both flips orientation but
    keeps the point set, which unoriented_key() quotients out.
    """

    __slots__ = ("normal", "offset")

    def __init__(self, normal: Vec, offset):
        if normal.is_zero():
            raise DegenerateInputError("hyperplane normal must be nonzero")
        if not isinstance(offset, int):
            join_modes(normal.mode, mode_of(offset))
        self.normal = normal
        self.offset = offset

    @property
    def mode(self) -> str:
        return self.normal.mode

    @property
    def dim(self) -> int:
        return self.normal.dim

    def eval(self, p: Vec):
        """<normal, p> - offset; sign tells the side."""
        return self.normal.dot(p) - self.offset

    def canonical(self) -> tuple:
        """Orientation-preserving canonical coefficient tuple."""
        coeffs = (*self.normal.coords, self.offset)
        if self.mode == EXACT:
            fracs = [Rat(c) if isinstance(c, int) else c for c in coeffs]
            lcm = 1
            for f in fracs:
                lcm = lcm * f.denominator // math.gcd(lcm, int(f.denominator))
            ints = [int(f * lcm) for f in fracs]
            g = _gcd_many(ints)
            return tuple(v // g for v in ints)
        scale = math.sqrt(sum(float(c) * float(c) for c in self.normal.coords))
        return tuple(round(float(c) / scale, 12) for c in coeffs)

    def unoriented_key(self) -> tuple:
        """Canonical tuple of the hyperplane as an unoriented point set."""
        c = self.canonical()
        lead = next((v for v in c if v != 0), None)
        if lead is not None and lead < 0:
            c = tuple(-v for v in c)
        return c

    def flip(self) -> "Hyperplane":
        return Hyperplane(-self.normal, -self.offset)

    def __eq__(self, other) -> bool:
        return isinstance(other, Hyperplane) and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def same_set(self, other: "Hyperplane") -> bool:
        return self.unoriented_key() == other.unoriented_key()

    def __repr__(self) -> str:
        return f"Hyperplane({self.normal!r}, {self.offset})"


@dataclass
class LinearSolution:
    """Outcome of solve_linear: 'unique', 'affine', or 'infeasible'.

    For 'affine', point is one solution and basis spans the solution
    space directions; for 'unique' basis is empty.
    """

    status: str
    point: Optional[tuple] = None
    basis: tuple = ()

    @property
    def dim(self) -> Optional[int]:
        if self.status == "infeasible":
            return None
        return len(self.basis)


def _is_zero(x, mode: str, scale=1.0) -> bool:
    if mode == EXACT:
        return x == 0
    return abs(x) <= max(EPS_ABS, EPS_REL * scale)


def _rows_mode(rows: Sequence[Sequence], rhs: Sequence) -> str:
    mode = EXACT
    for row in rows:
        for c in row:
            if is_float(c):
                return FLOAT
    for c in rhs:
        if is_float(c):
            return FLOAT
    return mode


def solve_linear(rows: Sequence[Sequence], rhs: Sequence) -> LinearSolution:
    """Solve rows . x = rhs by Gaussian elimination.

    Returns the full solution structure: unique point, affine subspace
    (particular point + direction basis), or infeasible.
    """
    m = len(rows)
    if m != len(rhs):
        raise DimensionError("row/rhs count mismatch")
    if m == 0:
        raise DimensionError("empty system")
    n = len(rows[0])
    mode = _rows_mode(rows, rhs)
    if mode == EXACT:
        aug = [[Rat(c) for c in row] + [Rat(b)] for row, b in zip(rows, rhs)]
    else:
        aug = [[float(c) for c in row] + [float(b)] for row, b in zip(rows, rhs)]
    scale = 1.0
    if mode == FLOAT:
        scale = max((abs(c) for row in aug for c in row), default=1.0) or 1.0

    pivots = []  # (row, col)
    r = 0
    for col in range(n):
        # pick pivot: exact mode takes any nonzero, float takes max |.|
        best = None
        for i in range(r, m):
            v = aug[i][col]
            if not _is_zero(v, mode, scale):
                if mode == EXACT:
                    best = i
                    break
                if best is None or abs(v) > abs(aug[best][col]):
                    best = i
        if best is None:
            continue
        aug[r], aug[best] = aug[best], aug[r]
        piv = aug[r][col]
        aug[r] = [v / piv for v in aug[r]]
        for i in range(m):
            if i != r and not _is_zero(aug[i][col], mode, scale):
                f = aug[i][col]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivots.append((r, col))
        r += 1
        if r == m:
            break

    for i in range(r, m):
        if not _is_zero(aug[i][n], mode, scale):
            return LinearSolution("infeasible")

    pivot_cols = {col for _, col in pivots}
    free_cols = [c for c in range(n) if c not in pivot_cols]
    zero = Rat(0) if mode == EXACT else 0.0
    one = Rat(1) if mode == EXACT else 1.0

    point = [zero] * n
    for row, col in pivots:
        point[col] = aug[row][n]

    basis = []
    for fc in free_cols:
        direction = [zero] * n
        direction[fc] = one
        for row, col in pivots:
            direction[col] = -aug[row][fc]
        basis.append(tuple(direction))

    if not free_cols:
        return LinearSolution("unique", tuple(point))
    return LinearSolution("affine", tuple(point), tuple(basis))


def det(rows: Sequence[Sequence]):
    """Determinant by fraction-free-ish elimination (exact) or partial
    pivoting (float)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("det needs a square matrix")
    mode = _rows_mode(rows, [0])
    if mode == EXACT:
        a = [[Rat(c) for c in row] for row in rows]
    else:
        a = [[float(c) for c in row] for row in rows]
    result = Rat(1) if mode == EXACT else 1.0
    sign_flip = 1
    for col in range(n):
        piv_row = None
        for i in range(col, n):
            if a[i][col] != 0:
                if mode == EXACT:
                    piv_row = i
                    break
                if piv_row is None or abs(a[i][col]) > abs(a[piv_row][col]):
                    piv_row = i
        if piv_row is None or a[piv_row][col] == 0:
            return Rat(0) if mode == EXACT else 0.0
        if piv_row != col:
            a[piv_row], a[col] = a[col], a[piv_row]
            sign_flip = -sign_flip
        piv = a[col][col]
        result *= piv
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col] / piv
                a[i] = [v - f * w for v, w in zip(a[i], a[col])]
    return sign_flip * result


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    n = len(rows[0])
    sol = solve_linear(rows, [0] * len(rows))
    # rank = n - nullity
    return n - len(sol.basis)


def nullspace(rows: Sequence[Sequence]) -> list:
    """Basis of {x : rows . x = 0} as coordinate tuples."""
    if not rows:
        raise DimensionError("nullspace of empty system")
    sol = solve_linear(rows, [0] * len(rows))
    return list(sol.basis)


def affine_rank(points: Sequence[Vec]) -> int:
    """Dimension of the affine hull of the points."""
    pts = list(points)
    if not pts:
        return -1
    base = pts[0]
    diffs = [list((p - base).coords) for p in pts[1:]]
    if not diffs:
        return 0
    return rank(diffs)


def general_position(points: Sequence[Vec], mode: Optional[str] = None) -> bool:
    """True when d+1 points in R^d span a nondegenerate simplex.

    Exact mode: nonzero determinant of the homogenized matrix.  Float
    mode: |det| must clear a relative threshold scaled by the Hadamard
    bound of the rows.
    """
    pts = list(points)
    d = pts[0].dim
    if len(pts) != d + 1:
        raise DimensionError(f"expected {d + 1} points in R^{d}, got {len(pts)}")
    if mode is None:
        mode = pts[0].mode
    rows = [[*p.coords, 1] for p in pts]
    value = det(rows)
    if mode == EXACT:
        return value != 0
    hadamard = 1.0
    for row in rows:
        hadamard *= math.sqrt(sum(float(c) ** 2 for c in row))
    return abs(float(value)) > EPS_REL * max(hadamard, 1.0)
