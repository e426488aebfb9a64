"""Simplex geometry in finite-dimensional normed spaces.

Exact rational computations for polytopal unit balls, float64 for
smooth p-norms: gauges, circumcenter sets, Minkowskian in/exspheres,
Euler-line points, an equal-gauge simplex constructor, and machine
checks of the center-equivalence statements.
"""

__version__ = "0.1.0"

from .centers import euler_line, exspheres, feuerbach_sphere, incenter
from .circumcenter import circumcenters, is_ag_quasiregular, is_circumcenter
from .construct import equilateral_triangle, quasiregular_simplex
from .equivalence import run_campaign, verify_family
from .errors import (
    DegenerateInputError,
    DimensionError,
    MinksimplexError,
    MixedModeError,
    NonConvergenceError,
    ResourceCapError,
    VerificationError,
)
from .linalg import Hyperplane, Vec
from .norms import Ball, PNormBall, PolytopeBall, euclidean_ball
from .scalars import Rat, from_float
from .simplex import Simplex

__all__ = [
    "Ball",
    "DegenerateInputError",
    "DimensionError",
    "Hyperplane",
    "MinksimplexError",
    "MixedModeError",
    "NonConvergenceError",
    "PNormBall",
    "PolytopeBall",
    "Rat",
    "ResourceCapError",
    "Simplex",
    "Vec",
    "VerificationError",
    "__version__",
    "circumcenters",
    "equilateral_triangle",
    "euclidean_ball",
    "euler_line",
    "exspheres",
    "feuerbach_sphere",
    "from_float",
    "incenter",
    "is_ag_quasiregular",
    "is_circumcenter",
    "quasiregular_simplex",
    "run_campaign",
    "verify_family",
]
